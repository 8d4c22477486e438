from .algebra import (
    Element,
    EvolutionAlgebra,
    RingMatrix,
    build_algebra,
    build_algebra_from_rows,
    direct_sum,
)
from .config import Settings
from .infinite import (
    ShiftRule,
    SparseElement,
    StructureRule,
    multiply_sparse,
    nil_exponent_shift,
    plenary_certificate,
    plenary_power_sparse,
    principal_power_sparse,
    window,
)
from .jobs import JobRunner, JobSpec, Report, emit, parse_job, parse_report, run_job, verify_certificate
from .rings import RingDescriptor, make_ring

__version__ = '0.1.0'
