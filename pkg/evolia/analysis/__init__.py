from .nil import diag_nil_precheck, is_nil_algebra, is_nil_element, vector_prepass
from .nilpotent import (
    compute_filtration,
    is_nilpotent,
    path_product_dp,
    quotient_reduction_check,
    strict_upper_permutation,
)
from .oracles import (
    brute_force_parenthesized_products,
    brute_force_path_products,
    naive_nil_element,
    path_product,
    path_product_states,
)
from .strong import associated_algebra_basis, associated_power_chain, is_strongly_nilpotent
from .verdicts import (
    DiagFail,
    DiagPass,
    Filtration,
    Nil,
    NilAlgebra,
    Nilpotent,
    NotNil,
    NotNilAlgebra,
    NotNilpotent,
    NotStronglyNilpotent,
    Permutation,
    Skipped,
    StronglyNilpotent,
    Unknown,
    Unsupported,
)
