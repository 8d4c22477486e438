import dataclasses
import itertools
import json

import pytest

from evolia.algebra import build_algebra_from_rows
from evolia.infinite import ShiftRule
from evolia.jobs import parse_job, run_job
from evolia.rings import RingDescriptor, make_ring


@pytest.fixture(scope='session')
def z36():
    return make_ring(RingDescriptor.mod(36))


@pytest.fixture(scope='session')
def z4():
    return make_ring(RingDescriptor.mod(4))


@pytest.fixture(scope='session')
def z36_nilpotent(z36):
    """x1^2 = 6x1 + 2x2, x2^2 = 3x1 + 12x2 over Z/36."""
    return build_algebra_from_rows(z36, [[6, 3], [2, 12]])


@pytest.fixture(scope='session')
def z36_cyclic(z36):
    """x1^2 = 6x1 + 2x2, x2^2 = 2x1 + 12x2 over Z/36."""
    return build_algebra_from_rows(z36, [[6, 2], [2, 12]])


@pytest.fixture(scope='session')
def z4_rule(z4):
    return ShiftRule(z4, 2)


@pytest.fixture(scope='session')
def tq_rule():
    ring = make_ring(RingDescriptor.polyquot(RingDescriptor.rationals(), 2))
    return ShiftRule(ring, ring.t)


@pytest.fixture(scope='session')
def all_algebras():
    """Every algebra of dimension ``n`` over a finite ring, in enumeration order."""

    def generate(ring, n):
        elements = list(ring.elements())
        for entries in itertools.product(elements, repeat=n * n):
            rows = [list(entries[k * n:(k + 1) * n]) for k in range(n)]
            yield build_algebra_from_rows(ring, rows)

    return generate


@pytest.fixture
def job_file(tmpdir):
    def write(text, name='job.json'):
        path = tmpdir / name
        path.write_text(text, encoding='utf-8')
        return str(path)

    return write


@pytest.fixture(scope='session')
def nilpotent_job():
    return (
        '{"ring":{"kind":"mod","modulus":36},"mode":"finite",'
        '"matrix":[[6,3],[2,12]],"analyses":["nilpotent"]}'
    )


@pytest.fixture(scope='session')
def cyclic_job():
    return (
        '{"ring":{"kind":"mod","modulus":36},"mode":"finite",'
        '"matrix":[[6,2],[2,12]],"analyses":["nilpotent","nil"]}'
    )


@pytest.fixture(scope='session')
def shift_job():
    return (
        '{"ring":{"kind":"mod","modulus":4},"mode":"shift","nu":2,'
        '"analyses":["element-power"],"options":{"element":{"1":1},"power":4}}'
    )


@pytest.fixture(scope='session')
def reports():
    matrices = [
        [[6, 3], [2, 12]],
        [[6, 2], [2, 12]],
        [[0, 1], [0, 0]],
        [[1, 0], [0, 1]],
        [[0, 0], [0, 0]],
        [[18, 0], [1, 0]],
    ]
    return [
        run_job(parse_job(json.dumps({'ring': {'kind': 'mod', 'modulus': 36}, 'matrix': m,
                                      'analyses': ['nilpotent']})))
        for m in matrices
    ]


@pytest.fixture(scope='session')
def update_reports(nilpotent_job):
    job = parse_job(nilpotent_job)
    return [run_job(dataclasses.replace(job, analyses=('filtration',)))]
