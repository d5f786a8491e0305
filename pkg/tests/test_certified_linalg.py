from fractions import Fraction
import random

import numpy as np
import pytest
from flint import arb

from weilforms.certified_linalg import (
    Signature,
    certified_inertia,
    exact_inertia,
    interval_inertia,
    interval_solve,
    leading_minor_failure,
    require_positive_definite,
)
from weilforms.errors import NotPositiveDefinite, SingularMatrix
from weilforms.special_functions import workprec


def numpy_inertia(rows):
    ev = np.linalg.eigvalsh(np.array(rows, dtype=float))
    tol = 1e-9 * max(1.0, float(np.abs(ev).max()))
    return Signature(int((ev > tol).sum()), int((abs(ev) <= tol).sum()), int((ev < -tol).sum()))


def random_symmetric(rng, n, rank=None):
    b = np.array([[rng.randint(-4, 4) for _ in range(rank or n)] for _ in range(n)])
    d = np.diag([rng.choice([-1, 1, 2, -3]) for _ in range(rank or n)])
    return (b @ d @ b.T).astype(int).tolist()


@pytest.mark.parametrize("seed", range(30))
def test_exact_inertia_matches_numpy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    rows = random_symmetric(rng, n, rank=rng.randint(1, n))
    assert exact_inertia(rows) == numpy_inertia(rows)


@pytest.mark.parametrize("seed", range(15))
def test_interval_inertia_matches_numpy(seed):
    rng = random.Random(1000 + seed)
    n = rng.randint(1, 6)
    rows = random_symmetric(rng, n)
    while numpy_inertia(rows).zero:
        rows = random_symmetric(rng, n)
    with workprec(128):
        balls = [[arb(x) + arb(0, 2.0**-100) for x in r] for r in rows]
        assert interval_inertia(balls) == numpy_inertia(rows)


def test_zero_diagonal_needs_2x2_pivot():
    assert exact_inertia([[0, 1], [1, 0]]) == Signature(1, 0, 1)
    assert exact_inertia([[0, 0], [0, 0]]) == Signature(0, 2, 0)


def test_certified_inertia_mixed_inputs():
    assert certified_inertia([[Fraction(1, 2), 1], [1, 3]]) == Signature(2, 0, 0)
    assert certified_inertia(lambda p: [[arb.pi(), arb(1)], [arb(1), arb(-1)]]) == Signature(1, 0, 1)


def test_leading_minor_failure():
    assert leading_minor_failure([[2, 1], [1, 2]]) is None
    assert leading_minor_failure([[1, 2, 0], [2, 1, 0], [0, 0, 1]]) == 2
    with pytest.raises(NotPositiveDefinite) as info:
        require_positive_definite([[1, 0], [0, -1]])
    assert info.value.minor == 2


def test_interval_solve():
    with workprec(128):
        x = interval_solve([[arb(2), arb(1)], [arb(1), arb(3)]], [arb(1), arb(2)])
        assert x[0].overlaps(arb(1) / 5) and x[1].overlaps(arb(3) / 5)
        assert x[0].rad() < 2.0**-100
        with pytest.raises(SingularMatrix):
            interval_solve([[arb(1), arb(1)], [arb(1), arb(1)]], [arb(1), arb(1)])
