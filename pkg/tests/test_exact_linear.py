from fractions import Fraction
import random

import pytest

from weilforms.errors import DegeneratePencil, RankError, SingularMatrix
from weilforms.exact_linear import (
    ExactMatrix,
    UPoly,
    URational,
    affine_pencil_root,
    bareiss_det,
    cofactor_det,
    kernel_vector,
    solve,
    sum_inverse_coeffs,
)
from weilforms.qform import GRH, NONGRH, gram
from weilforms.special_functions import harmonic

u = UPoly.u()


def rand_frac(rng, lo=-9, hi=9):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 5))


def rand_upoly(rng):
    return UPoly([rand_frac(rng) for _ in range(rng.randint(0, 2))])


def test_upoly_canonical_and_ring():
    assert UPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert UPoly([0, 0]).is_zero()
    a, b = UPoly([1, 1]), UPoly([-1, 1])
    assert a * b == UPoly([-1, 0, 1])
    assert a - a == UPoly()
    q, r = divmod(UPoly([-1, 0, 1]), a)
    assert q == b and r.is_zero()


def test_urational_canonical():
    x = URational(UPoly([-1, 0, 1]), UPoly([2, 2]))
    assert x.num == UPoly([Fraction(-1, 2), Fraction(1, 2)])
    assert x.den == UPoly([1])
    y = URational(u, UPoly([0, 3]))
    assert y == URational(Fraction(1, 3))
    with pytest.raises(ZeroDivisionError):
        URational(1, 0)
    assert str(URational(UPoly([-48, 107]), UPoly([-59, 128]))) == "(107u - 48)/(128u - 59)"


def test_urational_eval_contains_value():
    x = URational(UPoly([-48, 107]), UPoly([-59, 128]))
    iv = x.eval(Fraction(7, 10), 128)
    assert iv.contains(Fraction(107 * 7 - 480, 128 * 7 - 590))


def test_bareiss_examples():
    assert bareiss_det(ExactMatrix([[u]])) == u
    assert URational.coerce(bareiss_det(ExactMatrix([[u, -u], [-u, u]]))).is_zero()
    eye = [[int(i == j) for j in range(5)] for i in range(5)]
    assert bareiss_det(ExactMatrix(eye)) == 1


@pytest.mark.parametrize("seed", range(20))
def test_bareiss_matches_cofactor(seed):
    rng = random.Random(seed)
    n = 4
    rows = [[rand_frac(rng) for _ in range(n)] for _ in range(n)]
    m = ExactMatrix(rows)
    assert URational.coerce(bareiss_det(m)) == cofactor_det(m)


@pytest.mark.parametrize("seed", range(8))
def test_bareiss_matches_cofactor_over_qu(seed):
    rng = random.Random(100 + seed)
    n = 3
    m = ExactMatrix([[rand_upoly(rng) for _ in range(n)] for _ in range(n)])
    assert URational.coerce(bareiss_det(m)) == cofactor_det(m)


def test_pencil_examples():
    assert affine_pencil_root(gram(NONGRH, 0).shifted_exact()) == URational(-u)
    assert affine_pencil_root(gram(NONGRH, 2).shifted_exact()) == URational(u, 4 * u - 1)
    assert affine_pencil_root(gram(GRH, 3).shifted_exact()) == URational(Fraction(11, 6) - 2 * u)


@pytest.mark.parametrize("n", range(0, 9))
def test_pencil_root_substitutes_back(n):
    for kernel in (GRH, NONGRH):
        a = gram(kernel, n).shifted_exact()
        s = affine_pencil_root(a)
        assert URational.coerce(bareiss_det(a.shift(s))).is_zero()


@pytest.mark.parametrize("n", range(0, 12))
def test_grh_pencil_is_h_n_minus_2u(n):
    assert affine_pencil_root(gram(GRH, n).shifted_exact()) == URational(harmonic(n) - 2 * u)


def test_degenerate_pencil():
    with pytest.raises(DegeneratePencil):
        affine_pencil_root(ExactMatrix([[1, 2], [3, 6]]).map(lambda x: x - x))


def test_kernel_vector_examples():
    a = gram(NONGRH, 1).shifted_exact()
    assert kernel_vector(a.shift(affine_pencil_root(a))) == [URational(Fraction(1, 2))] * 2
    a = gram(GRH, 2).shifted_exact()
    v = kernel_vector(a.shift(affine_pencil_root(a)))
    assert v == [URational(Fraction(3, 8)), URational(Fraction(1, 4)), URational(Fraction(3, 8))]


@pytest.mark.parametrize("n", range(1, 8))
def test_kernel_vector_is_kernel(n):
    a = gram(NONGRH, n).shifted_exact()
    m = a.shift(affine_pencil_root(a))
    v = kernel_vector(m)
    assert all(x.is_zero() for x in m.matvec(v))
    assert sum(v, URational(0)) == URational(1)


def test_kernel_vector_rank_error():
    with pytest.raises(RankError):
        kernel_vector(ExactMatrix([[1, 0], [0, 1]]))
    with pytest.raises(RankError):
        kernel_vector(ExactMatrix([[0, 0], [0, 0]]))


def test_sum_inverse_coeffs_examples():
    eye = [[int(i == j) for j in range(4)] for i in range(4)]
    assert sum_inverse_coeffs(ExactMatrix(eye)) == URational(4)
    assert sum_inverse_coeffs(ExactMatrix([[-u]])) == URational(-1, u)
    with pytest.raises(SingularMatrix):
        sum_inverse_coeffs(ExactMatrix([[u, u], [u, u]]))


@pytest.mark.parametrize("seed", range(10))
def test_sum_inverse_times_det_is_polynomial(seed):
    rng = random.Random(200 + seed)
    n = 3
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rand_upoly(rng) + (5 if i == j else 0)
    m = ExactMatrix(rows)
    d = URational.coerce(bareiss_det(m))
    assert not d.is_zero()
    assert (sum_inverse_coeffs(m) * d).is_polynomial


@pytest.mark.parametrize("seed", range(10))
def test_solve_residual(seed):
    rng = random.Random(300 + seed)
    m = ExactMatrix([[rand_frac(rng) + (7 if i == j else 0) for j in range(4)] for i in range(4)])
    b = [rand_frac(rng) for _ in range(4)]
    x = solve(m, b)
    assert m.matvec(x) == [URational(v) for v in b]


def test_symmetry_and_shift():
    m = gram(NONGRH, 3).shifted_exact()
    assert m.is_symmetric()
    assert m.shift(0) == -m
