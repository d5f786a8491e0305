import random

import pytest
from flint import arb

from weilforms.errors import IncompleteFunctional
from weilforms.grothendieck import (
    FiltrationBasis,
    VirtualRepC,
    VirtualRepR,
    dim,
    dual,
    filtration_rank,
    form_value,
    gram_leq_w,
    ind,
    is_effective,
    mul,
    parse_virtual_rep,
    res,
    wrwc_equivalence_check,
)
from weilforms.odlyzko import Variant, j_functional
from weilforms.qform import NONGRH, gram, log2pi
from weilforms.special_functions import Sign, psi_half_integer

I, ONE, EPS, ETA = VirtualRepR.I, VirtualRepR.one(), VirtualRepR.eps(), VirtualRepC.eta


@pytest.fixture(scope="module")
def j_nongrh():
    return j_functional(Variant.F, None, "real", 48, 128)


@pytest.fixture(scope="module")
def j_grh():
    return j_functional(Variant.G, None, "real", 50, 128)


def rand_real(rng):
    v = VirtualRepR()
    for _ in range(rng.randint(0, 4)):
        key = rng.choice([ONE, EPS] + [I(k) for k in range(1, 13)])
        v = v + key * rng.randint(-3, 3)
    return v


def rand_complex(rng):
    return VirtualRepC({rng.randint(-12, 12): rng.randint(-3, 3) for _ in range(rng.randint(0, 4))})


def test_products():
    assert mul(I(2), I(3)) == I(5) + I(1)
    assert mul(I(4), EPS) == I(4)
    assert mul(I(3), I(3)) == I(6) + ONE + EPS
    assert EPS * EPS == ONE
    assert I(0) == ONE + EPS
    with pytest.raises(TypeError):
        mul(I(1), ETA(1))


def test_ind_res_examples():
    assert res(ind(ETA(3))) == ETA(3) + ETA(-3)
    assert ind(res(I(2))) == I(2) * 2
    assert res(ONE) == ETA(0)


def test_ring_axioms_random():
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = rand_real(rng), rand_real(rng), rand_real(rng)
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert dim(a * b) == dim(a) * dim(b)
        assert res(a * b) == res(a) * res(b)
        assert ind(res(a)) == (ONE + EPS) * a
        assert dual(a) == a
        x, y = rand_complex(rng), rand_complex(rng)
        assert (x * y) * x == x * (y * x)
        assert dim(x * y) == dim(x) * dim(y)
        assert res(ind(x)) == x + dual(x)


def test_effective():
    assert is_effective(I(1) + I(25) * 4)
    assert not is_effective(I(1) - EPS)
    u = sum((I(k) for k in range(1, 24, 2)), VirtualRepR()) + I(25) * 4
    assert is_effective(u)
    assert dim(u) == 2 * 12 + 8


def test_parse_roundtrip():
    for text in ("I1+4*I25", "1+eps-I3", "e^-3+e^3", "-2*eps+I2"):
        assert str(parse_virtual_rep(text)) == text
    with pytest.raises(ValueError):
        parse_virtual_rep("I1+e^2")
    with pytest.raises(ValueError):
        parse_virtual_rep("J3")


@pytest.mark.parametrize("w", range(0, 31))
def test_filtration_ranks(w):
    assert FiltrationBasis("complex", w).rank == filtration_rank("complex", w) == w + 1
    expected = (w + 1) // 2 if w % 2 else w // 2 + 2
    assert FiltrationBasis("real", w).rank == filtration_rank("real", w) == expected


def test_gram_complex_is_M2(j_nongrh):
    g = gram_leq_w("complex", 2, j_nongrh, 0, 128)
    for i in range(3):
        for j in range(3):
            ref = arb.pi().log() - psi_half_integer(1 + abs(i - j)).eval(128).ball
            assert g[i][j].overlaps(ref)


def test_gram_real_w0(j_nongrh):
    g = gram_leq_w("real", 0, j_nongrh, 1, 128)
    assert g[0][0].overlaps(j_nongrh.j_one - 1)
    assert g[0][1].overlaps(j_nongrh.j_eps - 1)
    assert g[1][1].overlaps(j_nongrh.j_one - 1)
    assert (j_nongrh.j_one - j_nongrh.j_eps).overlaps(1)


def test_gram_complex_w1_toeplitz(j_nongrh):
    g = gram_leq_w("complex", 1, j_nongrh, 0, 128)
    assert g[0][0].overlaps(g[1][1]) and g[0][1].overlaps(g[1][0])


def test_gram_matches_qform(j_nongrh):
    n = 6
    g = gram_leq_w("complex", n, j_nongrh, 0, 128)
    q = gram(NONGRH, n, 128)
    l2p = log2pi(128)
    for i in range(n + 1):
        for j in range(n + 1):
            assert g[i][j].overlaps(l2p - q.entries[i][j].eval(128))


def test_incomplete_functional():
    J = j_functional(Variant.F, None, "real", 4, 64)
    with pytest.raises(IncompleteFunctional):
        gram_leq_w("complex", 3, J)


def test_wrwc_cutoffs(j_nongrh, j_grh):
    assert wrwc_equivalence_check(23, j_nongrh, 0, 128) == (True, True)
    assert wrwc_equivalence_check(24, j_nongrh, 0, 128) == (False, False)
    assert wrwc_equivalence_check(24, j_grh, 0, 128) == (True, True)


def test_u25_negative(j_grh):
    u = sum((I(k) for k in range(1, 24, 2)), VirtualRepR()) + I(25) * 4
    assert form_value(j_grh, u, 0, 128).sign() is Sign.NEGATIVE
