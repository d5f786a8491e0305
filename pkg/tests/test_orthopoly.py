from fractions import Fraction

import pytest

from weilforms.exact_linear import URational
from weilforms.orthopoly import (
    arcsin_moments,
    hankel_coeffs,
    hankel_Q,
    hankel_value,
    legendre_coeffs,
    legendre_generating_coeffs,
    tn_plus_gamma_via_pairing,
    tn_via_pairing,
)
from weilforms.qform import GRH, NONGRH, tn_exact, vn
from weilforms.special_functions import SymbolicConstant, constants, harmonic, psi_half_integer


def test_legendre_examples():
    assert legendre_coeffs(0).coeffs == (1,)
    assert legendre_coeffs(2).coeffs == (Fraction(3, 8), Fraction(1, 4), Fraction(3, 8))
    for n in range(31):
        assert legendre_coeffs(n).total() == 1


@pytest.mark.parametrize("n", range(0, 9))
def test_legendre_generating_series(n):
    assert tuple(legendre_generating_coeffs(n)) == legendre_coeffs(n).coeffs


def test_moments():
    mu = arcsin_moments(6)
    assert mu[0] == SymbolicConstant(0, 0, 1)
    assert mu[1] == SymbolicConstant(0)
    assert mu[2] == SymbolicConstant(Fraction(1, 4))
    assert all(mu[k] == SymbolicConstant(0) for k in (1, 3, 5))


def test_moments_against_quadrature():
    import mpmath

    mu = arcsin_moments(8)
    for k in (0, 2, 4, 8):
        val = 2 * mpmath.quad(lambda v: v ** (k - 1) * mpmath.asin(v) / mpmath.pi, [0, 1])
        assert abs(float(val) - float(mu[k].eval(64))) < 1e-12


def test_hankel_Q_small():
    assert hankel_Q(0) == (hankel_Q(0)[0],)
    assert not hankel_Q(0)[0].is_zero() and hankel_Q(0)[0].degree == 0
    q1 = hankel_Q(1)
    assert q1[0].is_zero() and not q1[1].is_zero()


@pytest.mark.parametrize("m", range(1, 26))
def test_hankel_Q_parity_and_nonvanishing(m):
    q = hankel_Q(m)
    rational = all(c.degree <= 0 for c in q)
    assert rational == (m % 2 == 1)
    assert not hankel_value(m, 1).is_zero()


@pytest.mark.parametrize("n", range(0, 11))
def test_pairing_matches_gram_route(n):
    assert tn_plus_gamma_via_pairing(GRH, n) == tn_exact(GRH, n)
    assert tn_plus_gamma_via_pairing(NONGRH, n) == tn_exact(NONGRH, n)
    assert tuple(URational.coerce(x) for x in legendre_coeffs(n).coeffs) == vn(GRH, n)
    assert tuple(hankel_coeffs(n).coeffs) == vn(NONGRH, n)


def test_pairing_examples():
    c = constants(256)
    t5 = tn_via_pairing(GRH, 5)
    ref = psi_half_integer(1).eval(256) + harmonic(5)
    assert abs(t5.mid - ref.mid) < Fraction(1, 10**10)
    t0 = tn_via_pairing(NONGRH, 0)
    assert abs(t0.mid - (-c.gamma - c.log2).mid) < Fraction(1, 10**10)
    t7 = tn_via_pairing(NONGRH, 7)
    assert abs(t7.mid - (Fraction(446591, 335349) - c.gamma).mid) < Fraction(1, 10**10)
