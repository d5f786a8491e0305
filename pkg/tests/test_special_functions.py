from fractions import Fraction
import random

import mpmath
import pytest

from weilforms.errors import DomainError, PoleAtZero, Undecidable
from weilforms.special_functions import (
    CertifiedInterval,
    Sign,
    SymbolicConstant,
    constants,
    decide_sign,
    digamma_rational,
    exp_integral_e1,
    harmonic,
    psi_half_integer,
)

mpmath.mp.prec = 400
TOL = Fraction(1, 2**380)


def exact(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    return (-1) ** sign * Fraction(int(man)) * Fraction(2) ** int(exp)


def encloses(iv: CertifiedInterval, x) -> bool:
    """Containment up to the oracle's own rounding error."""
    v = exact(x)
    return iv.lo - TOL <= v <= iv.hi + TOL


def test_psi_examples():
    assert psi_half_integer(2) == SymbolicConstant(0, -1, 0)
    assert psi_half_integer(1) == SymbolicConstant(0, -1, -2)
    assert psi_half_integer(5) == SymbolicConstant(Fraction(8, 3), -1, -2)


def test_psi_pole():
    with pytest.raises(PoleAtZero):
        psi_half_integer(0)


@pytest.mark.parametrize("two_s", range(1, 201))
def test_psi_recurrence_and_shape(two_s):
    a, b = psi_half_integer(two_s), psi_half_integer(two_s + 2)
    assert b - a == SymbolicConstant(Fraction(2, two_s))
    assert a.gamma_coeff == -1
    assert a.log2_coeff == (-2 if two_s % 2 else 0)


@pytest.mark.parametrize("two_s", [1, 2, 3, 7, 20, 51, 200])
def test_psi_against_mpmath(two_s):
    val = psi_half_integer(two_s).eval(200)
    assert encloses(val, mpmath.digamma(mpmath.mpf(two_s) / 2))
    assert val.width < Fraction(1, 2**190)


def test_harmonic():
    assert harmonic(0) == 0
    assert harmonic(2) == Fraction(3, 2)
    for n in range(1, 201):
        assert harmonic(n) - harmonic(n - 1) == Fraction(1, n)
    with pytest.raises(DomainError):
        harmonic(-1)


def test_harmonic_24_threshold():
    c = constants(200)
    h24 = CertifiedInterval(harmonic(24))
    bound = c.gamma + (8 * c.pi).log()
    assert round(float(h24), 2) == 3.78
    assert h24.certainly_lt(bound.ball)
    assert CertifiedInterval(harmonic(25)).certainly_gt(bound.ball)


def test_constants():
    c = constants(30)
    assert abs(c.pi.mid - Fraction("3.14159265")) < Fraction(1, 10**8)
    assert abs(c.gamma.mid - Fraction("0.5772156649")) < Fraction(1, 10**9)
    for x in c:
        assert x.width <= Fraction(2, 2**30)
    c = constants(100)
    val = 8 * c.pi * c.gamma.exp()
    assert abs(val.mid - Fraction("44.7632")) < Fraction(1, 10**4)
    with pytest.raises(DomainError):
        constants(8)


def test_e1():
    assert encloses(exp_integral_e1(1, 64), mpmath.e1(1))
    assert abs(float(exp_integral_e1(1, 64)) - 0.21938393) < 1e-8
    assert abs(float(exp_integral_e1(10, 64)) - 4.15697e-6) < 1e-11
    for x in (Fraction(1, 10), 1, 3, Fraction(17, 2), 40):
        e = exp_integral_e1(x, 128)
        assert e.width <= Fraction(16, 2**128)
        assert encloses(e, mpmath.e1(mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator))
        assert e.certainly_lt((CertifiedInterval(-x).exp() / x).ball)
    with pytest.raises(DomainError):
        exp_integral_e1(0)


@pytest.mark.parametrize("q", [Fraction(1, 4), Fraction(3, 4), Fraction(5, 4), Fraction(7, 2), Fraction(1, 3)])
def test_digamma_rational(q):
    assert encloses(digamma_rational(q, 128), mpmath.digamma(mpmath.mpf(q.numerator) / q.denominator))


def test_interval_containment_random():
    rng = random.Random(1)
    for _ in range(200):
        a = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        b = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**4))
        x, y = CertifiedInterval(a), CertifiedInterval(b)
        assert (x + y).contains(a + b)
        assert (x - y).contains(a - b)
        assert (x * y).contains(a * b)
        assert (x / y).contains(a / b)


def test_interval_sign_and_immutability():
    assert CertifiedInterval(1).sign() is Sign.POSITIVE
    assert CertifiedInterval(-1).sign() is Sign.NEGATIVE
    assert CertifiedInterval.from_endpoints(-1, 1).sign() is Sign.UNDECIDED
    x = CertifiedInterval(2)
    with pytest.raises(AttributeError):
        x.ball = None
    assert x.lo <= x.hi


def test_symbolic_constant_algebra():
    a = SymbolicConstant(1, 2, 3)
    b = SymbolicConstant(Fraction(1, 2), -1, 0)
    assert a + b == SymbolicConstant(Fraction(3, 2), 1, 3)
    assert 2 * b == SymbolicConstant(1, -2, 0)
    assert str(psi_half_integer(1)) == "-gamma - 2*log2"
    assert str(SymbolicConstant()) == "0"
    assert (a + b).eval(64).overlaps(a.eval(80) + b.eval(80))


def test_decide_sign_escalates():
    calls = []

    def compute(prec):
        calls.append(prec)
        # 2^-300 is invisible below 300 bits of relative width
        return CertifiedInterval.from_endpoints(Fraction(1, 2**300) - Fraction(1, 2**prec), Fraction(1, 2**300) + Fraction(1, 2**prec))

    assert decide_sign(compute, 64, cap=1024) is Sign.POSITIVE
    assert calls == [64, 128, 256, 512]
    with pytest.raises(Undecidable):
        decide_sign(lambda p: CertifiedInterval.from_endpoints(-1, 1), 64, cap=128)
