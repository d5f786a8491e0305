"""Odlyzko test functions g, G_lambda = g(x/lambda), F_lambda = G_lambda sech(x/2)
and certified quadrature for the Archimedean functionals they induce.

The generalized digamma of H(t) = F(t) e^{-t/2} is computed as the value of
the limit kernel (lambda -> oo, known in closed form) plus a correction
integral whose integrand H_0 (1 - g(t/lambda)) e^{-st} / (1 - e^{-t}) is
regular at t = 0, plus a tail series on [lambda, oo).
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, log
from typing import Optional, Union

import numpy as np
from flint import acb, arb

from .errors import DomainError
from .grothendieck import JFunctional
from .special_functions import (
    DEFAULT_PRECISION,
    CertifiedInterval,
    SymbolicConstant,
    digamma_rational,
    exp_integral_e1,
    psi_half_integer,
    to_arb,
    workprec,
)

Lambda = Union[Fraction, SymbolicConstant]

DEFAULT_LAMBDA_GRID = tuple(Fraction(x) for x in (1, 2, 4, 8, 16, 32, 64))
LOG2 = SymbolicConstant(0, 0, 1)


class Variant(enum.Enum):
    """F: F_lambda = g(x/lambda) sech(x/2) (unconditional); G: G_lambda = g(x/lambda)."""

    F = "F"
    G = "G"


def as_lambda(lam) -> Lambda:
    """Normalise a support radius: rationals, or a rational multiple of log 2."""
    if isinstance(lam, SymbolicConstant):
        if lam.gamma_coeff:
            raise DomainError("lambda cannot involve gamma")
        val = lam
    elif isinstance(lam, str):
        val = parse_lambda(lam)
    elif isinstance(lam, bool):
        raise TypeError("lambda must be a number")
    elif isinstance(lam, (int, Fraction)):
        val = Fraction(lam)
    else:
        raise TypeError(f"unsupported lambda type {type(lam).__name__}")
    with workprec(64):
        if not to_arb(val) > 0:
            raise DomainError("lambda must be positive")
    return val


def parse_lambda(text: str) -> Lambda:
    """'4', '3/2', '0.5', 'log2', '3*log2'."""
    t = text.strip().replace(" ", "")
    m = re.fullmatch(r"(?:([0-9/.]+)\*)?log\(?2\)?", t)
    if m:
        return SymbolicConstant(0, 0, Fraction(m.group(1)) if m.group(1) else 1)
    return Fraction(t)


def lambda_str(lam: Lambda) -> str:
    return str(lam)


def _lam_ball(lam: Lambda) -> arb:
    return to_arb(lam)


# --------------------------------------------------------------------------
# closed forms


def _g_core(y):
    """(1-y) cos(pi y) + sin(pi y)/pi, analytic in y (valid for 0 <= y <= 1)."""
    pi = arb.pi()
    return (1 - y) * (pi * y).cos() + (pi * y).sin() / pi


def g(x, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """g(x) = (1-|x|) cos(pi x) + sin(pi |x|)/pi on |x| <= 1, zero outside."""
    with workprec(precision + 16):
        y = to_arb(x).__abs__()
        y = arb.min(y, arb(1)) if not y < 1 else y
        return CertifiedInterval(_g_core(y))


def ghat(xi, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """Fourier transform 8 cos^2(pi xi) / (pi^2 (1 - 4 xi^2)^2).

    Written as 2 sinc(pi(1/2 - |xi|))^2 / (1 + 2|xi|)^2, which is entire in
    the relevant sense and fills the removable singularities at +-1/2.
    """
    with workprec(precision + 16):
        a = to_arb(xi).__abs__()
        s = (arb.pi() * (arb(0.5) - a)).sinc()
        return CertifiedInterval(2 * s * s / ((1 + 2 * a) ** 2))


def G_lambda(x, lam, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    lam = as_lambda(lam)
    with workprec(precision + 16):
        return g(to_arb(x) / _lam_ball(lam), precision)


def F_lambda(x, lam, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    lam = as_lambda(lam)
    with workprec(precision + 16):
        xb = to_arb(x)
        return CertifiedInterval(g(xb / _lam_ball(lam), precision).ball * (xb / 2).sech())


@dataclass(frozen=True)
class OverPiSquared:
    """The exact real number coeff / pi^2."""

    coeff: Union[Fraction, SymbolicConstant]

    def eval(self, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
        with workprec(precision + 16):
            pi = arb.pi()
            return CertifiedInterval(to_arb(self.coeff) / (pi * pi))

    def __str__(self):
        return f"{self.coeff}/pi^2"


def fhat_at_i4pi(variant: Variant, lam, precision: int = DEFAULT_PRECISION):
    """Value of the Fourier transform at i/(4 pi), i.e. the integral of
    test(x) e^{x/2} over the real line.

    Exact (8 lambda / pi^2) for the F variant, certified quadrature for G.
    """
    lam = as_lambda(lam)
    if Variant(variant) is Variant.F:
        return OverPiSquared(8 * lam)
    return fhat_at_i4pi_quadrature(Variant.G, lam, precision)


def _integrate(f, a, b, precision: int) -> arb:
    tol = arb(2) ** (-precision)
    res = acb.integral(f, a, b, rel_tol=tol, abs_tol=tol, eval_limit=10**7)
    re_, im_ = res.real, res.imag
    if not im_.contains(0):
        raise ArithmeticError("real integral produced a nonzero imaginary part")
    return re_


@lru_cache(maxsize=None)
def fhat_at_i4pi_quadrature(variant: Variant, lam: Lambda, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """Quadrature of the integral of test(x) e^{x/2} over [-lambda, lambda]."""
    variant = Variant(variant)
    with workprec(precision + 32):
        L = _lam_ball(lam)

        def make(sign):
            def f(x, analytic):
                y = sign * x / L
                val = _g_core(y) * (x / 2).exp()
                if variant is Variant.F:
                    val = val / (x / 2).cosh()
                return val

            return f

        left = _integrate(make(-1), -L, arb(0), precision)
        right = _integrate(make(1), arb(0), L, precision)
        return CertifiedInterval(left + right)


# --------------------------------------------------------------------------
# generalized digamma psi_H for H = test * e^{-t/2}


def psi_h_limit(variant: Variant, m: int, precision: int = DEFAULT_PRECISION):
    """psi_{H_0}(m/2) for the lambda -> oo limit kernel.

    Variant F tends to H_0 = e^{-t/2} sech(t/2), with psi_{H_0}(s) = log 2 +
    psi((1+s)/2); variant G tends to H_0 = e^{-t/2}, psi_{H_0}(s) = psi(1/2+s).
    Exact when the digamma argument is a half-integer.
    """
    if m < 0:
        raise DomainError("m must be nonnegative")
    if Variant(variant) is Variant.G:
        return psi_half_integer(1 + m)
    q = Fraction(2 + m, 4)
    if q.denominator <= 2:
        return LOG2 + psi_half_integer(int(2 * q))
    return digamma_rational(q, precision) + LOG2.eval(precision)


def _tail(variant: Variant, L: arb, s: arb, precision: int) -> arb:
    """Integral over [lambda, oo) of H_0 e^{-st} / (1 - e^{-t})."""
    if variant is Variant.F:
        step, a0, coef = 2, s + 1, 2
    else:
        step, a0, coef = 1, s + arb(0.5), 1
    lam_lo = float(L.lower())
    K = int(ceil((precision + 8) * log(2) / (step * lam_lo))) + 1
    acc = arb(0)
    for k in range(K):
        a = a0 + step * k
        acc += coef * (-a * L).exp() / a
    aK = a0 + step * K
    rem = coef * (-aK * L).exp() / (aK * (1 - (-step * L).exp()))
    return acc + arb(0, rem.upper())


@lru_cache(maxsize=None)
def psi_h_quadrature(variant: Variant, lam: Lambda, m: int, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """Certified psi_H(m/2) for H = test_lambda(t) e^{-t/2}."""
    variant = Variant(variant)
    lam = as_lambda(lam)
    if m < 0:
        raise DomainError("m must be nonnegative")
    with workprec(precision + 32):
        L = _lam_ball(lam)
        s = arb(m) / 2
        sc = acb(s)
        # near t = 0 the integrand is at most pi^2 t / (2 lambda^2)
        delta = arb(2) ** (-(precision // 2 + 8))

        if variant is Variant.F:
            def f(t, analytic):
                return (1 - _g_core(t / L)) * (-sc * t).exp() / t.sinh()
        else:
            def f(t, analytic):
                return (1 - _g_core(t / L)) * (-sc * t).exp() / (2 * (t / 2).sinh())

        body = _integrate(f, delta, L, precision)
        pi = arb.pi()
        stub = arb(0).union(pi * pi * delta * delta / (4 * L * L))
        base = to_arb(psi_h_limit(variant, m, precision + 32))
        return CertifiedInterval(base + body + stub + _tail(variant, L, s, precision + 32))


@lru_cache(maxsize=None)
def psi_h_direct(variant: Variant, lam: Lambda, m: int, precision: int = 128) -> CertifiedInterval:
    """Independent route: the defining integral of psi_H computed directly,
    split as a bounded stub on (0, delta], quadrature on [delta, lambda] and
    the exact tail E1(lambda) (H vanishes beyond lambda, H(0) = 1).

    Used as an oracle; its width is about delta (s + 2).
    """
    variant = Variant(variant)
    lam = as_lambda(lam)
    with workprec(precision + 32):
        L = _lam_ball(lam)
        s = arb(m) / 2
        sc = acb(s)
        delta = arb(2) ** (-(precision // 2))
        if not 64 * delta < L * L:
            raise DomainError("lambda too small for the stub enclosure")

        def f(t, analytic):
            test = _g_core(t / L)
            if variant is Variant.F:
                test = test / (t / 2).cosh()
            h = test * (-t / 2).exp()
            return (-t).exp() / t - h * (-sc * t).exp() / (1 - (-t).exp())

        body = _integrate(f, delta, L, precision // 2)
        # on (0, delta] the integrand lies in [-2, s]
        stub = (-2 * delta).union(s * delta)
        tail = exp_integral_e1(L, precision).ball
        return CertifiedInterval(body + stub + tail)


@lru_cache(maxsize=None)
def j_difference(variant: Variant, lam: Optional[Lambda], precision: int = DEFAULT_PRECISION):
    """J(1) - J(eps) = integral over (0, oo) of F(t) e^{-t/2} / (1 + e^{-t}).

    For the limits this is exactly 1 (F) and pi/2 (G).
    """
    variant = Variant(variant)
    if lam is None:
        if variant is Variant.F:
            return SymbolicConstant(1)
        with workprec(precision + 16):
            return CertifiedInterval(arb.pi() / 2)
    lam = as_lambda(lam)
    with workprec(precision + 32):
        L = _lam_ball(lam)
        if variant is Variant.F:
            def f(t, analytic):
                c = (t / 2).cosh()
                return _g_core(t / L) / (2 * c * c)
        else:
            def f(t, analytic):
                return _g_core(t / L) / (2 * (t / 2).cosh())
        return CertifiedInterval(_integrate(f, arb(0), L, precision))


def psi_h_value(variant: Variant, lam: Optional[Lambda], m: int, precision: int = DEFAULT_PRECISION):
    """psi_H(m/2); ``lam=None`` selects the limit kernel."""
    if lam is None:
        return psi_h_limit(variant, m, precision)
    return psi_h_quadrature(Variant(variant), as_lambda(lam), m, precision)


def j_functional(
    variant: Variant,
    lam: Optional[Lambda],
    field: str = "real",
    w_max: int = 0,
    precision: int = DEFAULT_PRECISION,
) -> JFunctional:
    """Archimedean functional J_F for F = F_lambda or G_lambda (``lam=None``:
    the lambda -> oo limit).

    J(eta^w) = J(I_w) = log 2 pi - psi_H(w/2), and J(1) - J(eps) is the
    positive integral of :func:`j_difference`.
    """
    variant = Variant(variant)
    if field not in ("real", "complex"):
        raise ValueError("field must be 'real' or 'complex'")
    with workprec(precision + 16):
        log2pi = (2 * arb.pi()).log()
        eta = []
        for w in range(w_max + 1):
            psi = to_arb(psi_h_value(variant, lam, w, precision))
            eta.append(CertifiedInterval(log2pi - psi))
        diff = CertifiedInterval(to_arb(j_difference(variant, lam, precision)))
    return JFunctional.from_eta_and_difference(eta, diff, label=_label(variant, lam))


def _label(variant: Variant, lam) -> str:
    if lam is None:
        return "NonGRH-limit" if variant is Variant.F else "GRH-limit"
    return f"{variant.value}_{lam}"


def self_convolution_g(x: float, panels: int = 4000) -> float:
    """Numerical 2 (h*h)(x) with h = cos(pi t) on |t| <= 1/2, by composite
    Gauss-Legendre quadrature.  Independent of the closed form of g; used
    as an oracle."""
    a = max(-0.5, x - 0.5)
    b = min(0.5, x + 0.5)
    if b <= a:
        return 0.0
    nodes, weights = np.polynomial.legendre.leggauss(20)
    edges = np.linspace(a, b, panels // 20 + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        t = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
        total += 0.5 * (hi - lo) * np.sum(weights * np.cos(np.pi * t) * np.cos(np.pi * (x - t)))
    return 2.0 * total
