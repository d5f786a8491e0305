"""Orthogonal-polynomial route to t_n^H, independent of the Gram-matrix route.

The extremal vector v_n^H is read off from the coefficients of
e^{i pi n x} P_n(cos pi x), where P_n is the degree-n orthogonal polynomial for
the weight attached to H: Legendre polynomials for H = e^{-t/2}, and the
orthogonal family of the weight arcsin(v)/(pi v) on [-1, 1] (built from
Hankel determinants of its moments) for H = e^{-t/2} sech(t/2).  Then
t_n^H = sum_k x_k psi_H(k).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Tuple, Union

from flint import arb

from .errors import DomainError
from .exact_linear import ExactMatrix, UPoly, URational, bareiss_det, upoly_from_symbolic
from .qform import GAMMA, KernelSpec, KernelTag, psi_h
from .special_functions import DEFAULT_PRECISION, CertifiedInterval, SymbolicConstant, workprec


@dataclass(frozen=True)
class TrigPolyCoeffs:
    """x_k = coefficient of e^{2 i pi k x} in e^{i pi n x} P_n(cos pi x)."""

    n: int
    coeffs: Tuple[Union[Fraction, URational], ...]

    def total(self):
        return sum(self.coeffs, URational(0) if isinstance(self.coeffs[0], URational) else Fraction(0))


@dataclass(frozen=True)
class MomentTable:
    moments: Tuple[SymbolicConstant, ...]

    def __getitem__(self, k: int) -> SymbolicConstant:
        return self.moments[k]


def legendre_coeffs(n: int) -> TrigPolyCoeffs:
    if n < 0:
        raise DomainError("n must be nonnegative")
    return TrigPolyCoeffs(n, tuple(Fraction(comb(2 * k, k) * comb(2 * (n - k), n - k), 4**n) for k in range(n + 1)))


def arcsin_moments(max_k: int) -> MomentTable:
    """mu_k = integral of v^k arcsin(v)/(pi v) over [-1, 1]."""
    out = []
    for k in range(max_k + 1):
        if k == 0:
            out.append(SymbolicConstant(0, 0, 1))
        elif k % 2:
            out.append(SymbolicConstant(0))
        else:
            out.append(SymbolicConstant(Fraction(1, k) * (1 - Fraction(comb(k, k // 2), 2**k))))
    return MomentTable(tuple(out))


@lru_cache(maxsize=None)
def hankel_Q(m: int) -> Tuple[UPoly, ...]:
    """Coefficients (in Q + Q u, index = power of v) of the orthogonal
    polynomial Q_m given by a Hankel determinant of moments with last row
    of monomials.  Q_0 = 1."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    n, odd = divmod(m, 2)
    mu = arcsin_moments(4 * n + 2)
    block = [
        [upoly_from_symbolic(mu[2 * (i + j + odd)]) for j in range(n + 1)]
        for i in range(n)
    ]
    coeffs = [UPoly()] * (m + 1)
    for j in range(n + 1):
        minor = [row[:j] + row[j + 1:] for row in block]
        d = bareiss_det(ExactMatrix(minor)) if minor else UPoly((1,))
        sign = -1 if (n + j) % 2 else 1
        coeffs[2 * j + odd] = UPoly.coerce(d) * sign
    return tuple(coeffs)


def hankel_value(m: int, v) -> URational:
    acc = URational(0)
    for j, c in enumerate(hankel_Q(m)):
        if not c.is_zero():
            acc = acc + URational(c) * Fraction(v) ** j
    return acc


def _trig_coeffs_from_cos_poly(n: int, poly) -> list:
    """Coefficients of e^{i pi n x} * sum_j poly[j] cos(pi x)^j in the basis
    e^{2 i pi k x}, 0 <= k <= n, using cos^j = 2^-j sum_i C(j,i) z^{j-2i}."""
    x = [URational(0)] * (n + 1)
    for j, c in enumerate(poly):
        if c.is_zero():
            continue
        for i in range(j + 1):
            k = (n + j) // 2 - i
            x[k] = x[k] + c * Fraction(comb(j, i), 2**j)
    return x


@lru_cache(maxsize=None)
def hankel_coeffs(n: int) -> TrigPolyCoeffs:
    """Coefficients of e^{i pi n x} P_n with P_n = Q_n / Q_n(1)."""
    q = [URational(c) for c in hankel_Q(n)]
    q1 = hankel_value(n, 1)
    if q1.is_zero():
        raise ArithmeticError(f"Q_{n}(1) vanishes")
    return TrigPolyCoeffs(n, tuple(c / q1 for c in _trig_coeffs_from_cos_poly(n, q)))


def pairing_coeffs(kernel: KernelSpec, n: int) -> TrigPolyCoeffs:
    if kernel.tag is KernelTag.GRH:
        return legendre_coeffs(n)
    if kernel.tag is KernelTag.NONGRH:
        return hankel_coeffs(n)
    raise DomainError("the pairing route is only available for the GRH and non-GRH kernels")


def tn_plus_gamma_via_pairing(kernel: KernelSpec, n: int) -> URational:
    """sum_k x_k (psi_H(k) + gamma), exact in Q(u) (the x_k sum to 1)."""
    x = pairing_coeffs(kernel, n).coeffs
    acc = URational(0)
    for k, xk in enumerate(x):
        acc = acc + URational.coerce(xk) * URational(upoly_from_symbolic(psi_h(kernel, k) + GAMMA))
    return acc


def tn_via_pairing(kernel: KernelSpec, n: int, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """t_n^H = <T_H, e^{i pi n x} P_n^H> as a certified interval."""
    if n > 25:
        raise DomainError("the pairing oracle is only validated for n <= 25")
    val = tn_plus_gamma_via_pairing(kernel, n)
    with workprec(precision + 32):
        return CertifiedInterval(val.eval_ball() - arb.const_euler())


def legendre_generating_coeffs(n: int) -> list:
    """Independent construction of the Legendre trig coefficients from the
    generating series (1 - z/zeta)^{-1/2} (1 - zeta z)^{-1/2}, zeta = e^{i pi x},
    as a truncated formal series in z with Laurent coefficients in zeta.

    Returns x_k, the coefficient of zeta^{2k - n} in [z^n]."""

    def binom_series(N):
        # (1 - y)^{-1/2} = sum_a c_a y^a with c_a = (-1)^a binom(-1/2, a)
        c = [Fraction(1)]
        for a in range(1, N + 1):
            c.append(c[-1] * Fraction(2 * a - 1, 2 * a))
        return c

    c = binom_series(n)
    # series in z: dict power_of_z -> dict power_of_zeta -> coeff
    left = {a: {-a: c[a]} for a in range(n + 1)}
    right = {b: {b: c[b]} for b in range(n + 1)}
    prod: dict = {}
    for a, la in left.items():
        for b, rb in right.items():
            if a + b != n:
                continue
            for pa, ca in la.items():
                for pb, cb in rb.items():
                    prod[pa + pb] = prod.get(pa + pb, Fraction(0)) + ca * cb
    return [prod.get(2 * k - n, Fraction(0)) for k in range(n + 1)]
