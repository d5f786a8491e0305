"""Certified intervals, exact constants, and digamma at half-integers.

Interval arithmetic is Arb (through python-flint).  Values that are exact
combinations of 1, gamma and log 2 are kept symbolic as
:class:`SymbolicConstant` and only evaluated at the very end.
"""
from __future__ import annotations

import enum
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

from flint import acb, arb, ctx, fmpq

from .errors import DomainError, PoleAtZero, Undecidable

DEFAULT_PRECISION = 256
MAX_PRECISION = 1 << 14

Rational = Union[int, Fraction]


@contextmanager
def workprec(bits: int):
    """Temporarily set Arb's working precision (in bits)."""
    old = ctx.prec
    ctx.prec = int(bits)
    try:
        yield
    finally:
        ctx.prec = old


def _dyadic(x: arb) -> Fraction:
    m, e = x.man_exp()
    m, e = int(m), int(e)
    return Fraction(m * 2**e) if e >= 0 else Fraction(m, 2 ** (-e))


def to_arb(x) -> arb:
    """Convert an exact or interval value to an Arb ball at current precision."""
    if isinstance(x, arb):
        return x
    if isinstance(x, CertifiedInterval):
        return x.ball
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return arb(x)
    if isinstance(x, Fraction):
        return arb(fmpq(x.numerator, x.denominator))
    if isinstance(x, SymbolicConstant):
        return x.ball()
    if isinstance(x, float):
        return arb(x)
    if hasattr(x, "eval_ball"):
        return x.eval_ball()
    raise TypeError(f"cannot convert {type(x).__name__} to an interval")


class Sign(enum.Enum):
    POSITIVE = 1
    NEGATIVE = -1
    UNDECIDED = 0


class CertifiedInterval:
    """A closed real interval guaranteed to contain the exact value.

    Thin immutable wrapper around an Arb ball; the endpoints ``lo`` and ``hi``
    are exact dyadic rationals.
    """

    __slots__ = ("ball",)

    def __init__(self, value):
        ball = to_arb(value)
        if not ball.is_finite():
            raise DomainError("interval is not finite")
        object.__setattr__(self, "ball", ball)

    def __setattr__(self, name, value):
        raise AttributeError("CertifiedInterval is immutable")

    @classmethod
    def from_endpoints(cls, lo, hi) -> "CertifiedInterval":
        a, b = to_arb(lo), to_arb(hi)
        return cls(a.union(b))

    @property
    def lo(self) -> Fraction:
        return _dyadic(self.ball.mid()) - _dyadic(self.ball.rad())

    @property
    def hi(self) -> Fraction:
        return _dyadic(self.ball.mid()) + _dyadic(self.ball.rad())

    @property
    def mid(self) -> Fraction:
        return _dyadic(self.ball.mid())

    @property
    def width(self) -> Fraction:
        return 2 * _dyadic(self.ball.rad())

    def __float__(self) -> float:
        return float(self.ball.mid())

    def contains(self, x) -> bool:
        if isinstance(x, CertifiedInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, (int, Fraction)):
            return self.lo <= x <= self.hi
        if isinstance(x, float):
            return self.lo <= Fraction(x) <= self.hi
        return bool(self.ball.contains(to_arb(x)))

    def overlaps(self, other) -> bool:
        return bool(self.ball.overlaps(to_arb(other)))

    def sign(self) -> Sign:
        if self.ball > 0:
            return Sign.POSITIVE
        if self.ball < 0:
            return Sign.NEGATIVE
        return Sign.UNDECIDED

    def certainly_lt(self, other) -> bool:
        return bool(self.ball < to_arb(other))

    def certainly_gt(self, other) -> bool:
        return bool(self.ball > to_arb(other))

    def _wrap(self, f, other=None):
        if other is None:
            return CertifiedInterval(f(self.ball))
        try:
            o = to_arb(other)
        except TypeError:
            return NotImplemented
        return CertifiedInterval(f(self.ball, o))

    def __add__(self, o):
        return self._wrap(lambda a, b: a + b, o)

    __radd__ = __add__

    def __sub__(self, o):
        return self._wrap(lambda a, b: a - b, o)

    def __rsub__(self, o):
        return self._wrap(lambda a, b: b - a, o)

    def __mul__(self, o):
        return self._wrap(lambda a, b: a * b, o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self._wrap(lambda a, b: a / b, o)

    def __rtruediv__(self, o):
        return self._wrap(lambda a, b: b / a, o)

    def __neg__(self):
        return CertifiedInterval(-self.ball)

    def exp(self):
        return CertifiedInterval(self.ball.exp())

    def log(self):
        if not self.ball > 0:
            raise DomainError("log of an interval not certified positive")
        return CertifiedInterval(self.ball.log())

    def __repr__(self) -> str:
        return f"CertifiedInterval({self.ball.str(20)})"

    def __str__(self) -> str:
        return self.ball.str(15)


@dataclass(frozen=True)
class SymbolicConstant:
    """The exact real number ``rat + gamma_coeff*gamma + log2_coeff*log 2``."""

    rat: Fraction = Fraction(0)
    gamma_coeff: Fraction = Fraction(0)
    log2_coeff: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("rat", "gamma_coeff", "log2_coeff"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def coerce(cls, x) -> "SymbolicConstant":
        if isinstance(x, SymbolicConstant):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls(Fraction(x))
        raise TypeError(f"cannot make a symbolic constant from {type(x).__name__}")

    def _combine(self, other, sign):
        try:
            o = SymbolicConstant.coerce(other)
        except TypeError:
            return NotImplemented
        return SymbolicConstant(
            self.rat + sign * o.rat,
            self.gamma_coeff + sign * o.gamma_coeff,
            self.log2_coeff + sign * o.log2_coeff,
        )

    def __add__(self, other):
        if isinstance(other, CertifiedInterval):
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, CertifiedInterval):
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return SymbolicConstant(-self.rat, -self.gamma_coeff, -self.log2_coeff)

    def __mul__(self, k):
        if isinstance(k, bool) or not isinstance(k, (int, Fraction)):
            return NotImplemented
        return SymbolicConstant(self.rat * k, self.gamma_coeff * k, self.log2_coeff * k)

    __rmul__ = __mul__

    @property
    def is_rational(self) -> bool:
        return self.gamma_coeff == 0 and self.log2_coeff == 0

    def ball(self) -> arb:
        """Arb enclosure at the current working precision."""
        x = to_arb(self.rat)
        if self.gamma_coeff:
            x += to_arb(self.gamma_coeff) * arb.const_euler()
        if self.log2_coeff:
            x += to_arb(self.log2_coeff) * arb.const_log2()
        return x

    def eval(self, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
        with workprec(precision + 16):
            return CertifiedInterval(self.ball())

    def __str__(self) -> str:
        parts = []
        if self.rat or (not self.gamma_coeff and not self.log2_coeff):
            parts.append(str(self.rat))
        for coeff, name in ((self.gamma_coeff, "gamma"), (self.log2_coeff, "log2")):
            if not coeff:
                continue
            mag = abs(coeff)
            term = name if mag == 1 else f"{mag}*{name}"
            if not parts:
                parts.append(term if coeff > 0 else "-" + term)
            else:
                parts.append(("+ " if coeff > 0 else "- ") + term)
        return " ".join(parts)


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    """h_n = 1 + 1/2 + ... + 1/n, with h_0 = 0."""
    if n < 0:
        raise DomainError("harmonic number of a negative index")
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


@lru_cache(maxsize=None)
def _odd_reciprocal_sum(k: int) -> Fraction:
    # sum_{j=1}^{k} 2/(2j-1)
    if k == 0:
        return Fraction(0)
    return _odd_reciprocal_sum(k - 1) + Fraction(2, 2 * k - 1)


def psi_half_integer(two_s: int) -> SymbolicConstant:
    """Exact digamma value psi(two_s / 2) for a positive integer ``two_s``."""
    if two_s <= 0:
        raise PoleAtZero(f"psi is not defined at s = {Fraction(two_s, 2)}")
    if two_s % 2 == 0:
        return SymbolicConstant(harmonic(two_s // 2 - 1), -1, 0)
    return SymbolicConstant(_odd_reciprocal_sum(two_s // 2), -1, -2)


class Constants(NamedTuple):
    pi: CertifiedInterval
    gamma: CertifiedInterval
    log2: CertifiedInterval
    e: CertifiedInterval


def constants(precision: int = DEFAULT_PRECISION) -> Constants:
    if precision < 16:
        raise DomainError("precision must be at least 16 bits")
    with workprec(precision + 8):
        return Constants(
            CertifiedInterval(arb.pi()),
            CertifiedInterval(arb.const_euler()),
            CertifiedInterval(arb.const_log2()),
            CertifiedInterval(arb.const_e()),
        )


def exp_integral_e1(x, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """E1(x) = integral of e^{-t}/t over [x, oo), for x > 0."""
    with workprec(precision + 16):
        xb = to_arb(x)
        if not xb > 0:
            raise DomainError("E1 needs a certified positive argument")
        val = acb(xb).expint(1)
        return CertifiedInterval(val.real)


def digamma_rational(q: Fraction, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """Certified psi(q) for a positive rational q (used at quarter-integers)."""
    q = Fraction(q)
    if q <= 0:
        raise DomainError("digamma is only used at positive arguments")
    if q.denominator <= 2:
        return psi_half_integer(int(2 * q)).eval(precision)
    with workprec(precision + 16):
        return CertifiedInterval(to_arb(q).digamma())


def decide_sign(compute, precision: int = DEFAULT_PRECISION, cap: int = MAX_PRECISION) -> Sign:
    """Evaluate ``compute(prec) -> CertifiedInterval`` with doubling precision
    until its sign is certified."""
    prec = precision
    while True:
        s = compute(prec).sign()
        if s is not Sign.UNDECIDED:
            return s
        if prec >= cap:
            raise Undecidable(f"sign undecided at {prec} bits")
        prec = min(2 * prec, cap)
