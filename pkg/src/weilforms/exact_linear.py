"""Exact linear algebra over Q and over Q(u), u a formal stand-in for log 2.

Matrices are cleared of denominators row by row and then handled over the
integer polynomial ring Z[u] with fraction-free elimination (Bareiss for
determinants, Montante/Gauss-Jordan for solves and kernels).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from flint import fmpz_poly
from flint.utils.flint_exceptions import DomainError as FlintDomainError

from .errors import DegeneratePencil, RankError, SingularMatrix
from .special_functions import CertifiedInterval, SymbolicConstant, to_arb, workprec

# --------------------------------------------------------------------------
# Univariate polynomials over Q


class UPoly:
    """Polynomial in u with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def u(cls) -> "UPoly":
        return cls((0, 1))

    @classmethod
    def coerce(cls, x) -> "UPoly":
        if isinstance(x, UPoly):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls((x,))
        if isinstance(x, SymbolicConstant):
            if x.gamma_coeff:
                raise TypeError("gamma does not live in Q(u)")
            return cls((x.rat, x.log2_coeff))
        raise TypeError(f"cannot coerce {type(x).__name__} to UPoly")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        try:
            return self.coeffs == UPoly.coerce(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        try:
            o = UPoly.coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        try:
            return self + (-UPoly.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return UPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            o = UPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(o.coeffs):
                out[i + j] += x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return URational(self, other)

    def __rtruediv__(self, other):
        return URational(other, self)

    def __divmod__(self, other):
        o = UPoly.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(o.coeffs) + 1, 0)
        lc = o.lead()
        for k in range(len(rem) - len(o.coeffs), -1, -1):
            c = rem[k + o.degree] / lc
            q[k] = c
            if c:
                for j, y in enumerate(o.coeffs):
                    rem[k + j] -= c * y
        return UPoly(q), UPoly(rem)

    def monic(self) -> "UPoly":
        return UPoly(c / self.lead() for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_ball(self, u_ball=None):
        from flint import arb

        u = arb.const_log2() if u_ball is None else u_ball
        acc = arb(0)
        for c in reversed(self.coeffs):
            acc = acc * u + to_arb(c)
        return acc

    def eval(self, u=None, precision: int = 256) -> CertifiedInterval:
        """Evaluate at u (default: u = log 2) as a certified interval."""
        with workprec(precision + 16):
            ub = None if u is None else to_arb(u)
            return CertifiedInterval(self.eval_ball(ub))

    def content_primitive(self) -> tuple[Fraction, tuple[int, ...]]:
        """Write self = c * P with P integral, primitive, positive leading coefficient."""
        if self.is_zero():
            return Fraction(0), ()
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), tuple(x // g for x in ints)

    def __repr__(self):
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return _format_int_poly([c for c in self.coeffs]) if self.coeffs else "0"


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while not b.is_zero():
        a, b = b, divmod(a, b)[1]
    return a.monic() if not a.is_zero() else a


def _format_int_poly(coeffs: Sequence) -> str:
    """Render highest degree first, e.g. '107u - 48'."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "u" if k == 1 else f"u^{k}"
            body = var if mag == 1 else f"{mag}{var}"
        if not terms:
            terms.append(body if c > 0 else "-" + body)
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


# --------------------------------------------------------------------------
# Rational functions


class URational:
    """Element of Q(u) kept as num/den with gcd 1 and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        n, d = UPoly.coerce(num), UPoly.coerce(den)
        if d.is_zero():
            raise ZeroDivisionError("zero denominator in Q(u)")
        if n.is_zero():
            n, d = UPoly(), UPoly((1,))
        else:
            g = poly_gcd(n, d)
            if g.degree > 0:
                n, d = divmod(n, g)[0], divmod(d, g)[0]
            lc = d.lead()
            n, d = UPoly(c / lc for c in n.coeffs), UPoly(c / lc for c in d.coeffs)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("URational is immutable")

    @classmethod
    def coerce(cls, x) -> "URational":
        if isinstance(x, URational):
            return x
        return cls(UPoly.coerce(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    @property
    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def as_fraction(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not a rational constant")
        return self.num.lead() if not self.num.is_zero() else Fraction(0)

    def __eq__(self, other):
        try:
            o = URational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        try:
            o = URational.coerce(other)
        except TypeError:
            return NotImplemented
        return URational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return URational(-self.num, self.den)

    def __sub__(self, other):
        try:
            return self + (-URational.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return URational.coerce(other) - self

    def __mul__(self, other):
        try:
            o = URational.coerce(other)
        except TypeError:
            return NotImplemented
        return URational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = URational.coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero in Q(u)")
        return URational(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return URational.coerce(other) / self

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def eval_ball(self, u_ball=None):
        return self.num.eval_ball(u_ball) / self.den.eval_ball(u_ball)

    def eval(self, u=None, precision: int = 256) -> CertifiedInterval:
        with workprec(precision + 32):
            ub = None if u is None else to_arb(u)
            return CertifiedInterval(self.eval_ball(ub))

    def __repr__(self):
        return f"URational({self})"

    def __str__(self):
        """Integer form with primitive numerator and denominator, e.g.
        '(107u - 48)/(128u - 59)'; constants print as plain fractions."""
        if self.is_constant:
            return str(self.as_fraction())
        cn, pn = self.num.content_primitive()
        cd, pd = self.den.content_primitive()
        scale = cn / cd
        num = [scale.numerator * c for c in pn]
        den = [scale.denominator * c for c in pd]
        if len(den) == 1:
            if den[0] == 1:
                return _format_int_poly(num)
            return f"({_format_int_poly(num)})/{den[0]}"
        ns = _format_int_poly(num)
        if len([c for c in num if c]) > 1:
            ns = f"({ns})"
        ds = _format_int_poly(den)
        if len([c for c in den if c]) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"


def upoly_from_symbolic(c: SymbolicConstant) -> UPoly:
    """Map a + c*log 2 (no gamma part) to a + c*u."""
    return UPoly.coerce(c)


# --------------------------------------------------------------------------
# Matrices

Entry = Union[int, Fraction, UPoly, URational, SymbolicConstant]


@dataclass(frozen=True)
class ExactMatrix:
    """Dense square matrix over Q(u); entries are stored as URational."""

    entries: tuple

    def __init__(self, rows: Sequence[Sequence[Entry]]):
        rs = tuple(tuple(URational.coerce(x) for x in row) for row in rows)
        n = len(rs)
        if any(len(r) != n for r in rs):
            raise ValueError("ExactMatrix must be square")
        object.__setattr__(self, "entries", rs)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        n = self.dim
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def map(self, f) -> "ExactMatrix":
        return ExactMatrix([[f(x) for x in row] for row in self.entries])

    def __neg__(self):
        return self.map(lambda x: -x)

    def shift(self, s) -> "ExactMatrix":
        """Return s*J - self, J the all-ones matrix."""
        s = URational.coerce(s)
        return self.map(lambda x: s - x)

    def matvec(self, v: Sequence) -> list:
        return [sum((a * URational.coerce(x) for a, x in zip(row, v)), URational(0)) for row in self.entries]


# Integer polynomials in Z[u] for the fraction-free kernels (FLINT fmpz_poly).


def _zp_step(x, p, y, q, prev):
    """(x*p - y*q) / prev, the division being exact by Sylvester's identity."""
    num = x * p - y * q
    try:
        return num / prev
    except FlintDomainError as exc:
        raise ArithmeticError("inexact division in fraction-free elimination") from exc


def _row_to_zpoly(row: Sequence[URational]):
    """Scale a row of Q(u) entries into Z[u]; return (ints rows, scale) with
    row = int_row / scale, scale a URational."""
    den = UPoly((1,))
    for x in row:
        if x.den.degree > 0 or x.den.lead() != 1:
            g = poly_gcd(den, x.den)
            den = divmod(den * x.den, g)[0]
    polys = []
    for x in row:
        p = divmod(x.num * den, x.den)[0]
        polys.append(p)
    d = lcm(1, *(c.denominator for p in polys for c in p.coeffs))
    ints = [fmpz_poly([int(c * d) for c in p.coeffs]) for p in polys]
    scale = URational(UPoly((d,)) * den)
    return ints, scale


def _to_zmatrix(m: ExactMatrix):
    rows, scale = [], URational(1)
    for row in m.entries:
        r, s = _row_to_zpoly(row)
        rows.append(r)
        scale = scale * s
    return rows, scale


def _zp_to_upoly(a) -> UPoly:
    return UPoly(int(c) for c in a.coeffs())


def bareiss_det(m: ExactMatrix) -> Union[UPoly, URational]:
    """Exact determinant.  Returns a UPoly when all entries are polynomials."""
    n = m.dim
    if n == 0:
        return UPoly((1,))
    a, scale = _to_zmatrix(m)
    sign = 1
    prev = fmpz_poly([1])
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return UPoly()
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = _zp_step(a[i][j], akk, aik, a[k][j], prev)
            a[i][k] = fmpz_poly()
        prev = akk
    det = URational(_zp_to_upoly(a[n - 1][n - 1]) * sign) / scale
    return det.num * (Fraction(1) / det.den.lead()) if det.den.degree == 0 else det


def _montante(a, extra_cols: int):
    """Fraction-free Gauss-Jordan on an integer-polynomial matrix with
    ``extra_cols`` augmented columns.

    Returns (rows, pivot_cols, last_pivot, sign).  After the call each pivot
    row i has ``last_pivot`` in column pivot_cols[i] and zeros in the other
    pivot columns (earlier pivots are lifted to the new one by the same
    update formula).
    """
    nrows = len(a)
    ncols = len(a[0]) - extra_cols if a else 0
    prev = fmpz_poly([1])
    sign = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        p = a[r][c]
        for i in range(nrows):
            if i == r:
                continue
            aic = a[i][c]
            for j in range(len(a[i])):
                if j == c:
                    continue
                a[i][j] = _zp_step(a[i][j], p, aic, a[r][j], prev)
            a[i][c] = fmpz_poly()
        prev = p
        pivots.append(c)
        r += 1
    return a, pivots, prev, sign


def _solve_scaled(m: ExactMatrix, rhs: Sequence):
    """Solve m x = rhs exactly.  Returns a list of URational."""
    n = m.dim
    rows = []
    for row, b in zip(m.entries, rhs):
        ints, scale = _row_to_zpoly(list(row) + [URational.coerce(b)])
        rows.append(ints)
    a, pivots, d, _ = _montante(rows, 1)
    if len(pivots) < n:
        raise SingularMatrix("matrix is singular over Q(u)")
    dd = _zp_to_upoly(d)
    return [URational(_zp_to_upoly(a[i][n])) / URational(dd) for i in range(n)]


def solve(m: ExactMatrix, rhs: Sequence) -> list:
    return _solve_scaled(m, rhs)


def sum_inverse_coeffs(m: ExactMatrix) -> URational:
    """1^T m^{-1} 1, via a single fraction-free solve against the ones vector."""
    x = _solve_scaled(m, [1] * m.dim)
    return sum(x, URational(0))


def kernel_vector(m: ExactMatrix) -> list:
    """Generator of the one-dimensional kernel, normalised to coordinate sum 1."""
    n = m.dim
    rows, _ = _to_zmatrix(m)
    a, pivots, d, _ = _montante(rows, 0)
    if len(pivots) != n - 1:
        raise RankError(f"kernel has dimension {n - len(pivots)}, expected 1")
    free = next(c for c in range(n) if c not in pivots)
    x = [None] * n
    x[free] = URational(_zp_to_upoly(d))
    for i, c in enumerate(pivots):
        x[c] = URational(-_zp_to_upoly(a[i][free]))
    total = sum(x, URational(0))
    if total.is_zero():
        raise RankError("kernel generator has coordinate sum zero; cannot normalise")
    return [xi / total for xi in x]


def affine_pencil_root(a: ExactMatrix) -> URational:
    """Root s* of the affine map s -> det(s J - a), J the all-ones matrix.

    The determinant is affine in s because J has rank one, so it is
    interpolated from s = 0 and s = 1.
    """
    d0 = URational.coerce(bareiss_det(-a))
    d1 = URational.coerce(bareiss_det(a.shift(1)))
    beta = d1 - d0
    if beta.is_zero():
        raise DegeneratePencil("det(sJ - a) does not depend on s")
    return -d0 / beta


def cofactor_det(m: ExactMatrix) -> URational:
    """Laplace expansion; exponential cost, used only as a test oracle."""
    rows = [list(r) for r in m.entries]

    def rec(rs):
        if not rs:
            return URational(1)
        total = URational(0)
        for j, x in enumerate(rs[0]):
            if x.is_zero():
                continue
            minor = [r[:j] + r[j + 1:] for r in rs[1:]]
            term = x * rec(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return rec(rows)
