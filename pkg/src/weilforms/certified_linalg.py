"""Inertia, definiteness and linear solves for symmetric matrices whose
entries are exact rationals or certified intervals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from flint import arb

from .errors import NotPositiveDefinite, SingularMatrix, Undecidable
from .special_functions import (
    DEFAULT_PRECISION,
    MAX_PRECISION,
    CertifiedInterval,
    SymbolicConstant,
    to_arb,
    workprec,
)


@dataclass(frozen=True)
class Signature:
    pos: int
    zero: int
    neg: int

    @property
    def size(self) -> int:
        return self.pos + self.zero + self.neg

    def is_positive_definite(self) -> bool:
        return self.zero == 0 and self.neg == 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.pos, self.zero, self.neg)


def _is_exact_rational(x) -> bool:
    if isinstance(x, bool):
        return False
    if isinstance(x, (int, Fraction)):
        return True
    return isinstance(x, SymbolicConstant) and x.is_rational


def _as_fraction(x) -> Fraction:
    return x.rat if isinstance(x, SymbolicConstant) else Fraction(x)


def exact_inertia(rows: Sequence[Sequence[Fraction]]) -> Signature:
    """Inertia of a rational symmetric matrix by symmetric LDL with 1x1 and
    2x2 pivots (Sylvester's law of inertia)."""
    a = [[Fraction(x) for x in r] for r in rows]
    pos = neg = zero = 0
    while a:
        n = len(a)
        i = next((k for k in range(n) if a[k][k] != 0), None)
        if i is not None:
            d = a[i][i]
            pos += d > 0
            neg += d < 0
            col = [a[k][i] for k in range(n)]
            a = [
                [a[r][c] - col[r] * col[c] / d for c in range(n) if c != i]
                for r in range(n)
                if r != i
            ]
            continue
        pair = next(((r, c) for r in range(n) for c in range(r + 1, n) if a[r][c] != 0), None)
        if pair is None:
            zero += n
            break
        r0, c0 = pair
        # diagonal zero, off-diagonal b: block [[0,b],[b,0]] has one + and one -
        pos += 1
        neg += 1
        a = _schur2(a, r0, c0, lambda x, y: x / y)
    return Signature(pos, zero, neg)


def _schur2(a, i, j, div):
    n = len(a)
    aii, ajj, aij = a[i][i], a[j][j], a[i][j]
    det = aii * ajj - aij * aij
    keep = [k for k in range(n) if k not in (i, j)]
    out = []
    for r in keep:
        xr, yr = a[r][i], a[r][j]
        row = []
        for c in keep:
            xc, yc = a[c][i], a[c][j]
            # [xr yr] B^{-1} [xc yc]^T with B^{-1} = [[ajj,-aij],[-aij,aii]]/det
            corr = div(xr * (ajj * xc - aij * yc) + yr * (aii * yc - aij * xc), det)
            row.append(a[r][c] - corr)
        out.append(row)
    return out


def interval_inertia(rows: Sequence[Sequence[arb]]) -> Signature:
    """Inertia of a symmetric interval matrix, certified for every matrix in
    the enclosure.  Raises Undecidable when a pivot cannot be separated from
    zero."""
    a = [list(r) for r in rows]
    pos = neg = 0
    while a:
        n = len(a)
        best, best_mag = None, None
        for k in range(n):
            d = a[k][k]
            if d > 0 or d < 0:
                mag = d.abs_lower()
                if best is None or mag > best_mag:
                    best, best_mag = k, mag
        if best is not None:
            i = best
            d = a[i][i]
            if d > 0:
                pos += 1
            else:
                neg += 1
            col = [a[k][i] for k in range(n)]
            a = [
                [a[r][c] - col[r] * col[c] / d for c in range(n) if c != i]
                for r in range(n)
                if r != i
            ]
            continue
        pair = None
        for r in range(n):
            for c in range(r + 1, n):
                det = a[r][r] * a[c][c] - a[r][c] * a[r][c]
                if det < 0:
                    pair = (r, c)
                    break
            if pair:
                break
        if pair is None:
            raise Undecidable("no certified pivot available")
        pos += 1
        neg += 1
        a = _schur2(a, pair[0], pair[1], lambda x, y: x / y)
    return Signature(pos, 0, neg)


def _entries_builder(matrix) -> Callable[[int], list]:
    if callable(matrix):
        return matrix

    def build(prec):
        with workprec(prec):
            return [[to_arb(x) for x in row] for row in matrix]

    return build


def certified_inertia(matrix, precision: int = DEFAULT_PRECISION, cap: int = MAX_PRECISION) -> Signature:
    """Signature of a symmetric matrix.

    ``matrix`` is either a nested sequence of values (ints, Fractions,
    SymbolicConstants, CertifiedIntervals, URationals ...) or a callable
    ``prec -> rows of arb``.  All-rational input goes through the exact path;
    otherwise interval LDL with precision doubling up to ``cap``.
    """
    if not callable(matrix) and all(_is_exact_rational(x) for row in matrix for x in row):
        return exact_inertia([[_as_fraction(x) for x in row] for row in matrix])
    build = _entries_builder(matrix)
    prec = precision
    while True:
        try:
            with workprec(prec):
                return interval_inertia(build(prec))
        except Undecidable:
            if prec >= cap:
                raise Undecidable(f"signature undecided at {prec} bits")
            prec = min(2 * prec, cap)


def leading_minor_failure(matrix, precision: int = DEFAULT_PRECISION, cap: int = MAX_PRECISION):
    """Certify positive definiteness by Cholesky without pivoting.

    Returns None if positive definite, else the size k of the first leading
    principal minor certified non-positive.
    """
    build = _entries_builder(matrix)
    prec = precision
    while True:
        with workprec(prec):
            a = [list(r) for r in build(prec)]
            n = len(a)
            undecided = False
            for k in range(n):
                d = a[k][k]
                if d < 0 or d == 0:
                    return k + 1
                if not d > 0:
                    undecided = True
                    break
                for r in range(k + 1, n):
                    f = a[r][k] / d
                    for c in range(k + 1, n):
                        a[r][c] -= f * a[k][c]
            if not undecided:
                return None
        if prec >= cap:
            raise Undecidable(f"definiteness undecided at {prec} bits")
        prec = min(2 * prec, cap)


def require_positive_definite(matrix, what: str = "form", precision: int = DEFAULT_PRECISION):
    k = leading_minor_failure(matrix, precision)
    if k is not None:
        raise NotPositiveDefinite(f"{what} is not positive definite: leading principal minor of size {k} is not positive", minor=k)


def interval_solve(rows: Sequence[Sequence[arb]], rhs: Sequence[arb]) -> list:
    """Gaussian elimination with pivoting by largest certified magnitude."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for k in range(n):
        piv = max(range(k, n), key=lambda i: a[i][k].abs_lower())
        if not a[piv][k].abs_lower() > 0:
            raise SingularMatrix("pivot interval contains zero")
        a[k], a[piv] = a[piv], a[k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n + 1):
                a[i][j] -= f * a[k][j]
    x = [arb(0)] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n]
        for j in range(i + 1, n):
            s -= a[i][j] * x[j]
        x[i] = s / a[i][i]
    return x


def interval_quadratic_form(rows: Sequence[Sequence], x: Sequence) -> arb:
    acc = arb(0)
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, xj in enumerate(x):
            if xj:
                acc += to_arb(rows[i][j]) * (xi * xj)
    return acc


def as_interval(x, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    if isinstance(x, CertifiedInterval):
        return x
    with workprec(precision + 16):
        return CertifiedInterval(to_arb(x))
