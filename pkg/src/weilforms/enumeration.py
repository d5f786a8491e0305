"""Effective enumeration of Archimedean parameters allowed by the explicit
formula with the test functions F_lambda (or G_lambda under GRH).

For a field described by (r1, r2, r_E, ||N||) and a weight w, the lattice K is
the set of tuples (V_v) in the product of the K_{E_v}^{<=w} over the infinite
places whose dimensions agree.  On K the quadratic form

    q(V) = sum_v <V_v, V_v>_F - ([E_v:R]/2) log(r_E) dim(V)^2

must satisfy q(V) <= F^(i/4pi) + (dim V - 1/2) log ||N|| for every V coming
from a cuspidal representation of conductor N.  When q is positive definite
the effective solutions form a finite set, found here by completing the
square and a Fincke-Pohst traversal of the resulting ellipsoid.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, sqrt
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from flint import arb

from . import _enum
from .bounds import t_star_w, t_w
from .certified_linalg import leading_minor_failure
from .errors import DomainError, NotPositiveDefinite, PreconditionFailed, Undecidable
from .grothendieck import FiltrationBasis, JFunctional, VirtualRep
from .odlyzko import DEFAULT_LAMBDA_GRID, Lambda, OverPiSquared, Variant, as_lambda, fhat_at_i4pi, j_functional, lambda_str
from .special_functions import DEFAULT_PRECISION, CertifiedInterval, Sign, to_arb, workprec

# relative and absolute slack added to the float radius before traversal;
# every point found is re-checked in interval arithmetic afterwards
FLOAT_MARGIN = 1e-6
DEFAULT_MAX_NODES = 5_000_000
ESCALATION = 4  # precision may grow by this factor to settle a comparison


# --------------------------------------------------------------------------
# field data


@dataclass(frozen=True)
class RootValue:
    """The positive real number base^(1/root), base rational."""

    base: Fraction
    root: int = 1

    def __post_init__(self):
        if self.base <= 0 or self.root < 1:
            raise DomainError("root discriminant must be a positive real")

    def log(self, precision: int = DEFAULT_PRECISION) -> arb:
        with workprec(precision + 16):
            return to_arb(self.base).log() / self.root

    def ball(self, precision: int = DEFAULT_PRECISION) -> arb:
        with workprec(precision + 16):
            return self.log(precision).exp()

    def at_least_one(self) -> bool:
        return self.base >= 1

    def __str__(self):
        b = str(self.base)
        if self.root == 1:
            return b
        if self.root == 2:
            return f"sqrt({b})"
        return f"({b})^(1/{self.root})"


_ROOT_RE = re.compile(r"^\s*(?:sqrt\((?P<sq>[^)]+)\)|\(?(?P<b>[0-9./]+)\)?\s*\^\s*\(\s*1\s*/\s*(?P<k>\d+)\s*\)|(?P<plain>[0-9./]+))\s*$")


def parse_root_value(text) -> RootValue:
    """Accepts "2.7", "7/4", "sqrt(3)", "5^(1/3)" or a RootValue/number."""
    if isinstance(text, RootValue):
        return text
    if isinstance(text, (int, Fraction)):
        return RootValue(Fraction(text))
    if isinstance(text, float):
        return RootValue(Fraction(str(text)))
    m = _ROOT_RE.match(str(text))
    if not m:
        raise DomainError(f"cannot parse root discriminant {text!r}")
    try:
        if m.group("sq"):
            return RootValue(Fraction(m.group("sq").strip()), 2)
        if m.group("b"):
            return RootValue(Fraction(m.group("b")), int(m.group("k")))
        return RootValue(Fraction(m.group("plain")))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse root discriminant {text!r}") from exc


@dataclass(frozen=True)
class FieldSignature:
    r1: int
    r2: int
    root_disc: RootValue = RootValue(Fraction(1))
    norm_N: int = 1

    def __post_init__(self):
        object.__setattr__(self, "root_disc", parse_root_value(self.root_disc))
        if self.r1 < 0 or self.r2 < 0 or self.r1 + 2 * self.r2 < 1:
            raise DomainError("need r1, r2 >= 0 and r1 + 2 r2 >= 1")
        if not self.root_disc.at_least_one():
            raise DomainError("root discriminant must be >= 1")
        if int(self.norm_N) != self.norm_N or self.norm_N < 1:
            raise DomainError("norm of the conductor must be a positive integer")

    @classmethod
    def from_discriminant(cls, r1: int, r2: int, disc: int, norm_N: int = 1) -> "FieldSignature":
        return cls(r1, r2, RootValue(Fraction(abs(disc)), r1 + 2 * r2), norm_N)

    @property
    def degree(self) -> int:
        return self.r1 + 2 * self.r2

    @property
    def places(self) -> Tuple[str, ...]:
        return ("real",) * self.r1 + ("complex",) * self.r2

    def log_root_disc(self, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
        return CertifiedInterval(self.root_disc.log(precision))

    def log_norm(self, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
        with workprec(precision + 16):
            return CertifiedInterval(arb(self.norm_N).log())

    def as_dict(self) -> dict:
        return {"r1": self.r1, "r2": self.r2, "root_disc": str(self.root_disc), "norm_N": self.norm_N}


RATIONALS = FieldSignature(1, 0)


# --------------------------------------------------------------------------
# integer lattice helpers


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> List[Tuple[int, ...]]:
    """Z-basis of {x in Z^ncols : A x = 0} by unimodular row reduction of
    [A^T | I]: rows whose A^T part is eliminated carry kernel vectors."""
    m = len(rows)
    work = [[rows[r][i] for r in range(m)] + [int(i == j) for j in range(ncols)] for i in range(ncols)]
    pivot = 0
    for c in range(m):
        while True:
            nz = [r for r in range(pivot, ncols) if work[r][c]]
            if not nz:
                break
            best = min(nz, key=lambda r: abs(work[r][c]))
            work[pivot], work[best] = work[best], work[pivot]
            done = True
            for r in range(pivot + 1, ncols):
                if work[r][c]:
                    q = work[r][c] // work[pivot][c]
                    work[r] = [a - q * b for a, b in zip(work[r], work[pivot])]
                    if work[r][c]:
                        done = False
            if done:
                pivot += 1
                break
        if pivot == ncols:
            break
    return [tuple(r[m:]) for r in work[pivot:]]


# --------------------------------------------------------------------------
# the lattice problem


def _variant_for(grh: bool) -> Variant:
    return Variant.G if grh else Variant.F


@lru_cache(maxsize=None)
def _functional(variant: Variant, lam: Optional[Lambda], w_max: int, precision: int) -> JFunctional:
    return j_functional(variant, lam, "real", w_max, precision)


@dataclass(frozen=True)
class LatticeProblem:
    field: FieldSignature
    w: int
    lam: Optional[Lambda]
    variant: Variant
    precision: int
    bases: Tuple[FiltrationBasis, ...]
    kernel_basis: Tuple[Tuple[int, ...], ...]
    gram: Tuple[Tuple[CertifiedInterval, ...], ...]
    dim_functional: Tuple[int, ...]
    fhat: Optional[CertifiedInterval]
    log_norm: CertifiedInterval

    @property
    def rank(self) -> int:
        return len(self.kernel_basis)

    def place_coords(self, y: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates in the product of the per-place filtration bases."""
        n = len(self.kernel_basis[0]) if self.kernel_basis else 0
        out = [0] * n
        for yi, b in zip(y, self.kernel_basis):
            if yi:
                for k, bk in enumerate(b):
                    out[k] += yi * bk
        return tuple(out)

    def reps(self, y: Sequence[int]) -> Tuple[VirtualRep, ...]:
        x = self.place_coords(y)
        out, pos = [], 0
        for basis in self.bases:
            out.append(basis.combine(x[pos:pos + basis.rank]))
            pos += basis.rank
        return tuple(out)

    def dim(self, y: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.dim_functional, y))

    def is_effective(self, y: Sequence[int]) -> bool:
        return all(c >= 0 for c in self.place_coords(y))

    def q(self, y: Sequence[int]) -> CertifiedInterval:
        with workprec(self.precision + 16):
            acc = arb(0)
            for i, yi in enumerate(y):
                if yi:
                    for j, yj in enumerate(y):
                        if yj:
                            acc += self.gram[i][j].ball * (yi * yj)
            return CertifiedInterval(acc)

    def slack(self, y: Sequence[int]) -> CertifiedInterval:
        """F^(i/4pi) + (dim - 1/2) log||N|| - q(y); >= 0 on S_lambda."""
        with workprec(self.precision + 16):
            rhs = self.fhat.ball + (arb(self.dim(y)) - arb(0.5)) * self.log_norm.ball
            return CertifiedInterval(rhs - self.q(y).ball)

    def delta(self, y: Sequence[int]) -> CertifiedInterval:
        """q(y) - (dim - 1/2) log||N||."""
        with workprec(self.precision + 16):
            return CertifiedInterval(self.q(y).ball - (arb(self.dim(y)) - arb(0.5)) * self.log_norm.ball)

    def float_data(self):
        """(Q, center, radius^2) with q(y) - L dim(y) = (y-c)^T Q (y-c) - c^T Q c."""
        Q = np.array([[float(x.mid) for x in row] for row in self.gram], dtype=float)
        ell = np.array(self.dim_functional, dtype=float)
        L = float(self.log_norm.hi)
        c = np.linalg.solve(Q, ell) * (L / 2) if L else np.zeros(self.rank)
        r2 = float(self.fhat.hi) - L / 2 + float(c @ Q @ c)
        return Q, c, r2


def _build(field: FieldSignature, w: int, lam: Optional[Lambda], variant: Variant, precision: int) -> LatticeProblem:
    if w < 0:
        raise DomainError("w must be nonnegative")
    bases = tuple(FiltrationBasis(tag, w) for tag in field.places)
    sizes = [b.rank for b in bases]
    offsets = list(itertools.accumulate([0] + sizes))
    ncols = offsets[-1]
    dims = [d for b in bases for d in b.dims()]
    # dim(V_v) - dim(V_0) = 0 for every place v > 0
    cons = []
    for p in range(1, len(bases)):
        row = [0] * ncols
        for k in range(sizes[0]):
            row[k] -= dims[k]
        for k in range(offsets[p], offsets[p + 1]):
            row[k] += dims[k]
        cons.append(row)
    kb = tuple(integer_kernel(cons, ncols)) if cons else tuple(
        tuple(int(i == j) for j in range(ncols)) for i in range(ncols))

    J = _functional(variant, lam, 2 * w, precision)
    log_rd = field.root_disc.log(precision)
    with workprec(precision + 16):
        block = []
        for p, basis in enumerate(bases):
            c = log_rd / 2 if basis.field == "real" else log_rd
            G = [[CertifiedInterval(J(a * b.dual()).ball - c * (a.dim() * b.dim())) for b in basis.elements]
                 for a in basis.elements]
            block.append(G)
        n = len(kb)
        gram = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = arb(0)
                for p, G in enumerate(block):
                    o = offsets[p]
                    for a in range(sizes[p]):
                        ba = kb[i][o + a]
                        if not ba:
                            continue
                        for b in range(sizes[p]):
                            bb = kb[j][o + b]
                            if bb:
                                acc += G[a][b].ball * (ba * bb)
                row.append(CertifiedInterval(acc))
            gram.append(tuple(row))
        if lam is None:
            fhat = None  # the limit kernel has no admissible test function
        else:
            fh = fhat_at_i4pi(variant, lam, precision)
            fhat = fh.eval(precision) if isinstance(fh, OverPiSquared) else fh
    ell = tuple(sum(dims[k] * b[k] for k in range(sizes[0])) for b in kb)
    return LatticeProblem(field, w, lam, variant, precision, bases, kb, tuple(gram), ell, fhat,
                          field.log_norm(precision))


@lru_cache(maxsize=None)
def _build_cached(field, w, lam, variant, precision):
    return _build(field, w, lam, variant, precision)


def _positive_definite_failure(p: LatticeProblem) -> Optional[int]:
    def rows(prec):
        src = p if prec <= p.precision else _build_cached(p.field, p.w, p.lam, p.variant, prec)
        return [[x.ball for x in row] for row in src.gram]

    try:
        return leading_minor_failure(rows, p.precision, ESCALATION * p.precision)
    except Undecidable:
        return -1


def build_problem(field: FieldSignature, w: int, lam, precision: int = DEFAULT_PRECISION, grh: bool = False,
                  require_posdef: bool = True) -> LatticeProblem:
    """Assemble q_{F_lambda} on the equal-dimension lattice for ``field``.

    Raises NotPositiveDefinite (with the failing leading minor) unless the
    Gram matrix is certified positive definite.
    """
    lam = as_lambda(lam)
    p = _build_cached(field, w, lam, _variant_for(grh), precision)
    if require_posdef:
        k = _positive_definite_failure(p)
        if k is not None:
            what = "undecided" if k < 0 else f"leading principal minor of size {k} is not positive"
            raise NotPositiveDefinite(
                f"q for {field.as_dict()} at w={w}, lambda={lambda_str(lam)} is not certified positive definite: {what}",
                minor=None if k < 0 else k)
    return p


# --------------------------------------------------------------------------
# enumeration


def _certified_nonneg(p: LatticeProblem, y: Sequence[int], which: str = "slack") -> bool:
    prec = p.precision
    while True:
        src = p if prec == p.precision else _build_cached(p.field, p.w, p.lam, p.variant, prec)
        s = getattr(src, which)(y).sign()
        if s is Sign.POSITIVE:
            return True
        if s is Sign.NEGATIVE:
            return False
        if prec >= ESCALATION * p.precision:
            raise Undecidable(f"{which} of {tuple(y)} at lambda={lambda_str(p.lam)} straddles 0")
        prec *= 2


def _filter(p: LatticeProblem, points) -> List[Tuple[int, ...]]:
    out = []
    for y in points:
        y = tuple(int(v) for v in y)
        if any(y) and p.is_effective(y) and _certified_nonneg(p, y):
            out.append(y)
    return sorted(set(out), key=lambda y: (p.dim(y), p.place_coords(y)))


def _padded_radius(r2: float) -> float:
    return r2 * (1 + FLOAT_MARGIN) + FLOAT_MARGIN


def fincke_pohst_points(p: LatticeProblem, max_nodes: int = DEFAULT_MAX_NODES, backend: Optional[str] = None):
    """Lattice points of the (padded) ellipsoid, before any filtering."""
    Q, c, r2 = p.float_data()
    if r2 < 0:
        return []
    R = np.linalg.cholesky(Q).T  # Q = R^T R, R upper triangular
    n = p.rank
    qf = np.zeros((n, n))
    for i in range(n):
        qf[i, i] = R[i, i] ** 2
        for j in range(i + 1, n):
            qf[i, j] = R[i, j] / R[i, i]
    return _enum.fincke_pohst(qf, c, _padded_radius(r2), max_nodes, backend=backend)


def enumerate_candidates(p: LatticeProblem, max_nodes: int = DEFAULT_MAX_NODES,
                         backend: Optional[str] = None) -> List[Tuple[int, ...]]:
    """Nonzero effective y with q(y) <= F^(i/4pi) + (dim y - 1/2) log||N||,
    in canonical order (by dimension, then place coordinates)."""
    return _filter(p, fincke_pohst_points(p, max_nodes, backend))


def bounding_box(p: LatticeProblem) -> List[Tuple[int, int]]:
    Q, c, r2 = p.float_data()
    if r2 < 0:
        return []
    Qinv = np.linalg.inv(Q)
    r2 = _padded_radius(r2)
    out = []
    for i in range(p.rank):
        h = sqrt(max(r2 * Qinv[i, i], 0.0))
        out.append((ceil(c[i] - h - 1e-9), floor(c[i] + h + 1e-9)))
    return out


def brute_force_candidates(p: LatticeProblem, max_points: int = 10**7) -> List[Tuple[int, ...]]:
    """Oracle: scan the ellipsoid's bounding box point by point."""
    box = bounding_box(p)
    if not box:
        return []
    total = 1
    for lo, hi in box:
        total *= max(hi - lo + 1, 0)
    if total > max_points:
        raise ValueError(f"bounding box has {total} points")
    Q, c, r2 = p.float_data()
    r2 = _padded_radius(r2)
    pts = []
    for y in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        d = np.array(y, dtype=float) - c
        if d @ Q @ d <= r2:
            pts.append(y)
    return _filter(p, pts)


# --------------------------------------------------------------------------
# intersection over lambda, multiplicity bounds, report


class _Unbounded:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Unbounded"

    __str__ = __repr__


Unbounded = _Unbounded()
Bound = Union[int, _Unbounded]


@dataclass(frozen=True)
class Candidate:
    coords: Tuple[int, ...]  # per-place filtration coordinates, concatenated
    reps: Tuple[VirtualRep, ...]
    dim: int
    q_values: Tuple[Tuple[Lambda, CertifiedInterval], ...] = ()
    multiplicity_bound: Optional[Bound] = None

    def rep_text(self) -> List[str]:
        return [str(r) for r in self.reps]


@dataclass
class Intersection:
    field: FieldSignature
    w: int
    lambdas: Tuple[Lambda, ...]
    qualifying: Tuple[Lambda, ...]
    points: List[Tuple[int, ...]]
    problems: Dict = dc_field(default_factory=dict)

    def candidates(self) -> List[Candidate]:
        out = []
        for y in self.points:
            p0 = self.problems[self.qualifying[0]]
            qv = tuple((lam, self.problems[lam].q(y)) for lam in self.qualifying)
            out.append(Candidate(p0.place_coords(y), p0.reps(y), p0.dim(y), qv))
        return out


def _lam_key(lam) -> float:
    return float(to_arb(lam).mid())


def refine_grid(field: FieldSignature, w: int, grid, precision: int = DEFAULT_PRECISION, grh: bool = False,
                steps: int = 3) -> Tuple[Lambda, ...]:
    """Add rational bisection points between the last non-positive-definite
    and the first positive-definite lambda of ``grid``."""
    grid = sorted({as_lambda(l) for l in grid}, key=_lam_key)
    ok = {}
    for lam in grid:
        ok[lam] = _qualifies(field, w, lam, precision, grh)
    good = [l for l in grid if ok[l]]
    if not good:
        return tuple(grid)
    hi = good[0]
    below = [l for l in grid if _lam_key(l) < _lam_key(hi)]
    lo = below[-1] if below else Fraction(0)
    if not isinstance(hi, Fraction) or not isinstance(lo, Fraction):
        return tuple(grid)
    extra = []
    for _ in range(steps):
        mid = (lo + hi) / 2
        if _qualifies(field, w, mid, precision, grh):
            hi = mid
            extra.append(mid)
        else:
            lo = mid
    return tuple(sorted(set(grid) | set(extra), key=_lam_key))


def _qualifies(field, w, lam, precision, grh) -> bool:
    try:
        build_problem(field, w, lam, precision, grh)
        return True
    except NotPositiveDefinite:
        return False


def default_lambda_grid(field: FieldSignature, w: int, precision: int = DEFAULT_PRECISION, grh: bool = False):
    return refine_grid(field, w, DEFAULT_LAMBDA_GRID, precision, grh)


def intersect_over_lambda(field: FieldSignature, w: int, lambda_grid=None, precision: int = DEFAULT_PRECISION,
                          grh: bool = False, max_nodes: int = DEFAULT_MAX_NODES,
                          backend: Optional[str] = None) -> Intersection:
    """S' = intersection of S_lambda over the grid points where q_lambda is
    positive definite; enumeration happens at the smallest such lambda."""
    grid = DEFAULT_LAMBDA_GRID if lambda_grid is None else lambda_grid
    grid = tuple(sorted({as_lambda(l) for l in grid}, key=_lam_key))
    problems = {}
    for lam in grid:
        try:
            problems[lam] = build_problem(field, w, lam, precision, grh)
        except NotPositiveDefinite:
            continue
    if not problems:
        raise NotPositiveDefinite(
            f"q is not positive definite at any lambda in {[lambda_str(l) for l in grid]} for w={w}")
    qual = tuple(l for l in grid if l in problems)
    pts = enumerate_candidates(problems[qual[0]], max_nodes, backend)
    for lam in qual[1:]:
        pts = [y for y in pts if _certified_nonneg(problems[lam], y)]
    return Intersection(field, w, grid, qual, pts, problems)


def _limit_delta_positive(field: FieldSignature, w: int, reps: Sequence[VirtualRep], grh: bool,
                          precision: int) -> bool:
    """q_F(V) > (dim V - 1/2) log||N|| for the lambda -> oo kernel."""
    p = _build_cached(field, w, None, _variant_for(grh), precision)
    y = _coords_in(p, reps)
    return _certified_nonneg(p, y, "delta")


def _coords_in(p: LatticeProblem, reps: Sequence[VirtualRep]) -> Tuple[int, ...]:
    if len(reps) != len(p.bases):
        raise DomainError(f"expected {len(p.bases)} places, got {len(reps)}")
    x = [c for basis, r in zip(p.bases, reps) for c in basis.coordinates(r)]
    # solve kernel_basis^T y = x over Z
    B = np.array(p.kernel_basis, dtype=float)
    y, *_ = np.linalg.lstsq(B.T, np.array(x, dtype=float), rcond=None)
    y = tuple(int(round(v)) for v in y)
    if p.place_coords(y) != tuple(x):
        raise DomainError("the place dimensions are not equal")
    return y


def multiplicity_bound(v, field: FieldSignature, w: int, lambda_grid=None, precision: int = DEFAULT_PRECISION,
                       grh: bool = False) -> Bound:
    """min over grid lambda with delta_lambda(V) > 0 of floor(F^_lambda(i/4pi) / delta_lambda(V))
    (= floor(8 lambda / (delta pi^2)) for F_lambda); 0 means no such representation exists."""
    reps = v.reps if isinstance(v, Candidate) else tuple(v)
    if not _limit_delta_positive(field, w, reps, grh, precision):
        return Unbounded
    grid = DEFAULT_LAMBDA_GRID if lambda_grid is None else lambda_grid
    best = None
    for lam in grid:
        p = build_problem(field, w, lam, precision, grh, require_posdef=False)
        y = _coords_in(p, reps)
        if not _certified_nonneg(p, y, "delta"):
            continue
        with workprec(precision + 16):
            ratio = CertifiedInterval(p.fhat.ball / p.delta(y).ball)
        b = floor(ratio.hi)
        best = b if best is None else min(best, b)
    if best is None:
        return Unbounded
    return max(best, 0)


def check_candidate(field: FieldSignature, w: int, reps: Sequence[VirtualRep], lambda_grid=None,
                    precision: int = DEFAULT_PRECISION, grh: bool = False):
    """For each lambda: (lambda, q_lambda(V), right-hand side slack, V in S_lambda).

    Works whether or not q_lambda is positive definite."""
    grid = DEFAULT_LAMBDA_GRID if lambda_grid is None else lambda_grid
    out = []
    for lam in grid:
        p = build_problem(field, w, lam, precision, grh, require_posdef=False)
        y = _coords_in(p, reps)
        out.append((as_lambda(lam), p.q(y), p.slack(y), _certified_nonneg(p, y)))
    return out


@dataclass
class EffectiveReport:
    field: FieldSignature
    w: int
    grh: bool
    lambda_grid: Tuple[Lambda, ...]
    qualifying: Tuple[Lambda, ...]
    candidates: List[Candidate]

    @property
    def total_bound(self) -> Bound:
        total = 0
        for c in self.candidates:
            if c.multiplicity_bound is Unbounded:
                return Unbounded
            total += c.multiplicity_bound
        return total

    def as_dict(self) -> dict:
        def bound(b):
            return "unbounded" if b is Unbounded else b

        return {
            "field": self.field.as_dict(),
            "w": self.w,
            "test_function": "G_lambda" if self.grh else "F_lambda",
            "lambda_grid": [lambda_str(l) for l in self.lambda_grid],
            "qualifying_lambdas": [lambda_str(l) for l in self.qualifying],
            "candidates": [
                {
                    "reps": c.rep_text(),
                    "dim": c.dim,
                    "q_at_lambda": {lambda_str(l): [float(q.lo), float(q.hi)] for l, q in c.q_values},
                    "mult_bound": bound(c.multiplicity_bound),
                }
                for c in self.candidates
            ],
            "total_bound": bound(self.total_bound),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def check_precondition(field: FieldSignature, w: int, grh: bool = False, precision: int = DEFAULT_PRECISION):
    """Require r_E < r(w) (r*(w) under GRH), certified."""
    t = t_star_w(w, precision) if grh else t_w(w, precision)
    name = "r*" if grh else "r"
    with workprec(precision + 16):
        gap = CertifiedInterval(t.ball - field.root_disc.log(precision))
        r = CertifiedInterval(t.ball.exp())
    if gap.sign() is not Sign.POSITIVE:
        raise PreconditionFailed(
            f"root discriminant {field.root_disc} is not below {name}({w}) = {float(r.mid):.4f}")


def effective_report(field: FieldSignature, w: int, lambda_grid=None, precision: int = DEFAULT_PRECISION,
                     grh: bool = False, max_nodes: int = DEFAULT_MAX_NODES,
                     backend: Optional[str] = None) -> EffectiveReport:
    check_precondition(field, w, grh, precision)
    grid = default_lambda_grid(field, w, precision, grh) if lambda_grid is None else lambda_grid
    inter = intersect_over_lambda(field, w, grid, precision, grh, max_nodes, backend)
    cands = []
    for c in inter.candidates():
        b = multiplicity_bound(c, field, w, inter.qualifying, precision, grh)
        cands.append(Candidate(c.coords, c.reps, c.dim, c.q_values, b))
    return EffectiveReport(field, w, grh, inter.lambdas, inter.qualifying, cands)
