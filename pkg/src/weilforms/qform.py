"""The quadratic forms q_n^H(x) = sum_{i,j} x_i x_j psi_H(|i-j|) and their
thresholds t_n^H.

t_n^H is the infimum of the t for which t (x_0 + ... + x_n)^2 - q_n^H is
positive definite.  For the two exact kernels every psi_H(m) + gamma lies in
Q + Q log 2, so t_n^H + gamma is computed exactly in Q(u), u standing for
log 2.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional, Sequence, Tuple, Union

from flint import arb

from .certified_linalg import Signature, certified_inertia, interval_solve
from .errors import DomainError, SingularMatrix
from .exact_linear import ExactMatrix, URational, affine_pencil_root, kernel_vector, solve, upoly_from_symbolic
from .odlyzko import Lambda, Variant, as_lambda, psi_h_quadrature
from .special_functions import (
    DEFAULT_PRECISION,
    CertifiedInterval,
    Sign,
    SymbolicConstant,
    decide_sign,
    psi_half_integer,
    to_arb,
    workprec,
)

GAMMA = SymbolicConstant(0, 1, 0)
LOG2 = SymbolicConstant(0, 0, 1)


class KernelTag(enum.Enum):
    GRH = "grh"  # H(t) = e^{-t/2}
    NONGRH = "nongrh"  # H(t) = e^{-t/2} sech(t/2)
    LOG = "log"  # H(t) = e^{-t}(1 - e^{-t})/t
    INVLINEAR = "invlinear"  # H(t) = e^{-t}(1 - e^{-t})
    ODLYZKO_F = "odlyzko_f"  # H(t) = F_lambda(t) e^{-t/2}
    ODLYZKO_G = "odlyzko_g"  # H(t) = G_lambda(t) e^{-t/2}


@dataclass(frozen=True)
class KernelSpec:
    tag: KernelTag
    lam: Optional[Lambda] = None

    def __post_init__(self):
        object.__setattr__(self, "tag", KernelTag(self.tag))
        if self.tag in (KernelTag.ODLYZKO_F, KernelTag.ODLYZKO_G):
            if self.lam is None:
                raise DomainError("Odlyzko kernels need a support radius lambda")
            object.__setattr__(self, "lam", as_lambda(self.lam))
        elif self.lam is not None:
            raise DomainError(f"kernel {self.tag.value} takes no lambda")

    @property
    def h0(self) -> int:
        return 0 if self.tag is KernelTag.INVLINEAR else 1

    @property
    def exact(self) -> bool:
        """True when every psi_H(m) is exact (a SymbolicConstant)."""
        return self.tag in (KernelTag.GRH, KernelTag.NONGRH, KernelTag.INVLINEAR)

    @property
    def exact_qu(self) -> bool:
        """True when t_n + gamma is computable in Q(u)."""
        return self.tag in (KernelTag.GRH, KernelTag.NONGRH)

    @property
    def name(self) -> str:
        if self.lam is None:
            return self.tag.value
        return f"{self.tag.value}({self.lam})"


GRH = KernelSpec(KernelTag.GRH)
NONGRH = KernelSpec(KernelTag.NONGRH)
LOGKERNEL = KernelSpec(KernelTag.LOG)
INVLINEAR = KernelSpec(KernelTag.INVLINEAR)


def odlyzko_kernel(variant: Variant, lam) -> KernelSpec:
    tag = KernelTag.ODLYZKO_F if Variant(variant) is Variant.F else KernelTag.ODLYZKO_G
    return KernelSpec(tag, as_lambda(lam))


def kernel_from_name(name: str) -> KernelSpec:
    return KernelSpec(KernelTag(name.lower()))


def psi_h(kernel: KernelSpec, m: int, precision: int = DEFAULT_PRECISION):
    """psi_H(m) for an integer m >= 0."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    tag = kernel.tag
    if tag is KernelTag.GRH:
        return psi_half_integer(2 * m + 1)
    if tag is KernelTag.NONGRH:
        return LOG2 + psi_half_integer(m + 1)
    if tag is KernelTag.INVLINEAR:
        return SymbolicConstant(Fraction(-1, 1 + m))
    if tag is KernelTag.LOG:
        k = m + 1
        if k & (k - 1) == 0:
            return SymbolicConstant(0, 0, k.bit_length() - 1)
        with workprec(precision + 16):
            return CertifiedInterval(arb(k).log())
    variant = Variant.F if tag is KernelTag.ODLYZKO_F else Variant.G
    return psi_h_quadrature(variant, kernel.lam, 2 * m, precision)


@dataclass(frozen=True)
class GramMatrix:
    """Toeplitz matrix (psi_H(|i-j|)) of q_n^H."""

    kernel: KernelSpec
    n: int
    entries: Tuple[Tuple, ...]

    @property
    def dim(self) -> int:
        return self.n + 1

    def diagonals(self):
        return [self.entries[0][k] for k in range(self.n + 1)]

    def shifted_exact(self) -> ExactMatrix:
        """(psi_H(|i-j|) + gamma) as a matrix over Q + Q u."""
        if not self.kernel.exact_qu:
            raise DomainError(f"kernel {self.kernel.name} has no exact Q(u) Gram matrix")
        diag = [upoly_from_symbolic(v + GAMMA) for v in self.diagonals()]
        return ExactMatrix([[diag[abs(i - j)] for j in range(self.dim)] for i in range(self.dim)])

    def balls(self):
        d = [to_arb(v) for v in self.diagonals()]
        return [[d[abs(i - j)] for j in range(self.dim)] for i in range(self.dim)]

    def shifted_form(self, t) -> list:
        """Entries of t phi^2 - q, i.e. t - psi_H(|i-j|)."""
        return [[_sub(t, x) for x in row] for row in self.entries]


def _sub(t, x):
    if isinstance(x, SymbolicConstant) and isinstance(t, (int, Fraction, SymbolicConstant)):
        return SymbolicConstant.coerce(t) - x
    return CertifiedInterval(to_arb(t) - to_arb(x))


@lru_cache(maxsize=None)
def gram(kernel: KernelSpec, n: int, precision: int = DEFAULT_PRECISION) -> GramMatrix:
    if n < 0:
        raise DomainError("n must be nonnegative")
    diag = [psi_h(kernel, k, precision) for k in range(n + 1)]
    entries = tuple(tuple(diag[abs(i - j)] for j in range(n + 1)) for i in range(n + 1))
    return GramMatrix(kernel, n, entries)


@lru_cache(maxsize=None)
def tn_exact(kernel: KernelSpec, n: int) -> URational:
    """t_n^H + gamma as an element of Q(u)."""
    return affine_pencil_root(gram(kernel, n).shifted_exact())


def tn_numeric(kernel: KernelSpec, n: int, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """Certified t_n^H.

    Exact kernels: evaluate the Q(u) value.  Otherwise pick t0 making
    t0 - psi_H(|i-j|) diagonally dominant (so t0 > t_n) and use
    1/(t0 - t_n) = sum of the entries of (t0 - psi_H(|i-j|))^{-1}.
    """
    if kernel.exact_qu:
        with workprec(precision + 32):
            return CertifiedInterval(tn_exact(kernel, n).eval_ball() - arb.const_euler())
    if kernel.h0 == 0:
        raise DomainError("t_n is -infinity when H(0) = 0")
    g = gram(kernel, n, precision)
    with workprec(precision + 32):
        d = [to_arb(v) for v in g.diagonals()]
        bound = d[0] + 2 * sum((abs(x) for x in d[1:]), arb(0))
        t0 = arb(int(bound.upper().floor().unique_fmpz()) + 1)
        rows = [[t0 - d[abs(i - j)] for j in range(n + 1)] for i in range(n + 1)]
        x = interval_solve(rows, [arb(1)] * (n + 1))
        c = sum(x, arb(0))
        return CertifiedInterval(t0 - 1 / c)


@lru_cache(maxsize=None)
def vn(kernel: KernelSpec, n: int) -> Tuple[URational, ...]:
    """The vector with coordinate sum 1 that is q_n^H-orthogonal to the
    hyperplane sum x_i = 0 (kernel of t_n phi^2 - q_n^H)."""
    # (sJ - a) x = 0 means a x = s phi(x) 1, so x is proportional to a^{-1} 1
    a = gram(kernel, n).shifted_exact()
    try:
        y = solve(a, [1] * (n + 1))
    except SingularMatrix:
        return tuple(kernel_vector(a.shift(tn_exact(kernel, n))))
    total = sum(y, URational(0))
    return tuple(v / total for v in y)


def signature_certified(g, precision: int = DEFAULT_PRECISION) -> Signature:
    """Signature (pos, zero, neg) of a GramMatrix or of a nested sequence of
    values, certified by exact or interval LDL."""
    rows = g.entries if isinstance(g, GramMatrix) else g
    return certified_inertia(rows, precision)


def shifted_signature(kernel: KernelSpec, n: int, t, precision: int = DEFAULT_PRECISION, method: str = "auto") -> Signature:
    """Signature of t phi_n^2 - q_n^H.

    ``method='exact'`` compares t with the exact threshold (signature
    (n+1,0,0) above it and (n,0,1) below it); ``'ldl'`` runs interval LDL on
    the matrix; ``'auto'`` prefers the exact route when available.
    """
    if method == "auto":
        method = "exact" if kernel.exact_qu else "ldl"
    if method == "exact":
        if not kernel.exact_qu:
            raise DomainError(f"no exact threshold for kernel {kernel.name}")
        T = tn_exact(kernel, n)

        def diff(prec):
            with workprec(prec + 32):
                return CertifiedInterval(to_arb(t) + arb.const_euler() - T.eval_ball())

        s = decide_sign(diff, precision)
        return Signature(n + 1, 0, 0) if s is Sign.POSITIVE else Signature(n, 0, 1)
    g = gram(kernel, n, precision)

    def build(prec):
        with workprec(prec):
            tb = to_arb(t)
            d = [tb - to_arb(v) for v in g.diagonals()]
            return [[d[abs(i - j)] for j in range(n + 1)] for i in range(n + 1)]

    return certified_inertia(build, precision)


def log2pi(precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    with workprec(precision + 16):
        return CertifiedInterval((2 * arb.pi()).log())


# --------------------------------------------------------------------------
# witnesses


def _central_binomial_vector(n: int):
    return [comb(2 * k, k) * comb(2 * (n - k), n - k) for k in range(n + 1)]


def _four_ones_vector(n: int):
    x = [1] * (n + 1)
    x[0] = x[n] = 4
    if n % 2 == 0:
        x[n // 2] = 0
    return x


@dataclass(frozen=True)
class WitnessCase:
    name: str
    kernel: KernelSpec
    n: int
    vector: Tuple[int, ...]
    normalize: bool
    description: str


WITNESSES = {
    "GRH-25": WitnessCase("GRH-25", GRH, 25, tuple(_central_binomial_vector(25)), True,
                          "x_k = C(2k,k) C(2(25-k),25-k), normalised to coordinate sum 1"),
    "NonGRH-24": WitnessCase("NonGRH-24", NONGRH, 24, tuple(_four_ones_vector(24)), True,
                             "x = (4,1,...,1,0,1,...,1,4), normalised"),
    "NonGRH-25": WitnessCase("NonGRH-25", NONGRH, 25, tuple(_four_ones_vector(25)), True,
                             "x = (4,1,...,1,4), normalised"),
    "KR-U25": WitnessCase("KR-U25", GRH, 25, tuple(_four_ones_vector(25)), False,
                          "res(I1+I3+...+I23+4*I25) = (4,1,...,1,4), unnormalised"),
    "KR-V24": WitnessCase("KR-V24", NONGRH, 24, tuple(_four_ones_vector(24)), False,
                          "res(I2+I4+...+I22+4*I24) = (4,1,...,1,0,1,...,1,4), unnormalised"),
}


def q_value(kernel: KernelSpec, x: Sequence, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """q_n^H(x) for a vector of rationals."""
    n = len(x) - 1
    g = gram(kernel, n, precision)
    with workprec(precision + 32):
        d = [to_arb(v) for v in g.diagonals()]
        xs = [to_arb(Fraction(v)) for v in x]
        acc = arb(0)
        for i in range(n + 1):
            for j in range(n + 1):
                acc += xs[i] * xs[j] * d[abs(i - j)]
        return CertifiedInterval(acc)


def witness_vector(case: str):
    c = WITNESSES[case]
    if c.normalize:
        s = sum(c.vector)
        return [Fraction(v, s) for v in c.vector]
    return [Fraction(v) for v in c.vector]


def witness_q(case: str, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    c = WITNESSES[case]
    return q_value(c.kernel, witness_vector(case), precision)


def witness_value(case: str, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """log(2 pi) phi_n(x)^2 - q_n^H(x) on the named witness vector."""
    if case not in WITNESSES:
        raise KeyError(f"unknown witness {case!r}; choose from {sorted(WITNESSES)}")
    c = WITNESSES[case]
    x = witness_vector(case)
    phi = sum(x)
    q = witness_q(case, precision)
    with workprec(precision + 32):
        return CertifiedInterval((2 * arb.pi()).log() * to_arb(phi * phi) - q.ball)
