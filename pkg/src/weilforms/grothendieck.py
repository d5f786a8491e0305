"""Integer models of the Grothendieck rings K_R and K_C.

K_C = Z[eta, eta^-1] (eta^v the character z -> (z/|z|)^v of C^*), and K_R has
Z-basis 1, eps (the sign character) and I_w (w >= 1, the two-dimensional
induced representations) with

    I_a I_b = I_{a+b} + I_{|a-b|},   I_0 = 1 + eps,   eps I_w = I_w,   eps^2 = 1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .certified_linalg import certified_inertia
from .errors import IncompleteFunctional
from .special_functions import CertifiedInterval, DEFAULT_PRECISION, to_arb, workprec

ONE = "1"
EPS = "eps"
RealKey = Union[str, int]


def _clean(coeffs: Mapping) -> Tuple:
    return tuple(sorted(((k, int(c)) for k, c in coeffs.items() if c), key=lambda kc: _key_order(kc[0])))


def _key_order(k):
    if k == ONE:
        return (0, 0)
    if k == EPS:
        return (1, 0)
    return (2, k)


def _fmt_terms(items, name) -> str:
    out = []
    for k, c in items:
        base = name(k)
        if c == 1:
            term = base
        elif c == -1:
            term = "-" + base
        else:
            term = f"{c}*{base}"
        if out and not term.startswith("-"):
            term = "+" + term
        out.append(term)
    return "".join(out) if out else "0"


@dataclass(frozen=True)
class VirtualRepC:
    """Element of K_C: finitely supported map v -> c_v over the basis eta^v."""

    terms: Tuple[Tuple[int, int], ...] = ()

    def __init__(self, coeffs: Union[Mapping[int, int], Iterable[Tuple[int, int]]] = ()):
        d: Dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for k, c in items:
            d[int(k)] = d.get(int(k), 0) + int(c)
        object.__setattr__(self, "terms", tuple(sorted((k, c) for k, c in d.items() if c)))

    @classmethod
    def eta(cls, v: int, c: int = 1) -> "VirtualRepC":
        return cls({v: c})

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self.terms)

    def __add__(self, o):
        if not isinstance(o, VirtualRepC):
            return NotImplemented
        return VirtualRepC(list(self.terms) + list(o.terms))

    def __neg__(self):
        return VirtualRepC((k, -c) for k, c in self.terms)

    def __sub__(self, o):
        if not isinstance(o, VirtualRepC):
            return NotImplemented
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int) and not isinstance(o, bool):
            return VirtualRepC((k, c * o) for k, c in self.terms)
        if isinstance(o, VirtualRepR):
            raise TypeError("cannot multiply elements of K_C and K_R")
        if not isinstance(o, VirtualRepC):
            return NotImplemented
        return VirtualRepC((a + b, c * d) for a, c in self.terms for b, d in o.terms)

    def __rmul__(self, o):
        if isinstance(o, int) and not isinstance(o, bool):
            return self * o
        return NotImplemented

    def dual(self) -> "VirtualRepC":
        return VirtualRepC((-k, c) for k, c in self.terms)

    def dim(self) -> int:
        return sum(c for _, c in self.terms)

    def weights(self):
        return [k for k, _ in self.terms]

    def __str__(self):
        return _fmt_terms(self.terms, lambda v: f"e^{v}")


@dataclass(frozen=True)
class VirtualRepR:
    """Element of K_R over the basis 1, eps, I_w (w >= 1)."""

    terms: Tuple[Tuple[RealKey, int], ...] = ()

    def __init__(self, coeffs: Union[Mapping, Iterable] = ()):
        d: Dict = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for k, c in items:
            for kk, cc in _expand_key(k):
                d[kk] = d.get(kk, 0) + cc * int(c)
        object.__setattr__(self, "terms", _clean(d))

    @classmethod
    def one(cls) -> "VirtualRepR":
        return cls({ONE: 1})

    @classmethod
    def eps(cls) -> "VirtualRepR":
        return cls({EPS: 1})

    @classmethod
    def I(cls, w: int, c: int = 1) -> "VirtualRepR":
        return cls({abs(int(w)): c})

    @property
    def coeffs(self) -> Dict:
        return dict(self.terms)

    def __add__(self, o):
        if not isinstance(o, VirtualRepR):
            return NotImplemented
        return VirtualRepR(list(self.terms) + list(o.terms))

    def __neg__(self):
        return VirtualRepR((k, -c) for k, c in self.terms)

    def __sub__(self, o):
        if not isinstance(o, VirtualRepR):
            return NotImplemented
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int) and not isinstance(o, bool):
            return VirtualRepR((k, c * o) for k, c in self.terms)
        if isinstance(o, VirtualRepC):
            raise TypeError("cannot multiply elements of K_R and K_C")
        if not isinstance(o, VirtualRepR):
            return NotImplemented
        acc: Dict = {}
        for a, c in self.terms:
            for b, d in o.terms:
                for k, e in _basis_product(a, b):
                    acc[k] = acc.get(k, 0) + c * d * e
        return VirtualRepR(acc)

    def __rmul__(self, o):
        if isinstance(o, int) and not isinstance(o, bool):
            return self * o
        return NotImplemented

    def dual(self) -> "VirtualRepR":
        return self

    def dim(self) -> int:
        return sum(c * _basis_dim(k) for k, c in self.terms)

    def __str__(self):
        return _fmt_terms(self.terms, lambda k: k if isinstance(k, str) else f"I{k}")


def _expand_key(k):
    """Normalise a basis key; I_0 becomes 1 + eps."""
    if k in (ONE, EPS):
        return [(k, 1)]
    if isinstance(k, str):
        m = re.fullmatch(r"I(\d+)", k)
        if not m:
            raise ValueError(f"unknown basis element {k!r}")
        k = int(m.group(1))
    k = abs(int(k))
    if k == 0:
        return [(ONE, 1), (EPS, 1)]
    return [(k, 1)]


def _basis_dim(k) -> int:
    return 1 if k in (ONE, EPS) else 2


def _basis_product(a, b):
    if a == ONE:
        return [(b, 1)]
    if b == ONE:
        return [(a, 1)]
    if a == EPS and b == EPS:
        return [(ONE, 1)]
    if a == EPS:
        return [(b, 1)]
    if b == EPS:
        return [(a, 1)]
    out = _expand_key(a + b) + _expand_key(abs(a - b))
    return out


VirtualRep = Union[VirtualRepR, VirtualRepC]


def mul(a: VirtualRep, b: VirtualRep) -> VirtualRep:
    if type(a) is not type(b):
        raise TypeError("mixed field tags in mul")
    return a * b


def dual(a: VirtualRep) -> VirtualRep:
    return a.dual()


def dim(a: VirtualRep) -> int:
    return a.dim()


def ind(u: VirtualRepC) -> VirtualRepR:
    """Induction from C^* to W_R: eta^w -> I_|w| (I_0 = 1 + eps)."""
    return VirtualRepR((abs(k), c) for k, c in u.terms)


def res(v: VirtualRepR) -> VirtualRepC:
    """Restriction: 1, eps -> eta^0 and I_w -> eta^w + eta^-w."""
    acc: Dict[int, int] = {}
    for k, c in v.terms:
        if k in (ONE, EPS):
            acc[0] = acc.get(0, 0) + c
        else:
            acc[k] = acc.get(k, 0) + c
            acc[-k] = acc.get(-k, 0) + c
    return VirtualRepC(acc)


def is_effective(v: VirtualRep) -> bool:
    return all(c >= 0 for _, c in v.terms)


def parse_virtual_rep(text: str) -> VirtualRep:
    """Parse canonical text such as 'I1+4*I25', '1+eps-I3' or 'e^-3+e^3'."""
    t = text.replace(" ", "")
    if not t or t == "0":
        raise ValueError("empty representation text; use an explicit field")
    pieces = re.findall(r"([+-]?)(?:(\d+)\*)?(e\^-?\d+|I\d+|eps|1)", t)
    rebuilt = "".join(s + (n + "*" if n else "") + b for s, n, b in pieces)
    if rebuilt.lstrip("+") != t.lstrip("+"):
        raise ValueError(f"cannot parse virtual representation {text!r}")
    complex_terms, real_terms = [], []
    for sgn, num, base in pieces:
        c = int(num) if num else 1
        if sgn == "-":
            c = -c
        if base.startswith("e^"):
            complex_terms.append((int(base[2:]), c))
        else:
            real_terms.append((base, c))
    if complex_terms and real_terms:
        raise ValueError("mixed K_R and K_C terms")
    if complex_terms:
        return VirtualRepC(complex_terms)
    return VirtualRepR(real_terms)


# --------------------------------------------------------------------------
# filtration


@dataclass(frozen=True)
class FiltrationBasis:
    """Ordered Z-basis of K^{<=w} (generated by elements of weight <= w and
    weight congruent to w mod 2)."""

    field: str
    w: int
    elements: Tuple = ()

    def __init__(self, field_tag: str, w: int):
        if field_tag not in ("real", "complex"):
            raise ValueError("field must be 'real' or 'complex'")
        if w < 0:
            raise ValueError("w must be nonnegative")
        object.__setattr__(self, "field", field_tag)
        object.__setattr__(self, "w", w)
        if field_tag == "complex":
            els = tuple(VirtualRepC.eta(v) for v in range(-w, w + 1, 2))
        elif w % 2:
            els = tuple(VirtualRepR.I(v) for v in range(1, w + 1, 2))
        else:
            els = (VirtualRepR.one(), VirtualRepR.eps()) + tuple(VirtualRepR.I(v) for v in range(2, w + 1, 2))
        object.__setattr__(self, "elements", els)

    @property
    def rank(self) -> int:
        return len(self.elements)

    def dims(self):
        return [e.dim() for e in self.elements]

    def combine(self, coords: Sequence[int]):
        acc = VirtualRepC() if self.field == "complex" else VirtualRepR()
        for c, e in zip(coords, self.elements):
            if c:
                acc = acc + e * int(c)
        return acc

    def coordinates(self, v: VirtualRep):
        coeffs = v.coeffs
        out = []
        for e in self.elements:
            (k, _), = e.terms
            out.append(coeffs.pop(k, 0))
        if any(coeffs.values()):
            raise ValueError(f"{v} is not in K^<={self.w}")
        return out


def filtration_rank(field_tag: str, w: int) -> int:
    if field_tag == "complex":
        return w + 1
    return (w + 1) // 2 if w % 2 else w // 2 + 2


# --------------------------------------------------------------------------
# Archimedean functionals


@dataclass(frozen=True)
class JFunctional:
    """Values J(eta^w) = J(I_w) for 0 <= w <= w_max, plus J(1), J(eps)."""

    eta: Tuple[CertifiedInterval, ...]
    j_one: CertifiedInterval
    j_eps: CertifiedInterval
    label: str = ""

    @classmethod
    def from_eta_and_difference(cls, eta: Sequence, diff, label: str = "") -> "JFunctional":
        eta = tuple(CertifiedInterval(x) if not isinstance(x, CertifiedInterval) else x for x in eta)
        d = CertifiedInterval(diff) if not isinstance(diff, CertifiedInterval) else diff
        j0 = eta[0]
        return cls(eta, (j0 + d) / 2, (j0 - d) / 2, label)

    @property
    def w_max(self) -> int:
        return len(self.eta) - 1

    def eta_value(self, v: int) -> CertifiedInterval:
        v = abs(v)
        if v > self.w_max:
            raise IncompleteFunctional(f"J(eta^{v}) needed but only known up to {self.w_max}")
        return self.eta[v]

    def __call__(self, rep: VirtualRep) -> CertifiedInterval:
        acc = None
        for k, c in rep.terms:
            if isinstance(rep, VirtualRepC):
                val = self.eta_value(k)
            elif k == ONE:
                val = self.j_one
            elif k == EPS:
                val = self.j_eps
            else:
                val = self.eta_value(k)
            term = val * c
            acc = term if acc is None else acc + term
        return acc if acc is not None else CertifiedInterval(0)


def gram_leq_w(field_tag: str, w: int, J: JFunctional, c=0, precision: int = DEFAULT_PRECISION):
    """Gram matrix of <U, V>_F - c dim U dim V on the basis of K^{<=w}.

    <U, V> = J(U V^dual); on K_C this is J(eta^{a-b}), on K_R products of
    basis elements are expanded with the ring law.
    """
    basis = FiltrationBasis(field_tag, w)
    if 2 * w > J.w_max and basis.rank > 1:
        raise IncompleteFunctional(f"J must be known up to index {2 * w}")
    with workprec(precision + 16):
        cb = to_arb(c)
        rows = []
        for a in basis.elements:
            row = []
            for b in basis.elements:
                val = J(a * b.dual()).ball - cb * (a.dim() * b.dim())
                row.append(CertifiedInterval(val))
            rows.append(row)
    return rows


def form_value(J: JFunctional, v: VirtualRep, c=0, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """<V, V>_F - c dim(V)^2."""
    with workprec(precision + 16):
        return CertifiedInterval(J(v * v.dual()).ball - to_arb(c) * v.dim() ** 2)


def wrwc_equivalence_check(w: int, J: JFunctional, t, precision: int = DEFAULT_PRECISION) -> Tuple[bool, bool]:
    """(posdef of <,> - (t/2) dim^2 on K_R^{<=w}, posdef of <,> - t dim^2 on K_C^{<=w})."""
    with workprec(precision + 16):
        tb = to_arb(t)
        real = gram_leq_w("real", w, J, tb / 2, precision)
        cplx = gram_leq_w("complex", w, J, tb, precision)
    r = certified_inertia(real, precision).is_positive_definite()
    c = certified_inertia(cplx, precision).is_positive_definite()
    return r, c
