"""Acceptance checks grouped into named suites.

Every check returns a :class:`Check`; reference tables and exact values are
frozen here as literals.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor
from typing import Callable, Dict, List

from flint import arb

from .bounds import closed_form_r, r_star_w, r_w, rw_from_Mw, s_w_table
from .certified_linalg import certified_inertia
from .enumeration import (
    RATIONALS,
    FieldSignature,
    brute_force_candidates,
    build_problem,
    effective_report,
    enumerate_candidates,
)
from .errors import NotPositiveDefinite
from .exact_linear import URational
from .grothendieck import (
    FiltrationBasis,
    VirtualRepC,
    VirtualRepR,
    dim,
    dual,
    filtration_rank,
    ind,
    mul,
    res,
    wrwc_equivalence_check,
)
from .odlyzko import (
    Variant,
    fhat_at_i4pi,
    fhat_at_i4pi_quadrature,
    g,
    ghat,
    j_difference,
    j_functional,
    psi_h_limit,
    psi_h_quadrature,
    self_convolution_g,
)
from .orthopoly import arcsin_moments, legendre_coeffs, tn_via_pairing
from .qform import (
    GRH,
    INVLINEAR,
    LOGKERNEL,
    NONGRH,
    gram,
    odlyzko_kernel,
    shifted_signature,
    signature_certified,
    tn_exact,
    tn_numeric,
    vn,
    witness_q,
    witness_value,
)
from .special_functions import DEFAULT_PRECISION, CertifiedInterval, Sign, harmonic, to_arb, workprec

# reference values
TABLE1 = {
    0: ("22.3816", "44.7632"), 1: ("11.1908", "16.4675"), 2: ("7.5690", "9.9880"),
    3: ("5.7456", "7.1567"), 4: ("4.6401", "5.5737"), 5: ("3.8959", "4.5633"),
    6: ("3.3597", "3.8628"), 7: ("2.9546", "3.3486"), 8: ("2.6375", "2.9551"),
    9: ("2.3824", "2.6443"), 10: ("2.1726", "2.3927"), 11: ("1.9971", "2.1848"),
    12: ("1.8480", "2.0101"), 13: ("1.7197", "1.8613"), 14: ("1.6082", "1.7329"),
    23: ("1.0167", "1.0694"), 24: ("0.9768", "1.0258"),
}
TABLE2 = ("2.67", "2.34", "2.06", "1.84", "1.66", "1.50", "1.37", "1.26", "1.16", "1.08", "1.00")
S_PRIME_0 = "2.323"
EXACT_TABLE = (
    "-u", "0", "u/(4u - 1)", "2/3", "(107u - 48)/(128u - 59)", "153/145",
    "(52333u - 27852)/(44292u - 23701)", "446591/335349",
)
WITNESS_Q = {"NonGRH-24": "1.852", "NonGRH-25": "1.885"}
WITNESS_U25 = "-1.04"


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}: {self.detail}"


def _within(x: CertifiedInterval, ref, tol) -> bool:
    ref, tol = Fraction(ref), Fraction(tol)
    return ref - tol <= x.lo and x.hi <= ref + tol


def _fmt(x: CertifiedInterval, digits: int = 6) -> str:
    return f"{float(x.mid):.{digits}f}"


# ---------------------------------------------------------------- 1, 2


def table1(precision: int = DEFAULT_PRECISION) -> List[Check]:
    t0 = time.perf_counter()
    bad = []
    for w, (r, rs) in TABLE1.items():
        a, b = r_w(w, precision), r_star_w(w, precision)
        if not (_within(a, r, "1e-4") and _within(b, rs, "1e-4")):
            bad.append(f"w={w}: r={_fmt(a)} r*={_fmt(b)}")
    dt = time.perf_counter() - t0
    return [
        Check("table1 r(w), r*(w) to 1e-4", not bad, "; ".join(bad) or f"{len(TABLE1)} rows match"),
        Check("table1 runtime < 60 s", dt < 60, f"{dt:.1f} s"),
    ]


def closed_forms(precision: int = DEFAULT_PRECISION) -> List[Check]:
    tol = Fraction(1, 10**12)
    with workprec(precision + 16):
        pi, eg = arb.pi(), arb.const_euler().exp()
        cf1 = CertifiedInterval(2 * pi * eg)
        cf0 = CertifiedInterval(4 * pi * eg)
        star_ok = True
        for w in range(0, 31):
            cf = CertifiedInterval(8 * pi * (arb.const_euler() - to_arb(harmonic(w))).exp())
            if abs(r_star_w(w, precision).mid - cf.mid) >= tol:
                star_ok = False
    d1 = abs(r_w(1, precision).mid - cf1.mid)
    d0 = abs(r_w(0, precision).mid - cf0.mid)
    m_ok = all(abs(rw_from_Mw(w, precision).mid - r_w(w, precision).mid) < Fraction(1, 10**8) for w in range(26))
    return [
        Check("r(1) = 2 pi e^gamma to 1e-12", d1 < tol and closed_form_r(1) == "2*pi*exp(gamma)", f"diff {float(d1):.1e}"),
        Check("r(0) = 4 pi e^gamma to 1e-12", d0 < tol and closed_form_r(0) == "4*pi*exp(gamma)", f"diff {float(d0):.1e}"),
        Check("r*(w) = 8 pi e^(gamma - h_w) to 1e-12", star_ok, "w = 0..30"),
        Check("r(w) via M(w)^-1 agrees to 1e-8", m_ok, "w = 0..25"),
    ]


# ---------------------------------------------------------------- 3, 4, 5, 6


def exact_table() -> List[Check]:
    got = tuple(str(tn_exact(NONGRH, n)) for n in range(8))
    bad = [f"n={n}: {a} != {b}" for n, (a, b) in enumerate(zip(got, EXACT_TABLE)) if a != b]
    return [Check("t_n + gamma, non-GRH kernel, n = 0..7 exact", not bad, "; ".join(bad) or ", ".join(got))]


def cutoffs(precision: int = DEFAULT_PRECISION) -> List[Check]:
    with workprec(precision + 16):
        t = (2 * arb.pi()).log()
    out = []
    for kernel, last in ((GRH, 24), (NONGRH, 23)):
        pd = [shifted_signature(kernel, n, t, precision, method="ldl").is_positive_definite() for n in range(last + 3)]
        expect = [n <= last for n in range(last + 3)]
        out.append(Check(f"log 2pi phi^2 - q_n posdef iff n <= {last} ({kernel.name}, interval LDL)", pd == expect,
                         "n = 0..%d" % (last + 2)))
        ex = [shifted_signature(kernel, n, t, precision, method="exact").is_positive_definite() for n in range(last + 3)]
        out.append(Check(f"same cutoff from the exact threshold ({kernel.name})", ex == expect, ""))
    with workprec(precision + 16):
        c = CertifiedInterval(arb.const_euler() + (8 * arb.pi()).log())
        lo = CertifiedInterval(c.ball - to_arb(harmonic(24)))
        hi = CertifiedInterval(to_arb(harmonic(25)) - c.ball)
    out.append(Check("h_24 < gamma + log 8pi < h_25", lo.sign() is Sign.POSITIVE and hi.sign() is Sign.POSITIVE,
                     f"margins {_fmt(lo)} and {_fmt(hi)}"))
    return out


def witnesses(precision: int = DEFAULT_PRECISION) -> List[Check]:
    out = []
    for case, ref in WITNESS_Q.items():
        q = witness_q(case, precision)
        out.append(Check(f"q({case} witness) = {ref} +- 1e-3", _within(q, ref, "1e-3"), _fmt(q)))
    v = witness_value("KR-U25", precision)
    out.append(Check("log 2pi phi^2 - q on the weight-25 witness = -1.04 +- 1e-2", _within(v, WITNESS_U25, "1e-2"), _fmt(v)))
    return out


def signatures(precision: int = DEFAULT_PRECISION) -> List[Check]:
    # n = 0 is the 1x1 zero matrix, so the log example starts at n = 1
    log_ok = all(signature_certified(gram(LOGKERNEL, n, precision), precision).as_tuple() == (1, 0, n)
                 for n in range(1, 21))
    inv_ok = all(signature_certified([[Fraction(1, 1 + abs(i - j)) for j in range(n + 1)] for i in range(n + 1)],
                                     precision).is_positive_definite()
                 for n in range(21))
    return [
        Check("(log(1+|i-j|)) has signature (1, 0, n), 1 <= n <= 20", log_ok, ""),
        Check("(1/(1+|i-j|)) positive definite, n <= 20", inv_ok, ""),
    ]


# ---------------------------------------------------------------- 7, 8


def oracles(precision: int = DEFAULT_PRECISION) -> List[Check]:
    leg = all(tuple(URational.coerce(x) for x in legendre_coeffs(n).coeffs) == vn(GRH, n) and
              legendre_coeffs(n).coeffs == tuple(Fraction(comb(2 * k, k) * comb(2 * (n - k), n - k), 4**n)
                                                 for k in range(n + 1))
              for n in range(11))
    tol = Fraction(1, 10**10)
    pair = True
    for kernel in (GRH, NONGRH):
        for n in range(11):
            if abs(tn_via_pairing(kernel, n, precision).mid - tn_numeric(kernel, n, precision).mid) >= tol:
                pair = False
    mu = arcsin_moments(2)
    mom = str(mu[0]) == "log2" and mu[2].is_rational and mu[2].rat == Fraction(1, 4)
    out = [
        Check("v_n(GRH) = 4^-n C(2k,k) C(2(n-k),n-k), n <= 10", leg, ""),
        Check("pairing route = Gram route for t_n to 1e-10 (both kernels, n <= 10)", pair, ""),
        Check("arcsin moments mu_0 = log 2, mu_2 = 1/4", mom, f"{mu[0]}, {mu[2]}"),
    ]
    out.extend(_enum_oracle_checks(small=True))
    return out


def test_functions(precision: int = DEFAULT_PRECISION) -> List[Check]:
    pts = [Fraction(k, 20) for k in range(20)]
    conv = max(abs(self_convolution_g(float(x)) - float(g(x, precision).mid)) for x in pts)
    # certified positive, except at the exact zeros xi = +-3/2, +-5/2, ...
    ghat_ok = all(
        ghat(x, precision).sign() is Sign.POSITIVE
        or (x.denominator == 2 and abs(x) > Fraction(1, 2) and ghat(x, precision).contains(0))
        for x in (Fraction(k, 8) for k in range(-64, 65)))
    out = [
        Check("g closed form = numerical self-convolution to 1e-10 at 20 points", conv < 1e-10, f"max diff {conv:.1e}"),
        Check("g^ >= 0 on xi in [-8, 8] step 1/8", ghat_ok, ""),
    ]
    fh_ok, worst = True, 0.0
    for lam in (Fraction(1), Fraction(2), Fraction(8)):
        exact = fhat_at_i4pi(Variant.F, lam)
        fh_ok &= exact.coeff == 8 * lam
        quad = fhat_at_i4pi_quadrature(Variant.F, lam, precision)
        worst = max(worst, abs(float(quad.mid - exact.eval(precision).mid)))
    out.append(Check("F_lambda^(i/4pi) = 8 lambda/pi^2 exactly, quadrature to 1e-8", fh_ok and worst < 1e-8,
                     f"max quadrature diff {worst:.1e}"))
    jd = []
    for v in Variant:
        for lam in (None, Fraction(1), Fraction(8)):
            d = j_difference(v, lam, precision)
            d = d if isinstance(d, CertifiedInterval) else d.eval(precision)
            jd.append(d.sign() is Sign.POSITIVE)
    out.append(Check("J(1) - J(eps) > 0 certified", all(jd), f"{len(jd)} cases"))
    return out


# ---------------------------------------------------------------- 9, 10


def table2(precision: int = DEFAULT_PRECISION) -> List[Check]:
    rows, sp = s_w_table(precision)
    bad = [f"w={r.w}: {_fmt(r.s, 4)}" for r, ref in zip(rows, TABLE2) if not _within(r.s, ref, "1e-2")]
    return [
        Check("s(w), w = 0..10 to 1e-2", not bad, "; ".join(bad) or "11 rows match"),
        Check("s'(0) = 2.323 +- 1e-3", _within(sp, S_PRIME_0, "1e-3"), _fmt(sp, 5)),
    ]


def _small_reps():
    reals = [VirtualRepR.one(), VirtualRepR.eps()] + [VirtualRepR.I(w) for w in range(1, 13)]
    cplx = [VirtualRepC.eta(v) for v in range(-12, 13)]
    return reals, cplx


def ring(precision: int = DEFAULT_PRECISION) -> List[Check]:
    reals, cplx = _small_reps()
    krl = True
    for a in range(1, 13):
        for b in range(1, 13):
            expect = VirtualRepR.I(a + b) + VirtualRepR.I(abs(a - b))
            krl &= mul(VirtualRepR.I(a), VirtualRepR.I(b)) == expect
        krl &= mul(VirtualRepR.I(a), VirtualRepR.eps()) == VirtualRepR.I(a)
    indres = all(res(ind(u)) == u + dual(u) for u in cplx) and all(
        ind(res(v)) == mul(VirtualRepR.one() + VirtualRepR.eps(), v) for v in reals)
    hom = all(res(mul(a, b)) == mul(res(a), res(b)) and dim(mul(a, b)) == dim(a) * dim(b)
              for a in reals for b in reals)
    ranks = all(FiltrationBasis(tag, w).rank == filtration_rank(tag, w) ==
                ((w + 1) if tag == "complex" else ((w + 1) // 2 if w % 2 else w // 2 + 2))
                for tag in ("real", "complex") for w in range(31))
    ts = (Fraction(-1, 2), Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1))
    eq, n = True, 0
    for v in Variant:
        J = j_functional(v, None, "real", 48, precision)
        for w in range(25):
            for t in ts:
                a, b = wrwc_equivalence_check(w, J, t, precision)
                eq &= a == b
                n += 1
    return [
        Check("I_a I_b = I_(a+b) + I_|a-b|, I_a eps = I_a (a, b <= 12)", krl, ""),
        Check("res ind U = U + U^dual, ind res V = I_0 V", indres, ""),
        Check("res and dim are ring homomorphisms", hom, ""),
        Check("filtration ranks, w <= 30", ranks, ""),
        Check("real/complex positive definiteness agree", eq, f"{n} cases (2 kernels, w <= 24, 5 values of t)"),
    ]


# ---------------------------------------------------------------- 11


def _oracle_problems(small: bool):
    fields = [RATIONALS, FieldSignature(1, 0, 1, 3), FieldSignature(0, 1, "sqrt(3)"), FieldSignature(2, 0, "sqrt(5)"),
              FieldSignature(1, 1, "23^(1/3)")]
    lams = (Fraction(8),) if small else (Fraction(2), Fraction(8), Fraction(64))
    wmax = 3 if small else 10
    for f in fields:
        for w in range(wmax + 1):
            for lam in lams:
                try:
                    p = build_problem(f, w, lam)
                except NotPositiveDefinite:
                    continue
                r2 = p.float_data()[2]
                if p.rank <= 6 and r2 <= 100:
                    yield f, w, lam, p


def _enum_oracle_checks(small: bool) -> List[Check]:
    bad, n = [], 0
    for f, w, lam, p in _oracle_problems(small):
        n += 1
        a = enumerate_candidates(p)
        if a != brute_force_candidates(p) or a != enumerate_candidates(p, backend="python"):
            bad.append(f"{f.as_dict()} w={w} lambda={lam}")
    return [Check("ellipsoid enumeration = brute-force box search (rank <= 6, radius <= 10)", not bad and n > 0,
                  "; ".join(bad) or f"{n} problems")]


def enumeration(precision: int = DEFAULT_PRECISION) -> List[Check]:
    out = _enum_oracle_checks(small=False)
    finite, det = True, True
    for w in range(5):
        r1 = effective_report(RATIONALS, w, precision=precision)
        r2 = effective_report(RATIONALS, w, precision=precision)
        det &= r1.to_json() == r2.to_json()
        finite &= isinstance(r1.total_bound, int) and all(isinstance(c.multiplicity_bound, int) for c in r1.candidates)
    out.append(Check("reports deterministic across runs", det, "Q, w <= 4"))
    out.append(Check("Q, w <= 4, ||N|| = 1: all multiplicity bounds finite", finite, ""))
    return out


# ---------------------------------------------------------------- 12


LIMIT_LAMBDAS = (Fraction(8), Fraction(16), Fraction(32), Fraction(64))


def limit_gaps(variant: Variant, precision: int = DEFAULT_PRECISION) -> Dict[int, List[float]]:
    """|psi_{H_lambda}(m) - psi_{H_oo}(m)| for integer m <= 10 (index 2m in
    half-units) over LIMIT_LAMBDAS."""
    out = {}
    for m in range(11):
        lim = to_arb(psi_h_limit(variant, 2 * m, precision))
        out[m] = [abs(float((psi_h_quadrature(variant, lam, 2 * m, precision).ball - lim).mid())) for lam in LIMIT_LAMBDAS]
    return out


def _gap_checks(variant: Variant, label: str, precision: int) -> List[Check]:
    gaps = limit_gaps(variant, precision)
    close = {m: v[-1] for m, v in gaps.items()}
    far = [f"m={m}: {g:.4f}" for m, g in close.items() if not g < 1e-2]
    mono = all(all(a > b for a, b in zip(v, v[1:])) for v in gaps.values())
    return [
        Check(f"{label}: |psi_H(lambda=64) - limit| < 1e-2, m <= 10", not far,
              "; ".join(far) or f"max {max(close.values()):.4f}"),
        Check(f"{label}: gap decreasing over lambda = 8, 16, 32, 64", mono, ""),
    ]


def limits(precision: int = DEFAULT_PRECISION) -> List[Check]:
    out = _gap_checks(Variant.F, "F_lambda", precision)
    ok = True
    for n in range(6):
        ts = [float(tn_numeric(odlyzko_kernel(Variant.F, lam), n, precision).mid) for lam in LIMIT_LAMBDAS]
        ok &= all(a >= b for a, b in zip(ts, ts[1:]))
    out.append(Check("log 2pi - t_n(F_lambda) nondecreasing in lambda, n <= 5", ok, ""))
    return out


def limits_grh_variant(precision: int = DEFAULT_PRECISION) -> List[Check]:
    """The same gap check for G_lambda (not part of the F_lambda criterion)."""
    return _gap_checks(Variant.G, "G_lambda", precision)


SUITES: Dict[str, Callable[..., List[Check]]] = {
    "table1": table1,
    "closed_forms": closed_forms,
    "exact_table": exact_table,
    "cutoffs": cutoffs,
    "witnesses": witnesses,
    "signatures": signatures,
    "oracles": oracles,
    "test_functions": test_functions,
    "table2": table2,
    "ring": ring,
    "enumeration": enumeration,
    "limits": limits,
}


def run_suite(name: str, precision: int = DEFAULT_PRECISION) -> List[Check]:
    if name == "all":
        return [c for key in SUITES for c in run_suite(key, precision)]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    fn = SUITES[name]
    return fn() if name == "exact_table" else fn(precision)
