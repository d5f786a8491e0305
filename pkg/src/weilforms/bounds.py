"""Root-discriminant thresholds r(w), r*(w), the constants s(w), s'(0) and the
two tables built from them."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from flint import arb

from .certified_linalg import interval_solve
from .errors import DomainError, Undecidable
from .exact_linear import URational
from .odlyzko import LOG2, Variant, j_functional
from .qform import NONGRH, tn_exact
from .special_functions import (
    DEFAULT_PRECISION,
    MAX_PRECISION,
    CertifiedInterval,
    harmonic,
    psi_half_integer,
    to_arb,
    workprec,
)

W_CAP = 30


def _check_w(w: int, cap: Optional[int] = W_CAP):
    if w < 0 or (cap is not None and w > cap):
        raise DomainError(f"w must lie in [0, {cap}]")


def t_w(w: int, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """t(w) = log 2 pi - t_w^H for the non-GRH kernel."""
    _check_w(w)
    T = tn_exact(NONGRH, w)
    with workprec(precision + 32):
        return CertifiedInterval((2 * arb.pi()).log() + arb.const_euler() - T.eval_ball())


def r_w(w: int, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """r(w) = exp(log 2 pi - t_w^H) = 2 pi e^gamma e^{-(t_w + gamma)}."""
    with workprec(precision + 32):
        return CertifiedInterval(t_w(w, precision).ball.exp())


def t_star_w(w: int, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """t*(w) = log 2 pi - t_w^H for H = e^{-t/2}, i.e. log 8 pi + gamma - h_w."""
    _check_w(w, None)
    with workprec(precision + 32):
        return CertifiedInterval((8 * arb.pi()).log() + arb.const_euler() - to_arb(harmonic(w)))


def r_star_w(w: int, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """r*(w) = 8 pi e^{gamma - h_w}."""
    with workprec(precision + 32):
        return CertifiedInterval(t_star_w(w, precision).ball.exp())


def rw_from_Mw(w: int, precision: int = DEFAULT_PRECISION) -> CertifiedInterval:
    """Second route to r(w): t(w) = 1 / (sum of the entries of M(w)^{-1}) with
    M(w) = (log pi - psi((1 + |i-j|)/2)), solved in interval arithmetic."""
    _check_w(w)
    prec = precision
    while True:
        try:
            with workprec(prec + 32):
                logpi = arb.pi().log()
                d = [logpi - to_arb(psi_half_integer(1 + k)) for k in range(w + 1)]
                rows = [[d[abs(i - j)] for j in range(w + 1)] for i in range(w + 1)]
                x = interval_solve(rows, [arb(1)] * (w + 1))
                c = sum(x, arb(0))
                return CertifiedInterval((1 / c).exp())
        except Exception as exc:  # noqa: BLE001
            if prec >= MAX_PRECISION:
                raise Undecidable(f"M({w}) inversion undecided: {exc}") from exc
            prec *= 2


def closed_form_r(w: int) -> Optional[str]:
    """Closed form of r(w) as text (r(0) = 4 pi e^gamma, r(1) = 2 pi e^gamma,
    otherwise 2 pi exp(gamma - (t_w + gamma)) with t_w + gamma in Q(u), u = log 2)."""
    T = tn_exact(NONGRH, w)
    if w == 0:
        return "4*pi*exp(gamma)"
    if T.is_zero():
        return "2*pi*exp(gamma)"
    return f"2*pi*exp(gamma - ({T})) with u = log(2)"


def closed_form_r_star(w: int) -> str:
    h = harmonic(w)
    return "8*pi*exp(gamma)" if h == 0 else f"8*pi*exp(gamma - {h})"


@dataclass(frozen=True)
class BoundRow:
    w: int
    r_w: CertifiedInterval
    r_star_w: CertifiedInterval
    t_w_exact: URational


@dataclass(frozen=True)
class SRow:
    w: int
    s: CertifiedInterval


def table1_rows(ws: Iterable[int], precision: int = DEFAULT_PRECISION) -> List[BoundRow]:
    return [BoundRow(w, r_w(w, precision), r_star_w(w, precision), tn_exact(NONGRH, w)) for w in ws]


def s_w_table(precision: int = DEFAULT_PRECISION, w_max: int = 10):
    """s(w) = exp(J(eta^w)) for F = F_{log 2}, w = 0..w_max, and
    s'(0) = exp(2 J(eps))."""
    J = j_functional(Variant.F, LOG2, "real", w_max, precision)
    rows = [SRow(w, J.eta[w].exp()) for w in range(w_max + 1)]
    s_prime = (J.j_eps * 2).exp()
    return rows, s_prime


# --------------------------------------------------------------------------
# certified decimal output


def _fmt_scaled(n: int, digits: int) -> str:
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"


def round_certified(x: CertifiedInterval, digits: int) -> str:
    """Round half-even to ``digits`` decimals, requiring both endpoints of the
    interval to round to the same decimal."""
    scale = 10**digits
    lo, hi = round(x.lo * scale), round(x.hi * scale)
    if lo != hi:
        raise Undecidable(f"interval {x} too wide to round to {digits} decimals")
    return _fmt_scaled(lo, digits)


def table1_csv(rows: Sequence[BoundRow], digits: int = 4) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["w", "r", "r_star"])
    for row in rows:
        wr.writerow([row.w, round_certified(row.r_w, digits), round_certified(row.r_star_w, digits)])
    return buf.getvalue()


def _endpoints(x: CertifiedInterval):
    return [float(x.lo), float(x.hi)]


def table1_json(rows: Sequence[BoundRow], digits: int = 4) -> str:
    out = [
        {
            "w": row.w,
            "r": round_certified(row.r_w, digits),
            "r_star": round_certified(row.r_star_w, digits),
            "r_interval": _endpoints(row.r_w),
            "r_star_interval": _endpoints(row.r_star_w),
            "t_plus_gamma": str(row.t_w_exact),
        }
        for row in rows
    ]
    return json.dumps(out, indent=2)


def table2_csv(rows: Sequence[SRow], s_prime, digits: int = 2) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["w", "s"])
    for row in rows:
        wr.writerow([row.w, round_certified(row.s, digits)])
    wr.writerow(["0'", round_certified(s_prime, 3)])
    return buf.getvalue()


def table2_json(rows: Sequence[SRow], s_prime, digits: int = 2) -> str:
    out = {
        "rows": [{"w": r.w, "s": round_certified(r.s, digits), "s_interval": _endpoints(r.s)} for r in rows],
        "s_prime_0": round_certified(s_prime, 3),
        "s_prime_0_interval": _endpoints(s_prime),
    }
    return json.dumps(out, indent=2)
