import csv
import io
import json
from fractions import Fraction

import pytest
from flint import arb

from weilforms.bounds import (
    closed_form_r,
    closed_form_r_star,
    r_star_w,
    r_w,
    round_certified,
    rw_from_Mw,
    s_w_table,
    table1_csv,
    table1_json,
    table1_rows,
    table2_csv,
    table2_json,
)
from weilforms.errors import DomainError, Undecidable
from weilforms.special_functions import CertifiedInterval, workprec

TABLE1 = {
    0: ("22.3816", "44.7632"), 1: ("11.1908", "16.4675"), 2: ("7.5690", "9.9880"),
    3: ("5.7456", "7.1567"), 4: ("4.6401", "5.5737"), 5: ("3.8959", "4.5633"),
    6: ("3.3597", "3.8628"), 7: ("2.9546", "3.3486"), 8: ("2.6375", "2.9551"),
    9: ("2.3824", "2.6443"), 10: ("2.1726", "2.3927"), 11: ("1.9971", "2.1848"),
    12: ("1.8480", "2.0101"), 13: ("1.7197", "1.8613"), 14: ("1.6082", "1.7329"),
    23: ("1.0167", "1.0694"), 24: ("0.9768", "1.0258"),
}
TABLE2 = ("2.67", "2.34", "2.06", "1.84", "1.66", "1.50", "1.37", "1.26", "1.16", "1.08", "1.00")


@pytest.mark.parametrize("w", sorted(TABLE1))
def test_table1(w):
    assert round_certified(r_w(w), 4) == TABLE1[w][0]
    assert round_certified(r_star_w(w), 4) == TABLE1[w][1]


def test_closed_forms():
    with workprec(256):
        pi, eg = arb.pi(), arb.const_euler().exp()
        assert r_w(0).overlaps(4 * pi * eg)
        assert r_w(1).overlaps(2 * pi * eg)
        assert r_star_w(0).overlaps(8 * pi * eg)
    assert closed_form_r(0) == "4*pi*exp(gamma)"
    assert closed_form_r(1) == "2*pi*exp(gamma)"
    assert closed_form_r(4) == "2*pi*exp(gamma - ((107u - 48)/(128u - 59))) with u = log(2)"
    assert closed_form_r_star(2) == "8*pi*exp(gamma - 3/2)"


def test_cutoffs_bracket_one():
    assert r_w(23).certainly_gt(1) and r_w(24).certainly_lt(1)
    assert r_star_w(24).certainly_gt(1) and r_star_w(25).certainly_lt(1)


def test_monotone_and_ordered():
    rs = [r_w(w, 128) for w in range(26)]
    rss = [r_star_w(w, 128) for w in range(26)]
    for w in range(25):
        assert rs[w].certainly_gt(rs[w + 1].ball)
        assert rss[w].certainly_gt(rss[w + 1].ball)
    for w in range(26):
        assert rss[w].certainly_gt(rs[w].ball)


@pytest.mark.parametrize("w", range(0, 26))
def test_matrix_route_agrees(w):
    a, b = rw_from_Mw(w, 128), r_w(w, 128)
    assert a.overlaps(b)
    assert abs(a.mid - b.mid) < Fraction(1, 10**8)


def test_matrix_route_examples():
    assert round_certified(rw_from_Mw(3), 4) == "5.7456"
    assert round_certified(rw_from_Mw(12), 4) == "1.8480"


def test_s_table():
    rows, sp = s_w_table(256, w_max=14)
    assert tuple(round_certified(r.s, 2) for r in rows[:11]) == TABLE2
    assert round_certified(sp, 3) == "2.323"
    assert abs(float(rows[10].s) - 1.003) < 1e-3
    for a, b in zip(rows, rows[1:]):
        assert a.s.certainly_gt(b.s.ball)
    assert all(r.s.certainly_lt(1) for r in rows[11:])


def test_w_cap():
    with pytest.raises(DomainError):
        r_w(31)
    with pytest.raises(DomainError):
        r_w(-1)


def test_round_certified():
    assert round_certified(CertifiedInterval(Fraction(12345, 10000)), 2) == "1.23"
    assert round_certified(CertifiedInterval(Fraction(-5, 4)), 1) == "-1.2"
    assert round_certified(CertifiedInterval(Fraction(1, 400)), 2) == "0.00"
    with pytest.raises(Undecidable):
        round_certified(CertifiedInterval.from_endpoints(Fraction(1, 1000), Fraction(9, 1000)), 2)


def test_emitters():
    rows = table1_rows([0, 23, 24])
    parsed = list(csv.reader(io.StringIO(table1_csv(rows))))
    assert parsed == [["w", "r", "r_star"], ["0", "22.3816", "44.7632"], ["23", "1.0167", "1.0694"], ["24", "0.9768", "1.0258"]]
    data = json.loads(table1_json(rows))
    assert data[0]["t_plus_gamma"] == "-u"
    lo, hi = data[1]["r_interval"]
    assert lo <= 1.0167 + 5e-5 and hi >= 1.0167 - 5e-5
    srows, sp = s_w_table(128)
    assert table2_csv(srows, sp).splitlines()[-1] == "0',2.323"
    assert json.loads(table2_json(srows, sp))["s_prime_0"] == "2.323"
