import json

import pytest

from weilforms.cli import build_parser, main, parse_w_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_w_range():
    assert parse_w_range("0..3,23,24") == [0, 1, 2, 3, 23, 24]
    assert parse_w_range("5") == [5]


def test_tables_r(capsys):
    code, out, _ = run(capsys, "tables", "--w", "0..14", "--kind", "r")
    assert code == 0
    lines = out.splitlines()
    assert lines[1].split() == ["0", "22.3816", "44.7632"]
    assert lines[-1].split() == ["14", "1.6082", "1.7329"]


def test_tables_s_csv(capsys):
    code, out, _ = run(capsys, "tables", "--kind", "s", "--format", "csv")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[1] == "0,2.67" and rows[11] == "10,1.00" and rows[-1] == "0',2.323"


def test_tables_exact(capsys):
    code, out, _ = run(capsys, "tables", "--w", "1", "--kind", "r", "--exact")
    assert code == 0 and "r(1) = 2*pi*exp(gamma)" in out


def test_tn(capsys):
    _, out, _ = run(capsys, "tn", "--kernel", "nongrh", "--n", "6")
    assert "(52333u - 27852)/(44292u - 23701)" in out
    _, out, _ = run(capsys, "tn", "--kernel", "grh", "--n", "24", "--numeric")
    assert "t_24 = 1.812448" in out and "< log 2pi" in out
    _, out, _ = run(capsys, "tn", "--kernel", "nongrh", "--n", "23", "--numeric", "--format", "json")
    data = json.loads(out)
    assert data["t_n"].startswith("1.821") and "< log 2pi = 1.837877" in data["compare"]


def test_gram_and_signature(capsys):
    _, out, _ = run(capsys, "gram", "--kernel", "log", "--n", "2", "--format", "json")
    assert json.loads(out)["entries"][0][1] == "log2"
    _, out, _ = run(capsys, "signature", "--kernel", "log", "--n", "10", "--format", "json")
    assert json.loads(out)["signature"] == [1, 0, 10]
    _, out, _ = run(capsys, "signature", "--kernel", "nongrh", "--n", "24", "--t", "log2pi", "--format", "json")
    assert json.loads(out)["positive_definite"] is False


def test_witness(capsys):
    _, out, _ = run(capsys, "witness", "--case", "NonGRH-24", "--format", "json")
    row = json.loads(out)[0]
    assert abs(float(row["q"]) - 1.852) < 1e-3 and row["log2pi_phi2_minus_q"].startswith("-")


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--r1", "1", "--r2", "0", "--rootdisc", "1", "--w", "4", "--normN", "1")
    assert code == 0
    data = json.loads(out)
    assert data["total_bound"] == 2
    code2, out2, _ = run(capsys, "enumerate", "--r1", "1", "--r2", "0", "--rootdisc", "1", "--w", "4", "--normN", "1")
    assert out2 == out


def test_enumerate_grh(capsys):
    code, out, _ = run(capsys, "enumerate", "--w", "2", "--grh", "--lambda-grid", "4,8")
    assert code == 0 and json.loads(out)["test_function"] == "G_lambda"


def test_enumerate_errors(capsys):
    code, _, err = run(capsys, "enumerate", "--rootdisc", "2.7", "--r1", "1", "--w", "8")
    assert code == 2 and "2.6375" in err
    code, _, err = run(capsys, "enumerate", "--w", "24", "--grh", "--lambda-grid", "1")
    assert code == 2 and "positive definite" in err


def test_enumerate_node_budget(capsys):
    code, _, err = run(capsys, "enumerate", "--w", "6", "--rootdisc", "2", "--lambda-grid", "2", "--max-nodes", "10")
    assert code == 2 and "more than 10 nodes" in err


def test_precision_flag_and_env(capsys, monkeypatch):
    with pytest.raises(SystemExit):
        main(["tables", "--precision-bits", "32"])
    monkeypatch.setenv("WEILFORMS_PRECISION_BITS", "128")
    assert build_parser().parse_args(["tables"]).precision_bits == 128


@pytest.mark.parametrize("suite", ["table1", "cutoffs"])
def test_verify(capsys, suite):
    code, out, _ = run(capsys, "verify", suite)
    assert code == 0 and "[FAIL]" not in out


def test_help_mentions_formulas():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    for name, p in sub.choices.items():
        assert p.description, name
