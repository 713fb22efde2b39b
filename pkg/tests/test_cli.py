import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from gamma0pic import commands, symcheck
from gamma0pic.cli import dump_json, main
from gamma0pic.commands import ScanConfig, cmd_scan, scan_csv, special_curve, special_structure
from gamma0pic.ellcurve import Automorphism, Curve, Point, _map_point
from gamma0pic.exactfield import GF, embedding

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------- verify-identities


def test_verify_identities_text(capsys):
    code, out, _ = run(["verify-identities"], capsys)
    assert code == 0
    assert out.count("PASS") == 5 and out.rstrip().endswith("5/5 checks pass")


def test_verify_identities_golden(capsys):
    code, out, _ = run(["verify-identities", "--json"], capsys)
    assert code == 0
    assert out == (GOLDEN / "verify_identities.json").read_text()


def test_verify_identities_self_test(capsys):
    code, out, _ = run(["verify-identities", "--json", "--self-test"], capsys)
    rep = json.loads(out)
    assert code == 1
    status = {c["name"]: c["passed"] for c in rep["checks"]}
    assert status["discriminant_factorization"] and status["unit_factor_D"]
    assert not status["trivialization_weight_level_2"]
    # Delta and y0^2 do not involve x0
    assert status["discriminant_weight"] and status["trivialization_weight_level_3"]
    assert rep["grading"]["x0"] == 3


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "gamma0pic", "verify-identities"], capture_output=True, text=True)
    assert res.returncode == 0 and "5/5" in res.stdout


# ---------------------------------------------------------------- configuration errors


@pytest.mark.parametrize(
    "argv",
    [
        ["scan", "--p", "4", "--level", "2"],
        ["scan", "--p", "3", "--level", "2"],
        ["scan", "--p", "7", "--k", "0", "--level", "2"],
        ["special-points", "--p", "2"],
        ["lambda-order", "--level", "2", "--p", "15"],
    ],
)
def test_config_errors_exit_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == ""


def test_bad_level_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--p", "7", "--level", "5"])
    assert exc.value.code == 2


def test_enumeration_cap(monkeypatch, capsys):
    monkeypatch.setenv("GAMMA0_MAX_FIELD", "100")
    assert run(["scan", "--p", "11", "--k", "2", "--level", "2"], capsys)[0] == 2
    assert run(["scan", "--p", "7", "--level", "2"], capsys)[0] == 0


# ---------------------------------------------------------------- scan


def test_rational_versus_geometric_level2_p7():
    """mu_4 is not in F_7, so the order-4 locus appears only after base change."""
    rational = cmd_scan(ScanConfig(7, 1, 2, False))
    assert rational["passed"]
    assert rational["stabilizer_histogram"] == {"2": rational["total_pairs"]}
    assert any("mu_4" in w for w in rational["warnings"])
    geometric = cmd_scan(ScanConfig(7, 1, 2, True))
    assert geometric["passed"] and geometric["warnings"] == []
    assert set(geometric["stabilizer_histogram"]) == {"2", "4"}
    assert geometric["lambda_order"] == {"divides": 4, "multiple_of": 4, "order": 4}


def test_mu4_is_rational_over_f5():
    rep = cmd_scan(ScanConfig(5, 1, 2, False))
    assert rep["warnings"] == []
    assert "4" in rep["stabilizer_histogram"]


def test_level3_rational_p7_has_the_mu6_locus():
    rep = cmd_scan(ScanConfig(7, 1, 3, False))
    assert rep["passed"] and rep["warnings"] == []
    assert set(rep["stabilizer_histogram"]) == {"2", "6"}


def test_level3_warning_when_mu6_missing():
    rep = cmd_scan(ScanConfig(5, 1, 3, False))
    assert any("mu_6" in w for w in rep["warnings"])
    assert set(rep["stabilizer_histogram"]) <= {"2"}


def test_extension_field_scan():
    rep = cmd_scan(ScanConfig(5, 2, 2, True))
    assert rep["passed"]
    # 4A^3 + 27B^2 = 0 has exactly q solutions (A, B) = (-3t^2, 2t^3)
    assert rep["total_curves"] == 25 * 25 - 25
    assert rep["total_pairs"] == 3 * rep["total_curves"]


def test_exceptional_pairs_carry_witnesses():
    """Each order-4 pair is the image of (y^2 = x^3 - x, <(0,0)>) under the recorded u."""
    rep = cmd_scan(ScanConfig(13, 1, 2, True))
    assert rep["exceptional_pairs"]
    for rec in rep["exceptional_pairs"]:
        w = rec["witness"]
        assert w is not None
        F = GF(13, w["field_degree"])
        emb = embedding(GF(13, rec["field_degree"]), F)
        u = F(tuple(w["u"])) if F.k > 1 else F(w["u"][0])
        base = GF(13, rec["field_degree"])
        as_base = (lambda v: base(tuple(v)) if base.k > 1 else base(v[0]))
        E = Curve(F, emb(GF(13)(rec["A"][0])), emb(GF(13)(rec["B"][0])))
        target = frozenset(E.O if P is None else Point(E, emb(as_base(P[0])), emb(as_base(P[1]))) for P in rec["structure"])
        S = special_curve(F, 2)
        image = frozenset(_map_point(Automorphism(u), P, E) for P in special_structure(S, 2).points)
        assert image == target
        assert list(F.modulus) == rep["fields"][str(F.k)]


def test_histogram_totals():
    for N, per in ((2, 3), (3, 4)):
        rep = cmd_scan(ScanConfig(7, 1, N, True))
        assert sum(rep["stabilizer_histogram"].values()) == rep["total_pairs"] == per * rep["total_curves"]
        assert rep["structures_per_curve"] == {str(per): rep["total_curves"]}


def test_scan_is_deterministic_and_parallel_safe(capsys):
    cfg = ScanConfig(7, 1, 3, True)
    a = dump_json(cmd_scan(cfg))
    b = dump_json(cmd_scan(cfg))
    c = dump_json(cmd_scan(cfg, jobs=2))
    assert a == b == c


def test_scan_csv(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    code, stdout, _ = run(["scan", "--p", "7", "--level", "2", "--geometric", "--format", "csv", "--out", str(out)], capsys)
    assert code == 0 and stdout == ""
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert tuple(rows[0]) == commands.CSV_COLUMNS
    rep = cmd_scan(ScanConfig(7, 1, 2, True))
    assert len(rows) - 1 == rep["total_pairs"]
    assert out.read_text() == scan_csv(rep)
    assert {r[5] for r in rows[1:]} == {"2", "4"}


def test_scan_json_to_file(tmp_path, capsys):
    out = tmp_path / "scan.json"
    code, _, _ = run(["scan", "--p", "7", "--level", "3", "--out", str(out)], capsys)
    rep = json.loads(out.read_text())
    assert code == 0 and rep["passed"]
    assert list(rep)[:3] == ["command", "config", "field"]


def test_scan_reports_violations(monkeypatch, capsys):
    monkeypatch.setitem(commands.ALLOWED_ORDERS, 2, (2,))
    code, out, _ = run(["scan", "--p", "13", "--level", "2"], capsys)
    rep = json.loads(out)
    assert code == 1 and not rep["passed"]
    assert all("stabilizer order 4" in v["violation"] for v in rep["violations"])


# ---------------------------------------------------------------- special points and lambda


def test_special_points_golden(capsys):
    code, out, _ = run(["special-points", "--p", "7"], capsys)
    assert code == 0
    assert out == (GOLDEN / "special_points_p7.json").read_text()


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_special_points_pass(p, capsys):
    code, out, _ = run(["special-points", "--p", str(p)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    for key in ("j1728_level2", "j0_level2", "j0_level3", "j1728_level3"):
        assert all(rep[key]["checks"].values()), key


@pytest.mark.parametrize("N,p,order", [(2, 13, 4), (3, 7, 6), (3, 13, 6), (2, 7, 4), (3, 5, 6)])
def test_lambda_order(N, p, order, capsys):
    code, out, _ = run(["lambda-order", "--level", str(N), "--p", str(p)], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["order"] == order
    assert rep["divisor_certificate"]["total_weight"] == 0
    assert rep["multiple_certificate"]["character_order"] == order


def test_lambda_order_golden(capsys):
    assert run(["lambda-order", "--level", "3", "--p", "7"], capsys)[1] == (GOLDEN / "lambda_order_3_7.json").read_text()


def test_lambda_order_certificate_mismatch(monkeypatch, capsys):
    sections = dict(symcheck.TRIVIALIZING_SECTIONS)
    sections[2] = (sections[2][0], 6)
    monkeypatch.setattr(symcheck, "TRIVIALIZING_SECTIONS", sections)
    code, out, _ = run(["lambda-order", "--level", "2", "--p", "13"], capsys)
    assert code == 1 and out == ""
