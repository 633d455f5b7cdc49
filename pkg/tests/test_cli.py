"""
Inflex — Tests de la línea de comandos
"""
import json

import pytest

from inflex.cli import main
from inflex.core.algebra import parse_poly
from inflex.core.ffarith import fast_count_C2


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch, tmp_path):
    monkeypatch.setenv("INFLEX_CONFIG", str(tmp_path / "absent.json"))
    monkeypatch.delenv("INFLEX_THREADS", raising=False)


def test_version(capsys):
    assert main(["--version"]) == 0
    assert "Inflex" in capsys.readouterr().out


def test_missing_subcommand():
    assert main([]) == 2


def test_inflect_text(capsys, weierstrass_p3):
    assert main(["inflect", "--family", "weierstrass", "--m", "3"]) == 0
    out = capsys.readouterr().out.strip()
    assert parse_poly(out) == weierstrass_p3


def test_inflect_json(capsys):
    assert main(["inflect", "--family", "legendre", "--m", "1", "--u", "symbolic", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["u_mode"] == "symbolic"
    assert parse_poly(data["poly"]) == parse_poly("u*(3*x^2 - 2*x - 2*lam*x + lam)")


def test_inflect_writes_files(tmp_path):
    assert main(["inflect", "--family", "weierstrass", "--m", "3", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "inflect_weierstrass_m3.txt").exists()
    meta = json.loads((tmp_path / "inflect_weierstrass_m3.json").read_text(encoding="utf-8"))
    assert meta["denominator_primes"] == [2]


def test_newton_polygon(capsys):
    assert main(["newton", "--family", "d4", "--m", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["polygon"]["vertices"] == [[0, 2], [4, 0], [8, 0]]
    assert data["interior_points"] == 1


def test_newton_svg(capsys):
    assert main(["newton", "--family", "d4", "--m", "1", "--svg"]) == 0
    assert capsys.readouterr().out.startswith("<?xml")


def test_newton_bad_center(capsys):
    assert main(["newton", "--family", "d4", "--m", "2", "--center", "7"]) == 2
    assert "no center" in capsys.readouterr().err


def test_verify_list(capsys):
    assert main(["verify", "--list"]) == 0
    assert "ramification.vandermonde-N" in capsys.readouterr().out


def test_verify_unknown_check(capsys):
    assert main(["verify", "no.such.check"]) == 2
    err = capsys.readouterr().err
    assert "no.such.check" in err
    assert "d4.c2.definition" in err


def test_verify_json(capsys):
    assert main(["verify", "ramification.vandermonde-N", "--json", "--no-header"]) == 0
    [report] = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "pass"
    assert report["computed"]["lower_det"] == 378
    assert "millis" not in report


def test_verify_text_and_bad_range(capsys):
    assert main(["verify", "d4.c2.definition"]) == 0
    assert capsys.readouterr().out.startswith("PASS")
    assert main(["verify", "d4.c2.definition", "--m", "x..y"]) == 2


def test_count_single_prime(capsys):
    assert main(["count", "--p", "7"]) == 0
    assert int(capsys.readouterr().out) == fast_count_C2(7)


def test_count_refuses_bad_prime(capsys):
    assert main(["count", "--p", "3"]) == 2
    assert capsys.readouterr().err.startswith("refused")


def test_count_csv(tmp_path):
    assert main(["count", "--bound", "40", "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "counts.csv").read_text(encoding="utf-8").splitlines()
    data = [l for l in lines if not l.startswith("#")]
    assert data[0] == "p,count,e,e_tilde"
    assert [int(l.split(",")[0]) for l in data[1:]] == [7, 11, 13, 17, 19, 23, 29, 31, 37]


def test_count_brute_strategy(capsys):
    assert main(["count", "--p", "11", "--strategy", "brute"]) == 0
    assert int(capsys.readouterr().out) == fast_count_C2(11)


def test_satotate_out(tmp_path):
    assert main(["satotate", "--bound", "200", "--bins", "8", "--out", str(tmp_path)]) == 0
    histogram = (tmp_path / "satotate_histogram.csv").read_text(encoding="utf-8")
    assert "bin_left,bin_right,frequency" in histogram
    assert "ks_statistic=" in histogram
    assert (tmp_path / "satotate_counts.csv").exists()


def test_wronskian_ramification(capsys):
    assert main(["wronskian", "--n", "3", "--d", "4", "--ell", "9", "--ramification", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["lower_det"] == 378
    assert data["mu_B"] == 4
    assert data["inflection_orders"] == [0, 1, 2, 3, 4, 6, 9]


def test_discriminant_m3(capsys):
    assert main(["discriminant", "--m", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["m"] == 3
    assert data["ledger"]["product_divides"] is True
