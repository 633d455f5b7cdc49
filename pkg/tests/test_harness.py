"""
Inflex — Tests del harness de verificación
"""
from concurrent.futures import ThreadPoolExecutor

import pytest

from inflex.core.constants import EXIT_FAIL, EXIT_OK
from inflex.core.reports import CheckDescriptor, ReportBuilder, UnknownCheckError
from inflex.services import harness


def test_parse_range():
    assert harness.parse_range("2..5") == [2, 3, 4, 5]
    assert harness.parse_range("7, 3,5") == [3, 5, 7]
    assert harness.parse_range(4) == [4]
    assert harness.parse_range([3, 1, 3]) == [1, 3]
    with pytest.raises(ValueError):
        harness.parse_range("5..2")
    with pytest.raises(ValueError):
        harness.parse_range("a..b")


def test_parse_triple():
    assert harness.parse_triple("1,2,3") == (1, 2, 3)
    with pytest.raises(ValueError):
        harness.parse_triple("1,2")


def test_catalog_is_sorted_and_anchored():
    ids = [d.id for d in harness.catalog()]
    assert ids == sorted(ids)
    assert "ramification.vandermonde-N" in ids
    assert all(d.anchor and d.quote for d in harness.catalog())


def test_corrections_attached_to_descriptors():
    with_notes = {d.id for d in harness.catalog() if d.corrections}
    assert with_notes == {"d4.centered.newton-polygon", "d4.genus", "d6.newton-polygons", "d4.vertices"}
    genus = harness.get_check("d4.genus")
    assert any("observed g = 2" in note for note in genus.corrections)
    assert harness.describe(genus)["corrections"] == list(genus.corrections)


def test_anchors_are_headings():
    anchors = {d.anchor for d in harness.catalog()}
    assert "Singularities and genera of superelliptic Weierstrass inflectionary curves" in anchors
    assert all(not a.endswith(".") for a in anchors)


def test_unknown_check():
    with pytest.raises(UnknownCheckError):
        harness.get_check("no.such.check")
    with pytest.raises(UnknownCheckError):
        harness.run_checks(["no.such.check"], config={})


def test_parameter_precedence(harness_config):
    desc = harness.get_check("weierstrass.resultant-table")
    assert harness.resolve_params(desc, config=harness_config)["m"] == "6..10"
    config = {**harness_config, "m_ranges": {desc.id: "6..7"}}
    assert harness.resolve_params(desc, config=config)["m"] == "6..7"
    assert harness.resolve_params(desc, {"m": "6", "bogus": 1}, config) == {"m": "6"}
    assert harness.resolve_params(desc, {"m": None}, config)["m"] == "6..7"


def test_config_keys_feed_parameters(harness_config):
    desc = harness.get_check("d4.c2.sato-tate")
    params = harness.resolve_params(desc, config={**harness_config, "prime_bound": 500, "histogram_bins": 12})
    assert params == {"bound": 500, "bins": 12}


def test_vandermonde_check():
    [report] = harness.run_check("ramification.vandermonde-N", config={})
    assert report.passed
    assert report.computed["lower_det"] == 378
    assert report.computed["orders"] == [0, 1, 2, 3, 4, 6, 9]


def test_exceptions_become_failures(monkeypatch):
    def boom():
        raise RuntimeError("boom")

    monkeypatch.setitem(harness.CHECKS, "test.boom", CheckDescriptor("test.boom", boom, "anchor", "quote"))
    [report] = harness.run_check("test.boom", config={})
    assert report.verdict == "fail"
    assert report.counterexample == {"error": "RuntimeError: boom"}
    assert harness.exit_code([report]) == EXIT_FAIL


def test_refused_statements_do_not_fail():
    [report] = harness.run_check("d4.centered.newton-polygon", {"m": "6"}, config={})
    assert report.verdict == "refused"
    assert harness.exit_code([report]) == EXIT_OK


def test_run_checks_orders_reports(harness_config):
    ids = ["ramification.vandermonde-N", "d4.c2.definition", "weierstrass.graded-homogeneity"]
    serial = harness.run_checks(ids, {"m": "1..4"}, threads=1, config=harness_config)
    with ThreadPoolExecutor(max_workers=3) as pool:
        parallel = harness.run_checks(ids, {"m": "1..4"}, config=harness_config, executor=pool)
    assert [r.id for r in serial] == sorted(ids)
    assert [r.to_dict(include_time=False) for r in serial] == [r.to_dict(include_time=False) for r in parallel]
    assert harness.summarize(serial) == {"pass": 3, "fail": 0, "refused": 0}


def test_multi_report_checks():
    reports = harness.run_check("legendre.symmetry", {"a": "1", "m": "1"}, config={})
    assert len(reports) == 1 and reports[0].passed
    fibers = harness.run_check("d4.c2.fiber-correction", {"p": "7,13"}, config={})
    assert [r.params["p"] for r in fibers] == [7, 13]


def test_report_builder_first_mismatch_wins():
    rb = ReportBuilder("demo")
    rb.expect("a", 1, 1)
    rb.expect("b", 2, 3)
    rb.expect("c", 4, 5)
    report = rb.finish()
    assert report.verdict == "fail"
    assert report.counterexample == {"at": "b", "computed": 2, "expected": 3}
