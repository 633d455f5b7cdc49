"""
Inflex — Tests de exportación y configuración
"""
import json

from inflex.core.ffarith import PointCountRecord
from inflex.core.lattice import LatticePolygon
from inflex.core.reports import ReportBuilder
from inflex.services import export
from inflex.services.config_loader import HARNESS_DEFAULTS, load_harness_config, load_json_file


def test_point_counts_csv_has_provenance():
    rows = [PointCountRecord(7, 8, 0, 0.0, "fiberwise")]
    text = export.point_counts_csv(rows, {"curve": "d4-c2"})
    lines = text.splitlines()
    assert lines[0].startswith("# Inflex ")
    assert lines[1] == '# params: {"curve": "d4-c2"}'
    assert lines[3] == "p,count,e,e_tilde"
    assert lines[4] == "7,8,0,0.000000000000"


def test_csv_without_header_is_deterministic():
    rows = [PointCountRecord(11, 10, -2, None, "brute")]
    text = export.point_counts_csv(rows, include_header=False)
    assert text == "p,count,e,e_tilde\n11,10,-2,\n"


def test_reports_json_is_sorted_and_stable():
    reports = [ReportBuilder("b.second").finish(), ReportBuilder("a.first").finish()]
    text = export.reports_json(reports, include_time=False)
    data = json.loads(text)
    assert [r["id"] for r in data] == ["a.first", "b.second"]
    assert "millis" not in data[0]
    assert text == export.reports_json(list(reversed(reports)), include_time=False)


def test_polygon_svg():
    svg = export.polygon_svg(LatticePolygon.hull([(0, 0), (4, 0), (0, 4)]), "triangle <4>")
    assert svg.startswith("<?xml")
    assert "<polygon" in svg
    assert "triangle &lt;4&gt;" in svg
    assert "interior points: 3" in svg


def test_write_text_creates_directories(tmp_path):
    path = export.write_text(tmp_path / "deep" / "out.txt", "hello\n")
    assert path.read_text(encoding="utf-8") == "hello\n"


# ── Configuración ─────────────────────────────────────────────────────────────

def test_json_comments_are_stripped(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text('{\n  // comment\n  "threads": 3,   // trailing\n  "m_ranges": {}\n}\n', encoding="utf-8")
    assert load_json_file(path) == {"threads": 3, "m_ranges": {}}
    assert load_json_file(tmp_path / "missing.json") == {}


def test_harness_config_layers(tmp_path, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text('{"threads": 3, "prime_bound": 500, "unknown": 1}', encoding="utf-8")
    monkeypatch.delenv("INFLEX_THREADS", raising=False)
    cfg = load_harness_config(path)
    assert cfg["threads"] == 3
    assert cfg["prime_bound"] == 500
    assert cfg["histogram_bins"] == HARNESS_DEFAULTS["histogram_bins"]
    assert "unknown" not in cfg
    monkeypatch.setenv("INFLEX_THREADS", "5")
    assert load_harness_config(path)["threads"] == 5
