import logging

import benchmark
from benchmark import generate_dashboard, time_pipeline
from core.fixtures import Fixture, get_fixture
from core.turtle import serialize_turtle
from utils.random_graphs import random_graph


def test_time_pipeline_on_wop():
    with open(get_fixture("wop").path, encoding="utf-8") as f:
        r = time_pipeline(f.read())
    assert r["triples"] == 43
    assert r["conforms"] is True
    assert r["derived"] > 0
    assert all(r[stage] >= 0 for stage in ("parse", "infer", "validate"))


def test_time_pipeline_reports_violations():
    with open(get_fixture("cross-series-bad").path, encoding="utf-8") as f:
        assert time_pipeline(f.read())["conforms"] is False


def test_time_pipeline_on_random_graph():
    graph = random_graph(7, n_series=2, n_members=2)
    assert time_pipeline(serialize_turtle(graph))["triples"] == len(graph)


def test_dashboard_is_written(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    generate_dashboard({"names": ["a", "b"], "parse": [1.0, 2.0], "infer": [0.5, 1.5], "validate": [0.2, 0.1],
                        "triples": [10, 20], "success": [True, False]})
    assert (tmp_path / "outputs" / "benchmark_dashboard.png").is_file()


def test_failing_scenario_is_logged_and_skipped(tmp_path, monkeypatch, caplog, capsys):
    broken = tmp_path / "broken.ttl"
    broken.write_text("@prefix ex: <http://example.org/> .\nex:a ex:b\n")
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(benchmark, "FIXTURES", {"wop": get_fixture("wop"), "broken": Fixture(
        "broken", str(broken), "unterminated statement", False)})
    monkeypatch.setattr(benchmark, "RANDOM_SIZES", (2,))

    with caplog.at_level(logging.ERROR, logger=benchmark.logger.name):
        benchmark.run_benchmark()

    rows = [line for line in capsys.readouterr().out.splitlines() if line.startswith("broken ")]
    assert len(rows) == 1 and "| ERROR:" in rows[0]
    records = [r for r in caplog.records if r.name == benchmark.logger.name]
    assert [r.getMessage().split(":")[0] for r in records] == ["broken failed"]
    assert (tmp_path / "outputs" / "benchmark_dashboard.png").is_file()
