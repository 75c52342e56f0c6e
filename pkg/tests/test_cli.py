from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from topicminer.cli import main

from conftest import DEMO_BLOCKS, DEMO_MERGES, TOP10_DISPLAY


@pytest.fixture
def runner():
    return CliRunner()


def write_jsonl(path: Path, rows: list[dict]) -> Path:
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def tiny_corpus(tmp_path):
    registry = tmp_path / "registry.csv"
    registry.write_text(
        "source_id,name,kind,weight,expected_abstracts\n"
        "a,Journal A,journal,2.0,3\n"
        "b,Conf B,conference,0.5,2\n"
    )
    abstracts = write_jsonl(
        tmp_path / "abstracts.jsonl",
        [
            {"abstract_id": "a1", "source_id": "a", "year": 2010,
             "text": "Support vector machine for image classification."},
            {"abstract_id": "a2", "source_id": "a", "year": 2011,
             "text": "Support vector machine, deep networks."},
            {"abstract_id": "a3", "source_id": "a", "year": 2012,
             "text": "Deep networks learn features."},
            {"abstract_id": "b1", "source_id": "b", "year": 2013,
             "text": "Support vector machine applications."},
            {"abstract_id": "b2", "source_id": "b", "year": 2014,
             "text": "Image classification with deep networks."},
        ],
    )
    return registry, abstracts


# ---------------------------------------------------------------- stats


def test_stats_bundled_registry(runner):
    result = runner.invoke(main, ["stats"])
    assert result.exit_code == 0
    assert "sources: 39 (31 journals + 8 conferences)" in result.output
    assert "total abstracts: 53,526" in result.output
    assert "mean per source: 1,372 (2.56%)" in result.output
    assert "11.52%" in result.output


def test_stats_with_abstracts_and_report(runner, tiny_corpus, tmp_path):
    registry, abstracts = tiny_corpus
    report = tmp_path / "stats.json"
    result = runner.invoke(
        main,
        ["stats", "--registry", str(registry), "--abstracts", str(abstracts),
         "--report", str(report)],
    )
    assert result.exit_code == 0
    assert "total abstracts: 5" in result.output
    payload = json.loads(report.read_text())
    assert payload["total_abstracts"] == 5


def test_stats_missing_registry_is_usage_error(runner, tmp_path):
    result = runner.invoke(main, ["stats", "--registry", str(tmp_path / "none.csv")])
    assert result.exit_code == 2


def test_stats_malformed_registry_is_data_error(runner, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("source_id,name,kind,weight,expected_abstracts\nx,X,journal,NaNo,1\n")
    result = runner.invoke(main, ["stats", "--registry", str(bad)])
    assert result.exit_code == 1


# ---------------------------------------------------------------- extract + rank


def run_extract(runner, registry, abstracts, out, *extra):
    args = ["extract", "--registry", str(registry), "--abstracts", str(abstracts),
            "-o", str(out), *extra]
    result = runner.invoke(main, args)
    assert result.exit_code == 0, result.output
    return result


def test_extract_rake_writes_config_header(runner, tiny_corpus, tmp_path):
    registry, abstracts = tiny_corpus
    out = tmp_path / "ex.jsonl"
    run_extract(runner, registry, abstracts, out)
    first = json.loads(out.read_text().splitlines()[0])
    assert first["_config"]["method"] == "rake"
    assert first["_config"]["mode"] == "paper_literal"


def test_extract_ngram_method(runner, tiny_corpus, tmp_path):
    registry, abstracts = tiny_corpus
    out = tmp_path / "ex.jsonl"
    run_extract(runner, registry, abstracts, out, "--method", "ngram")
    rows = [json.loads(l) for l in out.read_text().splitlines()[1:]]
    assert all(r["score"] is None for r in rows)
    phrases = {r["phrase"] for r in rows if r["abstract_id"] == "a1"}
    assert "support vector" in phrases


def test_extract_top_t_with_ngram_is_usage_error(runner, tiny_corpus, tmp_path):
    registry, abstracts = tiny_corpus
    result = runner.invoke(
        main,
        ["extract", "--registry", str(registry), "--abstracts", str(abstracts),
         "-o", str(tmp_path / "x.jsonl"), "--method", "ngram", "--top-t", "3"],
    )
    assert result.exit_code == 2


def test_extract_jobs_byte_identical(runner, tiny_corpus, tmp_path):
    registry, abstracts = tiny_corpus
    one = tmp_path / "jobs1.jsonl"
    three = tmp_path / "jobs3.jsonl"
    run_extract(runner, registry, abstracts, one, "--jobs", "1")
    run_extract(runner, registry, abstracts, three, "--jobs", "3")
    assert one.read_bytes() == three.read_bytes()


def test_rank_outputs(runner, tiny_corpus, tmp_path):
    registry, abstracts = tiny_corpus
    extracted = tmp_path / "ex.jsonl"
    run_extract(runner, registry, abstracts, extracted)
    ranked = tmp_path / "ranked.json"
    csv_path = tmp_path / "ranked.csv"
    plot_path = tmp_path / "plot.csv"
    result = runner.invoke(
        main,
        ["rank", "--registry", str(registry), "--extracted", str(extracted),
         "-o", str(ranked), "--csv", str(csv_path), "--plot", str(plot_path)],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(ranked.read_text())
    by_phrase = {r["phrase"]: r for r in payload["rows"]}
    svm = by_phrase["support vector machin"]
    # presence counting: 2 abstracts in source a (w 2.0), 1 in source b (w 0.5)
    assert svm["per_source"] == {"a": 2, "b": 1}
    assert svm["weighted_total"] == 2 * 2.0 + 1 * 0.5
    assert csv_path.read_text().startswith("# ")
    assert "band" in plot_path.read_text().splitlines()[-2] or "band" in plot_path.read_text()


def test_rank_deterministic_across_runs(runner, tiny_corpus, tmp_path):
    registry, abstracts = tiny_corpus
    extracted = tmp_path / "ex.jsonl"
    run_extract(runner, registry, abstracts, extracted)
    outs = []
    for name in ("r1.json", "r2.json"):
        out = tmp_path / name
        result = runner.invoke(
            main, ["rank", "--registry", str(registry), "--extracted", str(extracted),
                   "-o", str(out)]
        )
        assert result.exit_code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_rank_top_limits_rows(runner, tiny_corpus, tmp_path):
    registry, abstracts = tiny_corpus
    extracted = tmp_path / "ex.jsonl"
    run_extract(runner, registry, abstracts, extracted)
    out = tmp_path / "ranked.json"
    result = runner.invoke(
        main, ["rank", "--registry", str(registry), "--extracted", str(extracted),
               "-o", str(out), "--top", "5"]
    )
    assert result.exit_code == 0
    assert len(json.loads(out.read_text())["rows"]) == 5


def test_config_file_precedence(runner, tiny_corpus, tmp_path):
    registry, abstracts = tiny_corpus
    cfg = tmp_path / "run.cfg"
    cfg.write_text("method=ngram\nmax_n=3\n")
    out = tmp_path / "ex.jsonl"
    result = runner.invoke(
        main,
        ["extract", "--registry", str(registry), "--abstracts", str(abstracts),
         "-o", str(out), "--config", str(cfg), "--method", "rake"],
    )
    assert result.exit_code == 0, result.output
    header = json.loads(out.read_text().splitlines()[0])["_config"]
    assert header["method"] == "rake"  # flag wins
    assert header["max_n"] == 3  # config file beats default


# ---------------------------------------------------------------- curate / export


def test_curate_batch_rules(runner, tmp_path):
    rules = tmp_path / "rules.txt"
    rules.write_text(
        "[blocklist]\npropos method\nexperiment result show\ncomput vision\n"
        "[merge:data set]\ntrain data\nreal data\n"
    )
    out = tmp_path / "curated.json"
    result = runner.invoke(main, ["curate", "--rules", str(rules), "-o", str(out)])
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text())
    phrases = [r["phrase"] for r in payload["rows"]]
    assert "propos method" not in phrases
    assert "comput vision" not in phrases
    data_set = next(r for r in payload["rows"] if r["phrase"] == "data set")
    assert data_set["weighted_total"] == 5212 + 1703 + 1651


def test_curate_interactive_session(runner, tmp_path):
    session = tmp_path / "session.jsonl"
    # accept, block, then quit
    result = runner.invoke(
        main,
        ["curate", "--session", str(session), "--target-k", "2"],
        input="a\nb\nq\n",
    )
    assert result.exit_code == 0, result.output
    assert "accepted 1/2" in result.output
    events = [json.loads(l) for l in session.read_text().splitlines()]
    assert [e["action"] for e in events] == ["accept", "block"]


def test_curate_interactive_needs_session(runner):
    result = runner.invoke(main, ["curate"])
    assert result.exit_code == 2


def test_export_demo_session(runner, tmp_path):
    from topicminer.curate import CurationSession

    from conftest import load_demo_fixture, run_demo_session

    session = tmp_path / "session.jsonl"
    run_demo_session(CurationSession.open(load_demo_fixture(), session, target_k=10))
    out = tmp_path / "topics.json"
    plot = tmp_path / "plot.csv"
    result = runner.invoke(
        main,
        ["export", "--session", str(session), "-o", str(out), "--plot", str(plot)],
    )
    assert result.exit_code == 0, result.output
    for display in TOP10_DISPLAY:
        assert display in result.output
    assert "*  1 support vector machine" in result.output
    payload = json.loads(out.read_text())
    assert [r["display_form"] for r in payload["rows"][:10]] == TOP10_DISPLAY
    plot_lines = [l for l in plot.read_text().splitlines() if not l.startswith("#")]
    assert plot_lines[1].endswith(",top")
    assert plot_lines[11].endswith(",grey")


def test_export_without_session_shows_window_head(runner):
    result = runner.invoke(main, ["export"])
    assert result.exit_code == 0
    assert "support vector machine" in result.output
