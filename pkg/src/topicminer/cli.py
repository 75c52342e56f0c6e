"""Command-line pipeline: stats, extract, rank, curate, serve, export.

Exit codes: 0 success, 2 usage error, 1 data error.  Identical inputs
and configuration produce byte-identical output files, including under
any --jobs setting.
"""

from __future__ import annotations

import functools
import json
import sys
from importlib import resources
from pathlib import Path

import click

from . import corpus as corpus_mod
from . import curate as curate_mod
from . import extract as extract_mod
from . import rank as rank_mod
from .config import resolve_config
from .errors import DataError
from .textprep import StopList

FIXTURE_TOPICS = "fixture_topics.json"


def _data_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DataError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _load_registry(path: str | None) -> corpus_mod.Registry:
    if path is None:
        return corpus_mod.default_registry()
    return corpus_mod.load_registry(path)


def _load_stoplist(path: str | None) -> StopList:
    if path is None:
        return StopList.default()
    return StopList.from_file(path)


def _load_ranked(path: str | None) -> tuple[dict, rank_mod.RankedList]:
    if path is not None:
        return rank_mod.read_ranked_report(path)
    ref = resources.files("topicminer.data").joinpath(FIXTURE_TOPICS)
    with resources.as_file(ref) as fixture:
        return rank_mod.read_ranked_report(fixture)


def _ingest(abstracts: str, registry: corpus_mod.Registry) -> corpus_mod.Corpus:
    report = corpus_mod.ingest_abstracts(corpus_mod.iter_abstract_rows(abstracts), registry)
    for rej in report.rejected:
        where = rej.abstract_id or "<row>"
        click.echo(f"rejected {where}: {rej.reason}", err=True)
    return report.corpus


@click.group()
def main() -> None:
    """Key-phrase meta-study pipeline over publication abstracts."""


@main.command()
@click.option("--registry", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Registry CSV (defaults to the bundled 39-source registry).")
@click.option("--abstracts", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Abstracts JSONL; omit to use the registry's expected counts.")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Also write a machine-readable JSON report.")
@_data_errors
def stats(registry: str | None, abstracts: str | None, report_path: str | None) -> None:
    """Corpus statistics: totals, per-source counts and shares."""
    reg = _load_registry(registry)
    if abstracts is None:
        st = corpus_mod.expected_stats(reg)
    else:
        st = corpus_mod.corpus_stats(_ingest(abstracts, reg))
    click.echo(corpus_mod.format_stats_table(st, reg))
    if report_path:
        payload = corpus_mod.stats_report(st, reg)
        Path(report_path).write_text(
            json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )


def _config_options(fn):
    fn = click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                      default=None, help="key=value config file (flags win).")(fn)
    fn = click.option("--method", type=click.Choice(extract_mod.METHODS), default=None)(fn)
    fn = click.option("--mode", type=click.Choice(extract_mod.MODES), default=None)(fn)
    fn = click.option("--max-n", "max_n", type=int, default=None)(fn)
    fn = click.option("--top-t", "top_t", type=int, default=None,
                      help="Keep only the T best-scored phrases per abstract (rake).")(fn)
    fn = click.option("--jobs", type=int, default=None, help="Parallel workers.")(fn)
    return fn


@main.command()
@click.option("--registry", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--abstracts", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--stoplist", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Stop-word file (defaults to the bundled Fox list).")
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
@_config_options
@_data_errors
def extract(registry, abstracts, stoplist, output, config_path, **flags) -> None:
    """Extract key phrases per abstract into an intermediate JSONL file."""
    cfg = resolve_config({**flags, "registry": registry, "abstracts": abstracts,
                          "stoplist": stoplist, "output": output}, config_path)
    if cfg.method == "ngram" and cfg.top_t is not None:
        raise click.UsageError("--top-t applies to --method rake only")
    reg = _load_registry(cfg.registry)
    stops = _load_stoplist(cfg.stoplist)
    records = _ingest(cfg.abstracts, reg).records
    extractions = extract_mod.extract_corpus(
        records, stops, method=cfg.method, mode=cfg.mode,
        max_n=cfg.max_n, top_t=cfg.top_t, jobs=cfg.jobs,
    )
    rows = extract_mod.write_extractions(cfg.output, extractions, cfg.as_metadata())
    click.echo(f"extracted {len(extractions)} abstracts ({rows} phrase rows) -> {cfg.output}")


@main.command()
@click.option("--registry", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--extracted", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Intermediate extraction JSONL from the extract command.")
@click.option("--count-mode", type=click.Choice(rank_mod.COUNT_MODES), default="presence")
@click.option("--top", "top_k", type=int, default=None, help="Keep only the first K rows.")
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False),
              help="Ranked report (JSON).")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None)
@click.option("--plot", "plot_path", type=click.Path(dir_okay=False), default=None)
@click.option("--highlight", type=int, default=10, show_default=True)
@click.option("--upto", type=int, default=20, show_default=True)
@_data_errors
def rank(registry, extracted, count_mode, top_k, output, csv_path, plot_path,
         highlight, upto) -> None:
    """Aggregate extractions into a weighted, deterministically ranked list."""
    reg = _load_registry(registry)
    ex_config, extractions = extract_mod.read_extractions(extracted)
    table = rank_mod.accumulate(extractions, reg, count_mode=count_mode)
    ranked = rank_mod.rank(table, top_k=top_k)
    meta = {**ex_config, "count_mode": count_mode}
    if top_k is not None:
        meta["top_k"] = top_k
    rank_mod.write_ranked_report(output, ranked, meta)
    if csv_path:
        rank_mod.write_ranked_csv(csv_path, ranked, meta)
    if plot_path:
        plot = rank_mod.export_plot_data(ranked, highlight_k=highlight, upto=upto)
        rank_mod.write_plot_csv(plot_path, plot, meta)
    click.echo(f"ranked {len(ranked)} phrases -> {output}")


@main.command()
@click.option("--ranked", "ranked_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Ranked report (defaults to the bundled demo fixture).")
@click.option("--rules", "rules_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Apply a rules file in batch mode.")
@click.option("--session", "session_path", type=click.Path(dir_okay=False), default=None,
              help="Decision journal for an interactive session.")
@click.option("--window", type=int, default=500, show_default=True)
@click.option("--target-k", type=int, default=10, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Write the resulting ranked report.")
@click.option("--rules-out", type=click.Path(dir_okay=False), default=None,
              help="Export the session's decisions as a rules file.")
@_data_errors
def curate(ranked_path, rules_path, session_path, window, target_k, output, rules_out) -> None:
    """Clean and merge the ranked window, in batch (--rules) or interactively."""
    meta, ranked = _load_ranked(ranked_path)
    ranked = ranked[:window]
    if rules_path is not None:
        rules = curate_mod.load_rules(rules_path)
        result = curate_mod.apply_rules(ranked, rules)
        if output:
            rank_mod.write_ranked_report(output, result, {**meta, "rules": rules_path})
            click.echo(f"applied rules -> {output}")
        else:
            for row in result[:target_k]:
                click.echo(f"{row.rank:>3} {row.display_form}  ({row.weighted_total:g})")
        return

    if session_path is None:
        raise click.UsageError("interactive mode needs --session (or use --rules for batch)")
    session = curate_mod.CurationSession.open(ranked, session_path, target_k=target_k)
    by_phrase = {row.phrase: row for row in session.window}
    click.echo(f"session {session.session_id}: {len(session.accepted)}/{target_k} accepted, "
               f"{len(session.decisions)} decisions")
    while True:
        phrase = session.next_candidate()
        if phrase is None:
            break
        row = by_phrase[phrase]
        click.echo(f"\n#{row.rank} {row.display_form!r} (total {row.weighted_total:g}) "
                   f"[{len(session.accepted)}/{target_k}]")
        choice = click.prompt("a=accept b=block m=merge u=undo q=quit", default="q",
                              show_default=False).strip().lower()
        try:
            if choice == "a":
                session.decide(phrase, "accept")
            elif choice == "b":
                session.decide(phrase, "block")
            elif choice == "m":
                if not session.accepted:
                    click.echo("no accepted topics to merge into yet")
                    continue
                for i, topic in enumerate(session.accepted, start=1):
                    click.echo(f"  {i}. {topic}")
                idx = click.prompt("merge into #", type=int)
                if not 1 <= idx <= len(session.accepted):
                    click.echo("no such topic")
                    continue
                session.decide(phrase, "merge", target=session.accepted[idx - 1])
            elif choice == "u":
                removed = session.undo()
                click.echo(f"undid {removed.action} {removed.phrase!r}")
            elif choice == "q":
                break
            else:
                click.echo("unknown choice")
        except curate_mod.CurationError as exc:
            click.echo(f"error: {exc.message}", err=True)
    click.echo(f"\naccepted {len(session.accepted)}/{target_k}:")
    for i, topic in enumerate(session.accepted, start=1):
        click.echo(f"  {i}. {by_phrase[topic].display_form}")
    if rules_out:
        curate_mod.write_rules(rules_out, session.export_rules())
        click.echo(f"rules -> {rules_out}")
    if output:
        rank_mod.write_ranked_report(output, session.export_topics(), meta)
        click.echo(f"topics -> {output}")


@main.command()
@click.option("--ranked", "ranked_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Ranked report (defaults to the bundled demo fixture).")
@click.option("--session", "session_path", type=click.Path(dir_okay=False), required=True,
              help="Decision journal (created if missing).")
@click.option("--rules", "rules_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Pre-clean the window with a rules file.")
@click.option("--window", type=int, default=500, show_default=True)
@click.option("--target-k", type=int, default=10, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8734, show_default=True)
@click.option("--ui-dir", type=click.Path(exists=True, file_okay=False), default=None,
              help="Static UI directory (defaults to frontend/dist when present).")
@_data_errors
def serve(ranked_path, session_path, rules_path, window, target_k, host, port, ui_dir) -> None:
    """Serve the curation API (and UI, when built) for one session."""
    import uvicorn

    from .service import create_app

    _, ranked = _load_ranked(ranked_path)
    if rules_path is not None:
        ranked = curate_mod.apply_rules(ranked, curate_mod.load_rules(rules_path))
    session = curate_mod.CurationSession.open(ranked[:window], session_path, target_k=target_k)
    if ui_dir is None:
        bundled = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        ui_dir = str(bundled) if bundled.is_dir() else None
    app = create_app(session, ui_dir=ui_dir)
    click.echo(f"serving session {session.session_id} on http://{host}:{port}/")
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@click.option("--ranked", "ranked_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Ranked report (defaults to the bundled demo fixture).")
@click.option("--session", "session_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Replay this journal before exporting.")
@click.option("--window", type=int, default=500, show_default=True)
@click.option("--target-k", type=int, default=10, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Write the final topic table as a ranked report.")
@click.option("--plot", "plot_path", type=click.Path(dir_okay=False), default=None)
@click.option("--highlight", type=int, default=None, help="Top band size (default target-k).")
@click.option("--upto", type=int, default=20, show_default=True)
@_data_errors
def export(ranked_path, session_path, window, target_k, output, plot_path,
           highlight, upto) -> None:
    """Export the final topic table and its bar-chart plot data."""
    meta, ranked = _load_ranked(ranked_path)
    ranked = ranked[:window]
    if session_path is not None:
        journal = curate_mod.DecisionJournal(session_path)
        session = curate_mod.CurationSession.replay(
            journal.events(), ranked, target_k=target_k
        )
        topics = session.export_topics()
    else:
        topics = ranked
    highlight_k = highlight if highlight is not None else target_k
    plot = rank_mod.export_plot_data(topics, highlight_k=highlight_k, upto=upto)
    for row in plot:
        marker = "*" if row.band == "top" else " "
        click.echo(f"{marker}{row.rank:>3} {row.display_form}  ({row.weighted_total:g})")
    if output:
        rank_mod.write_ranked_report(output, topics, meta)
    if plot_path:
        rank_mod.write_plot_csv(plot_path, plot, meta)


if __name__ == "__main__":
    main()
