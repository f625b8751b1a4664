"""Command-line entry point wiring the pipeline stages together.

Exit codes: 0 success, 2 configuration problems (missing files, bad
flags), 3 data problems (unreadable streams, incompatible index files).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .blacklist import Blacklist, load_blacklist
from .corpus import CorpusReadStats, default_abbreviations, load_abbreviations, read_corpus
from .curation import VERDICT_TRUE, LabelStore, dedup, is_suppressed
from .errors import ConfigError, DataError, VaminerError
from .fileio import open_text
from .gazetteer import (
    DumpStats,
    build_index,
    filter_dump,
    load_index,
    read_entity_file,
    save_index,
    write_entity_file,
)
from .pipeline import (
    candidates_tsv,
    read_candidates,
    read_report,
    run_extraction,
    write_candidates,
    write_report,
)
from .stats import (
    by_author,
    by_section,
    default_countries,
    freq_modifier_countries,
    freq_modifiers,
    freq_sources,
    load_countries,
    per_year,
    render_text,
    render_tsv,
    series_csv,
    unique_true_candidates,
)
from .summary import CorpusSummary


def _require_file(path: str, what: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"{what} not found: {path}")
    return p


def _load_blacklist_arg(path: str | None) -> Blacklist:
    if path is None:
        return Blacklist()
    return load_blacklist(_require_file(path, "blacklist file"))


def cmd_gazetteer_filter_dump(args: argparse.Namespace) -> int:
    dump_path = _require_file(args.dump, "dump file")
    stats = DumpStats()
    with open_text(dump_path) as stream:
        n = write_entity_file(filter_dump(stream, args.class_id, stats), args.out)
    print(
        f"read {stats.n_lines} lines, matched {n} entities, "
        f"skipped {stats.n_skipped_malformed} malformed"
    )
    return 0


def cmd_gazetteer_build(args: argparse.Namespace) -> int:
    entities_path = _require_file(args.entities, "entity file")
    index = build_index(read_entity_file(entities_path))
    save_index(index, args.out)
    print(f"indexed {index.n_entities} entities with {index.n_unique_names} unique names")
    return 0


def cmd_extract(args: argparse.Namespace) -> int:
    corpus_path = _require_file(args.corpus, "corpus file")
    index = load_index(_require_file(args.index, "index file"))
    blacklist = _load_blacklist_arg(args.blacklist)
    if args.abbreviations:
        abbreviations = load_abbreviations(_require_file(args.abbreviations, "abbreviation file"))
    else:
        abbreviations = default_abbreviations()
    if args.max_modifier_tokens < 1:
        raise ConfigError("--max-modifier-tokens must be >= 1")
    if args.workers < 1:
        raise ConfigError("--workers must be >= 1")

    read_stats = CorpusReadStats()
    candidates, stats, summary = run_extraction(
        read_corpus(corpus_path, read_stats),
        index,
        blacklist,
        abbreviations,
        workers=args.workers,
        article_ignore_case=args.case_insensitive_article,
        max_modifier_tokens=args.max_modifier_tokens,
    )
    write_candidates(candidates, args.out)
    report_path = args.report or (args.out + ".report.json")
    write_report(stats, summary, report_path)
    print(
        f"articles {stats.n_articles}  sentences {stats.n_sentences}  "
        f"phrase matches {stats.n_phrase_matches}  entity matched {stats.n_entity_matched}  "
        f"candidates {stats.n_after_blacklist}"
    )
    if read_stats.n_skipped_malformed:
        print(f"skipped {read_stats.n_skipped_malformed} malformed corpus records")
    print(f"wrote {args.out} and {report_path}")
    return 0


def _load_summary(path: str | None) -> tuple[dict | None, CorpusSummary | None]:
    if path is None:
        return None, None
    return read_report(_require_file(path, "corpus summary file"))


def cmd_stats(args: argparse.Namespace) -> int:
    candidates = read_candidates(_require_file(args.candidates, "candidates file"))
    store = LabelStore.load(args.labels) if args.labels else LabelStore()
    blacklist = _load_blacklist_arg(args.blacklist)
    _, summary = _load_summary(args.corpus_summary)
    countries = load_countries(args.countries) if args.countries else default_countries()

    unique_true = unique_true_candidates(candidates, store, blacklist)
    tables = {
        "sources": freq_sources(unique_true, top=args.top),
        "modifiers": freq_modifiers(unique_true, top=args.top),
        "modifier_countries": freq_modifier_countries(unique_true, countries, top=args.top),
    }
    if summary is not None:
        tables["sections"] = by_section(unique_true, summary.sections)
        tables["authors"] = by_author(unique_true, summary.authors)
    series = per_year(candidates, store, summary.years if summary else {}, blacklist)

    for name, table in tables.items():
        print(f"== {name} ==")
        print(render_text(table) if table.rows else "(empty)")
        print()
    if series.rows:
        print("== per year ==")
        print(series_csv(series).rstrip("\n").replace(",", "\t"))
        print()

    if args.tsv:
        out_dir = Path(args.tsv)
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, table in tables.items():
            (out_dir / f"{name}.tsv").write_text(render_tsv(table), encoding="utf-8")
        print(f"wrote {len(tables)} tables to {out_dir}")
    if args.series:
        Path(args.series).write_text(series_csv(series), encoding="utf-8")
        print(f"wrote series to {args.series}")
    if args.chart:
        _write_chart(series, args.chart)
        print(f"wrote chart to {args.chart}")
    return 0


def _write_chart(series, path: str) -> None:
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as exc:
        raise ConfigError("matplotlib is required for --chart output") from exc
    years = [row.year for row in series.rows]
    fig, (abs_ax, rel_ax) = plt.subplots(1, 2, figsize=(11, 4))
    abs_ax.plot(years, [r.n_candidates for r in series.rows], label="candidates")
    abs_ax.plot(years, [r.n_true_va for r in series.rows], label="true VA")
    abs_ax.set_title("per year (absolute)")
    abs_ax.legend()
    rel_ax.plot(years, [r.cand_per_thousand for r in series.rows], label="candidates")
    rel_ax.plot(years, [r.true_per_thousand for r in series.rows], label="true VA")
    rel_ax.set_title("per thousand articles")
    rel_ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def cmd_export(args: argparse.Namespace) -> int:
    candidates = read_candidates(_require_file(args.candidates, "candidates file"))
    store = LabelStore.load(args.labels) if args.labels else LabelStore()
    blacklist = _load_blacklist_arg(args.blacklist)
    active = [c for c in candidates if not is_suppressed(c, blacklist)]
    unique = dedup(active)
    true_va = [c for c in unique if store.verdict_of(c.candidate_id) == VERDICT_TRUE]
    tsv = candidates_tsv(true_va)
    if args.out:
        Path(args.out).write_text(tsv, encoding="utf-8")
        print(f"wrote {len(true_va)} rows to {args.out}")
    else:
        sys.stdout.write(tsv)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import SessionState, create_app

    state = SessionState.from_files(
        _require_file(args.candidates, "candidates file"),
        args.labels,
        blacklist_path=args.blacklist,
        report_path=args.corpus_summary,
    )
    ui_dir = args.ui
    if ui_dir is None:
        bundled = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
        if bundled.is_dir():
            ui_dir = str(bundled)
    app = create_app(state, ui_dir=ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vaminer",
        description="Mine 'the SOURCE of MODIFIER' expressions from a news corpus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gaz = sub.add_parser("gazetteer", help="build the person-name gazetteer")
    gaz_sub = gaz.add_subparsers(dest="gazetteer_command", required=True)

    filt = gaz_sub.add_parser("filter-dump", help="filter a raw entity dump")
    filt.add_argument("--dump", required=True, help="raw line-delimited JSON dump (.gz ok)")
    filt.add_argument("--out", required=True, help="entity JSONL output")
    filt.add_argument("--class", dest="class_id", default="Q5", help="instance-of class id")
    filt.set_defaults(func=cmd_gazetteer_filter_dump)

    build = gaz_sub.add_parser("build", help="build the name index")
    build.add_argument("--entities", required=True, help="entity JSONL from filter-dump")
    build.add_argument("--out", required=True, help="serialized index output")
    build.set_defaults(func=cmd_gazetteer_build)

    extract = sub.add_parser("extract", help="extract candidates from a corpus")
    extract.add_argument("--corpus", required=True, help="corpus JSONL (.gz ok)")
    extract.add_argument("--index", required=True, help="serialized name index")
    extract.add_argument("--blacklist", help="blacklist file (one surface per line)")
    extract.add_argument("--out", required=True, help="candidates JSONL output")
    extract.add_argument("--report", help="report path (default: OUT.report.json)")
    extract.add_argument("--abbreviations", help="abbreviation list (default: bundled)")
    extract.add_argument(
        "--case-insensitive-article",
        action="store_true",
        help="also match capitalized articles such as sentence-initial 'The'",
    )
    extract.add_argument("--max-modifier-tokens", type=int, default=6)
    extract.add_argument("--workers", type=int, default=1)
    extract.set_defaults(func=cmd_extract)

    stats = sub.add_parser("stats", help="compute ranked tables and the per-year series")
    stats.add_argument("--candidates", required=True)
    stats.add_argument("--labels", help="label log JSONL")
    stats.add_argument("--blacklist", help="blacklist file")
    stats.add_argument("--corpus-summary", help="report file from extract")
    stats.add_argument("--countries", help="country list (default: bundled)")
    stats.add_argument("--tsv", help="directory for TSV table files")
    stats.add_argument("--series", help="per-year CSV output path")
    stats.add_argument("--chart", help="per-year chart image output path")
    stats.add_argument("--top", type=int, default=None, help="limit table rows")
    stats.set_defaults(func=cmd_stats)

    serve = sub.add_parser("serve", help="run the annotation service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--candidates", required=True)
    serve.add_argument("--labels", required=True)
    serve.add_argument("--blacklist", help="blacklist file (created on first edit)")
    serve.add_argument("--corpus-summary", help="report file from extract")
    serve.add_argument("--ui", help="directory of built UI assets to serve")
    serve.set_defaults(func=cmd_serve)

    export = sub.add_parser("export", help="export deduplicated true VA as TSV")
    export.add_argument("--candidates", required=True)
    export.add_argument("--labels", help="label log JSONL")
    export.add_argument("--blacklist", help="blacklist file")
    export.add_argument("--out", help="output path (default: stdout)")
    export.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except VaminerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
