"""Command-line front end.

Subcommands:

- ``extract``: read texts (JSON-lines with id+text, or one raw text per
  line), write one result per input line to stdout as JSON-lines or TSV.
- ``eval``: score a gold JSON-lines corpus and print the report; can also
  render the per-text rate figure to a file.
- ``gazetteer-validate``: parse a gazetteer file and report every rejected
  line.
- ``bench``: time scan vs indexed lookup over a corpus; refuses to report
  timings unless both modes produced identical output.

Diagnostics and timing lines go to stderr; stdout carries only the
machine-readable payload, so identical invocations produce byte-identical
primary output. Exit codes: 0 success, 1 gazetteer problems, 2 input/gold
problems, 3 bench mode disagreement.

The gazetteer path comes from ``--gazetteer`` or the LOCXTRACT_GAZETTEER
environment variable. Option precedence: command-line flags, then the
optional ``--config`` JSON file, then built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bench import MODES, run_bench
from .evaluate import GoldFormatError, evaluate_corpus, load_gold, render_report
from .gazetteer import Gazetteer, load_gazetteer
from .pipeline import DEFAULT_STOPWORDS, ExtractionResult, PipelineConfig, extract
from .recognizer import FuzzyIndex

__all__ = ["main"]

GAZETTEER_ENV = "LOCXTRACT_GAZETTEER"

EXIT_OK = 0
EXIT_GAZETTEER = 1
EXIT_INPUT = 2
EXIT_BENCH_MISMATCH = 3

_CONFIG_KEYS = {"threshold", "min_fuzzy_len", "dedupe", "stopwords"}


def _fail(code: int, message: str) -> int:
    print(f"locxtract: {message}", file=sys.stderr)
    return code


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-g",
        "--gazetteer",
        default=os.environ.get(GAZETTEER_ENV),
        help=f"gazetteer TSV path (default: ${GAZETTEER_ENV})",
    )
    common.add_argument("--config", help="JSON config file for pipeline options")
    common.add_argument("--threshold", type=float, help="max normalized distance to accept")
    common.add_argument("--min-fuzzy-len", type=int, help="shorter tokens match exactly only")
    common.add_argument(
        "--no-dedupe",
        action="store_true",
        default=None,
        help="keep repeated mentions in the locations list",
    )
    common.add_argument("--jobs", type=int, default=1, help="worker processes (extract)")

    parser = argparse.ArgumentParser(
        prog="locxtract",
        description="Fuzzy gazetteer location extraction for noisy French social-network text.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", parents=[common], help="extract locations from texts")
    p_extract.add_argument("input", nargs="?", default="-", help="input file ('-' = stdin)")
    p_extract.add_argument("--format", choices=("json", "tsv"), default="json")

    p_eval = sub.add_parser("eval", parents=[common], help="score a gold corpus")
    p_eval.add_argument("gold", help="gold JSON-lines file (id, text, expected)")
    p_eval.add_argument("--report-format", choices=("markdown", "json"), default="markdown")
    p_eval.add_argument("--figure", help="also render the per-text rate chart to this file")

    sub.add_parser("gazetteer-validate", parents=[common], help="check a gazetteer file")

    p_bench = sub.add_parser("bench", parents=[common], help="time scan vs indexed lookup")
    p_bench.add_argument("corpus", help="corpus file (JSON-lines or raw lines)")
    p_bench.add_argument("--mode", choices=("scan", "indexed", "both"), default="both")
    p_bench.add_argument("--repetitions", type=int, default=1)
    p_bench.add_argument("--figure", help="also render the timing chart to this file")
    return parser


def _config_from_args(args: argparse.Namespace) -> PipelineConfig:
    settings: dict = {}
    if args.config:
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = set(raw) - _CONFIG_KEYS
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        settings.update(raw)
    if args.threshold is not None:
        settings["threshold"] = args.threshold
    if args.min_fuzzy_len is not None:
        settings["min_fuzzy_len"] = args.min_fuzzy_len
    if args.no_dedupe:
        settings["dedupe"] = False
    stopwords = settings.get("stopwords")
    if stopwords is not None:
        settings["stopwords"] = frozenset(str(w) for w in stopwords)
    return PipelineConfig(
        threshold=settings.get("threshold", 0.25),
        min_fuzzy_len=settings.get("min_fuzzy_len", 4),
        stopwords=settings.get("stopwords", DEFAULT_STOPWORDS),
        dedupe=settings.get("dedupe", True),
    )


def _load_gazetteer(args: argparse.Namespace) -> Gazetteer:
    """Load the gazetteer or raise ValueError with a displayable message."""
    if not args.gazetteer:
        raise ValueError(f"no gazetteer given (use --gazetteer or ${GAZETTEER_ENV})")
    path = Path(args.gazetteer)
    if not path.exists():
        raise ValueError(f"gazetteer not found: {path}")
    try:
        gazetteer, errors = load_gazetteer(path)
    except UnicodeDecodeError as exc:
        raise ValueError(f"gazetteer is not valid UTF-8: {exc}") from exc
    if errors:
        for error in errors:
            print(f"locxtract: {path}: {error}", file=sys.stderr)
        raise ValueError(f"gazetteer has {len(errors)} bad line(s)")
    if len(gazetteer) == 0:
        raise ValueError("gazetteer is empty")
    return gazetteer


def _read_lines(source: str) -> list[str]:
    if source == "-":
        return sys.stdin.read().splitlines()
    return Path(source).read_text(encoding="utf-8").splitlines()


def _parse_docs(lines: list[str]) -> tuple[list[tuple[str, str]], list[str]]:
    """(docs, per-line error messages). Detects JSON-lines vs raw lines."""
    first = next((line for line in lines if line.strip()), None)
    jsonl = False
    if first is not None:
        try:
            probe = json.loads(first)
            jsonl = isinstance(probe, dict) and "id" in probe and "text" in probe
        except json.JSONDecodeError:
            jsonl = False

    docs: list[tuple[str, str]] = []
    errors: list[str] = []
    if not jsonl:
        for line_no, line in enumerate(lines, start=1):
            docs.append((str(line_no), line))
        return docs, errors

    seen: set[str] = set()
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            errors.append(f"line {line_no}: invalid JSON: {exc}")
            continue
        if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
            errors.append(f"line {line_no}: expected an object with id and text")
            continue
        doc_id = str(obj["id"])
        if doc_id in seen:
            errors.append(f"line {line_no}: duplicate id {doc_id!r}")
            continue
        seen.add(doc_id)
        docs.append((doc_id, str(obj["text"])))
    return docs, errors


def _result_json(result: ExtractionResult) -> str:
    return json.dumps(
        {
            "id": result.doc_id,
            "locations": list(result.locations),
            "matches": [
                {
                    "token": m.token.text,
                    "canonical": m.canonical,
                    "distance": m.distance,
                    "start": m.token.start,
                    "end": m.token.end,
                }
                for m in result.matches
            ],
        },
        ensure_ascii=False,
    )


def _result_tsv(result: ExtractionResult) -> str:
    def clean(value: str) -> str:
        return value.replace("\t", " ").replace("\n", " ")

    return clean(result.doc_id) + "\t" + ";".join(clean(loc) for loc in result.locations)


# Worker state for --jobs > 1; set once per process by the pool initializer.
_worker_state: dict = {}


def _init_worker(gazetteer: Gazetteer, index: FuzzyIndex, cfg: PipelineConfig, fmt: str) -> None:
    _worker_state["gazetteer"] = gazetteer
    _worker_state["index"] = index
    _worker_state["cfg"] = cfg
    _worker_state["fmt"] = fmt
    _worker_state["memo"] = {}


def _render_chunk(chunk: list[tuple[str, str]]) -> list[str]:
    gazetteer = _worker_state["gazetteer"]
    index = _worker_state["index"]
    cfg = _worker_state["cfg"]
    fmt = _worker_state["fmt"]
    memo = _worker_state["memo"]
    render = _result_json if fmt == "json" else _result_tsv
    return [
        render(extract(doc_id, text, gazetteer, index, cfg, memo)) for doc_id, text in chunk
    ]


def _cmd_extract(args: argparse.Namespace) -> int:
    try:
        gazetteer = _load_gazetteer(args)
    except ValueError as exc:
        return _fail(EXIT_GAZETTEER, str(exc))
    cfg = _config_from_args(args)
    try:
        lines = _read_lines(args.input)
    except OSError as exc:
        return _fail(EXIT_INPUT, f"cannot read input: {exc}")
    docs, errors = _parse_docs(lines)
    for message in errors:
        print(f"locxtract: {message}", file=sys.stderr)

    index = FuzzyIndex(gazetteer)
    jobs = max(1, args.jobs)
    if jobs == 1 or len(docs) < 2 * jobs:
        _init_worker(gazetteer, index, cfg, args.format)
        for line in _render_chunk(docs):
            print(line)
    else:
        import multiprocessing

        chunk_size = max(1, (len(docs) + jobs * 4 - 1) // (jobs * 4))
        chunks = [docs[i : i + chunk_size] for i in range(0, len(docs), chunk_size)]
        with multiprocessing.Pool(
            jobs, initializer=_init_worker, initargs=(gazetteer, index, cfg, args.format)
        ) as pool:
            for rendered in pool.imap(_render_chunk, chunks):
                for line in rendered:
                    print(line)
    return EXIT_INPUT if errors else EXIT_OK


def _cmd_eval(args: argparse.Namespace) -> int:
    try:
        gazetteer = _load_gazetteer(args)
    except ValueError as exc:
        return _fail(EXIT_GAZETTEER, str(exc))
    cfg = _config_from_args(args)
    try:
        gold = load_gold(args.gold)
    except OSError as exc:
        return _fail(EXIT_INPUT, f"cannot read gold corpus: {exc}")
    except GoldFormatError as exc:
        return _fail(EXIT_INPUT, f"bad gold corpus: {exc}")
    report = evaluate_corpus(gold, gazetteer, FuzzyIndex(gazetteer), cfg)
    sys.stdout.write(render_report(report, args.report_format))
    if args.figure:
        from .figures import save_rate_figure

        save_rate_figure(report, args.figure)
        print(f"locxtract: figure written to {args.figure}", file=sys.stderr)
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    if not args.gazetteer:
        return _fail(EXIT_GAZETTEER, f"no gazetteer given (use --gazetteer or ${GAZETTEER_ENV})")
    path = Path(args.gazetteer)
    if not path.exists():
        return _fail(EXIT_GAZETTEER, f"gazetteer not found: {path}")
    try:
        gazetteer, errors = load_gazetteer(path)
    except UnicodeDecodeError as exc:
        return _fail(EXIT_GAZETTEER, f"gazetteer is not valid UTF-8: {exc}")
    for error in errors:
        print(f"locxtract: {path}: {error}", file=sys.stderr)
    aliases = sum(len(e.aliases) for e in gazetteer.entries)
    levels: dict[str, int] = {}
    for entry in gazetteer.entries:
        levels[entry.level.value] = levels.get(entry.level.value, 0) + 1
    level_text = " ".join(f"{k}={v}" for k, v in sorted(levels.items()))
    print(
        f"entries: {len(gazetteer)} (multiword: {len(gazetteer.multiword)}, "
        f"aliases: {aliases}) levels: {level_text or 'none'} rejected: {len(errors)}"
    )
    return EXIT_GAZETTEER if errors else EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        gazetteer = _load_gazetteer(args)
    except ValueError as exc:
        return _fail(EXIT_GAZETTEER, str(exc))
    cfg = _config_from_args(args)
    try:
        lines = _read_lines(args.corpus)
    except OSError as exc:
        return _fail(EXIT_INPUT, f"cannot read corpus: {exc}")
    docs, errors = _parse_docs(lines)
    if errors:
        for message in errors:
            print(f"locxtract: {message}", file=sys.stderr)
        return _fail(EXIT_INPUT, f"corpus has {len(errors)} bad line(s)")

    modes = MODES if args.mode == "both" else (args.mode,)
    try:
        report = run_bench(docs, gazetteer, cfg, modes, args.repetitions)
    except ValueError as exc:
        return _fail(EXIT_BENCH_MISMATCH, str(exc))

    err = sys.stderr
    print(
        f"bench: {report.doc_count} docs, {report.token_count} tokens, "
        f"gazetteer {len(gazetteer)} entries, repetitions {args.repetitions}",
        file=err,
    )
    for timing in report.timings:
        runs = " ".join(f"{t:.3f}s" for t in timing.runs)
        print(
            f"{timing.mode}: median {timing.median_seconds:.3f}s "
            f"({report.tokens_per_second(timing.mode):,.0f} tokens/s) runs: {runs}",
            file=err,
        )
    if report.outputs_equal is not None:
        print(f"outputs identical: {'yes' if report.outputs_equal else 'NO'}", file=err)
    if report.speedup is not None:
        print(f"speedup (scan/indexed): {report.speedup:.1f}x", file=err)
    if args.figure:
        from .figures import save_bench_figure

        save_bench_figure(report, args.figure)
        print(f"locxtract: figure written to {args.figure}", file=err)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "extract":
            return _cmd_extract(args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "gazetteer-validate":
            return _cmd_validate(args)
        if args.command == "bench":
            return _cmd_bench(args)
    except ValueError as exc:
        return _fail(EXIT_INPUT, str(exc))
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
