"""Evaluation harness: per-text detection rates and corpus micro-averages.

A gold corpus is JSON-lines, one object per line:

    {"id": "7", "text": "...", "expected": ["Oudalan", "Gorom"]}

Scoring uses set semantics over normalized keys, so a name detected twice
counts once and accent or case differences in gold files do not corrupt
scores. Per text we count how many expected names were detected (correct)
and how many detections were not expected (spurious). The corpus
micro-recall is sum(correct) / sum(expected) — the per-text "2/2"-style
rates and their average are always recomputed from the counts, never
trusted from elsewhere — and micro-precision is reported alongside because
a detector can look good on recall while over-producing.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, TextIO, Union

from .gazetteer import Gazetteer, normalize_name
from .pipeline import ExtractionResult, PipelineConfig, extract
from .recognizer import FuzzyIndex

__all__ = [
    "GoldRecord",
    "EvalRow",
    "EvalReport",
    "IdMismatchError",
    "GoldFormatError",
    "load_gold",
    "score",
    "evaluate_corpus",
    "render_report",
    "reference_eval_sets",
]


class IdMismatchError(ValueError):
    """Result and gold record do not describe the same document."""


class GoldFormatError(ValueError):
    """Gold corpus file violates the JSON-lines contract."""


@dataclass(frozen=True)
class GoldRecord:
    """One annotated text: the exact list of location names it contains."""

    id: str
    text: str
    expected: tuple[str, ...] = ()


@dataclass(frozen=True)
class EvalRow:
    id: str
    expected: int
    correct: int
    spurious: int


@dataclass(frozen=True)
class EvalReport:
    rows: tuple[EvalRow, ...]
    micro_recall: float
    micro_precision: float
    runtime_ms: float
    config: dict


def load_gold(source: Union[str, Path, TextIO]) -> list[GoldRecord]:
    """Read a gold JSON-lines file.

    Raises `GoldFormatError` on unparsable lines, missing fields, or
    duplicate ids. Expected names are deduplicated by normalized key,
    keeping the first spelling.
    """
    if isinstance(source, (str, Path)):
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    else:
        lines = source.read().splitlines()
    records: list[GoldRecord] = []
    seen_ids: set[str] = set()
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise GoldFormatError(f"line {line_no}: invalid JSON: {exc}") from exc
        if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
            raise GoldFormatError(f"line {line_no}: expected an object with id and text")
        doc_id = str(obj["id"])
        if doc_id in seen_ids:
            raise GoldFormatError(f"line {line_no}: duplicate id {doc_id!r}")
        seen_ids.add(doc_id)
        expected_raw = obj.get("expected", [])
        if not isinstance(expected_raw, list):
            raise GoldFormatError(f"line {line_no}: expected must be a list")
        expected: list[str] = []
        keys: set[str] = set()
        for name in expected_raw:
            key = normalize_name(str(name))
            if key and key not in keys:
                keys.add(key)
                expected.append(str(name))
        records.append(GoldRecord(doc_id, str(obj["text"]), tuple(expected)))
    return records


def score(result: ExtractionResult, gold: GoldRecord) -> tuple[int, int]:
    """(correct, spurious) detection counts for one document.

    correct = detected names that are expected; spurious = detected names
    that are not. Comparison happens on normalized keys, as sets.
    """
    if result.doc_id != gold.id:
        raise IdMismatchError(f"result is for {result.doc_id!r}, gold is for {gold.id!r}")
    detected = {normalize_name(name) for name in result.locations}
    expected = {normalize_name(name) for name in gold.expected}
    correct = len(detected & expected)
    return correct, len(detected) - correct


def evaluate_corpus(
    gold: Sequence[GoldRecord],
    gazetteer: Gazetteer,
    index: Optional[FuzzyIndex],
    cfg: PipelineConfig = PipelineConfig(),
) -> EvalReport:
    """Extract every gold text, score it, and aggregate micro-averages.

    micro_recall = sum(correct) / sum(expected) and micro_precision =
    sum(correct) / sum(detected), both defined as 1.0 when the denominator
    is zero. Wall-clock runtime covers the extraction+scoring loop.
    """
    ids = [record.id for record in gold]
    if len(set(ids)) != len(ids):
        raise GoldFormatError("gold ids are not unique")
    started = time.perf_counter()
    rows: list[EvalRow] = []
    memo: dict = {}
    for record in gold:
        result = extract(record.id, record.text, gazetteer, index, cfg, memo)
        correct, spurious = score(result, record)
        rows.append(EvalRow(record.id, len(record.expected), correct, spurious))
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    total_expected = sum(row.expected for row in rows)
    total_correct = sum(row.correct for row in rows)
    total_detected = sum(row.correct + row.spurious for row in rows)
    recall = total_correct / total_expected if total_expected else 1.0
    precision = total_correct / total_detected if total_detected else 1.0
    return EvalReport(tuple(rows), recall, precision, elapsed_ms, cfg.as_dict())


def render_report(report: EvalReport, format: str = "markdown") -> str:
    """Serialize a report as markdown (per-text table) or stable JSON."""
    warning = "no texts evaluated" if not report.rows else None
    if format == "json":
        payload = {
            "rows": [
                {
                    "id": row.id,
                    "expected": row.expected,
                    "correct": row.correct,
                    "spurious": row.spurious,
                }
                for row in report.rows
            ],
            "micro_recall": report.micro_recall,
            "micro_precision": report.micro_precision,
            "runtime_ms": report.runtime_ms,
            "config": report.config,
            "warning": warning,
        }
        return json.dumps(payload, ensure_ascii=False)
    if format != "markdown":
        raise ValueError(f"unsupported report format {format!r}")

    lines = [
        "| text | expected | correct | spurious | rate |",
        "|------|----------|---------|----------|------|",
    ]
    for row in report.rows:
        lines.append(
            f"| {row.id} | {row.expected} | {row.correct} | {row.spurious} "
            f"| {row.correct}/{row.expected} |"
        )
    total_expected = sum(row.expected for row in report.rows)
    total_correct = sum(row.correct for row in report.rows)
    total_detected = sum(row.correct + row.spurious for row in report.rows)
    if warning:
        lines.append("")
        lines.append(f"Warning: {warning}.")
    lines.append("")
    lines.append(
        f"Average Rate: {total_correct}/{total_expected} ({report.micro_recall:.3f})"
    )
    lines.append(
        f"Precision: {total_correct}/{total_detected} ({report.micro_precision:.3f})"
    )
    cfg = report.config
    lines.append(
        f"Config: threshold={cfg.get('threshold')} min_fuzzy_len={cfg.get('min_fuzzy_len')} "
        f"dedupe={cfg.get('dedupe')} stopwords={len(cfg.get('stopwords', []))}"
    )
    lines.append(f"Runtime: {report.runtime_ms:.0f} ms")
    return "\n".join(lines) + "\n"


def reference_eval_sets() -> tuple[tuple[str, ...], ...]:
    """Per-text expected-name sets of the bundled Burkina Faso benchmark.

    The original posts behind these annotations are not distributable, so
    evaluation corpora are rebuilt synthetically: `corpusgen.generate_fixed`
    embeds exactly these name lists into template sentences.
    """
    path = Path(__file__).resolve().parent / "data" / "burkina_eval_sets.json"
    sets = json.loads(path.read_text(encoding="utf-8"))
    return tuple(tuple(names) for names in sets)
