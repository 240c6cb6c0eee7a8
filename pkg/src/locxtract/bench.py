"""Benchmark the indexed lookup against the linear scan on one corpus.

Correctness gates the timings: when both modes run, their extraction
output must be identical document by document before any number is
reported. Index construction happens before the clock starts — the index
is built once per gazetteer and reused across queries, so its cost is not
part of per-corpus extraction time.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .gazetteer import Gazetteer
from .pipeline import ExtractionResult, PipelineConfig, extract
from .recognizer import FuzzyIndex
from .textprep import preprocess
from .tokenizer import tokenize

__all__ = ["ModeTiming", "BenchReport", "run_bench", "MODES"]

MODES = ("scan", "indexed")


@dataclass(frozen=True)
class ModeTiming:
    mode: str
    runs: tuple[float, ...]  # seconds per repetition

    @property
    def median_seconds(self) -> float:
        return statistics.median(self.runs)


@dataclass(frozen=True)
class BenchReport:
    doc_count: int
    token_count: int
    timings: tuple[ModeTiming, ...]
    outputs_equal: Optional[bool]  # None unless both modes ran

    def timing(self, mode: str) -> Optional[ModeTiming]:
        return next((t for t in self.timings if t.mode == mode), None)

    @property
    def speedup(self) -> Optional[float]:
        """scan median / indexed median, when both modes ran."""
        scan, indexed = self.timing("scan"), self.timing("indexed")
        if scan is None or indexed is None or indexed.median_seconds == 0:
            return None
        return scan.median_seconds / indexed.median_seconds

    def tokens_per_second(self, mode: str) -> Optional[float]:
        timing = self.timing(mode)
        if timing is None or timing.median_seconds == 0:
            return None
        return self.token_count / timing.median_seconds


def run_bench(
    docs: Sequence[tuple[str, str]],
    gazetteer: Gazetteer,
    cfg: PipelineConfig = PipelineConfig(),
    modes: Sequence[str] = MODES,
    repetitions: int = 1,
) -> BenchReport:
    """Time extraction over ``docs`` per mode; median over repetitions.

    Raises ValueError if the two modes disagree on any document (the
    caller decides how to surface that; the CLI maps it to exit code 3).
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    unknown = [m for m in modes if m not in MODES]
    if unknown:
        raise ValueError(f"unknown bench modes: {unknown}")

    token_count = sum(len(tokenize(preprocess(text, gazetteer))) for _, text in docs)
    index = FuzzyIndex(gazetteer) if "indexed" in modes else None

    timings: list[ModeTiming] = []
    outputs: dict[str, list[ExtractionResult]] = {}
    for mode in MODES:  # fixed order: scan before indexed
        if mode not in modes:
            continue
        mode_index = index if mode == "indexed" else None
        runs: list[float] = []
        results: list[ExtractionResult] = []
        for _ in range(repetitions):
            memo: dict = {}
            results = []
            started = time.perf_counter()
            for doc_id, text in docs:
                results.append(extract(doc_id, text, gazetteer, mode_index, cfg, memo))
            runs.append(time.perf_counter() - started)
        timings.append(ModeTiming(mode, tuple(runs)))
        outputs[mode] = results

    equal: Optional[bool] = None
    if "scan" in outputs and "indexed" in outputs:
        equal = outputs["scan"] == outputs["indexed"]
        if not equal:
            diverging = sum(
                1 for a, b in zip(outputs["scan"], outputs["indexed"]) if a != b
            )
            raise ValueError(
                f"scan and indexed modes disagree on {diverging} of {len(docs)} documents"
            )
    return BenchReport(len(docs), token_count, tuple(timings), equal)
