"""Fuzzy gazetteer location extraction for noisy French social-network text.

Pipeline: preprocess (strip #/@, hyphenate multi-word names) -> tokenize ->
recognize each token against the gazetteer by normalized edit distance,
answered either by a linear scan or by an equivalent BK-tree index. An
evaluation harness scores extraction against gold name lists and a
deterministic corpus generator provides synthetic test data.
"""

from .bench import BenchReport, run_bench
from .corpusgen import GenSpec, generate, generate_fixed, synth_gazetteer
from .editdist import levenshtein, levenshtein_within, normalized_gld
from .evaluate import (
    EvalReport,
    EvalRow,
    GoldRecord,
    IdMismatchError,
    evaluate_corpus,
    load_gold,
    reference_eval_sets,
    render_report,
    score,
)
from .gazetteer import (
    Gazetteer,
    GazetteerEntry,
    Level,
    LineError,
    bundled_burkina_path,
    iterate_names,
    load_gazetteer,
    normalize_name,
)
from .pipeline import DEFAULT_STOPWORDS, ExtractionResult, PipelineConfig, extract
from .recognizer import (
    FuzzyIndex,
    LocationMatch,
    best_match_indexed,
    best_match_scan,
    recognize,
)
from .textprep import CleanText, hyphenate_multiword, preprocess, strip_symbols
from .tokenizer import Token, tokenize

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "CleanText",
    "DEFAULT_STOPWORDS",
    "EvalReport",
    "EvalRow",
    "ExtractionResult",
    "FuzzyIndex",
    "Gazetteer",
    "GazetteerEntry",
    "GenSpec",
    "GoldRecord",
    "IdMismatchError",
    "Level",
    "LineError",
    "LocationMatch",
    "PipelineConfig",
    "Token",
    "best_match_indexed",
    "best_match_scan",
    "bundled_burkina_path",
    "evaluate_corpus",
    "extract",
    "generate",
    "generate_fixed",
    "hyphenate_multiword",
    "iterate_names",
    "levenshtein",
    "levenshtein_within",
    "load_gazetteer",
    "load_gold",
    "normalize_name",
    "normalized_gld",
    "preprocess",
    "recognize",
    "reference_eval_sets",
    "render_report",
    "run_bench",
    "score",
    "strip_symbols",
    "synth_gazetteer",
    "tokenize",
    "__version__",
]
