"""End-to-end extraction for one document: preprocess, tokenize, recognize.

`PipelineConfig` gathers the knobs the matcher needs:

- ``threshold``: largest accepted normalized distance. The default 0.25
  tolerates roughly two edits on a seven-letter name while keeping short
  French words from attaching to short toponyms.
- ``min_fuzzy_len``: tokens shorter than this match exactly or not at all,
  so function words like "de" or "les" never fuzz onto village names.
- ``stopwords``: normalized words skipped before any lookup. The bundled
  default list covers French function words plus generic geography nouns
  ("village", "commune", ...).
- ``dedupe``: collapse repeated mentions in the locations list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .gazetteer import Gazetteer
from .recognizer import FuzzyIndex, LocationMatch, Match, recognize
from .textprep import preprocess
from .tokenizer import tokenize

__all__ = ["DEFAULT_STOPWORDS", "PipelineConfig", "ExtractionResult", "extract"]

# Normalized forms only. Function words, frequent verbs/adverbs of incident
# reports, and generic geography nouns that precede names in context like
# "le village de X" or "l'axe X Y".
DEFAULT_STOPWORDS = frozenset("""
    a à au aux avant avec après ainsi alors aussi autre autres avait avaient
    avoir bien ce cet cette ces celui celle chez comme contre dans de depuis
    des dont du elle elles en encore entre est et était étaient être eux fait
    faire fut hier hui il ils ici je la là le les leur leurs lui ma mais mal
    matin me mes moins mon ne nord nos notre nous on ont ou où par pas pendant
    plus pour près qui que quoi sa sans se selon ses si soir son sont sous sud
    sur ta tes ton tous tout toute toutes très tu un une vers vos votre vous y
    axe route zone secteur localité département région régions province
    provinces commune communes ville villes village villages aujourd'hui
""".split())


@dataclass(frozen=True)
class PipelineConfig:
    """Matcher parameters; validated on construction."""

    threshold: float = 0.25
    min_fuzzy_len: int = 4
    stopwords: frozenset[str] = DEFAULT_STOPWORDS
    dedupe: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.threshold <= 1.0:
            raise ValueError(f"threshold must be in (0, 1], got {self.threshold!r}")
        if self.min_fuzzy_len < 1:
            raise ValueError(f"min_fuzzy_len must be >= 1, got {self.min_fuzzy_len!r}")

    def as_dict(self) -> dict:
        """JSON-friendly echo of the effective configuration."""
        return {
            "threshold": self.threshold,
            "min_fuzzy_len": self.min_fuzzy_len,
            "dedupe": self.dedupe,
            "stopwords": sorted(self.stopwords),
        }


@dataclass(frozen=True)
class ExtractionResult:
    """Locations found in one document.

    ``locations`` holds canonical names in first-mention order, deduplicated
    when the config says so; ``matches`` keeps the full per-token evidence.
    """

    doc_id: str
    locations: tuple[str, ...]
    matches: tuple[LocationMatch, ...]


def extract(
    doc_id: str,
    raw: str,
    gazetteer: Gazetteer,
    index: Optional[FuzzyIndex],
    cfg: PipelineConfig = PipelineConfig(),
    memo: Optional[dict[str, Optional[Match]]] = None,
) -> ExtractionResult:
    """Run the full pipeline on one raw text.

    Pure given (raw, gazetteer, cfg): repeated runs return identical
    results. ``index`` may be None to force the linear-scan lookup;
    ``memo`` optionally shares a fuzzy-lookup cache across documents.
    """
    matches = recognize(tokenize(preprocess(raw, gazetteer)), gazetteer, index, cfg, memo)
    locations: list[str] = []
    seen: set[str] = set()
    for match in matches:
        if cfg.dedupe:
            if match.canonical in seen:
                continue
            seen.add(match.canonical)
        locations.append(match.canonical)
    return ExtractionResult(doc_id, tuple(locations), tuple(matches))
