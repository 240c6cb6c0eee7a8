"""Pre-processing of raw social-network text.

Two transformations prepare a post for tokenization:

1. strip the social symbols ``#`` and ``@`` (and nothing else — URLs,
   emoji and "RT" markers pass through untouched);
2. hyphenate occurrences of multi-word gazetteer names so each one becomes
   a single token: "Boucle du Mouhoun" -> "Boucle-du-Mouhoun".

Symbol removal runs first, so "#Boucle du Mouhoun" still hyphenates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .gazetteer import Gazetteer

__all__ = ["CleanText", "Replacement", "strip_symbols", "hyphenate_multiword", "preprocess"]

Span = tuple[int, int]


@dataclass(frozen=True)
class Replacement:
    """One edit applied to the input text: span (start, end) -> ``new``."""

    span: Span
    new: str


@dataclass(frozen=True)
class CleanText:
    """Preprocessed text plus the audit trail of edits.

    ``replacements`` spans refer to the text the producing operation
    received (for `preprocess`, the raw input); spans never overlap.
    """

    text: str
    replacements: tuple[Replacement, ...] = ()


_SYMBOLS = frozenset("#@")


def strip_symbols(raw: str) -> str:
    """Delete every ``#`` and ``@``; all other characters stay in place.

    >>> strip_symbols("#Burkina attaque à @Gorom")
    'Burkina attaque à Gorom'
    """
    return raw.replace("#", "").replace("@", "")


def _multiword_regex(gazetteer: Gazetteer) -> re.Pattern[str]:
    """Alternation matching any multi-word gazetteer name at word boundaries.

    Alternatives are ordered most-words first, then longest first, then file
    order, so at any position the longest known name wins. A "word boundary"
    is a transition between [letter/digit/underscore/hyphen] and anything
    else. Internal whitespace in a name matches whole whitespace runs.
    Matching is case-insensitive but diacritic-sensitive. Multi-word aliases
    take part alongside canonicals.
    """
    names: list[tuple[int, int, int, str]] = []
    seq = 0
    for entry in gazetteer.entries:
        for name in (entry.canonical, *entry.aliases):
            words = name.split()
            if len(words) >= 2:
                names.append((-len(words), -len(name), seq, name))
            seq += 1
    names.sort()
    if not names:
        return re.compile(r"(?!)")  # matches nothing
    alts = "|".join(
        r"\s+".join(re.escape(word) for word in name.split()) for *_, name in names
    )
    return re.compile(rf"(?<![\w\-])(?:{alts})(?![\w\-])", re.IGNORECASE | re.UNICODE)


def hyphenate_multiword(text: str, gazetteer: Gazetteer) -> CleanText:
    """Replace internal whitespace of known multi-word names with hyphens.

    Each whitespace character inside a matched name becomes one ``-``, so
    the text length never changes. Matches are non-overlapping, found left
    to right.

    >>> # with a gazetteer containing "Boucle du Mouhoun"
    >>> # "dans la Boucle du Mouhoun hier" -> "dans la Boucle-du-Mouhoun hier"
    """
    pattern = _pattern_for(gazetteer)
    replacements: list[Replacement] = []

    def hyphenate(match: re.Match[str]) -> str:
        hyphenated = "".join("-" if c.isspace() else c for c in match.group(0))
        replacements.append(Replacement((match.start(), match.end()), hyphenated))
        return hyphenated

    return CleanText(pattern.sub(hyphenate, text), tuple(replacements))


def _pattern_for(gazetteer: Gazetteer) -> re.Pattern[str]:
    # The pattern only depends on the gazetteer, which is immutable after
    # load; cache it on the instance.
    pattern = getattr(gazetteer, "_multiword_pattern", None)
    if pattern is None:
        pattern = _multiword_regex(gazetteer)
        gazetteer._multiword_pattern = pattern  # type: ignore[attr-defined]
    return pattern


def preprocess(raw: str, gazetteer: Gazetteer) -> CleanText:
    """Strip symbols, then hyphenate multi-word names.

    Equivalent to ``hyphenate_multiword(strip_symbols(raw), gazetteer)``,
    with all replacement spans mapped back to positions in ``raw``.
    Idempotent: a second pass finds no symbols and no whitespace left
    inside already-hyphenated names.
    """
    stripped_chars: list[str] = []
    origin: list[int] = []  # origin[i] = index in raw of stripped text char i
    replacements: list[Replacement] = []
    for i, ch in enumerate(raw):
        if ch in _SYMBOLS:
            replacements.append(Replacement((i, i + 1), ""))
        else:
            stripped_chars.append(ch)
            origin.append(i)
    stripped = "".join(stripped_chars)

    hyphenated = hyphenate_multiword(stripped, gazetteer)
    for rep in hyphenated.replacements:
        start, end = rep.span
        replacements.append(Replacement((origin[start], origin[end - 1] + 1), rep.new))
    replacements.sort(key=lambda r: r.span)
    return CleanText(hyphenated.text, tuple(replacements))
