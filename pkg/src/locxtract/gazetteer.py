"""Gazetteer of known location names: loading, normalization and indexing.

The gazetteer is the authority every token is matched against. It is read
from a small TSV format (UTF-8, LF line endings, ``#`` comment lines):

    canonical<TAB>level<TAB>parent<TAB>aliases

- ``canonical``: the display form of the name ("Boucle du Mouhoun").
- ``level``: one of region / province / commune / village / unknown
  (empty means unknown).
- ``parent``: canonical name of the enclosing unit, may be empty.
- ``aliases``: semicolon-separated alternative spellings, may be empty.

Matching happens in a *key* space: keys are the canonical (and alias)
strings after `normalize_name`. Keys must be unique across the whole file,
aliases included. Diacritics are kept in keys on purpose: stripping them
would merge distinct Burkinabè names, and the fuzzy matcher absorbs accent
typos anyway.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator, Union

__all__ = [
    "Level",
    "GazetteerEntry",
    "Gazetteer",
    "LineError",
    "normalize_name",
    "load_gazetteer",
    "iterate_names",
    "bundled_burkina_path",
]

_WS_RUN = re.compile(r"\s+")


def normalize_name(raw: str) -> str:
    """Return the matching key for a raw name.

    Case folds, applies Unicode canonical composition, trims, and collapses
    internal whitespace runs to single spaces. Diacritics and underscores
    survive. Idempotent.

    >>> normalize_name("  Gorom ")
    'gorom'
    >>> normalize_name("Boucle  du Mouhoun")
    'boucle du mouhoun'
    >>> normalize_name("Djigouè")
    'djigouè'
    """
    folded = unicodedata.normalize("NFC", raw.casefold())
    return _WS_RUN.sub(" ", folded).strip()


class Level(str, Enum):
    """Administrative level of a gazetteer entry."""

    REGION = "region"
    PROVINCE = "province"
    COMMUNE = "commune"
    VILLAGE = "village"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class GazetteerEntry:
    """One canonical location name plus its aliases.

    ``key`` and ``alias_keys`` are derived with `normalize_name` and are
    never stored stale. Aliases must already be deduplicated by key and must
    not collide with the entry's own key (the loader takes care of that;
    direct construction raises on violations).
    """

    canonical: str
    level: Level = Level.UNKNOWN
    parent: str | None = None
    aliases: tuple[str, ...] = ()
    key: str = field(init=False)
    alias_keys: tuple[str, ...] = field(init=False)

    def __post_init__(self) -> None:
        key = normalize_name(self.canonical)
        if not key:
            raise ValueError("canonical name is empty after normalization")
        alias_keys = tuple(normalize_name(a) for a in self.aliases)
        seen = {key}
        for alias, akey in zip(self.aliases, alias_keys):
            if not akey:
                raise ValueError(f"alias {alias!r} is empty after normalization")
            if akey in seen:
                raise ValueError(f"alias {alias!r} duplicates another key of this entry")
            seen.add(akey)
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "alias_keys", alias_keys)

    @property
    def is_multiword(self) -> bool:
        return len(self.canonical.split()) >= 2


@dataclass(frozen=True)
class LineError:
    """One rejected gazetteer line."""

    line_no: int
    kind: str  # "duplicate-key" | "bad-level" | "malformed-line"
    message: str

    def __str__(self) -> str:
        return f"line {self.line_no}: {self.kind}: {self.message}"


class Gazetteer:
    """Immutable collection of entries with an exact-key index.

    ``entries`` keeps file order. ``exact_index`` maps every key — entry
    keys and alias keys alike — to its entry, so a matched alias still
    reports the entry's canonical form. ``multiword`` lists the entries
    whose canonical has two or more words, most words first (file order
    breaks ties); the preprocessor hyphenates occurrences of these.
    """

    def __init__(self, entries: Iterable[GazetteerEntry]):
        self.entries: tuple[GazetteerEntry, ...] = tuple(entries)
        index: dict[str, GazetteerEntry] = {}
        for entry in self.entries:
            for key in (entry.key, *entry.alias_keys):
                if key in index:
                    raise ValueError(f"duplicate key {key!r}")
                index[key] = entry
        self.exact_index: dict[str, GazetteerEntry] = index
        self.multiword: tuple[GazetteerEntry, ...] = tuple(
            sorted(
                (e for e in self.entries if e.is_multiword),
                key=lambda e: -len(e.canonical.split()),
            )
        )

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[GazetteerEntry]:
        return iter(self.entries)

    def iter_names(self) -> Iterator[tuple[str, str]]:
        """Yield every (key, canonical) pair in deterministic order.

        For each entry in file order: the entry key first, then its alias
        keys in listed order. The canonical form is repeated for aliases so
        a match through any key reports the display name.
        """
        for entry in self.entries:
            yield entry.key, entry.canonical
            for akey in entry.alias_keys:
                yield akey, entry.canonical


def iterate_names(gazetteer: Gazetteer) -> Iterator[tuple[str, str]]:
    """Sequence of (key, canonical) pairs; see `Gazetteer.iter_names`."""
    return gazetteer.iter_names()


_LEVELS = {level.value: level for level in Level}

Source = Union[str, Path, BinaryIO, bytes]


def load_gazetteer(source: Source, format: str = "tsv") -> tuple[Gazetteer, list[LineError]]:
    """Parse a gazetteer file and report every rejected line.

    ``source`` may be a path, raw bytes, or a binary file object; content
    must decode as UTF-8. Lines starting with ``#`` and blank lines are
    skipped. Empty trailing columns may be omitted (editors love stripping
    trailing tabs). A line is rejected (and listed in the returned errors,
    with its 1-based line number) when:

    - it has more than four tab-separated columns or an empty canonical
      name ("malformed-line"),
    - its level string is not a known level ("bad-level"),
    - its key, or one of its alias keys, collides with a key seen earlier
      ("duplicate-key"); the earlier line wins.

    Alias cells are deduplicated within the line, and aliases that
    normalize to the entry's own key are dropped silently.

    Loading is deterministic: the same bytes always produce a structurally
    identical gazetteer.
    """
    if format != "tsv":
        raise ValueError(f"unsupported gazetteer format {format!r}")
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    elif isinstance(source, bytes):
        data = source
    else:
        data = source.read()
    text = data.decode("utf-8")

    entries: list[GazetteerEntry] = []
    errors: list[LineError] = []
    seen: dict[str, int] = {}  # key -> line number that claimed it

    for line_no, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        columns = line.split("\t")
        if len(columns) > 4:
            errors.append(
                LineError(line_no, "malformed-line", f"expected 4 columns, got {len(columns)}")
            )
            continue
        columns += [""] * (4 - len(columns))
        canonical, level_raw, parent_raw, aliases_raw = (c.strip() for c in columns)
        if not canonical:
            errors.append(LineError(line_no, "malformed-line", "empty canonical name"))
            continue
        level_name = level_raw.casefold() or Level.UNKNOWN.value
        level = _LEVELS.get(level_name)
        if level is None:
            errors.append(LineError(line_no, "bad-level", f"unrecognized level {level_raw!r}"))
            continue

        key = normalize_name(canonical)
        aliases: list[str] = []
        alias_keys: list[str] = []
        for alias in aliases_raw.split(";"):
            alias = alias.strip()
            if not alias:
                continue
            akey = normalize_name(alias)
            if akey == key or akey in alias_keys:
                continue
            aliases.append(alias)
            alias_keys.append(akey)

        clash = next((k for k in (key, *alias_keys) if k in seen), None)
        if clash is not None:
            errors.append(
                LineError(
                    line_no,
                    "duplicate-key",
                    f"key {clash!r} already defined on line {seen[clash]}",
                )
            )
            continue

        entries.append(
            GazetteerEntry(
                canonical=canonical,
                level=level,
                parent=parent_raw or None,
                aliases=tuple(aliases),
            )
        )
        for k in (key, *alias_keys):
            seen[k] = line_no

    return Gazetteer(entries), errors


def bundled_burkina_path() -> Path:
    """Path of the Burkina Faso gazetteer shipped with the package."""
    return Path(__file__).resolve().parent / "data" / "burkina_gazetteer.tsv"
