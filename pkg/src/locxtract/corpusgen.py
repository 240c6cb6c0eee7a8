"""Deterministic synthetic corpora for testing and benchmarking.

Real incident posts cannot be redistributed, so test corpora are built from
French template sentences with sampled gazetteer names spliced in, plus
optional social-media noise: hashtag/mention symbols and single-edit
misspellings. Everything is driven by one seeded RNG — the same `GenSpec`
and gazetteer always produce byte-identical output.

Misspellings are exactly one character insert, delete or substitute, only
applied to names of at least ``misspell_min_len`` characters; a perturbed
name that would collide with a different gazetteer key is rerolled so gold
labels stay unambiguous.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Sequence

from .evaluate import GoldRecord
from .gazetteer import Gazetteer, GazetteerEntry, Level, normalize_name
from .pipeline import DEFAULT_STOPWORDS

__all__ = [
    "GenSpec",
    "generate",
    "generate_fixed",
    "synth_gazetteer",
    "random_word",
    "gold_to_jsonl",
    "raw_to_jsonl",
]


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one synthetic corpus."""

    seed: int = 0
    texts: int = 100
    names_per_text: tuple[int, int] = (1, 4)
    hashtags: bool = False
    mentions: bool = False
    misspell_rate: float = 0.0
    misspell_min_len: int = 5

    def __post_init__(self) -> None:
        lo, hi = self.names_per_text
        if not 1 <= lo <= hi:
            raise ValueError(f"bad names_per_text range {self.names_per_text!r}")
        if not 0.0 <= self.misspell_rate <= 1.0:
            raise ValueError(f"misspell_rate must be in [0, 1], got {self.misspell_rate!r}")
        if self.texts < 0:
            raise ValueError("texts must be >= 0")


_TEMPLATES: dict[int, tuple[str, ...]] = {
    1: (
        "Des individus armés ont attaqué {0} dans la nuit de vendredi.",
        "Le village de {0} a été la cible d'une attaque hier soir.",
        "Des hommes armés non identifiés ont fait irruption à {0} en fin de journée.",
        "La population de {0} signale des tirs nourris depuis ce matin.",
    ),
    2: (
        "Une attaque a été signalée à {0} près de {1} selon des sources locales.",
        "Des hommes armés ont intercepté un convoi entre {0} et {1}.",
        "Les habitants de {0} ont fui vers {1} après l'incident.",
        "Un poste de contrôle situé entre {0} et {1} a été visé dans la soirée.",
    ),
    3: (
        "Les habitants de {0} ont fui vers {1} après des tirs entendus à {2}.",
        "Des attaques simultanées ont touché {0}, {1} et {2} dans la même nuit.",
        "Un groupe armé a traversé {0} puis {1} avant d'être signalé à {2}.",
    ),
    4: (
        "Les villages de {0}, {1} et {2} situés vers {3} ont été visés.",
        "Des incidents ont été rapportés à {0}, {1}, {2} et {3} ce week-end.",
    ),
}

_FILLERS = (
    "La situation reste confuse sur place et les habitants sont inquiets.",
    "Aucun bilan officiel n'a encore été communiqué par les autorités.",
    "Des renforts militaires ont été déployés dans la zone ce matin.",
    "Les écoles de la zone resteront fermées jusqu'à nouvel ordre.",
    "Plusieurs familles ont trouvé refuge dans les localités voisines.",
    "Les secours sont arrivés sur les lieux dans la matinée.",
    "Le bilan provisoire fait état de plusieurs blessés selon nos sources.",
    "La population demande une présence renforcée des forces de défense.",
)

_HANDLES = ("infoSahelNet", "AlerteBF226", "VeilleSecu", "radioEchoDuFaso", "citoyenVigie")

_EDIT_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def _single_edit(rng: random.Random, name: str) -> str:
    op = rng.choice(("insert", "delete", "substitute"))
    if op == "insert":
        i = rng.randrange(len(name) + 1)
        return name[:i] + rng.choice(_EDIT_ALPHABET) + name[i:]
    i = rng.randrange(len(name))
    if op == "delete":
        return name[:i] + name[i + 1 :]
    current = name[i].casefold()
    replacement = rng.choice(_EDIT_ALPHABET)
    while replacement == current:
        replacement = rng.choice(_EDIT_ALPHABET)
    return name[:i] + replacement + name[i + 1 :]


def _misspell(rng: random.Random, name: str, all_keys: frozenset[str]) -> str:
    """One random edit whose result maps to no *other* gazetteer key."""
    own_key = normalize_name(name)
    while True:
        candidate = _single_edit(rng, name)
        key = normalize_name(candidate)
        if key and key != own_key and key not in all_keys:
            return candidate


def _hashtag_filler_word(rng: random.Random, sentence: str) -> str:
    words = sentence.split(" ")
    eligible = [i for i, w in enumerate(words) if len(w) >= 4 and w.isalpha()]
    if eligible:
        i = rng.choice(eligible)
        words[i] = "#" + words[i]
    return " ".join(words)


def _compose(
    rng: random.Random,
    names: Sequence[str],
    spec: GenSpec,
    all_keys: frozenset[str],
) -> str:
    rendered: list[str] = []
    for name in names:
        shown = name
        if spec.misspell_rate > 0 and len(name) >= spec.misspell_min_len:
            if rng.random() < spec.misspell_rate:
                shown = _misspell(rng, name, all_keys)
        if spec.hashtags and rng.random() < 0.3:
            shown = "#" + shown
        rendered.append(shown)

    k = len(rendered)
    if k in _TEMPLATES:
        opener = rng.choice(_TEMPLATES[k]).format(*rendered)
    else:
        joined = ", ".join(rendered[:-1]) + " et " + rendered[-1]
        opener = f"Des attaques simultanées ont été signalées à {joined} dans la soirée."

    fillers = list(rng.sample(_FILLERS, 3))
    if spec.hashtags and rng.random() < 0.4:
        fillers[0] = _hashtag_filler_word(rng, fillers[0])
    sentences = [opener, *fillers]
    if spec.mentions and rng.random() < 0.4:
        sentences.insert(0, f"RT @{rng.choice(_HANDLES)} :")
    return " ".join(sentences)


def _build(
    rng: random.Random,
    name_lists: Sequence[Sequence[str]],
    spec: GenSpec,
    gazetteer: Gazetteer,
) -> tuple[list[GoldRecord], list[tuple[str, str]]]:
    all_keys = frozenset(key for key, _ in gazetteer.iter_names())
    gold: list[GoldRecord] = []
    raw: list[tuple[str, str]] = []
    for i, names in enumerate(name_lists, start=1):
        text = _compose(rng, names, spec, all_keys)
        doc_id = str(i)
        gold.append(GoldRecord(doc_id, text, tuple(names)))
        raw.append((doc_id, text))
    return gold, raw


def generate(spec: GenSpec, gazetteer: Gazetteer) -> tuple[list[GoldRecord], list[tuple[str, str]]]:
    """Random corpus: (gold records, (id, text) pairs), texts ~40 tokens each.

    Names are sampled per text without replacement from the gazetteer's
    canonical forms; gold always lists the clean canonicals even when the
    embedded spelling was perturbed.
    """
    if len(gazetteer) == 0:
        raise ValueError("cannot generate from an empty gazetteer")
    rng = random.Random(spec.seed)
    pool = [entry.canonical for entry in gazetteer.entries]
    lo, hi = spec.names_per_text
    hi = min(hi, len(pool))
    lo = min(lo, hi)
    name_lists = [rng.sample(pool, rng.randint(lo, hi)) for _ in range(spec.texts)]
    return _build(rng, name_lists, spec, gazetteer)


def generate_fixed(
    name_lists: Sequence[Sequence[str]],
    spec: GenSpec,
    gazetteer: Gazetteer,
) -> tuple[list[GoldRecord], list[tuple[str, str]]]:
    """Corpus embedding exactly the given per-text name lists, in order.

    Used to rebuild reference evaluation corpora from known annotation
    sets; ``spec.texts`` is ignored in favour of ``len(name_lists)``.
    """
    rng = random.Random(spec.seed)
    return _build(rng, name_lists, spec, gazetteer)


_SYLLABLES = (
    "ba", "bé", "bi", "bo", "bou", "da", "dé", "di", "dio", "dou", "fa", "fo",
    "fou", "ga", "go", "gou", "ka", "kan", "ko", "kom", "kou", "la", "lé",
    "lo", "lou", "ma", "man", "mé", "mo", "mou", "na", "nas", "né", "ni",
    "nou", "pa", "pé", "pi", "po", "pou", "ra", "ro", "rou", "sa", "sam",
    "sé", "si", "so", "sou", "ta", "tan", "té", "ti", "to", "tou", "wa",
    "wal", "yé", "yi", "yo", "za", "zé", "zi", "zo",
)


def random_word(rng: random.Random, syllables: tuple[int, int] = (2, 4)) -> str:
    """A pronounceable synthetic name, capitalized."""
    n = rng.randint(*syllables)
    return "".join(rng.choice(_SYLLABLES) for _ in range(n)).capitalize()


def synth_gazetteer(seed: int, size: int) -> Gazetteer:
    """Deterministic gazetteer of ``size`` unique syllabic village names.

    Names whose key is shorter than 4 characters or collides with the
    default stopword list are rerolled, so generated corpora stay fully
    recognizable at the default configuration.
    """
    rng = random.Random(seed)
    entries: list[GazetteerEntry] = []
    keys: set[str] = set()
    while len(entries) < size:
        name = random_word(rng)
        key = normalize_name(name)
        if len(key) < 4 or key in keys or key in DEFAULT_STOPWORDS:
            continue
        keys.add(key)
        entries.append(GazetteerEntry(name, Level.VILLAGE))
    return Gazetteer(entries)


def gold_to_jsonl(records: Sequence[GoldRecord]) -> str:
    return "".join(
        json.dumps(
            {"id": r.id, "text": r.text, "expected": list(r.expected)}, ensure_ascii=False
        )
        + "\n"
        for r in records
    )


def raw_to_jsonl(pairs: Sequence[tuple[str, str]]) -> str:
    return "".join(
        json.dumps({"id": doc_id, "text": text}, ensure_ascii=False) + "\n"
        for doc_id, text in pairs
    )
