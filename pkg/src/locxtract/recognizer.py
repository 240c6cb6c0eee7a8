"""Location recognizer: nearest-gazetteer-name lookup per token.

For every token the recognizer finds the gazetteer key with the smallest
normalized edit distance and accepts it when the distance stays under the
configured threshold. Two interchangeable lookup routes exist:

- `best_match_scan` walks every key; it is the simple reference the fast
  route is checked against.
- `best_match_indexed` answers the same query from a BK-tree, pruning with
  the triangle inequality; within the cutoff it returns exactly what the
  scan returns.

Both routes share one tie-break: exact match first, then smaller normalized
distance, then the longer key, then gazetteer file order. The winner's
*canonical* name is reported even when an alias key matched.
"""

from __future__ import annotations

import math
from bisect import bisect_left as _bisect_left, insort
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Optional

from .editdist import bitparallel_levenshtein, char_masks, levenshtein
from .gazetteer import Gazetteer, normalize_name
from .tokenizer import Token

if TYPE_CHECKING:  # pragma: no cover
    from .pipeline import PipelineConfig

__all__ = [
    "LocationMatch",
    "FuzzyIndex",
    "best_match_scan",
    "best_match_indexed",
    "recognize",
]

Match = tuple[str, float]  # (canonical, normalized distance)


@dataclass(frozen=True, slots=True)
class LocationMatch:
    """A token resolved to a canonical gazetteer name."""

    token: Token
    canonical: str
    distance: float
    exact: bool


def _norm(d: int, la: int, lb: int) -> float:
    # Same expression as editdist.normalized_gld, kept inline so scan and
    # index produce bit-identical floats.
    if d == 0:
        return 0.0
    return (2.0 * d) / (la + lb + d)


def _scan_names(gazetteer: Gazetteer) -> list[tuple[str, str, int]]:
    """(key, canonical, key length) in iteration order, cached on the gazetteer."""
    cached = getattr(gazetteer, "_scan_names", None)
    if cached is None:
        cached = [(key, canonical, len(key)) for key, canonical in gazetteer.iter_names()]
        gazetteer._scan_names = cached  # type: ignore[attr-defined]
    return cached


def best_match_scan(word: str, gazetteer: Gazetteer) -> Optional[Match]:
    """Closest gazetteer name to ``word`` by normalized edit distance.

    ``word`` must already be a normalized key (see
    `gazetteer.normalize_name`); the scan walks every entry key and alias
    key, computes the exact distance, and keeps the running minimum under
    the shared tie-break. Returns None only for an empty gazetteer.

    This is the deliberately plain reference implementation the index is
    checked (and benchmarked) against; it does nothing smarter than one
    distance per key.
    """
    m = len(word)
    masks = char_masks(word)
    best: Optional[tuple[float, int, int, str]] = None  # (norm, -len, seq, canonical)
    for seq, (key, canonical, lb) in enumerate(_scan_names(gazetteer)):
        d = bitparallel_levenshtein(masks, m, key)
        candidate = (_norm(d, m, lb), -lb, seq, canonical)
        if best is None or candidate < best:
            best = candidate
    if best is None:
        return None
    return best[3], best[0]


class _Node:
    __slots__ = (
        "key",
        "canonical",
        "seq",
        "length",
        "children",
        "edges",
        "max_edge",
        "min_len",
        "max_len",
    )

    def __init__(self, key: str, canonical: str, seq: int):
        self.key = key
        self.canonical = canonical
        self.seq = seq
        self.length = len(key)
        self.children: dict[int, _Node] = {}
        self.edges: list[int] = []  # sorted child edge labels, for near-first walks
        self.max_edge = 0  # largest direct child edge label
        self.min_len = self.length  # key-length window over the whole subtree
        self.max_len = self.length


class FuzzyIndex:
    """BK-tree over gazetteer keys, keyed by raw Levenshtein distance.

    Every (key, canonical) pair from the gazetteer iteration lives in
    exactly one node; a child edge labeled ``d`` leads to a subtree whose
    root key is at raw distance exactly ``d`` from the parent key. Nodes
    additionally carry their subtree's key-length window and largest edge
    label, which lets a query discard whole subtrees that cannot hold an
    admissible key. Immutable after construction; concurrent queries are
    safe.
    """

    def __init__(self, gazetteer: Gazetteer):
        self.root: Optional[_Node] = None
        self.size = 0
        self.max_key_len = 0
        self.by_key: dict[str, _Node] = {}
        # First key claiming each single-deletion variant; used only to seed
        # the search bound with a near-exact candidate in O(|word|) lookups.
        self._del_variants: dict[str, _Node] = {}
        for key, canonical in gazetteer.iter_names():
            self._insert(key, canonical)

    def _insert(self, key: str, canonical: str) -> None:
        node = _Node(key, canonical, self.size)
        self.size += 1
        self.by_key[key] = node
        variants = self._del_variants
        for i in range(node.length):
            variant = key[:i] + key[i + 1 :]
            if variant not in variants:
                variants[variant] = node
        if node.length > self.max_key_len:
            self.max_key_len = node.length
        if self.root is None:
            self.root = node
            return
        cur = self.root
        while True:
            if node.length < cur.min_len:
                cur.min_len = node.length
            elif node.length > cur.max_len:
                cur.max_len = node.length
            d = levenshtein(key, cur.key)
            if d == 0:
                raise ValueError(f"duplicate key {key!r} in index")
            child = cur.children.get(d)
            if child is None:
                cur.children[d] = node
                insort(cur.edges, d)
                if d > cur.max_edge:
                    cur.max_edge = d
                return
            cur = child

    def __len__(self) -> int:
        return self.size

    def items(self) -> Iterator[tuple[str, str]]:
        """All (key, canonical) pairs, in tree order."""
        stack = [self.root] if self.root is not None else []
        while stack:
            node = stack.pop()
            yield node.key, node.canonical
            stack.extend(node.children.values())


def search_radius(cutoff: float, word_len: int, max_key_len: int) -> int:
    """Raw-distance radius covering every key within the normalized cutoff.

    From 2L/(m + |b| + L) <= t it follows L <= t*(m + |b|)/(2 - t), which
    is largest for the longest key in the tree. Distances are integers, so
    the floor of that value (nudged above float rounding) already covers
    every admissible key.
    """
    return math.floor(cutoff * (word_len + max_key_len) / (2.0 - cutoff) + 1e-9)


def _radius_table(bound: float, m: int, max_len: int) -> list[int]:
    """`search_radius` per key length 0..max_len at the given normalized bound."""
    factor = bound / (2.0 - bound)
    return [math.floor(factor * (m + length) + 1e-9) for length in range(max_len + 1)]


def best_match_indexed(word: str, index: FuzzyIndex, cutoff: float) -> Optional[Match]:
    """Same answer as `best_match_scan` whenever that answer is within ``cutoff``.

    Returns None when no key has normalized distance <= cutoff. Pruning is
    exact: per subtree key length, the triangle inequality bounds the raw
    distance of any key that could still beat or tie the best candidate
    found so far, and that bound tightens whenever a better candidate turns
    up. Subtrees whose key-length window alone forces a larger normalized
    distance are skipped without computing anything. Children are explored
    nearest-first (by |edge - d|), which finds close candidates early and
    lets the shrinking bound cut off the rest; every skip condition is
    re-checked when a node is popped, so order never affects the answer.
    """
    if not 0.0 < cutoff <= 1.0:
        raise ValueError(f"cutoff must be in (0, 1], got {cutoff!r}")
    root = index.root
    if root is None:
        return None
    exact = index.by_key.get(word)
    if exact is not None:
        # Distance 0 cannot be beaten or tied under the tie-break.
        return exact.canonical, 0.0
    m = len(word)
    masks = char_masks(word)
    max_key_len = index.max_key_len
    bound = cutoff  # normalized distance a key must reach to beat or tie
    best = _seed_candidate(word, masks, m, index, bound)
    if best is not None and best[0] < bound:
        bound = best[0]
    radii = _radius_table(bound, m, max_key_len)
    r_max = radii[max_key_len]
    stack: list[tuple[_Node, int, int]] = [(root, -1, 0)]  # (node, parent_d, edge)
    while stack:
        node, parent_d, edge = stack.pop()
        nmax = node.max_len
        if parent_d >= 0:
            # Re-check at pop time: the bound may have shrunk since the push.
            diff = edge - parent_d if edge >= parent_d else parent_d - edge
            if diff > radii[nmax]:
                continue
            if nmax < m:
                delta = m - nmax
                if (2.0 * delta) / (m + nmax + delta) > bound:
                    continue
            else:
                nmin = node.min_len
                if nmin > m:
                    delta = nmin - m
                    if (2.0 * delta) / (m + nmin + delta) > bound:
                        continue
        # The exact distance only matters while it can still accept this
        # key or route to a child within the radius; beyond that, prune.
        limit = node.max_edge + radii[nmax]
        lb = node.length
        delta = m - lb if m >= lb else lb - m
        if delta > limit:
            continue
        d = bitparallel_levenshtein(masks, m, node.key)
        if d > limit:
            continue
        norm = _norm(d, m, lb)
        if norm <= bound:
            candidate = (norm, -lb, node.seq, node.canonical)
            if best is None or candidate < best:
                best = candidate
                if norm < bound:
                    bound = norm
                    radii = _radius_table(bound, m, max_key_len)
                    r_max = radii[max_key_len]
        edges = node.edges
        if edges:
            children = node.children
            near: list[tuple[_Node, int, int]] = []
            n = len(edges)
            hi = _bisect_left(edges, d)
            lo = hi - 1
            while True:
                if hi < n:
                    dh = edges[hi] - d
                    if lo >= 0 and d - edges[lo] < dh:
                        e = edges[lo]
                        diff = d - e
                        lo -= 1
                    else:
                        e = edges[hi]
                        diff = dh
                        hi += 1
                elif lo >= 0:
                    e = edges[lo]
                    diff = d - e
                    lo -= 1
                else:
                    break
                if diff > r_max:
                    break  # outward walk: |edge - d| only grows from here
                child = children[e]
                if diff <= radii[child.max_len]:
                    near.append((child, d, e))
            near.reverse()  # farthest first onto the stack, nearest pops first
            stack.extend(near)
    if best is None:
        return None
    return best[3], best[0]


def _seed_candidate(
    word: str, masks: dict[str, int], m: int, index: FuzzyIndex, bound: float
) -> Optional[tuple[float, int, int, str]]:
    """Probe the deletion-variant maps for a candidate within one edit.

    Misspelled mentions usually sit one edit from their source name.
    Every key at distance 1 from ``word`` is either a deletion variant of
    ``word``, has ``word`` as one of its own deletion variants, or shares a
    deletion variant with it, so a handful of dictionary lookups surfaces
    it. Purely an accelerator: the exhaustive walk re-verifies everything,
    so a missing or suboptimal seed never changes the final answer.
    """
    nodes: list[_Node] = []
    hit = index._del_variants.get(word)
    if hit is not None:
        nodes.append(hit)
    by_key = index.by_key
    variants = index._del_variants
    for i in range(m):
        variant = word[:i] + word[i + 1 :]
        for hit in (by_key.get(variant), variants.get(variant)):
            if hit is not None:
                nodes.append(hit)
    best: Optional[tuple[float, int, int, str]] = None
    seen: set[int] = set()
    for node in nodes:
        if node.seq in seen:
            continue
        seen.add(node.seq)
        d = bitparallel_levenshtein(masks, m, node.key)
        norm = _norm(d, m, node.length)
        if norm <= bound:
            candidate = (norm, -node.length, node.seq, node.canonical)
            if best is None or candidate < best:
                best = candidate
    return best


def recognize(
    tokens: list[Token],
    gazetteer: Gazetteer,
    index: Optional[FuzzyIndex],
    cfg: "PipelineConfig",
    memo: Optional[dict[str, Optional[Match]]] = None,
) -> list[LocationMatch]:
    """Resolve tokens to gazetteer names, in token order.

    Per token: normalize the text, skip stopwords, accept only exact-index
    hits for tokens shorter than ``cfg.min_fuzzy_len``, otherwise run the
    fuzzy lookup at ``cfg.threshold`` (through ``index`` when given, else
    through the scan). When a hyphenated token misses entirely, each
    hyphen-separated part is retried the same way, so route phrases like
    "Tanwalbougou-Ougarou" still surface both names.

    ``memo`` optionally caches fuzzy lookups across calls; callers must not
    share one memo between different configurations or gazetteers.
    """

    def lookup(word: str) -> Optional[Match]:
        entry = gazetteer.exact_index.get(word)
        if entry is not None:
            return entry.canonical, 0.0
        if len(word) < cfg.min_fuzzy_len:
            return None
        if memo is not None and word in memo:
            return memo[word]
        if index is not None:
            result = best_match_indexed(word, index, cfg.threshold)
        else:
            result = best_match_scan(word, gazetteer)
            if result is not None and result[1] > cfg.threshold:
                result = None
        if memo is not None:
            memo[word] = result
        return result

    def match_one(token: Token) -> Optional[LocationMatch]:
        word = normalize_name(token.text)
        if not word or word in cfg.stopwords:
            return None
        found = lookup(word)
        if found is None:
            return None
        canonical, distance = found
        return LocationMatch(token, canonical, distance, distance == 0.0)

    matches: list[LocationMatch] = []
    for token in tokens:
        whole = match_one(token)
        if whole is not None:
            matches.append(whole)
            continue
        parts = token.text.split("-")
        if sum(1 for p in parts if p) < 2:
            continue
        pos = token.start
        for part in parts:
            if part:
                sub = match_one(Token(part, pos, pos + len(part)))
                if sub is not None:
                    matches.append(sub)
            pos += len(part) + 1
    return matches
