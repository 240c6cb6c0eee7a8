"""Edit-distance kernel: Levenshtein and its normalized form.

`levenshtein` is the plain unit-cost edit distance (insertions, deletions,
substitutions) over Unicode code points. `normalized_gld` maps it into
[0, 1] as

    2 * L / (|a| + |b| + L)

which is 0 exactly for equal strings, 1 for maximally different ones, and —
unlike a plain length division — satisfies the triangle inequality, so it
can safely drive metric-tree lookups. Callers that want case-insensitive
distances normalize their strings first; these functions never touch their
input.

`levenshtein_within` is the banded variant used by the hot paths: it gives
the exact distance when it is <= limit and None otherwise, and is verified
against the plain implementation property-by-property.
"""

from __future__ import annotations

from typing import Optional

__all__ = [
    "levenshtein",
    "levenshtein_within",
    "normalized_gld",
    "char_masks",
    "bitparallel_levenshtein",
]


def levenshtein(a: str, b: str) -> int:
    """Minimum number of single-character edits transforming ``a`` into ``b``.

    >>> levenshtein("kitten", "sitting")
    3
    >>> levenshtein("", "abc")
    3

    Symmetric; at most max(|a|, |b|); at least abs(|a| - |b|); 0 iff equal.
    Uses two rows, O(min(|a|, |b|)) extra space.
    """
    if a == b:
        return 0
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    if lb > la:
        a, b, la, lb = b, a, lb, la
    row = list(range(lb + 1))
    for i in range(1, la + 1):
        prev = row[0]
        row[0] = i
        ca = a[i - 1]
        for j in range(1, lb + 1):
            cur = row[j]
            if ca == b[j - 1]:
                val = prev
            else:
                val = prev + 1
                if cur < val:
                    val = cur + 1
                other = row[j - 1] + 1
                if other < val:
                    val = other
            row[j] = val
            prev = cur
    return row[lb]


def levenshtein_within(a: str, b: str, limit: int) -> Optional[int]:
    """Exact `levenshtein(a, b)` if it is <= limit, else None.

    Bit-identical to the plain implementation inside the band; rows whose
    minimum already exceeds the limit end the computation early.
    """
    if limit < 0:
        return None
    if a == b:
        return 0
    la, lb = len(a), len(b)
    if la == 0:
        return lb if lb <= limit else None
    if lb == 0:
        return la if la <= limit else None
    if lb - la > limit or la - lb > limit:
        return None
    if lb > la:
        a, b, la, lb = b, a, lb, la
    row = list(range(lb + 1))
    for i in range(1, la + 1):
        prev = row[0]
        row[0] = i
        ca = a[i - 1]
        row_min = i
        for j in range(1, lb + 1):
            cur = row[j]
            if ca == b[j - 1]:
                val = prev
            else:
                val = prev + 1
                if cur < val:
                    val = cur + 1
                other = row[j - 1] + 1
                if other < val:
                    val = other
            row[j] = val
            prev = cur
            if val < row_min:
                row_min = val
        if row_min > limit:
            return None
    d = row[lb]
    return d if d <= limit else None


def char_masks(word: str) -> dict[str, int]:
    """Per-character position bitmasks of ``word`` for `bitparallel_levenshtein`."""
    masks: dict[str, int] = {}
    for i, ch in enumerate(word):
        masks[ch] = masks.get(ch, 0) | (1 << i)
    return masks


def bitparallel_levenshtein(masks: dict[str, int], word_len: int, other: str) -> int:
    """`levenshtein(word, other)` via Myers' bit-parallel recurrence.

    ``masks`` must come from `char_masks(word)` with ``word_len ==
    len(word)``. One O(1)-word update per character of ``other`` (Python
    integers keep it exact for any word length), which makes it the kernel
    of choice when one query is compared against many candidates. Verified
    equal to `levenshtein` on its full domain by the test suite.
    """
    m = word_len
    if m == 0:
        return len(other)
    mask = (1 << m) - 1
    vp = mask
    vn = 0
    dist = m
    high = 1 << (m - 1)
    get = masks.get
    for ch in other:
        x = get(ch, 0) | vn
        d0 = (((x & vp) + vp) ^ vp) | x
        hn = vp & d0
        hp = vn | (mask & ~(vp | d0))
        if hp & high:
            dist += 1
        elif hn & high:
            dist -= 1
        x = ((hp << 1) | 1) & mask
        vp = ((hn << 1) & mask) | (mask & ~(x | d0))
        vn = x & d0
    return dist


def normalized_gld(a: str, b: str) -> float:
    """Normalized edit distance in [0, 1]: ``2*L / (|a| + |b| + L)``.

    0 for equal strings (including two empty strings), 1 when the edit
    distance is maximal, symmetric, and a true metric.

    >>> normalized_gld("a", "")
    1.0
    >>> normalized_gld("kitten", "sitting")
    0.375
    """
    d = levenshtein(a, b)
    if d == 0:
        return 0.0
    return (2.0 * d) / (len(a) + len(b) + d)
