import itertools
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from locxtract.editdist import (
    bitparallel_levenshtein,
    char_masks,
    levenshtein,
    levenshtein_within,
    normalized_gld,
)


@lru_cache(maxsize=None)
def recursive_levenshtein(a: str, b: str) -> int:
    """Straight from the recursive definition; the independent oracle."""
    if not a:
        return len(b)
    if not b:
        return len(a)
    return min(
        recursive_levenshtein(a[1:], b) + 1,
        recursive_levenshtein(a, b[1:]) + 1,
        recursive_levenshtein(a[1:], b[1:]) + (a[0] != b[0]),
    )


def strings_up_to(length: int, alphabet: str) -> list[str]:
    out = [""]
    for n in range(1, length + 1):
        out.extend("".join(p) for p in itertools.product(alphabet, repeat=n))
    return out


class TestLevenshtein:
    @pytest.mark.parametrize(
        "a, b, expected",
        [
            ("gorom", "gorom", 0),
            ("", "abc", 3),
            ("abc", "", 3),
            ("", "", 0),
        ],
    )
    def test_edges(self, a, b, expected):
        assert levenshtein(a, b) == expected

    def test_kitten_sitting_matches_oracle(self):
        assert recursive_levenshtein("kitten", "sitting") == 3
        assert levenshtein("kitten", "sitting") == 3

    def test_against_oracle_small_exhaustive(self):
        strings = strings_up_to(3, "ab")
        for a in strings:
            for b in strings:
                assert levenshtein(a, b) == recursive_levenshtein(a, b)

    @given(st.text(max_size=12), st.text(max_size=12))
    def test_symmetric(self, a, b):
        assert levenshtein(a, b) == levenshtein(b, a)

    @given(st.text(max_size=12), st.text(max_size=12))
    def test_bounds(self, a, b):
        d = levenshtein(a, b)
        assert abs(len(a) - len(b)) <= d <= max(len(a), len(b), 0)
        assert (d == 0) == (a == b)


class TestLevenshteinWithin:
    @given(st.text(max_size=10), st.text(max_size=10), st.integers(-1, 12))
    def test_matches_plain_inside_band(self, a, b, limit):
        d = levenshtein(a, b)
        within = levenshtein_within(a, b, limit)
        if d <= limit:
            assert within == d
        else:
            assert within is None


class TestBitparallel:
    def test_exhaustive_small(self):
        strings = strings_up_to(4, "abc")
        for a in strings:
            masks, m = char_masks(a), len(a)
            for b in strings:
                assert bitparallel_levenshtein(masks, m, b) == levenshtein(a, b)

    @given(st.text(max_size=40), st.text(max_size=40))
    def test_matches_plain(self, a, b):
        assert bitparallel_levenshtein(char_masks(a), len(a), b) == levenshtein(a, b)


class TestNormalizedGld:
    @pytest.mark.parametrize(
        "a, b, expected",
        [
            ("x", "x", 0.0),
            ("a", "", 1.0),
            ("", "", 0.0),
            ("kitten", "sitting", 0.375),  # 2*3 / (6 + 7 + 3)
        ],
    )
    def test_examples(self, a, b, expected):
        assert normalized_gld(a, b) == expected

    @given(st.text(max_size=12), st.text(max_size=12))
    def test_range_and_identity(self, a, b):
        d = normalized_gld(a, b)
        assert 0.0 <= d <= 1.0
        assert (d == 0.0) == (a == b)

    def test_metric_axioms_sample(self):
        """Exact rational triangle check on a small alphabet (full sweep in
        the acceptance suite)."""
        strings = strings_up_to(3, "ab")
        norm = {}
        for a in strings:
            for b in strings:
                d = levenshtein(a, b)
                norm[a, b] = Fraction(2 * d, len(a) + len(b) + d) if d else Fraction(0)
                assert float(norm[a, b]) == pytest.approx(normalized_gld(a, b), abs=1e-15)
        for a in strings:
            for b in strings:
                assert norm[a, b] == norm[b, a]
                for c in strings:
                    assert norm[a, c] <= norm[a, b] + norm[b, c]
