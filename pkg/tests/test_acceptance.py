"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest -s`` to see them live).

The heavy benchmark in criterion 6 runs a full linear-scan pass over 3,000
texts, so the whole suite takes a few minutes; everything else is seconds.
"""

import itertools
import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from functools import lru_cache

from locxtract.corpusgen import (
    GenSpec,
    generate,
    generate_fixed,
    random_word,
    raw_to_jsonl,
    synth_gazetteer,
)
from locxtract.bench import run_bench
from locxtract.editdist import (
    bitparallel_levenshtein,
    char_masks,
    levenshtein,
    normalized_gld,
)
from locxtract.evaluate import evaluate_corpus, reference_eval_sets
from locxtract.gazetteer import (
    Gazetteer,
    GazetteerEntry,
    bundled_burkina_path,
    load_gazetteer,
    normalize_name,
)
from locxtract.pipeline import PipelineConfig, extract
from locxtract.recognizer import FuzzyIndex, best_match_indexed, best_match_scan
from locxtract.textprep import preprocess
from locxtract.tokenizer import tokenize


def report(ok: bool, line: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {line}")
    assert ok, line


def strings_up_to(length: int, alphabet: str) -> list[str]:
    out = [""]
    for n in range(1, length + 1):
        out.extend("".join(p) for p in itertools.product(alphabet, repeat=n))
    return out


def test_criterion_1_levenshtein_exhaustive_oracle():
    @lru_cache(maxsize=None)
    def oracle(a: str, b: str) -> int:
        if not a:
            return len(b)
        if not b:
            return len(a)
        return min(
            oracle(a[1:], b) + 1,
            oracle(a, b[1:]) + 1,
            oracle(a[1:], b[1:]) + (a[0] != b[0]),
        )

    started = time.perf_counter()
    strings = strings_up_to(5, "abc")
    assert len(strings) == 364
    mismatches = 0
    for a in strings:
        masks, m = char_masks(a), len(a)
        for b in strings:
            expected = oracle(a, b)
            if levenshtein(a, b) != expected:
                mismatches += 1
            if bitparallel_levenshtein(masks, m, b) != expected:
                mismatches += 1
    elapsed = time.perf_counter() - started
    report(
        mismatches == 0 and elapsed < 30.0,
        f"criterion 1: edit distance equals the recursive oracle on "
        f"{len(strings)**2} pairs (mismatches={mismatches}, {elapsed:.1f}s < 30s)",
    )


def test_criterion_2_metric_axioms():
    started = time.perf_counter()
    strings = strings_up_to(4, "ab")
    assert len(strings) == 31
    violations = 0
    exact: dict[tuple[str, str], Fraction] = {}
    for a in strings:
        for b in strings:
            d = levenshtein(a, b)
            frac = Fraction(2 * d, len(a) + len(b) + d) if d else Fraction(0)
            exact[a, b] = frac
            value = normalized_gld(a, b)
            # the float the library reports is the correctly-rounded rational
            if value != float(frac) or not 0.0 <= value <= 1.0:
                violations += 1
            if (value == 0.0) != (a == b):
                violations += 1
    for a in strings:
        for b in strings:
            if exact[a, b] != exact[b, a]:
                violations += 1
    triples = 0
    for a in strings:
        for b in strings:
            ab = exact[a, b]
            for c in strings:
                triples += 1
                if exact[a, c] > ab + exact[b, c]:
                    violations += 1
    elapsed = time.perf_counter() - started
    report(
        violations == 0 and elapsed < 10.0,
        f"criterion 2: normalized distance is a metric — symmetry, identity and "
        f"{triples} triangle triples (violations={violations}, {elapsed:.1f}s < 10s)",
    )


def test_criterion_3_index_agrees_with_scan():
    started = time.perf_counter()
    gazetteer = synth_gazetteer(seed=101, size=5000)
    index = FuzzyIndex(gazetteer)
    keys = [key for key, _ in gazetteer.iter_names()]
    rng = random.Random(102)
    cutoff = 0.25

    def random_query() -> str:
        kind = rng.randrange(4)
        if kind == 0:
            return normalize_name(random_word(rng))
        word = rng.choice(keys)
        for _ in range(1 if kind < 3 else 2):
            p = rng.randrange(len(word) + 1)
            op = rng.randrange(3)
            if op == 0:
                word = word[:p] + rng.choice("abcdefghijklmnopqrstuvwxyz") + word[p:]
            elif op == 1 and p < len(word):
                word = word[:p] + word[p + 1 :]
            elif p < len(word):
                word = word[:p] + rng.choice("abcdefghijklmnopqrstuvwxyz") + word[p + 1 :]
        return word

    agreements = 0
    total = 1000
    for _ in range(total):
        word = random_query()
        scanned = best_match_scan(word, gazetteer)
        expected = scanned if scanned is not None and scanned[1] <= cutoff else None
        if best_match_indexed(word, index, cutoff) == expected:
            agreements += 1
    elapsed = time.perf_counter() - started
    report(
        agreements == total,
        f"criterion 3: indexed lookup matches the scan on {agreements}/{total} "
        f"random queries against {len(gazetteer)} keys at cutoff {cutoff} ({elapsed:.1f}s)",
    )


def test_criterion_4_reference_corpus_reconstruction():
    started = time.perf_counter()
    sets = reference_eval_sets()
    slots = sum(len(s) for s in sets)
    distinct: list[str] = []
    seen: set[str] = set()
    for name_list in sets:
        for name in name_list:
            key = normalize_name(name)
            if key not in seen:
                seen.add(key)
                distinct.append(name)
    assert len(sets) == 20 and slots == 50 and len(distinct) == 45
    gazetteer = Gazetteer([GazetteerEntry(name) for name in distinct])
    index = FuzzyIndex(gazetteer)
    cfg = PipelineConfig()

    clean_spec = GenSpec(seed=401, texts=0, hashtags=True, mentions=True)
    gold_clean, _ = generate_fixed(sets, clean_spec, gazetteer)
    clean = evaluate_corpus(gold_clean, gazetteer, index, cfg)

    noisy_spec = GenSpec(
        seed=402, texts=0, hashtags=True, mentions=True,
        misspell_rate=1.0, misspell_min_len=5,
    )
    gold_noisy, _ = generate_fixed(sets, noisy_spec, gazetteer)
    noisy = evaluate_corpus(gold_noisy, gazetteer, index, cfg)

    elapsed = time.perf_counter() - started
    report(
        clean.micro_recall == 1.0 and noisy.micro_recall >= 0.98 and elapsed < 5.0,
        f"criterion 4: rebuilt 20-text reference corpus recalls "
        f"{clean.micro_recall:.3f} clean and {noisy.micro_recall:.3f} with one edit "
        f"per name of length >= 5 ({elapsed:.1f}s < 5s)",
    )


def test_criterion_5_underscore_name_regression():
    gazetteer, errors = load_gazetteer(bundled_burkina_path())
    assert not errors
    index = FuzzyIndex(gazetteer)
    text = "Des tirs ont été entendus entre Kéné Dougou et N_Dorola hier soir."
    result = extract("20", text, gazetteer, index, PipelineConfig())
    ok = {"Kéné Dougou", "N_Dorola"} <= set(result.locations)
    report(
        ok,
        "criterion 5: a text naming Kéné Dougou and N_Dorola detects both (2/2); "
        f"got {list(result.locations)}",
    )


def test_criterion_6_indexed_throughput_and_speedup():
    gazetteer = synth_gazetteer(seed=601, size=10_000)
    spec = GenSpec(
        seed=602, texts=3000, names_per_text=(1, 2),
        hashtags=True, mentions=True, misspell_rate=0.4,
    )
    _, raw = generate(spec, gazetteer)
    bench = run_bench(raw, gazetteer, PipelineConfig(), ("scan", "indexed"), 1)
    indexed = bench.timing("indexed").median_seconds
    scan = bench.timing("scan").median_seconds
    tokens_per_text = bench.token_count / bench.doc_count
    ok = (
        bench.outputs_equal is True
        and indexed <= 10.0
        and bench.speedup is not None
        and bench.speedup >= 5.0
    )
    report(
        ok,
        f"criterion 6: {bench.doc_count} texts (~{tokens_per_text:.0f} tokens each) vs "
        f"{len(gazetteer)} names — indexed {indexed:.1f}s <= 10s, scan {scan:.1f}s, "
        f"speedup {bench.speedup:.1f}x >= 5x, outputs identical",
    )


class TestCriterion7Properties:
    CASES = 200

    def _texts(self, seed: int, gazetteer) -> list[str]:
        spec = GenSpec(
            seed=seed, texts=self.CASES, names_per_text=(1, 4),
            hashtags=True, mentions=True, misspell_rate=0.5,
        )
        _, raw = generate(spec, gazetteer)
        rng = random.Random(seed + 1)
        decorations = ["##", "@@", "  ", "—", "l'", "très-vite", "(bilan)", "N_Dorola"]
        return [
            text + " " + rng.choice(decorations) if rng.random() < 0.4 else text
            for _, text in raw
        ]

    def test_preprocess_idempotent(self, burkina):
        texts = self._texts(701, burkina)
        for text in texts:
            once = preprocess(text, burkina)
            twice = preprocess(once.text, burkina)
            assert twice.text == once.text
            assert twice.replacements == ()
        report(True, f"criterion 7a: preprocess idempotent on {len(texts)} generated texts")

    def test_tokenizer_reconstruction(self, burkina):
        texts = self._texts(702, burkina)
        for text in texts:
            clean = preprocess(text, burkina).text
            tokens = tokenize(clean)
            pos = 0
            rebuilt = []
            for token in tokens:
                assert clean[token.start : token.end] == token.text
                rebuilt.append(clean[pos : token.start])
                rebuilt.append(token.text)
                pos = token.end
            rebuilt.append(clean[pos:])
            assert "".join(rebuilt) == clean
        report(True, f"criterion 7b: tokenizer reconstructs {len(texts)} clean texts exactly")

    def test_threshold_monotonicity(self, burkina, burkina_index):
        texts = self._texts(703, burkina)
        rng = random.Random(704)
        checked = 0
        for text in texts:
            low = round(rng.uniform(0.05, 0.28), 3)
            high = round(rng.uniform(low, 0.30), 3)
            cfg_low = PipelineConfig(threshold=low, dedupe=False)
            cfg_high = PipelineConfig(threshold=high, dedupe=False)
            low_matches = {
                (m.token.start, m.token.end, m.canonical)
                for m in extract("x", text, burkina, burkina_index, cfg_low).matches
            }
            high_matches = {
                (m.token.start, m.token.end, m.canonical)
                for m in extract("x", text, burkina, burkina_index, cfg_high).matches
            }
            assert low_matches <= high_matches, (text, low, high)
            checked += 1
        report(True, f"criterion 7c: raising the threshold kept every match in {checked} cases")

    def test_dedup_and_order_invariants(self, burkina, burkina_index, default_cfg):
        texts = self._texts(705, burkina)
        memo: dict = {}
        for text in texts:
            result = extract("x", text, burkina, burkina_index, default_cfg, memo)
            firsts: list[str] = []
            for match in result.matches:
                if match.canonical not in firsts:
                    firsts.append(match.canonical)
            assert list(result.locations) == firsts
            nodupe = extract(
                "x", text, burkina, burkina_index,
                PipelineConfig(dedupe=False), memo,
            )
            assert [m.canonical for m in nodupe.matches] == list(nodupe.locations)
            assert set(nodupe.locations) == set(result.locations)
        report(True, f"criterion 7d: dedup/order invariants hold on {len(texts)} texts")

    def test_jobs_determinism(self, burkina, tmp_path):
        spec = GenSpec(
            seed=706, texts=self.CASES, names_per_text=(1, 3),
            hashtags=True, mentions=True, misspell_rate=0.4,
        )
        _, raw = generate(spec, burkina)
        corpus = tmp_path / "docs.jsonl"
        corpus.write_text(raw_to_jsonl(raw), encoding="utf-8")

        def run(jobs: int) -> bytes:
            proc = subprocess.run(
                [
                    sys.executable, "-m", "locxtract", "extract",
                    "-g", str(bundled_burkina_path()), str(corpus), "--jobs", str(jobs),
                ],
                capture_output=True,
            )
            assert proc.returncode == 0, proc.stderr.decode()
            return proc.stdout

        one, four = run(1), run(4)
        assert one == four and one.count(b"\n") == self.CASES
        report(
            True,
            f"criterion 7e: --jobs 1 and --jobs 4 emit byte-identical stdout "
            f"for {self.CASES} documents",
        )
