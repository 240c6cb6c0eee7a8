import io
import json

import pytest

from locxtract.evaluate import (
    EvalReport,
    EvalRow,
    GoldFormatError,
    GoldRecord,
    IdMismatchError,
    evaluate_corpus,
    load_gold,
    reference_eval_sets,
    render_report,
    score,
)
from locxtract.pipeline import ExtractionResult, PipelineConfig
from locxtract.recognizer import FuzzyIndex

from conftest import make_gazetteer


def result(doc_id, *locations):
    return ExtractionResult(doc_id, tuple(locations), ())


class TestScore:
    def test_full_match(self):
        gold = GoldRecord("4", "", ("Oudalan", "Gorom"))
        assert score(result("4", "Oudalan", "Gorom"), gold) == (2, 0)

    def test_partial_match(self):
        gold = GoldRecord("20", "", ("Kéné Dougou", "N_Dorola"))
        assert score(result("20", "Kéné Dougou"), gold) == (1, 0)

    def test_empty_both(self):
        assert score(result("x"), GoldRecord("x", "", ())) == (0, 0)

    def test_spurious_detection_counted(self):
        gold = GoldRecord("5", "", ("Poni",))
        assert score(result("5", "Poni", "Gorom"), gold) == (1, 1)

    def test_normalized_comparison(self):
        gold = GoldRecord("1", "", ("GOROM",))
        assert score(result("1", "gorom"), gold) == (1, 0)

    def test_order_and_duplicates_ignored(self):
        gold = GoldRecord("1", "", ("A", "B"))
        assert score(result("1", "B", "A", "B"), gold) == (2, 0)

    def test_id_mismatch(self):
        with pytest.raises(IdMismatchError):
            score(result("1"), GoldRecord("2", "", ()))


class TestEvaluateCorpus:
    def test_perfect_corpus(self, burkina, burkina_index, default_cfg):
        gold = [
            GoldRecord("1", "Attaque à Gorom et Markoye.", ("Gorom", "Markoye")),
            GoldRecord("2", "Des tirs vers Titao.", ("Titao",)),
        ]
        report = evaluate_corpus(gold, burkina, burkina_index, default_cfg)
        assert report.micro_recall == 1.0
        assert report.micro_precision == 1.0
        assert [row.correct for row in report.rows] == [2, 1]
        assert report.runtime_ms >= 0

    def test_micro_recall_arithmetic(self, burkina, burkina_index, default_cfg):
        gold = [
            GoldRecord("1", "Gorom et Markoye.", ("Gorom", "Markoye")),
            GoldRecord("2", "Seulement Titao.", ("Titao", "Bouna")),
        ]
        report = evaluate_corpus(gold, burkina, burkina_index, default_cfg)
        assert report.micro_recall == pytest.approx(3 / 4)

    def test_duplicate_ids_rejected(self, burkina, burkina_index, default_cfg):
        gold = [GoldRecord("1", "", ()), GoldRecord("1", "", ())]
        with pytest.raises(GoldFormatError):
            evaluate_corpus(gold, burkina, burkina_index, default_cfg)

    def test_rows_recompute_to_micro(self, burkina, burkina_index, default_cfg):
        gold = [
            GoldRecord("1", "Gorom", ("Gorom",)),
            GoldRecord("2", "rien ici", ("Titao",)),
            GoldRecord("3", "", ()),
        ]
        report = evaluate_corpus(gold, burkina, burkina_index, default_cfg)
        total_expected = sum(r.expected for r in report.rows)
        total_correct = sum(r.correct for r in report.rows)
        assert report.micro_recall == total_correct / total_expected

    def test_empty_corpus_is_perfect(self, burkina, burkina_index, default_cfg):
        report = evaluate_corpus([], burkina, burkina_index, default_cfg)
        assert report.micro_recall == 1.0
        assert report.micro_precision == 1.0

    def test_micro_rates_invariant_under_permutation(self, burkina, burkina_index, default_cfg):
        gold = [
            GoldRecord("1", "Gorom et Markoye.", ("Gorom", "Markoye")),
            GoldRecord("2", "Seulement Titao.", ("Titao", "Bouna")),
            GoldRecord("3", "rien", ()),
        ]
        forward = evaluate_corpus(gold, burkina, burkina_index, default_cfg)
        backward = evaluate_corpus(gold[::-1], burkina, burkina_index, default_cfg)
        assert forward.micro_recall == backward.micro_recall
        assert forward.micro_precision == backward.micro_precision


class TestLoadGold:
    def test_round_trip(self):
        line = json.dumps({"id": "1", "text": "à Gorom", "expected": ["Gorom"]})
        records = load_gold(io.StringIO(line + "\n"))
        assert records == [GoldRecord("1", "à Gorom", ("Gorom",))]

    def test_expected_deduplicated_by_key(self):
        line = json.dumps({"id": "1", "text": "", "expected": ["Gorom", "GOROM", "Titao"]})
        (record,) = load_gold(io.StringIO(line))
        assert record.expected == ("Gorom", "Titao")

    def test_duplicate_ids(self):
        lines = "\n".join(
            json.dumps({"id": "1", "text": ""}) for _ in range(2)
        )
        with pytest.raises(GoldFormatError, match="duplicate id"):
            load_gold(io.StringIO(lines))

    def test_bad_json(self):
        with pytest.raises(GoldFormatError, match="invalid JSON"):
            load_gold(io.StringIO("{nope\n"))

    def test_missing_fields(self):
        with pytest.raises(GoldFormatError, match="id and text"):
            load_gold(io.StringIO('{"text": "x"}\n'))

    def test_blank_lines_skipped(self):
        line = json.dumps({"id": "1", "text": "t"})
        assert len(load_gold(io.StringIO(f"\n{line}\n\n"))) == 1


def sample_report():
    return EvalReport(
        rows=(EvalRow("1", 2, 2, 0), EvalRow("2", 2, 1, 1)),
        micro_recall=0.75,
        micro_precision=0.75,
        runtime_ms=12.5,
        config=PipelineConfig().as_dict(),
    )


class TestRenderReport:
    def test_markdown_rows_and_footer(self):
        text = render_report(sample_report(), "markdown")
        assert "| 2/2 |" in text
        assert "Average Rate: 3/4 (0.750)" in text
        assert "Precision: 3/4 (0.750)" in text

    def test_markdown_empty_corpus_warning(self):
        report = EvalReport((), 1.0, 1.0, 0.0, PipelineConfig().as_dict())
        text = render_report(report, "markdown")
        assert "Warning: no texts evaluated." in text
        assert "Average Rate: 0/0 (1.000)" in text

    def test_json_schema(self):
        payload = json.loads(render_report(sample_report(), "json"))
        assert set(payload) == {
            "rows", "micro_recall", "micro_precision", "runtime_ms", "config", "warning",
        }
        assert payload["rows"][0] == {"id": "1", "expected": 2, "correct": 2, "spurious": 0}
        assert payload["warning"] is None
        assert payload["config"]["threshold"] == 0.25

    def test_json_empty_corpus_warning(self):
        report = EvalReport((), 1.0, 1.0, 0.0, PipelineConfig().as_dict())
        payload = json.loads(render_report(report, "json"))
        assert payload["warning"] == "no texts evaluated"
        assert payload["micro_recall"] == 1.0

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render_report(sample_report(), "yaml")


class TestReferenceEvalSets:
    def test_shape(self):
        sets = reference_eval_sets()
        assert len(sets) == 20
        assert sum(len(s) for s in sets) == 50

    def test_footer_for_one_missed_name(self, burkina, burkina_index, default_cfg):
        """A 20-text run with exactly one undetectable name reports 49/50."""
        from locxtract.corpusgen import GenSpec, generate_fixed
        from locxtract.gazetteer import Gazetteer

        # rebuild the gazetteer without one name so exactly one slot misses
        pruned = Gazetteer([e for e in burkina.entries if e.canonical != "N_Dorola"])
        gold, _ = generate_fixed(reference_eval_sets(), GenSpec(seed=5), pruned)
        report = evaluate_corpus(gold, pruned, FuzzyIndex(pruned), default_cfg)
        assert report.micro_recall == pytest.approx(49 / 50)
        assert "Average Rate: 49/50 (0.980)" in render_report(report, "markdown")
