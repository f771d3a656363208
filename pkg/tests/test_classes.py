import unittest

from helpers import make_region, make_slide, make_transcript
from slidesync.classes import (AlignmentResult, Diagnostic, GroundTruth, RegionKind, RegionMatch, ThresholdPolicy,
                               TimedWord, Transcript, TranscriptLine, validate_dataset)
from slidesync.utility.constants import THRESHOLD_PRESETS


class TestRegion(unittest.TestCase):
    def test_valid_region(self):
        self.assertEqual(make_region("R1", "Title", bbox=(0.0, 0.0, 1.0, 1.0)).violations(), [])

    def test_bbox_rules(self):
        rules = {v.rule for v in make_region("R1", "x", bbox=(0.8, 0.1, 0.3, 0.2)).violations()}
        self.assertEqual(rules, {"bbox-in-unit-square"})
        rules = {v.rule for v in make_region("R1", "x", bbox=(0.1, 0.1, 0.0, 0.2)).violations()}
        self.assertIn("bbox-positive-size", rules)
        rules = {v.rule for v in make_region("R1", "x", bbox=(float("nan"), 0.1, 0.1, 0.2)).violations()}
        self.assertEqual(rules, {"bbox-finite"})

    def test_textual_needs_text_visual_does_not(self):
        self.assertEqual([v.rule for v in make_region("R1", "  ").violations()], ["textual-has-text"])
        self.assertEqual(make_region("F1", "", kind=RegionKind.VISUAL).violations(), [])


class TestSlideAndTranscript(unittest.TestCase):
    def test_duplicate_region_ids(self):
        slide = make_slide([("R1", "a"), ("R1", "b")])
        self.assertEqual([v.rule for v in slide.violations()], ["region-id-unique"])

    def test_textual_text_skips_visual(self):
        slide = make_slide([make_region("R1", "Title"), make_region("F1", "caption", kind=RegionKind.VISUAL),
                            make_region("R2", "Body")])
        self.assertEqual(slide.textual_text(), "Title\nBody")

    def test_transcript_rules(self):
        lines = (TranscriptLine("L1", "b", 2.0, 3.0), TranscriptLine("L1", "a", 0.0, 1.0))
        rules = [v.rule for v in Transcript("s1", lines).violations()]
        self.assertEqual(rules, ["lines-sorted", "line-id-unique"])

    def test_word_timings_within_tolerance(self):
        words = (TimedWord("a", 0.9, 1.5), TimedWord("b", 1.5, 2.2))
        self.assertEqual(TranscriptLine("L1", "a b", 1.0, 2.0, words).violations(), [])
        words = (TimedWord("a", 0.5, 1.5),)
        self.assertEqual([v.rule for v in TranscriptLine("L1", "a", 1.0, 2.0, words).violations()],
                         ["word-within-line"])

    def test_duration(self):
        self.assertEqual(make_transcript(["a", "b", "c"]).duration, 6.0)
        self.assertEqual(Transcript("s1").duration, 0.0)
        overlapping = Transcript("s1", (TranscriptLine("L1", "a", 1.0, 9.0), TranscriptLine("L2", "b", 2.0, 5.0)))
        self.assertEqual(overlapping.duration, 4.0)


class TestValidateDataset(unittest.TestCase):
    def setUp(self):
        self.slide = make_slide([("R1", "Title"), ("R2", "Body")])
        self.transcript = make_transcript(["hello", "world"])

    def test_clean_dataset(self):
        gt = GroundTruth("s1", {"L1": frozenset({"R1"}), "L2": frozenset()})
        self.assertEqual(validate_dataset([self.slide], [self.transcript], gt), [])

    def test_dangling_references(self):
        gt = GroundTruth("s1", {"L9": frozenset({"R7"})})
        orphan = make_transcript(["x"], slide_id="s2")
        violations = validate_dataset([self.slide], [self.transcript, orphan], [gt])
        self.assertEqual([v.rule for v in violations], ["dangling-slide", "dangling-line", "dangling-region"])

    def test_idempotent_and_ordered(self):
        bad_slide = make_slide([("R1", ""), ("R1", "x")], slide_id="s0")
        first = validate_dataset([bad_slide, self.slide], [self.transcript])
        self.assertEqual(first, validate_dataset([bad_slide, self.slide], [self.transcript]))
        self.assertTrue(all(v.entity.startswith("slide:s0") for v in first))


class TestAlignmentResult(unittest.TestCase):
    def test_violations(self):
        result = AlignmentResult("s1", "fuzzy", {"L1": (RegionMatch("R1", 0.9, "fuzzy"), RegionMatch("R1", 1.2, "fuzzy"))})
        rules = [v.rule for v in result.violations({"R2"})]
        self.assertEqual(rules, ["region-exists", "region-id-unique", "region-exists", "score-range"])

    def test_diagnostics_do_not_affect_equality(self):
        first = AlignmentResult("s1", "fuzzy", {"L1": ()})
        second = AlignmentResult("s1", "fuzzy", {"L1": ()}, (Diagnostic("s1", "L1", None, "k", "m"),))
        self.assertEqual(first, second)


class TestThresholdPolicy(unittest.TestCase):
    def test_presets(self):
        self.assertEqual(ThresholdPolicy.from_preset("T-1").textual_threshold, 0.8)
        self.assertEqual(ThresholdPolicy.from_preset("T-3").textual_threshold, 0.6)
        for name in THRESHOLD_PRESETS:
            self.assertEqual(ThresholdPolicy.from_preset(name).visual_threshold, 0.6)

    def test_rejects_out_of_range_and_unknown(self):
        with self.assertRaises(ValueError):
            ThresholdPolicy(1.2, 0.5)
        with self.assertRaises(ValueError):
            ThresholdPolicy.from_preset("T-9")

    def test_threshold_for(self):
        policy = ThresholdPolicy(0.7, 0.4)
        self.assertEqual(policy.threshold_for(True), 0.7)
        self.assertEqual(policy.threshold_for(False), 0.4)


if __name__ == '__main__':
    unittest.main()
