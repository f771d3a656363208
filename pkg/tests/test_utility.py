import logging
import random
import tempfile
import unittest
from pathlib import Path

from shapely.geometry import box

from slidesync.utility.files import atomic_write_bytes, canonical_json
from slidesync.utility.geometry import (create_canvas, fit_scaled_rect, format_number, svg_path_data,
                                        to_pixel_rect, uncovered_area, within_unit_square)
from slidesync.utility.interval import TimeInterval
from slidesync.utility.logs import configure_logging, parse_log_level
from slidesync.utility.text import NormalizationOptions, levenshtein_similarity, normalize_text, tokenize


class TestNormalizeText(unittest.TestCase):
    def test_lowercases_and_strips_punctuation(self):
        self.assertEqual(normalize_text("Hello, World!"), "hello world")

    def test_keeps_intra_word_hyphens_and_apostrophes(self):
        self.assertEqual(normalize_text("State-of-the-art, don't."), "state-of-the-art don't")

    def test_separators_split_tokens(self):
        self.assertEqual(tokenize(normalize_text("data/model")), ["data", "model"])

    def test_symbols_are_stripped(self):
        self.assertEqual(normalize_text("x + y = 3 €"), "x y 3")

    def test_only_punctuation_becomes_empty(self):
        self.assertEqual(normalize_text(" ...!? "), "")

    def test_options_can_disable_steps(self):
        options = NormalizationOptions(lowercase=False, strip_punctuation=False, collapse_whitespace=True)
        self.assertEqual(normalize_text("  Keep   THIS, ok ", options), "Keep THIS, ok")

    def test_nfc(self):
        self.assertEqual(normalize_text("Cafe\u0301"), "caf\u00e9")

    def test_idempotent(self):
        rng = random.Random(7)
        alphabet = "abcXYZ -'.,;!?/é́"
        for _ in range(200):
            text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 30)))
            once = normalize_text(text)
            self.assertEqual(normalize_text(once), once)


class TestLevenshteinSimilarity(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(levenshtein_similarity("", ""), 1.0)
        self.assertEqual(levenshtein_similarity("abc", "abc"), 1.0)
        self.assertEqual(levenshtein_similarity("abc", ""), 0.0)
        self.assertAlmostEqual(levenshtein_similarity("kitten", "sitting"), 1 - 3 / 7)

    def test_symmetric_and_bounded(self):
        rng = random.Random(3)
        for _ in range(100):
            a = "".join(rng.choice("abcd") for _ in range(rng.randint(0, 8)))
            b = "".join(rng.choice("abcd") for _ in range(rng.randint(0, 8)))
            self.assertAlmostEqual(levenshtein_similarity(a, b), levenshtein_similarity(b, a))
            self.assertTrue(0.0 <= levenshtein_similarity(a, b) <= 1.0)


class TestGeometry(unittest.TestCase):
    def test_within_unit_square(self):
        self.assertTrue(within_unit_square((0.0, 0.0, 1.0, 1.0)))
        self.assertTrue(within_unit_square((0.2, 0.3, 0.5, 0.4)))
        self.assertFalse(within_unit_square((0.6, 0.0, 0.5, 0.5)))
        self.assertFalse(within_unit_square((-0.01, 0.0, 0.5, 0.5)))

    def test_to_pixel_rect(self):
        self.assertEqual(to_pixel_rect((0.1, 0.5, 0.2, 0.25), (1000, 400)), (100.0, 200.0, 200.0, 100.0))

    def test_fit_scaled_rect_stays_inside_canvas(self):
        rng = random.Random(11)
        for _ in range(200):
            width, height = rng.uniform(1, 200), rng.uniform(1, 200)
            x, y = rng.uniform(0, 400 - width), rng.uniform(0, 300 - height)
            scale = rng.uniform(1.01, 4.0)
            (nx, ny, nw, nh), applied = fit_scaled_rect((x, y, width, height), scale, (400, 300))
            self.assertGreaterEqual(nx, -1e-9)
            self.assertGreaterEqual(ny, -1e-9)
            self.assertLessEqual(nx + nw, 400 + 1e-9)
            self.assertLessEqual(ny + nh, 300 + 1e-9)
            self.assertLessEqual(applied, scale)
            self.assertAlmostEqual(nw / width, applied)

    def test_fit_scaled_rect_centered_when_room(self):
        (x, y, w, h), scale = fit_scaled_rect((40, 40, 20, 20), 2.0, (100, 100))
        self.assertEqual(scale, 2.0)
        self.assertEqual((x, y, w, h), (30.0, 30.0, 40.0, 40.0))

    def test_uncovered_area(self):
        area = uncovered_area(create_canvas(10, 10), [(0, 0, 5, 10)])
        self.assertAlmostEqual(area.area, 50.0)
        self.assertTrue(uncovered_area(create_canvas(10, 10), [(0, 0, 10, 10)]).is_empty)

    def test_svg_path_data_with_hole(self):
        mask = uncovered_area(create_canvas(10, 10), [(2, 2, 2, 2)])
        data = svg_path_data(mask)
        self.assertEqual(data.count("M"), 2)
        self.assertEqual(data.count("Z"), 2)
        self.assertEqual(svg_path_data(box(0, 0, 0, 0).difference(box(0, 0, 1, 1))), "")

    def test_format_number(self):
        self.assertEqual(format_number(1.0), "1")
        self.assertEqual(format_number(0.12345), "0.123")
        self.assertEqual(format_number(-0.0001), "0")


class TestTimeInterval(unittest.TestCase):
    def test_overlaps_is_half_open(self):
        self.assertTrue(TimeInterval(0, 2).overlaps(TimeInterval(1, 3)))
        self.assertFalse(TimeInterval(0, 2).overlaps(TimeInterval(2, 3)))

    def test_within_tolerance(self):
        self.assertTrue(TimeInterval(0.9, 2.1).within(TimeInterval(1, 2), tolerance=0.25))
        self.assertFalse(TimeInterval(0.5, 2.0).within(TimeInterval(1, 2), tolerance=0.25))

    def test_reversed_bounds_are_invalid(self):
        with self.assertRaises(ValueError):
            TimeInterval(3, 1)


class TestFiles(unittest.TestCase):
    def test_canonical_json_is_sorted_and_newline_terminated(self):
        self.assertEqual(canonical_json({"b": 1, "a": "é"}), '{\n  "a": "é",\n  "b": 1\n}\n'.encode("utf-8"))

    def test_atomic_write_leaves_no_temp_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / "nested" / "out.json"
            atomic_write_bytes(target, b"one")
            atomic_write_bytes(target, b"two")
            self.assertEqual(target.read_bytes(), b"two")
            self.assertEqual([p.name for p in target.parent.iterdir()], ["out.json"])


class TestLogs(unittest.TestCase):
    def test_parse_log_level(self):
        self.assertEqual(parse_log_level("debug"), logging.DEBUG)
        self.assertEqual(parse_log_level("WARNING"), logging.WARNING)
        with self.assertRaises(ValueError):
            parse_log_level("LOUD")

    def test_configure_logging_sets_root_level(self):
        configure_logging("error")
        self.assertEqual(logging.getLogger().level, logging.ERROR)


if __name__ == '__main__':
    unittest.main()
