import json
import random
import tempfile
import unittest
import xml.etree.ElementTree as ET
from pathlib import Path

from helpers import PNG_1X1, make_region, make_slide, make_transcript
from slidesync.classes import AlignmentResult, RegionMatch, Transcript, TranscriptLine
from slidesync.highlight import (GapPolicy, HighlightEvent, HighlightSchedule, HighlightStyle, RenderError,
                                 ScheduleError, StyleParams, build_schedule, merge_schedules, overlay_file_names,
                                 parse_schedule, render_overlay, render_schedule, write_schedule)

SVG = "{http://www.w3.org/2000/svg}"


def result_for(predictions, slide_id="s1"):
    return AlignmentResult(slide_id, "fuzzy", {line_id: tuple(RegionMatch(r, 0.9, "fuzzy") for r in regions)
                                               for line_id, regions in predictions.items()})


def event(region_ids, t_start, t_end, style=HighlightStyle.BOUNDING_BOX, slide_id="s1"):
    return HighlightEvent(slide_id, tuple(region_ids), t_start, t_end, style)


class TestBuildSchedule(unittest.TestCase):
    def setUp(self):
        self.transcript = make_transcript(["a", "b", "c", "d"])

    def test_one_event_per_predicted_line(self):
        schedule = build_schedule(result_for({"L1": ["R1"], "L2": [], "L3": ["R2", "R3"]}), self.transcript,
                                  HighlightStyle.SHADING)
        self.assertEqual([(e.region_ids, e.t_start, e.t_end) for e in schedule.events],
                         [(("R1",), 0.0, 2.0), (("R2", "R3"), 4.0, 6.0)])
        self.assertTrue(all(e.style == HighlightStyle.SHADING for e in schedule.events))
        self.assertEqual(schedule.violations(), [])

    def test_hold_previous_fills_gaps(self):
        schedule = build_schedule(result_for({"L1": ["R1"], "L3": ["R2"]}), self.transcript,
                                  HighlightStyle.BOUNDING_BOX, gap_policy=GapPolicy.HOLD_PREVIOUS)
        self.assertEqual([(e.t_start, e.t_end) for e in schedule.events], [(0.0, 4.0), (4.0, 6.0)])
        self.assertEqual(schedule.gap_policy, GapPolicy.HOLD_PREVIOUS)

    def test_hold_previous_keeps_same_start_events(self):
        transcript = Transcript("s1", (TranscriptLine("L1", "a", 0.0, 4.0), TranscriptLine("L2", "b", 0.0, 3.0),
                                       TranscriptLine("L3", "c", 5.0, 6.0)))
        schedule = build_schedule(result_for({"L1": ["R1"], "L2": ["R2"], "L3": ["R3"]}), transcript,
                                  HighlightStyle.BOUNDING_BOX, gap_policy=GapPolicy.HOLD_PREVIOUS)
        self.assertEqual(sorted((e.region_ids, e.t_start, e.t_end) for e in schedule.events),
                         [(("R1",), 0.0, 5.0), (("R2",), 0.0, 5.0), (("R3",), 5.0, 6.0)])
        self.assertEqual(schedule.violations(), [])

    def test_overlapping_lines_truncate_earlier_event(self):
        transcript = Transcript("s1", (TranscriptLine("L1", "a", 0.0, 3.0), TranscriptLine("L2", "b", 2.0, 5.0),
                                       TranscriptLine("L3", "c", 2.5, 4.0)))
        schedule = build_schedule(result_for({"L1": ["R1"], "L2": ["R1", "R2"], "L3": ["R3"]}), transcript,
                                  HighlightStyle.BOUNDING_BOX)
        self.assertEqual([(e.region_ids, e.t_start, e.t_end) for e in schedule.events],
                         [(("R1",), 0.0, 2.0), (("R1", "R2"), 2.0, 5.0), (("R3",), 2.5, 4.0)])
        self.assertEqual(schedule.violations(), [])

    def test_same_start_supersedes(self):
        transcript = Transcript("s1", (TranscriptLine("L1", "a", 0.0, 3.0), TranscriptLine("L2", "b", 0.0, 2.0)))
        schedule = build_schedule(result_for({"L1": ["R1"], "L2": ["R1"]}), transcript, HighlightStyle.BOUNDING_BOX)
        self.assertEqual([(e.t_start, e.t_end) for e in schedule.events], [(0.0, 2.0)])

    def test_mismatches_raise(self):
        with self.assertRaises(ScheduleError):
            build_schedule(result_for({}, slide_id="s2"), self.transcript, HighlightStyle.SHADING)
        with self.assertRaises(ScheduleError):
            build_schedule(result_for({"L9": ["R1"]}), self.transcript, HighlightStyle.SHADING)

    def test_merge_sorts_by_start(self):
        first = HighlightSchedule((event(["R1"], 5, 6, slide_id="a"),))
        second = HighlightSchedule((event(["R1"], 1, 2, slide_id="b"),))
        merged = merge_schedules([first, second], GapPolicy.CLEAR)
        self.assertEqual([e.slide_id for e in merged.events], ["b", "a"])


class TestScheduleJson(unittest.TestCase):
    def test_write_and_parse(self):
        schedule = HighlightSchedule((event(["R1"], 0, 2), event(["R2"], 1, 3, HighlightStyle.MAGNIFY)),
                                     GapPolicy.HOLD_PREVIOUS)
        data = write_schedule(schedule)
        self.assertEqual(json.loads(data)["events"][1]["style"], "magnify")
        self.assertEqual(parse_schedule(data), schedule)

    def test_overlap_on_shared_region_is_rejected(self):
        schedule = HighlightSchedule((event(["R1"], 0, 2), event(["R1", "R2"], 1, 3)))
        self.assertEqual([v.rule for v in schedule.violations()], ["overlap-disjoint-regions"])
        with self.assertRaises(ScheduleError):
            parse_schedule(write_schedule(schedule))

    def test_invalid_documents(self):
        with self.assertRaises(ScheduleError):
            parse_schedule(b'{"events": [{"slide_id": "s1", "region_ids": [], "t_start": 0, "t_end": 1, '
                           b'"style": "bounding_box"}]}')
        with self.assertRaises(ScheduleError):
            parse_schedule(b'{"events": [{"slide_id": "s1", "region_ids": ["R1"], "t_start": 0, "t_end": 1, '
                           b'"style": "glow"}]}')
        with self.assertRaises(ScheduleError):
            parse_schedule(b'{"events": [{"slide_id": "s1", "region_ids": ["R1"], "t_start": 0, "t_end": 1'
                           + b'0' * 400 + b', "style": "bounding_box"}]}')

    def test_style_params_validation(self):
        with self.assertRaises(ValueError):
            StyleParams(fill_opacity=1.5)
        with self.assertRaises(ValueError):
            StyleParams(magnify_scale=1.0)
        self.assertEqual(HighlightStyle.from_string("hide-background"), HighlightStyle.HIDE_BACKGROUND)


class TestRenderOverlay(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.image = Path(self.tmp.name) / "slide.png"
        self.image.write_bytes(PNG_1X1)
        self.slide = make_slide([make_region("R1", "Title", bbox=(0.1, 0.1, 0.2, 0.2)),
                                 make_region("R2", "Body", bbox=(0.5, 0.5, 0.4, 0.4))],
                                image_path=str(self.image), image_size=(1000, 500))

    def tearDown(self):
        self.tmp.cleanup()

    def render(self, style, region_ids=("R1",), slide=None):
        return ET.fromstring(render_overlay(slide or self.slide, event(region_ids, 0, 1, style)))

    def test_bounding_box(self):
        root = self.render(HighlightStyle.BOUNDING_BOX)
        self.assertEqual(root.get("viewBox"), "0 0 1000 500")
        base = root.find(f"{SVG}image")
        self.assertEqual(base.get("href"), str(self.image))
        rect = root.find(f"{SVG}g/{SVG}rect")
        self.assertEqual([rect.get(k) for k in ("x", "y", "width", "height")], ["100", "50", "200", "100"])
        self.assertEqual(rect.get("stroke"), "#e53935")
        self.assertEqual(rect.get("stroke-width"), "4")
        self.assertEqual(rect.get("fill-opacity"), "0")

    def test_shading(self):
        rects = self.render(HighlightStyle.SHADING, ("R1", "R2")).findall(f"{SVG}g/{SVG}rect")
        self.assertEqual(len(rects), 2)
        self.assertEqual(rects[1].get("fill-opacity"), "0.35")
        self.assertEqual(rects[1].get("x"), "500")

    def test_hide_background(self):
        path = self.render(HighlightStyle.HIDE_BACKGROUND).find(f"{SVG}g/{SVG}path")
        self.assertEqual(path.get("fill-rule"), "evenodd")
        self.assertEqual(path.get("d").count("M"), 2)

    def test_hide_background_full_cover_has_no_mask(self):
        slide = make_slide([make_region("R1", "x", bbox=(0.0, 0.0, 1.0, 1.0))], image_path=str(self.image))
        self.assertIsNone(self.render(HighlightStyle.HIDE_BACKGROUND, slide=slide).find(f"{SVG}g/{SVG}path"))

    def test_magnify(self):
        root = self.render(HighlightStyle.MAGNIFY)
        layer = root.find(f"{SVG}g")
        self.assertEqual(len(layer.findall(f"{SVG}defs/{SVG}clipPath")), 1)
        magnified = layer.find(f"{SVG}image")
        self.assertEqual(magnified.get("clip-path"), "url(#magnify-clip-0)")
        self.assertEqual(magnified.get("width"), "1600")

    def test_errors(self):
        with self.assertRaises(RenderError):
            self.render(HighlightStyle.SHADING, ("R9",))
        broken = make_slide([("R1", "x")], image_path=str(Path(self.tmp.name) / "missing.png"))
        with self.assertRaises(RenderError):
            self.render(HighlightStyle.MAGNIFY, slide=broken)
        self.assertIsNotNone(self.render(HighlightStyle.BOUNDING_BOX, slide=broken))

    def test_magnified_regions_stay_on_canvas(self):
        rng = random.Random(23)
        for size in ((1280, 720), (800, 600), (333, 1000)):
            for _ in range(50):
                w, h = rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0)
                bbox = (rng.uniform(0, 1 - w), rng.uniform(0, 1 - h), w, h)
                slide = make_slide([make_region("R1", "x", bbox=bbox)], image_path=str(self.image), image_size=size)
                clip = self.render(HighlightStyle.MAGNIFY, slide=slide).find(f"{SVG}g/{SVG}defs/{SVG}clipPath/{SVG}rect")
                x, y, width, height = (float(clip.get(k)) for k in ("x", "y", "width", "height"))
                self.assertGreaterEqual(x, -1e-3)
                self.assertGreaterEqual(y, -1e-3)
                self.assertLessEqual(x + width, size[0] + 2e-3)
                self.assertLessEqual(y + height, size[1] + 2e-3)
                self.assertGreaterEqual(width, w * size[0] - 1e-3)

    def test_every_style_is_well_formed_svg(self):
        rng = random.Random(31)
        for size in ((1280, 720), (800, 600), (333, 1000)):
            for _ in range(50):
                w, h = rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0)
                bbox = (rng.uniform(0, 1 - w), rng.uniform(0, 1 - h), w, h)
                slide = make_slide([make_region("R1", "x", bbox=bbox)], image_path=str(self.image), image_size=size)
                for style in HighlightStyle:
                    root = self.render(style, slide=slide)
                    self.assertEqual(root.tag, f"{SVG}svg")
                    self.assertEqual(root.get("viewBox"), f"0 0 {size[0]} {size[1]}")

    def test_rects_renormalize_to_source_bbox(self):
        rng = random.Random(29)
        for size in ((1280, 720), (800, 600), (333, 1000)):
            for _ in range(50):
                w, h = rng.uniform(0.01, 1.0), rng.uniform(0.01, 1.0)
                bbox = (rng.uniform(0, 1 - w), rng.uniform(0, 1 - h), w, h)
                slide = make_slide([make_region("R1", "x", bbox=bbox)], image_path=str(self.image), image_size=size)
                for style in (HighlightStyle.BOUNDING_BOX, HighlightStyle.SHADING):
                    rect = self.render(style, slide=slide).find(f"{SVG}g/{SVG}rect")
                    pixels = [float(rect.get(k)) for k in ("x", "y", "width", "height")]
                    expected = [bbox[0] * size[0], bbox[1] * size[1], bbox[2] * size[0], bbox[3] * size[1]]
                    for got, want in zip(pixels, expected):
                        self.assertLessEqual(abs(got - want), 0.5)


class TestRenderSchedule(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        root = Path(self.tmp.name)
        (root / "images").mkdir()
        (root / "images" / "s1.png").write_bytes(PNG_1X1)
        self.slides = {"s1": make_slide([("R1", "Title"), ("R2", "Body")], image_path=str(root / "images" / "s1.png"))}
        self.out = root / "out"

    def tearDown(self):
        self.tmp.cleanup()

    def test_file_names_with_collisions(self):
        schedule = HighlightSchedule((event(["R1"], 1.2345, 2), event(["R2"], 1.2345, 3), event(["R1"], 4, 5)))
        self.assertEqual(overlay_file_names(schedule),
                         ["s1_1234_bounding_box.svg", "s1_1234_bounding_box_2.svg", "s1_4000_bounding_box.svg"])

    def test_writes_overlays_and_index(self):
        schedule = HighlightSchedule((event(["R1"], 0, 2, HighlightStyle.SHADING), event(["R2"], 2, 4)))
        entries = render_schedule(self.slides, schedule, self.out, jobs=4)
        self.assertEqual([e.file for e in entries], ["s1_0_shading.svg", "s1_2000_bounding_box.svg"])
        index = json.loads((self.out / "index.json").read_text(encoding="utf-8"))
        self.assertEqual(index["events"][1], {"file": "s1_2000_bounding_box.svg", "slide_id": "s1", "t_start": 2,
                                              "t_end": 4, "style": "bounding_box"})
        root = ET.fromstring((self.out / "s1_0_shading.svg").read_bytes())
        self.assertEqual(root.find(f"{SVG}image").get("href"), "../images/s1.png")

    def test_unknown_slide(self):
        with self.assertRaises(RenderError):
            render_schedule(self.slides, HighlightSchedule((event(["R1"], 0, 1, slide_id="s9"),)), self.out)
        self.assertFalse(self.out.exists())


if __name__ == '__main__':
    unittest.main()
