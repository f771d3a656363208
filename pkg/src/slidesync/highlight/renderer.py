"""
SVG overlays for highlight events: a base image element referencing the slide raster
plus one of four emphasis layers (bounding boxes, shading, background removal or
magnification).
"""
import logging
import os
import xml.etree.ElementTree as ET
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from PIL import Image, UnidentifiedImageError

from .schedule import HighlightEvent, HighlightSchedule, HighlightStyle
from ..classes.region import Region
from ..classes.slide import SlideDocument
from ..ingest.manifest import DatasetHelper, DatasetManifest
from ..utility.constants import HIDE_LAYER_COLOR, HIDE_LAYER_OPACITY, MAGNIFY_BORDER_RATIO, STROKE_WIDTH_RATIO
from ..utility.files import atomic_write_bytes, canonical_json
from ..utility.geometry import create_canvas, fit_scaled_rect, format_number, svg_path_data, to_pixel_rect, uncovered_area

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
RASTER_STYLES = {HighlightStyle.HIDE_BACKGROUND, HighlightStyle.MAGNIFY}


class RenderError(Exception):
    pass


def check_raster(image_path: str) -> None:
    """Raises RenderError unless image_path is a readable raster image."""
    try:
        with Image.open(image_path) as image:
            image.verify()
    except (OSError, UnidentifiedImageError, SyntaxError, ValueError) as e:
        raise RenderError(f"slide image {image_path} is not readable: {e}") from e


def _rect_attrs(rect, **extra) -> Dict[str, str]:
    x, y, width, height = rect
    attrs = {"x": format_number(x), "y": format_number(y),
             "width": format_number(width), "height": format_number(height)}
    attrs.update({key.replace("_", "-"): value for key, value in extra.items()})
    return attrs


def _image(parent: ET.Element, href: str, x: float, y: float, width: float, height: float, **extra) -> ET.Element:
    attrs = {"href": href, "x": format_number(x), "y": format_number(y),
             "width": format_number(width), "height": format_number(height), "preserveAspectRatio": "none"}
    attrs.update({key.replace("_", "-"): value for key, value in extra.items()})
    return ET.SubElement(parent, "image", attrs)


def _event_regions(slide: SlideDocument, event: HighlightEvent) -> List[Region]:
    index = slide.region_index
    missing = [rid for rid in event.region_ids if rid not in index]
    if missing:
        raise RenderError(f"slide {slide.slide_id} has no regions {missing}")
    return [index[rid] for rid in event.region_ids]


def _draw_bounding_boxes(layer, regions, size, params):
    stroke_width = format_number(STROKE_WIDTH_RATIO * size[0])
    for region in regions:
        ET.SubElement(layer, "rect", _rect_attrs(to_pixel_rect(region.bbox, size), fill=params.stroke_color,
                                                 fill_opacity="0", stroke=params.stroke_color,
                                                 stroke_width=stroke_width))


def _draw_shading(layer, regions, size, params):
    for region in regions:
        ET.SubElement(layer, "rect", _rect_attrs(to_pixel_rect(region.bbox, size), fill=params.fill_color,
                                                 fill_opacity=format_number(params.fill_opacity), stroke="none"))


def _draw_hide_background(layer, regions, size, params):
    mask = uncovered_area(create_canvas(*size), [to_pixel_rect(region.bbox, size) for region in regions])
    if mask.is_empty:
        return
    ET.SubElement(layer, "path", {"d": svg_path_data(mask), "fill": HIDE_LAYER_COLOR,
                                  "fill-opacity": format_number(HIDE_LAYER_OPACITY), "fill-rule": "evenodd"})


def _draw_magnify(layer, regions, size, params, href):
    width, height = size
    defs = ET.SubElement(layer, "defs")
    border = format_number(MAGNIFY_BORDER_RATIO * width)
    for index, region in enumerate(regions):
        source = to_pixel_rect(region.bbox, size)
        placed, scale = fit_scaled_rect(source, params.magnify_scale, size)
        clip_id = f"magnify-clip-{index}"
        clip = ET.SubElement(defs, "clipPath", {"id": clip_id})
        ET.SubElement(clip, "rect", _rect_attrs(placed))
        # the whole raster scaled so the region lands on the placed rectangle
        _image(layer, href, placed[0] - source[0] * scale, placed[1] - source[1] * scale,
               width * scale, height * scale, clip_path=f"url(#{clip_id})")
        ET.SubElement(layer, "rect", _rect_attrs(placed, fill="none", stroke=params.stroke_color, stroke_width=border))


def render_overlay(slide: SlideDocument, event: HighlightEvent, href: Optional[str] = None) -> bytes:
    """
    SVG document for one event over one slide; viewBox is the image's pixel size.

    :param href: how the SVG refers to the slide raster; defaults to slide.image_path
    Raises:
        RenderError: unknown region ids, or an unreadable raster for hide_background/magnify.
    """
    if event.slide_id != slide.slide_id:
        raise RenderError(f"event for slide {event.slide_id} rendered on slide {slide.slide_id}")
    regions = _event_regions(slide, event)
    if event.style in RASTER_STYLES:
        check_raster(slide.image_path)
    width, height = slide.image_size
    href = href if href is not None else slide.image_path

    root = ET.Element("svg", {"xmlns": SVG_NS, "width": str(width), "height": str(height),
                              "viewBox": f"0 0 {width} {height}"})
    _image(root, href, 0, 0, width, height)
    layer = ET.SubElement(root, "g", {"class": event.style.value})
    if event.style == HighlightStyle.BOUNDING_BOX:
        _draw_bounding_boxes(layer, regions, (width, height), event.params)
    elif event.style == HighlightStyle.SHADING:
        _draw_shading(layer, regions, (width, height), event.params)
    elif event.style == HighlightStyle.HIDE_BACKGROUND:
        _draw_hide_background(layer, regions, (width, height), event.params)
    else:
        _draw_magnify(layer, regions, (width, height), event.params, href)
    ET.indent(root)
    return ('<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n").encode("utf-8")


@dataclass(frozen=True)
class IndexEntry:
    file: str
    slide_id: str
    t_start: float
    t_end: float
    style: str

    def to_dict(self) -> Dict[str, Any]:
        return {"file": self.file, "slide_id": self.slide_id, "t_start": self.t_start,
                "t_end": self.t_end, "style": self.style}


def overlay_file_names(schedule: HighlightSchedule) -> List[str]:
    """'{slide_id}_{t_start_ms}_{style}.svg' per event, with a numeric suffix on collisions."""
    names = []
    used = set()
    for event in schedule.events:
        stem = f"{event.slide_id}_{event.t_start_ms}_{event.style.value}"
        name = f"{stem}.svg"
        suffix = 2
        while name in used:
            name = f"{stem}_{suffix}.svg"
            suffix += 1
        used.add(name)
        names.append(name)
    return names


def render_schedule(
    slides: Union[DatasetManifest, Mapping[str, SlideDocument]],
    schedule: HighlightSchedule,
    out_dir: Union[str, Path],
    jobs: int = 1,
) -> List[IndexEntry]:
    """
    Render every event into out_dir and write index.json listing (file, t_start, t_end)
    per event in schedule order. Raster references are relative to out_dir.
    """
    out_dir = Path(out_dir)
    if isinstance(slides, DatasetManifest):
        slides = {entry.slide_id: entry.slide for entry in DatasetHelper(slides, jobs=jobs).get_all_entries()}
    missing = sorted({event.slide_id for event in schedule.events} - set(slides))
    if missing:
        raise RenderError(f"schedule references unknown slides {missing}")
    out_dir.mkdir(parents=True, exist_ok=True)
    names = overlay_file_names(schedule)

    def render_one(index: int) -> IndexEntry:
        event = schedule.events[index]
        slide = slides[event.slide_id]
        href = Path(os.path.relpath(Path(slide.image_path).resolve(), out_dir.resolve())).as_posix()
        atomic_write_bytes(out_dir / names[index], render_overlay(slide, event, href))
        return IndexEntry(names[index], event.slide_id, event.t_start, event.t_end, event.style.value)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
        entries = list(executor.map(render_one, range(len(schedule.events))))
    atomic_write_bytes(out_dir / "index.json", canonical_json({"events": [entry.to_dict() for entry in entries]}))
    logger.info(f"Rendered {len(entries)} overlays into {out_dir}")
    return entries
