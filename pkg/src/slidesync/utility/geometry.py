from typing import Iterable, List, Tuple

from shapely.geometry import MultiPolygon, Polygon, box
from shapely.geometry.base import BaseGeometry
from shapely.ops import unary_union

Rect = Tuple[float, float, float, float]  # x, y, width, height

UNIT_SQUARE = box(0.0, 0.0, 1.0, 1.0)


def create_rectangle(rect: Rect) -> Polygon:
    """Shapely rectangle from an (x, y, width, height) tuple, y growing downwards."""
    x, y, width, height = rect
    return box(x, y, x + width, y + height)


def create_canvas(width: float, height: float) -> Polygon:
    return box(0.0, 0.0, width, height)


def within_unit_square(rect: Rect) -> bool:
    return UNIT_SQUARE.covers(create_rectangle(rect))


def to_pixel_rect(rect: Rect, image_size: Tuple[int, int]) -> Rect:
    width_px, height_px = image_size
    x, y, width, height = rect
    return (x * width_px, y * height_px, width * width_px, height * height_px)


def clamp_to_unit(rect: Rect) -> Rect:
    """Clip a rectangle to the unit square; vendor boxes can spill slightly outside."""
    clipped = create_rectangle(rect).intersection(UNIT_SQUARE)
    if clipped.is_empty:
        return (0.0, 0.0, 0.0, 0.0)
    minx, miny, maxx, maxy = clipped.bounds
    return (minx, miny, maxx - minx, maxy - miny)


def uncovered_area(canvas: Polygon, rects: Iterable[Rect]) -> BaseGeometry:
    """Part of the canvas not covered by any of the rectangles."""
    covered = unary_union([create_rectangle(rect) for rect in rects])
    return canvas.difference(covered)


def fit_scaled_rect(rect: Rect, scale: float, canvas_size: Tuple[float, float]) -> Tuple[Rect, float]:
    """
    Scale a rectangle about its center, shrinking the scale and shifting the result so
    it stays inside the canvas.

    :return: the placed rectangle and the scale actually applied
    """
    x, y, width, height = rect
    canvas_w, canvas_h = canvas_size
    scale = min(scale, canvas_w / width, canvas_h / height)
    new_w, new_h = width * scale, height * scale
    cx, cy = x + width / 2, y + height / 2
    new_x = min(max(cx - new_w / 2, 0.0), canvas_w - new_w)
    new_y = min(max(cy - new_h / 2, 0.0), canvas_h - new_h)
    return (new_x, new_y, new_w, new_h), scale


def format_number(value: float) -> str:
    """Compact, deterministic decimal text for SVG attributes."""
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def polygon_rings(geometry: BaseGeometry) -> List[List[Tuple[float, float]]]:
    if geometry.is_empty:
        return []
    if isinstance(geometry, Polygon):
        polygons = [geometry]
    elif isinstance(geometry, MultiPolygon):
        polygons = list(geometry.geoms)
    else:
        polygons = [g for g in getattr(geometry, "geoms", []) if isinstance(g, Polygon)]
    rings = []
    for polygon in polygons:
        rings.append(list(polygon.exterior.coords))
        rings.extend(list(interior.coords) for interior in polygon.interiors)
    return rings


def svg_path_data(geometry: BaseGeometry) -> str:
    """SVG path data for a (multi)polygon; holes become sub-paths for even-odd filling."""
    parts = []
    for ring in polygon_rings(geometry):
        points = ring[:-1] if len(ring) > 1 and ring[0] == ring[-1] else ring
        if not points:
            continue
        head = f"M{format_number(points[0][0])} {format_number(points[0][1])}"
        tail = " ".join(f"L{format_number(px)} {format_number(py)}" for px, py in points[1:])
        parts.append(f"{head} {tail} Z" if tail else f"{head} Z")
    return " ".join(parts)
