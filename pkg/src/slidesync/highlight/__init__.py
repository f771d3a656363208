from .renderer import IndexEntry, RenderError, check_raster, overlay_file_names, render_overlay, render_schedule
from .schedule import (GapPolicy, HighlightEvent, HighlightSchedule, HighlightStyle, ScheduleError, StyleParams,
                       build_schedule, merge_schedules, parse_schedule, write_schedule)

__all__ = [
    'IndexEntry', 'RenderError', 'check_raster', 'overlay_file_names', 'render_overlay', 'render_schedule',
    'GapPolicy', 'HighlightEvent', 'HighlightSchedule', 'HighlightStyle', 'ScheduleError', 'StyleParams',
    'build_schedule', 'merge_schedules', 'parse_schedule', 'write_schedule',
]
