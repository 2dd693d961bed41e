"""Static SVG renderings of the file overview and the timeline.

Output is deterministic: the same inputs produce byte-identical documents,
which makes reports diffable and lets tests pin digests. Numbers are
formatted to a fixed precision and no timestamps or ids are invented at
render time.
"""

from __future__ import annotations

from datetime import date, timedelta
from xml.sax.saxutils import escape, quoteattr

from .model import CATEGORY_COLORS, Category
from .query import SECONDS_PER_DAY, TimePoint
from .treemap import TreemapRect, color_of

_FONT = "font-family=\"sans-serif\""


def _n(value: float) -> str:
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return text if text else "0"


def svg_treemap(rects: list[TreemapRect], width: float, height: float) -> str:
    """File overview as one SVG document; tooltip per tile via <title>."""
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_n(width)}" height="{_n(height)}" '
        f'viewBox="0 0 {_n(width)} {_n(height)}">',
        f'<rect x="0" y="0" width="{_n(width)}" height="{_n(height)}" fill="#f4f4f4"/>',
    ]
    for r in rects:
        f = r.node.file
        color = color_of(r.node)
        tooltip = (
            f"{f.path}\n{f.size_bytes} bytes\n"
            f"{f.data_category.value if f.data_category else 'no data elements'}"
            f" / {f.element_count} elements"
        )
        parts.append(
            f'<rect x="{_n(r.x)}" y="{_n(r.y)}" width="{_n(r.w)}" height="{_n(r.h)}" '
            f'fill="{color}" stroke="#555555" stroke-width="0.5">'
            f"<title>{escape(tooltip)}</title></rect>"
        )
        if r.w >= 80 and r.h >= 16:
            label = f.file_name
            max_chars = max(3, int(r.w / 6.5))
            if len(label) > max_chars:
                label = label[: max_chars - 1] + "…"
            parts.append(
                f'<text x="{_n(r.x + 3)}" y="{_n(r.y + 12)}" font-size="10" {_FONT} '
                f'fill="#222222">{escape(label)}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def shift_point(point: TimePoint, offset_minutes: int) -> tuple[int, int]:
    """Move a point into a local-time view; the day rolls over at midnight."""
    total = point.x * SECONDS_PER_DAY + point.y + offset_minutes * 60
    return total // SECONDS_PER_DAY, total % SECONDS_PER_DAY


def svg_timeline(
    panels: list[tuple[str | None, list[TimePoint] | tuple[TimePoint, ...]]],
    width: float = 1200.0,
    height: float = 500.0,
    offset_minutes: int = 0,
) -> str:
    """Date x time-of-day scatterplot, one panel per dataset when split.

    Circles are outlines only (no fill), colored by category. All panels
    share the same x domain so datasets line up for comparison.
    """
    shifted: list[tuple[str | None, list[tuple[int, int, Category, str]]]] = []
    all_x: list[int] = []
    for label, points in panels:
        rows = []
        for p in points:
            x, y = shift_point(p, offset_minutes)
            rows.append((x, y, p.element.category, p.element.text))
            all_x.append(x)
        shifted.append((label, rows))
    if not all_x:
        x_min, x_max = 0, 1
    else:
        x_min, x_max = min(all_x), max(all_x)
        if x_min == x_max:
            x_max = x_min + 1

    margin_left, margin_right, margin_top, margin_bottom = 46.0, 10.0, 10.0, 26.0
    gap = 30.0
    n = max(1, len(shifted))
    panel_h = (height - margin_top - margin_bottom - gap * (n - 1)) / n
    plot_w = width - margin_left - margin_right
    span = x_max - x_min

    def sx(day: int) -> float:
        return margin_left + (day - x_min) / span * plot_w

    def sy(seconds: int, top: float) -> float:
        return top + seconds / SECONDS_PER_DAY * panel_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_n(width)}" height="{_n(height)}" '
        f'viewBox="0 0 {_n(width)} {_n(height)}">',
        f'<rect x="0" y="0" width="{_n(width)}" height="{_n(height)}" fill="#ffffff"/>',
    ]

    for idx, (label, rows) in enumerate(shifted):
        top = margin_top + idx * (panel_h + gap)
        parts.append(
            f'<rect x="{_n(margin_left)}" y="{_n(top)}" width="{_n(plot_w)}" '
            f'height="{_n(panel_h)}" fill="none" stroke="#cccccc"/>'
        )
        if label:
            parts.append(
                f'<text x="{_n(margin_left)}" y="{_n(top - 4)}" font-size="11" {_FONT} '
                f'fill="#333333">{escape(label)}</text>'
            )
        for hour in (0, 6, 12, 18, 24):
            y = sy(hour * 3600, top)
            parts.append(
                f'<line x1="{_n(margin_left)}" y1="{_n(y)}" x2="{_n(margin_left + plot_w)}" '
                f'y2="{_n(y)}" stroke="#eeeeee"/>'
            )
            parts.append(
                f'<text x="{_n(margin_left - 6)}" y="{_n(y + 3)}" font-size="9" {_FONT} '
                f'fill="#666666" text-anchor="end">{hour:02d}:00</text>'
            )
        for day, text in _date_ticks(x_min, x_max):
            x = sx(day)
            parts.append(
                f'<line x1="{_n(x)}" y1="{_n(top)}" x2="{_n(x)}" y2="{_n(top + panel_h)}" '
                f'stroke="#e4e4e4"/>'
            )
            if text and idx == n - 1:
                parts.append(
                    f'<text x="{_n(x)}" y="{_n(height - margin_bottom + 14)}" font-size="10" '
                    f'{_FONT} fill="#444444" text-anchor="middle">{escape(text)}</text>'
                )
        for x_day, y_sec, category, text in rows:
            parts.append(
                f'<circle cx="{_n(sx(x_day))}" cy="{_n(sy(y_sec, top))}" r="2.5" fill="none" '
                f'stroke={quoteattr(CATEGORY_COLORS[category])} stroke-width="1">'
                f"<title>{escape(text)}</title></circle>"
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _date_ticks(x_min: int, x_max: int) -> list[tuple[int, str | None]]:
    """Year gridlines (labeled) plus unlabeled month lines on short spans."""
    epoch = date(1970, 1, 1)
    start = epoch + timedelta(days=x_min)
    end = epoch + timedelta(days=x_max)
    ticks: list[tuple[int, str | None]] = []
    months = x_max - x_min <= 1100
    year, month = start.year, start.month
    while (year, month) <= (end.year, end.month):
        d = date(year, month, 1)
        day = (d - epoch).days
        if x_min <= day <= x_max:
            if month == 1:
                ticks.append((day, str(year)))
            elif months:
                ticks.append((day, None))
        month += 1
        if month > 12:
            month, year = 1, year + 1
    return ticks
