"""Squarified treemap layout for the file overview.

Tiles are laid in rows along the shorter side of the remaining viewport,
growing each row greedily while the worst aspect ratio in the row keeps
improving. Areas are exactly proportional to node weights; positions are an
algorithm detail that callers must not rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateLayoutError
from .model import CATEGORY_COLORS, NO_DATA_COLOR, FileElement

SCALE_ATTRIBUTES = ("size", "count")


@dataclass(frozen=True)
class TreemapNode:
    file: FileElement
    weight: float


@dataclass(frozen=True)
class TreemapRect:
    node: TreemapNode
    x: float
    y: float
    w: float
    h: float

    @property
    def area(self) -> float:
        return self.w * self.h


def nodes_from_files(files, scale: str) -> list[TreemapNode]:
    """Weight files by size_bytes or by contained element count."""
    if scale not in SCALE_ATTRIBUTES:
        raise ValueError(f"scale must be one of {SCALE_ATTRIBUTES}, got {scale!r}")
    return [
        TreemapNode(file=f, weight=float(f.size_bytes if scale == "size" else f.element_count))
        for f in files
    ]


def color_of(node: TreemapNode) -> str:
    """Category color for files holding data elements; white otherwise."""
    if node.file.data_category is None:
        return NO_DATA_COLOR
    return CATEGORY_COLORS[node.file.data_category]


def layout(nodes, width: float, height: float) -> list[TreemapRect]:
    """Compute the squarified layout inside a width x height viewport.

    Nodes are processed in descending weight order (ties broken by file
    path). Zero-weight nodes come back as zero-area rects pinned to the
    bottom-right corner, after all the real tiles, so every file stays
    enumerable. All weights zero is a degenerate layout and raises.
    """
    nodes = list(nodes)
    if not nodes:
        raise ValueError("layout requires at least one node")
    if width <= 0 or height <= 0:
        raise ValueError("viewport area must be positive")
    for n in nodes:
        if n.weight < 0:
            raise ValueError(f"negative weight on {n.file.path}")

    nodes.sort(key=lambda n: (-n.weight, n.file.path))
    positive = [n for n in nodes if n.weight > 0]
    zeros = [n for n in nodes if n.weight == 0]
    if not positive:
        raise DegenerateLayoutError("all node weights are zero; switch the scale attribute")

    total = sum(n.weight for n in positive)
    scale = (width * height) / total
    areas = [n.weight * scale for n in positive]

    rects: list[TreemapRect] = []
    _squarify(positive, areas, 0.0, 0.0, width, height, rects)
    rects.extend(TreemapRect(node=n, x=width, y=height, w=0.0, h=0.0) for n in zeros)
    return rects


def _row_worst(row_areas: list[float], side: float) -> float:
    total = sum(row_areas)
    thickness = total / side
    worst = 0.0
    for a in row_areas:
        length = a / thickness
        ratio = thickness / length if thickness > length else length / thickness
        if ratio > worst:
            worst = ratio
    return worst


def _squarify(nodes, areas, x, y, w, h, out: list[TreemapRect]) -> None:
    i = 0
    while i < len(nodes):
        side = min(w, h)
        row = [areas[i]]
        row_nodes = [nodes[i]]
        i += 1
        while i < len(nodes):
            if _row_worst(row + [areas[i]], side) <= _row_worst(row, side):
                row.append(areas[i])
                row_nodes.append(nodes[i])
                i += 1
            else:
                break
        x, y, w, h = _place_row(row_nodes, row, x, y, w, h, out, last=i >= len(nodes))


def _place_row(row_nodes, row_areas, x, y, w, h, out, last: bool) -> tuple[float, float, float, float]:
    # Thickness always comes from the row's area share, never from the
    # leftover dimension: rescaling the final row to "fill" the viewport
    # would dump all accumulated float drift into the smallest tiles and
    # break area proportionality. The drift instead becomes a sub-picopixel
    # sliver of uncovered (or overshot) viewport, inside every tolerance.
    total = sum(row_areas)
    if w >= h:
        # Vertical column on the left edge.
        thickness = total / h
        if not last and thickness > w:
            thickness = w
        cy = y
        for node, area in zip(row_nodes, row_areas):
            out.append(TreemapRect(node=node, x=x, y=cy, w=thickness, h=area / thickness))
            cy += area / thickness
        return x + thickness, y, w - thickness, h
    # Horizontal row along the top edge.
    thickness = total / w
    if not last and thickness > h:
        thickness = h
    cx = x
    for node, area in zip(row_nodes, row_areas):
        out.append(TreemapRect(node=node, x=cx, y=y, w=area / thickness, h=thickness))
        cx += area / thickness
    return x, y + thickness, w, h - thickness
