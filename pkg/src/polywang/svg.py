"""Deterministic SVG rendering of tiles and assembled patterns."""

from __future__ import annotations

from .engine import PatternTiling
from .grid import Polyomino, canonicalize, trace_boundary
from .reduction import (
    ROLE_FILLER,
    ROLE_JAW,
    ROLE_LINK_H,
    ROLE_LINK_V,
    ROLE_MEAT,
    ROLE_TOOTH1,
    ROLE_TOOTH2,
    ROLE_TOOTH3,
)

# Figure 8 legend: gray jaws, orange meats, green fillers, violet links;
# the teeth get their own dark hues so they stand out at cell scale.
ROLE_FILL = {
    ROLE_JAW: "#cccccc",
    ROLE_MEAT: "#f4a340",
    ROLE_FILLER: "#8fd35d",
    ROLE_LINK_H: "#c5a3e0",
    ROLE_LINK_V: "#c5a3e0",
    ROLE_TOOTH1: "#7a3b2e",
    ROLE_TOOTH2: "#2e5d7a",
    ROLE_TOOTH3: "#4a2e7a",
}
DEFAULT_FILL = "#999999"

_DIR_VEC = {"u": (0, 1), "d": (0, -1), "l": (-1, 0), "r": (1, 0)}


def _outline_path(poly: Polyomino, dx: int, dy: int, height: int) -> str:
    """SVG path for one placement, y flipped so north is up on screen."""
    (x0, y0), w = trace_boundary(canonicalize(poly))
    parts = [f"M{x0 + dx},{height - (y0 + dy)}"]
    x, y = x0, y0
    for step in w.steps:
        vx, vy = _DIR_VEC[step.direction]
        x += vx * step.count
        y += vy * step.count
        parts.append(f"L{x + dx},{height - (y + dy)}")
    parts[-1] = "Z"
    return " ".join(parts)


def render_tiles(tiles: dict[str, Polyomino], pad: int = 4) -> str:
    """All tiles side by side, one path each."""
    placed = []
    x = pad
    max_h = 0
    for role in sorted(tiles):
        poly = canonicalize(tiles[role])
        _, _, w, h = poly.bbox()
        placed.append((role, poly, x))
        x += w + pad
        max_h = max(max_h, h)
    width, height = x, max_h + 2 * pad
    body = [_svg_open(width, height)]
    for role, poly, ox in placed:
        path = _outline_path(poly, ox, pad, height)
        fill = ROLE_FILL.get(role, DEFAULT_FILL)
        body.append(f'  <path d="{path}" fill="{fill}" stroke="black" stroke-width="0.2"/>')
    body.append("</svg>")
    return "\n".join(body) + "\n"


def render_pattern(tiles: dict[str, Polyomino], tiling: PatternTiling) -> str:
    """One path per placement over the region, Figure 8 colors."""
    width, height = tiling.region.width, tiling.region.height
    body = [_svg_open(width, height)]
    for pl in tiling.placements:
        poly = tiles[pl.role]
        path = _outline_path(poly, pl.dx, pl.dy, height)
        fill = ROLE_FILL.get(pl.role, DEFAULT_FILL)
        body.append(f'  <path d="{path}" fill="{fill}" stroke="black" stroke-width="0.15"/>')
    body.append("</svg>")
    return "\n".join(body) + "\n"


def _svg_open(width: int, height: int) -> str:
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
