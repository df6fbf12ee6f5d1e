"""Generic translational tiling over rectangles and tori.

verify_tiling is the hot path of the acceptance run, so it fills a
dense numpy coverage counter.  solve_region is a plain deterministic
backtracker used for desk-scale instances and the local lemma searches.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import FormatError, UnknownRoleError
from .grid import Polyomino


class RegionKind(enum.Enum):
    RECTANGLE = "rect"
    TORUS = "torus"


@dataclass(frozen=True)
class Region:
    kind: RegionKind
    width: int
    height: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("region must be at least 1x1")

    @property
    def area(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class Placement:
    role: str
    dx: int
    dy: int


@dataclass(frozen=True)
class PatternTiling:
    region: Region
    placements: tuple[Placement, ...]


def _tile_arrays(tiles: dict[str, Polyomino]) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    out = {}
    for role, poly in tiles.items():
        cells = poly.sorted_cells()
        xs = np.fromiter((c[0] for c in cells), dtype=np.int64, count=len(cells))
        ys = np.fromiter((c[1] for c in cells), dtype=np.int64, count=len(cells))
        out[role] = (xs, ys)
    return out


def verify_tiling(tiles: dict[str, Polyomino], tiling: PatternTiling) -> bool:
    """True iff the placements cover every region cell exactly once.

    Tiles are taken in canonical form; a placement translates the
    canonical cells by (dx, dy).  On a torus the cells wrap; on a
    rectangle any cell outside the region fails verification.
    """
    region = tiling.region
    counter = np.zeros((region.height, region.width), dtype=np.int32)
    arrays = _tile_arrays(tiles)
    for pl in tiling.placements:
        if pl.role not in arrays:
            raise UnknownRoleError(f"no tile for role {pl.role!r}")
        xs, ys = arrays[pl.role]
        xs = xs + pl.dx
        ys = ys + pl.dy
        if region.kind is RegionKind.TORUS:
            xs %= region.width
            ys %= region.height
        elif (
            xs.min() < 0
            or ys.min() < 0
            or xs.max() >= region.width
            or ys.max() >= region.height
        ):
            return False
        np.add.at(counter, (ys, xs), 1)
    return bool((counter == 1).all())


def coverage_defect(
    tiles: dict[str, Polyomino], tiling: PatternTiling
) -> Optional[tuple[int, int, int]]:
    """First cell not covered exactly once, as (x, y, count), else None."""
    region = tiling.region
    counter = np.zeros((region.height, region.width), dtype=np.int32)
    arrays = _tile_arrays(tiles)
    for pl in tiling.placements:
        if pl.role not in arrays:
            raise UnknownRoleError(f"no tile for role {pl.role!r}")
        xs, ys = arrays[pl.role]
        xs = xs + pl.dx
        ys = ys + pl.dy
        if region.kind is RegionKind.TORUS:
            xs %= region.width
            ys %= region.height
        elif (
            xs.min() < 0
            or ys.min() < 0
            or xs.max() >= region.width
            or ys.max() >= region.height
        ):
            bad = int(np.argmin((xs >= 0) & (ys >= 0) & (xs < region.width) & (ys < region.height)))
            return int(xs[bad]), int(ys[bad]), -1
        np.add.at(counter, (ys, xs), 1)
    wrong = np.argwhere(counter != 1)
    if wrong.size == 0:
        return None
    y, x = wrong[0]
    return int(x), int(y), int(counter[y, x])


def solve_region(
    tiles: dict[str, Polyomino],
    region: Region,
    anchor: Optional[tuple[int, int]] = None,
    most_constrained: bool = False,
) -> Optional[PatternTiling]:
    """Deterministic exact-cover backtracking over the region.

    Branches on the first uncovered cell in row-major order (or the
    cell with the fewest candidate placements when most_constrained is
    set), trying tiles in sorted-role order and each tile's cells in
    sorted order.  If an anchor is given, that cell is branched first,
    so the search certifies coverability of configurations containing
    it.  Returns the first solution found or None.
    """
    roles = sorted(tiles)
    cell_lists = {role: tiles[role].sorted_cells() for role in roles}
    W, H = region.width, region.height
    torus = region.kind is RegionKind.TORUS
    covered = np.zeros((H, W), dtype=bool)
    placements: list[Placement] = []

    def candidates(cx, cy):
        found = []
        for role in roles:
            for ox, oy in cell_lists[role]:
                dx, dy = cx - ox, cy - oy
                cells = []
                ok = True
                for x, y in cell_lists[role]:
                    px, py = x + dx, y + dy
                    if torus:
                        px, py = px % W, py % H
                    elif not (0 <= px < W and 0 <= py < H):
                        ok = False
                        break
                    if covered[py, px]:
                        ok = False
                        break
                    cells.append((px, py))
                if ok and len(set(cells)) == len(cells):
                    found.append((role, dx, dy, cells))
        return found

    def pick_cell():
        if most_constrained:
            best = None
            ys, xs = np.nonzero(~covered)
            for y, x in zip(ys.tolist(), xs.tolist()):
                cand = candidates(x, y)
                if best is None or len(cand) < len(best[2]):
                    best = (x, y, cand)
                    if not cand:
                        break
            return best
        ys, xs = np.nonzero(~covered)
        x, y = int(xs[0]), int(ys[0])
        return (x, y, candidates(x, y))

    def backtrack(first_target):
        if covered.all():
            return True
        if first_target is not None:
            cx, cy = first_target
            picked = (cx, cy, candidates(cx, cy))
        else:
            picked = pick_cell()
        cx, cy, cands = picked
        for role, dx, dy, cells in cands:
            for px, py in cells:
                covered[py, px] = True
            placements.append(Placement(role, dx, dy))
            if backtrack(None):
                return True
            placements.pop()
            for px, py in cells:
                covered[py, px] = False
        return False

    if backtrack(anchor):
        return PatternTiling(region, tuple(placements))
    return None


# ---------------------------------------------------------------------------
# .plc text format.

def write_plc(tiling: PatternTiling) -> str:
    region = tiling.region
    lines = [f"region: {region.kind.value} {region.width} {region.height}"]
    for pl in tiling.placements:
        lines.append(f"place {pl.role} {pl.dx} {pl.dy}")
    return "\n".join(lines) + "\n"


def read_plc(text: str) -> PatternTiling:
    lines = [ln for ln in (raw.split("#", 1)[0].strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("region:"):
        raise FormatError("missing 'region:' header", line=1)
    parts = lines[0].split(":", 1)[1].split()
    if len(parts) != 3:
        raise FormatError("region line needs kind, width, height", line=1)
    kind = {"rect": RegionKind.RECTANGLE, "torus": RegionKind.TORUS}.get(parts[0])
    if kind is None:
        raise FormatError(f"unknown region kind {parts[0]!r}", line=1)
    region = Region(kind, int(parts[1]), int(parts[2]))
    placements = []
    for lineno, ln in enumerate(lines[1:], start=2):
        fields = ln.split()
        if len(fields) != 4 or fields[0] != "place":
            raise FormatError(f"expected 'place <role> <dx> <dy>', got {ln!r}", line=lineno)
        placements.append(Placement(fields[1], int(fields[2]), int(fields[3])))
    return PatternTiling(region, tuple(placements))
