"""Wang tile sets: parsing, torus-tiling validity, and periodic search."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import (
    DuplicateTileNameError,
    FormatError,
    IndexOutOfRangeError,
    UnknownColorError,
)


@dataclass(frozen=True)
class Color:
    id: int
    name: str


@dataclass(frozen=True)
class WangTile:
    name: str
    north: int
    east: int
    south: int
    west: int

    def edge(self, side: str) -> int:
        return getattr(self, side)


@dataclass(frozen=True)
class WangTileSet:
    palette: tuple[Color, ...]
    tiles: tuple[WangTile, ...]

    @property
    def n(self) -> int:
        return len(self.tiles)

    @property
    def m(self) -> int:
        """Number of distinct colors actually used on edges."""
        used = set()
        for t in self.tiles:
            used.update((t.north, t.east, t.south, t.west))
        return len(used)

    @property
    def t(self) -> int:
        """Bits per edge: ceil(log2 m), at least 1 so every edge has a dent."""
        return max(1, math.ceil(math.log2(self.m))) if self.m > 1 else 1

    def color_name(self, cid: int) -> str:
        return self.palette[cid].name


@dataclass(frozen=True)
class WangTorusTiling:
    p: int
    q: int
    grid: tuple[tuple[int, ...], ...]  # grid[y][x] = tile index, row y=0 southmost

    def at(self, x: int, y: int) -> int:
        return self.grid[y % self.q][x % self.p]


def parse_wang(text: str) -> WangTileSet:
    """Parse the .wang format: a colors line, then one tile per line."""
    palette: list[Color] = []
    by_name: dict[str, int] = {}
    tiles: list[WangTile] = []
    tile_names = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("colors:"):
            if palette:
                raise FormatError("duplicate colors line", line=lineno)
            for name in line.split(":", 1)[1].split():
                if name in by_name:
                    raise FormatError(f"duplicate color {name!r}", line=lineno)
                by_name[name] = len(palette)
                palette.append(Color(len(palette), name))
            continue
        parts = line.split()
        if parts[0] != "tile" or len(parts) != 6:
            raise FormatError(f"expected 'tile <name> N=.. E=.. S=.. W=..', got {line!r}",
                              line=lineno)
        name = parts[1]
        if name in tile_names:
            raise DuplicateTileNameError(f"duplicate tile {name!r}", line=lineno)
        tile_names.add(name)
        edges = {}
        for field in parts[2:]:
            if "=" not in field:
                raise FormatError(f"bad edge spec {field!r}", line=lineno)
            key, value = field.split("=", 1)
            if key not in ("N", "E", "S", "W") or key in edges:
                raise FormatError(f"bad edge spec {field!r}", line=lineno)
            if value not in by_name:
                raise UnknownColorError(f"unknown color {value!r}", line=lineno)
            edges[key] = by_name[value]
        if len(edges) != 4:
            raise FormatError("tile needs all four edges", line=lineno)
        tiles.append(WangTile(name, edges["N"], edges["E"], edges["S"], edges["W"]))
    if not palette:
        raise FormatError("missing colors line")
    if not tiles:
        raise FormatError("empty tile list")
    return WangTileSet(tuple(palette), tuple(tiles))


def write_wang(ts: WangTileSet) -> str:
    lines = ["colors: " + " ".join(c.name for c in ts.palette)]
    for t in ts.tiles:
        lines.append(
            f"tile {t.name} N={ts.color_name(t.north)} E={ts.color_name(t.east)} "
            f"S={ts.color_name(t.south)} W={ts.color_name(t.west)}"
        )
    return "\n".join(lines) + "\n"


def parse_wtil(ts: WangTileSet, text: str) -> WangTorusTiling:
    """Parse the .wtil format: a period line then q rows of p tile names."""
    lines = [ln for ln in (raw.split("#", 1)[0].strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("period:"):
        raise FormatError("missing 'period:' header", line=1)
    try:
        p, q = (int(v) for v in lines[0].split(":", 1)[1].split())
    except ValueError as exc:
        raise FormatError(f"bad period line: {exc}", line=1)
    if len(lines) != 1 + q:
        raise FormatError(f"expected {q} rows, found {len(lines) - 1}")
    index = {t.name: i for i, t in enumerate(ts.tiles)}
    rows = []
    for lineno, ln in enumerate(lines[1:], start=2):
        names = ln.split()
        if len(names) != p:
            raise FormatError(f"expected {p} names", line=lineno)
        try:
            rows.append(tuple(index[name] for name in names))
        except KeyError as exc:
            raise FormatError(f"unknown tile {exc.args[0]!r}", line=lineno)
    return WangTorusTiling(p, q, tuple(rows))


def write_wtil(ts: WangTileSet, tiling: WangTorusTiling) -> str:
    lines = [f"period: {tiling.p} {tiling.q}"]
    for row in tiling.grid:
        lines.append(" ".join(ts.tiles[i].name for i in row))
    return "\n".join(lines) + "\n"


def check_torus(ts: WangTileSet, tiling: WangTorusTiling) -> bool:
    """True iff all 2pq wraparound adjacency constraints hold."""
    for row in tiling.grid:
        for idx in row:
            if not 0 <= idx < ts.n:
                raise IndexOutOfRangeError(f"tile index {idx} out of range")
    for y in range(tiling.q):
        for x in range(tiling.p):
            here = ts.tiles[tiling.at(x, y)]
            east = ts.tiles[tiling.at(x + 1, y)]
            north = ts.tiles[tiling.at(x, y + 1)]
            if here.east != east.west or here.north != north.south:
                return False
    return True


def solve_torus(ts: WangTileSet, max_period: int) -> Optional[WangTorusTiling]:
    """First valid torus tiling with p, q <= max_period, or None.

    Periods are scanned by increasing p+q then p; within a period the
    grid is filled row-major with tiles tried in input order, so the
    result is deterministic.  Finding nothing proves nothing about the
    plane: the set may still tile it aperiodically.
    """
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    sizes = sorted(
        ((p, q) for p in range(1, max_period + 1) for q in range(1, max_period + 1)),
        key=lambda pq: (pq[0] + pq[1], pq[0]),
    )
    for p, q in sizes:
        grid = [[-1] * p for _ in range(q)]

        def fits(x, y, idx):
            # Tentative placement so wraparound onto the same cell works
            # for p == 1 or q == 1.
            grid[y][x] = idx
            try:
                tile = ts.tiles[idx]
                west = grid[y][(x - 1) % p]
                if west >= 0 and ts.tiles[west].east != tile.west:
                    return False
                east = grid[y][(x + 1) % p]
                if east >= 0 and tile.east != ts.tiles[east].west:
                    return False
                south = grid[(y - 1) % q][x]
                if south >= 0 and ts.tiles[south].north != tile.south:
                    return False
                north = grid[(y + 1) % q][x]
                if north >= 0 and tile.north != ts.tiles[north].south:
                    return False
                return True
            finally:
                grid[y][x] = -1

        def backtrack(pos):
            if pos == p * q:
                return True
            y, x = divmod(pos, p)
            for idx in range(ts.n):
                if fits(x, y, idx):
                    grid[y][x] = idx
                    if backtrack(pos + 1):
                        return True
                    grid[y][x] = -1
            return False

        if backtrack(0):
            return WangTorusTiling(p, q, tuple(tuple(row) for row in grid))
    return None


def figure_one_set() -> WangTileSet:
    """The 3-tile, 4-color example set used throughout the tests and docs."""
    return parse_wang(
        "colors: red green blue yellow\n"
        "tile t1 N=red E=yellow S=red W=green\n"
        "tile t2 N=blue E=red S=blue W=yellow\n"
        "tile t3 N=yellow E=green S=yellow W=red\n"
    )
