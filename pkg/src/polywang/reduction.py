"""Compile a Wang tile set into the eight polyominoes.

The five big tiles are blown-up base polyominoes (9x9 blocks) with
features substituted for single blocks.  Where features go is frozen
here and certified by the assembly and placement tests:

  * Each simulated Wang tile is a (t+4)-block square unit on the meat's
    staircase.  Its four (t+1)-block runs carry one T-bump on the block
    next to the unit's single-step corner and t color dents on the
    blocks next to the two-block corner.
  * The jaw's mouth walls mirror that: a T-dent next to each single
    step, deeper dents next to each corner, plus one extra T-dent on
    each of the four steps beside the two slit openings.
  * The filler is the meat's base with n = 1 whose feature slots all
    carry bumps: it fills one vacant unit slot of a jaw mouth.
  * The links are 9-cell-tall rectangles with a normal-dent plug on one
    end and a deeper-dent plug on the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ColorOverflowError
from .features import (
    FeatureKind,
    FeaturePlan,
    RUN_SIDE,
    Side,
    dent_sequence,
    encode_color,
    feature_delta,
    substitute,
)
from .grid import (
    BoundaryWord,
    Polyomino,
    Step,
    canonicalize,
    rotate_word_cw,
    vertices_to_word,
    word_to_polyomino,
)
from .wang import WangTile, WangTileSet

ROLE_MEAT = "meat"
ROLE_JAW = "jaw"
ROLE_FILLER = "filler"
ROLE_TOOTH1 = "tooth1"
ROLE_TOOTH2 = "tooth2"
ROLE_TOOTH3 = "tooth3"
ROLE_LINK_H = "link-h"
ROLE_LINK_V = "link-v"

ALL_ROLES = (
    ROLE_MEAT,
    ROLE_JAW,
    ROLE_FILLER,
    ROLE_TOOTH1,
    ROLE_TOOTH2,
    ROLE_TOOTH3,
    ROLE_LINK_H,
    ROLE_LINK_V,
)

# Figure 7 outlines in unit cells, traced counterclockwise.
TOOTH1_VERTICES = [
    (0, 0), (2, 0), (2, -1), (1, -1), (1, -2), (4, -2), (4, -1), (3, -1),
    (3, 0), (5, 0), (5, 2), (6, 2), (6, 1), (7, 1), (7, 4), (6, 4), (6, 3),
    (5, 3), (5, 5), (3, 5), (3, 6), (4, 6), (4, 7), (1, 7), (1, 6), (2, 6),
    (2, 5), (0, 5), (0, 3), (-1, 3), (-1, 4), (-2, 4), (-2, 1), (-1, 1),
    (-1, 2), (0, 2),
]
TOOTH2_VERTICES = [
    (0, -1), (2, -1), (2, -2), (1, -2), (1, -3), (4, -3), (4, -2), (3, -2),
    (3, -1), (5, -1), (5, 1), (6, 1), (6, 0), (7, 0), (7, 4), (6, 4), (6, 3),
    (5, 3), (5, 5), (3, 5), (3, 6), (4, 6), (4, 7), (1, 7), (1, 6), (2, 6),
    (2, 5), (0, 5), (0, 3), (-1, 3), (-1, 4), (-2, 4), (-2, 0), (-1, 0),
    (-1, 1), (0, 1),
]
TOOTH3_VERTICES = [
    (0, 0), (2, 0), (2, -1), (1, -1), (1, -2), (5, -2), (5, -1), (4, -1),
    (4, 0), (6, 0), (6, 2), (7, 2), (7, 1), (8, 1), (8, 4), (7, 4), (7, 3),
    (6, 3), (6, 5), (4, 5), (4, 6), (5, 6), (5, 7), (1, 7), (1, 6), (2, 6),
    (2, 5), (0, 5), (0, 3), (-1, 3), (-1, 4), (-2, 4), (-2, 1), (-1, 1),
    (-1, 2), (0, 2),
]


@dataclass(frozen=True)
class ReductionParams:
    n: int
    t: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("reduction needs n >= 2 Wang tiles")
        if self.t < 1:
            raise ValueError("t must be >= 1")

    @property
    def unit(self) -> int:
        """Simulated-tile pitch in blocks."""
        return self.t + 4

    @property
    def link_len(self) -> int:
        """Link length in blocks."""
        return 2 * (self.n - 1) * self.unit + 1

    @property
    def jaw_side(self) -> int:
        """Jaw bounding box in blocks."""
        return 2 * (self.n - 1) * self.unit + 5

    @property
    def meat_side(self) -> int:
        """Meat bounding box in blocks."""
        return self.n * self.unit + 1

    @property
    def period(self) -> int:
        """Jaw lattice pitch in blocks: jaw side plus a t-block channel.

        Equals 2(n-1)(t+4)+7 in the t = 2 case the figures depict; the
        channel must hold one link row per color bit, so it scales with
        t rather than staying 2.
        """
        return self.jaw_side + self.t


@dataclass(frozen=True)
class FeatureSite:
    """One placed feature, located in the host word's own frame."""

    kind: FeatureKind
    side: Side
    cells: frozenset[tuple[int, int]]
    unit: int = 0  # 1-based simulated-tile index on the meat; 0 elsewhere
    bit: int = 0  # 1-based bit index for color dents; 0 otherwise
    slit: str = ""  # "A" (southeast mouth) or "B" (northwest) on the jaw


# Canonical traversal-start vertex of the block frame, per side.
_FRAME_START = {
    Side.NORTH: (9, 0),
    Side.EAST: (0, -9),
    Side.SOUTH: (-9, 0),
    Side.WEST: (0, 9),
}


class _Builder:
    """Accumulates runs, plan entries, and feature sites while walking."""

    def __init__(self):
        self.runs: list[Step] = []
        self.x = 0
        self.y = 0
        self.plan: list[tuple[int, int, FeatureKind, Side]] = []
        self.sites: list[FeatureSite] = []

    def run(self, direction: str, blocks: int, features=()):
        """Append a run of `blocks` 9-cell blocks, with optional features.

        Each feature is (block_index, kind) plus keyword-style extras
        (unit, bit, slit) packed in a dict.
        """
        from .grid import DIR_VECTORS

        side = RUN_SIDE[direction]
        vx, vy = DIR_VECTORS[direction]
        run_index = len(self.runs)
        for block, kind, extra in features:
            self.plan.append((run_index, block, kind, side))
            bx = self.x + vx * 9 * block
            by = self.y + vy * 9 * block
            sx, sy = _FRAME_START[side]
            cells = frozenset(
                (cx - sx + bx, cy - sy + by) for cx, cy in feature_delta(kind, side)
            )
            self.sites.append(FeatureSite(kind, side, cells, **extra))
        self.runs.append(Step(direction, 9 * blocks))
        self.x += vx * 9 * blocks
        self.y += vy * 9 * blocks

    def word(self) -> BoundaryWord:
        return BoundaryWord(tuple(self.runs))


@dataclass(frozen=True)
class BuiltTile:
    """A finished tile along with its word-frame bookkeeping."""

    poly: Polyomino  # canonical form
    word: BoundaryWord
    cells: frozenset[tuple[int, int]]  # word-frame cells (word starts at (0, 0))
    sites: tuple[FeatureSite, ...]

    @property
    def word_min(self) -> tuple[int, int]:
        xs = [x for x, _ in self.cells]
        ys = [y for _, y in self.cells]
        return min(xs), min(ys)


def _walk_meat(n: int, t: int, tiles: Optional[tuple[WangTile, ...]]) -> _Builder:
    """Trace the meat base word, adding features when tiles are given."""
    b = _Builder()

    def unit_features(k: int):
        """Feature lists for unit k's four runs (west, south, east, north)."""
        if tiles is None:
            return (), (), (), ()
        tile = tiles[k - 1]
        west = dent_sequence(encode_color(tile.west, t), Side.WEST)
        south = dent_sequence(encode_color(tile.south, t), Side.SOUTH)
        east = dent_sequence(encode_color(tile.east, t), Side.EAST)
        north = dent_sequence(encode_color(tile.north, t), Side.NORTH)
        u = {"unit": k}
        wf = [(0, FeatureKind.T_BUMP, u)]
        wf += [(j, west[j - 1], {"unit": k, "bit": j}) for j in range(1, t + 1)]
        sf = [(j - 1, south[j - 1], {"unit": k, "bit": j}) for j in range(1, t + 1)]
        sf += [(t, FeatureKind.T_BUMP, u)]
        ef = [(0, FeatureKind.T_BUMP, u)]
        ef += [(t + 1 - j, east[j - 1], {"unit": k, "bit": j}) for j in range(1, t + 1)]
        nf = [(t - j, north[j - 1], {"unit": k, "bit": j}) for j in range(1, t + 1)]
        nf += [(t, FeatureKind.T_BUMP, u)]
        return wf, sf, ef, nf

    b.run("d", 1)
    for k in range(1, n + 1):  # southwest boundary, unit 1 first
        wf, sf, _, _ = unit_features(k)
        b.run("d", 1)
        b.run("r", 1)
        b.run("d", t + 1, wf)
        b.run("r", 2)
        b.run("d", 2)
        b.run("r", t + 1, sf)
    b.run("u", 1)
    b.run("r", 1)
    for k in range(n, 0, -1):  # northeast boundary, unit n first
        _, _, ef, nf = unit_features(k)
        b.run("u", t + 1, ef)
        b.run("l", 2)
        b.run("u", 2)
        b.run("l", t + 1, nf)
        b.run("u", 1)
        b.run("l", 1)
    b.run("l", 1)
    return b


def meat_base_word(n: int, t: int) -> BoundaryWord:
    """Base word of the meat, upper-left start, counterclockwise."""
    if n < 1 or t < 1:
        raise ValueError("need n >= 1 and t >= 1")
    return _walk_meat(n, t, None).word()


def filler_base_word(t: int) -> BoundaryWord:
    """Reconstructed filler base: the meat base with a single unit."""
    return meat_base_word(1, t)


def printed_filler_word(t: int) -> BoundaryWord:
    """The filler base word as printed, which fails to close."""
    runs = [
        Step("d", 18), Step("r", 9), Step("d", 9 * (t + 1)), Step("r", 18),
        Step("r", 18), Step("r", 9 * (t + 1)), Step("u", 9), Step("r", 9),
        Step("u", 9 * (t + 1)), Step("l", 18), Step("u", 18),
        Step("l", 9 * (t + 1)), Step("u", 9), Step("l", 18),
    ]
    return BoundaryWord(tuple(runs))


def _walk_jaw(n: int, t: int, with_features: bool) -> _Builder:
    """Trace the jaw word from its lower-left corner, counterclockwise."""
    b = _Builder()
    edge = 2 * (n - 1) * (t + 4) + 3

    def mouth(first_t: bool, slit: str):
        """Features of a (t+1)-run: T-dent at one end, deepers elsewhere."""
        if not with_features:
            return ()
        ex = {"slit": slit}
        if first_t:
            return [(0, FeatureKind.T_DENT, ex)] + [
                (j, FeatureKind.DEEPER_DENT, {"slit": slit, "bit": j})
                for j in range(1, t + 1)
            ]
        return [
            (j, FeatureKind.DEEPER_DENT, {"slit": slit, "bit": t - j})
            for j in range(0, t)
        ] + [(t, FeatureKind.T_DENT, ex)]

    def step_dent(slit: str):
        return [(0, FeatureKind.T_DENT, {"slit": slit})] if with_features else ()

    b.run("r", edge)
    b.run("u", 1, step_dent("A"))
    b.run("l", 1)
    for _ in range(n - 1):  # slit A lower wall, ascending northwest
        b.run("u", 1)
        b.run("l", t + 1, mouth(True, "A"))
        b.run("u", 2)
        b.run("l", 2)
        b.run("u", t + 1, mouth(False, "A"))
        b.run("l", 1)
    b.run("u", 2)
    b.run("r", 2)
    for _ in range(n - 1):  # slit A upper wall, descending southeast
        b.run("d", 1)
        b.run("r", t + 1, mouth(True, "A"))
        b.run("d", 2)
        b.run("r", 2)
        b.run("d", t + 1, mouth(False, "A"))
        b.run("r", 1)
    b.run("d", 1)
    b.run("r", 1, step_dent("A"))
    b.run("u", edge)
    b.run("l", edge)
    b.run("d", 1, step_dent("B"))
    for _ in range(n - 1):  # slit B northeast wall, descending southeast
        b.run("r", 1)
        b.run("d", 1)
        b.run("r", t + 1, mouth(True, "B"))
        b.run("d", 2)
        b.run("r", 2)
        b.run("d", t + 1, mouth(False, "B"))
    b.run("l", 1)
    b.run("d", 1)
    for _ in range(n - 1):  # slit B southwest wall, ascending northwest
        b.run("l", t + 1, mouth(True, "B"))
        b.run("u", 2)
        b.run("l", 2)
        b.run("u", t + 1, mouth(False, "B"))
        b.run("l", 1)
        b.run("u", 1)
    b.run("l", 1, step_dent("B"))
    b.run("d", edge)
    return b


def jaw_base_word(n: int, t: int) -> BoundaryWord:
    """Base word of the jaw, lower-left start, counterclockwise."""
    if n < 2 or t < 1:
        raise ValueError("need n >= 2 and t >= 1")
    return _walk_jaw(n, t, False).word()


def link_base_word(n: int, t: int) -> BoundaryWord:
    """Base word of the horizontal link: a (9L) x 9 rectangle."""
    if n < 2 or t < 1:
        raise ValueError("need n >= 2 and t >= 1")
    length = 2 * (n - 1) * (t + 4) + 1
    return BoundaryWord(
        (Step("d", 9), Step("r", 9 * length), Step("u", 9), Step("l", 9 * length))
    )


def _finish(builder: _Builder, role: str) -> BuiltTile:
    base = builder.word()
    shaped = substitute(base, FeaturePlan.of(builder.plan)) if builder.plan else base
    poly = word_to_polyomino(shaped, role)
    return BuiltTile(canonicalize(poly), shaped, poly.cells, tuple(builder.sites))


def _require_reducible(ts: WangTileSet) -> ReductionParams:
    params = ReductionParams(ts.n, ts.t)
    for tile in ts.tiles:
        for cid in (tile.north, tile.east, tile.south, tile.west):
            if cid >= (1 << params.t):
                raise ColorOverflowError(
                    f"color id {cid} of tile {tile.name!r} exceeds {params.t} bits"
                )
    return params


def build_meat_tile(ts: WangTileSet) -> BuiltTile:
    params = _require_reducible(ts)
    return _finish(_walk_meat(params.n, params.t, ts.tiles), ROLE_MEAT)


def build_jaw_tile(ts: WangTileSet) -> BuiltTile:
    params = _require_reducible(ts)
    return _finish(_walk_jaw(params.n, params.t, True), ROLE_JAW)


def build_filler_tile(ts: WangTileSet) -> BuiltTile:
    """The filler: one meat unit's base whose feature slots are all bumps."""
    params = _require_reducible(ts)
    t = params.t
    b = _Builder()
    DB = FeatureKind.DEEPER_BUMP
    wf = [(0, FeatureKind.T_BUMP, {})] + [(j, DB, {"bit": j}) for j in range(1, t + 1)]
    sf = [(j - 1, DB, {"bit": j}) for j in range(1, t + 1)] + [(t, FeatureKind.T_BUMP, {})]
    ef = [(0, FeatureKind.T_BUMP, {})] + [(t + 1 - j, DB, {"bit": j}) for j in range(1, t + 1)]
    nf = [(t - j, DB, {"bit": j}) for j in range(1, t + 1)] + [(t, FeatureKind.T_BUMP, {})]
    b.run("d", 1)
    b.run("d", 1)
    b.run("r", 1)
    b.run("d", t + 1, wf)
    b.run("r", 2)
    b.run("d", 2)
    b.run("r", t + 1, sf)
    b.run("u", 1)
    b.run("r", 1)
    b.run("u", t + 1, ef)
    b.run("l", 2)
    b.run("u", 2)
    b.run("l", t + 1, nf)
    b.run("u", 1)
    b.run("l", 1)
    b.run("l", 1)
    return _finish(b, ROLE_FILLER)


def build_link_tiles(ts: WangTileSet) -> tuple[BuiltTile, BuiltTile]:
    """Horizontal link and its quarter-turn, the vertical link."""
    params = _require_reducible(ts)
    b = _Builder()
    b.run("d", 1, [(0, FeatureKind.NORMAL_BUMP, {})])
    b.run("r", params.link_len)
    b.run("u", 1, [(0, FeatureKind.DEEPER_BUMP, {})])
    b.run("l", params.link_len)
    link_h = _finish(b, ROLE_LINK_H)

    word_v = rotate_word_cw(link_h.word)
    poly_v = word_to_polyomino(word_v, ROLE_LINK_V)
    sites_v = tuple(
        FeatureSite(s.kind, _rotate_side(s.side), frozenset(_rot_cells(s.cells)))
        for s in link_h.sites
    )
    link_v = BuiltTile(canonicalize(poly_v), word_v, poly_v.cells, sites_v)
    return link_h, link_v


def _rotate_side(side: Side) -> Side:
    order = [Side.NORTH, Side.EAST, Side.SOUTH, Side.WEST]
    return order[(order.index(side) + 1) % 4]


def _rot_cells(cells):
    return {(y, -x - 1) for x, y in cells}


def teeth() -> tuple[Polyomino, Polyomino, Polyomino]:
    """The three fixed teeth of Figure 7, canonical."""
    out = []
    for role, verts in (
        (ROLE_TOOTH1, TOOTH1_VERTICES),
        (ROLE_TOOTH2, TOOTH2_VERTICES),
        (ROLE_TOOTH3, TOOTH3_VERTICES),
    ):
        out.append(canonicalize(word_to_polyomino(vertices_to_word(verts), role)))
    return tuple(out)


def build_meat(ts: WangTileSet) -> Polyomino:
    return build_meat_tile(ts).poly


def build_jaw(ts: WangTileSet) -> Polyomino:
    return build_jaw_tile(ts).poly


def build_filler(ts: WangTileSet) -> Polyomino:
    return build_filler_tile(ts).poly


def build_links(ts: WangTileSet) -> tuple[Polyomino, Polyomino]:
    h, v = build_link_tiles(ts)
    return h.poly, v.poly


@dataclass(frozen=True)
class Reduction:
    """All eight tiles plus the bookkeeping the assembler relies on."""

    params: ReductionParams
    tile_set: WangTileSet
    meat: BuiltTile
    jaw: BuiltTile
    filler: BuiltTile
    link_h: BuiltTile
    link_v: BuiltTile
    tooth1: Polyomino = field(default=None)
    tooth2: Polyomino = field(default=None)
    tooth3: Polyomino = field(default=None)

    def tiles(self) -> dict[str, Polyomino]:
        return {
            ROLE_MEAT: self.meat.poly,
            ROLE_JAW: self.jaw.poly,
            ROLE_FILLER: self.filler.poly,
            ROLE_TOOTH1: self.tooth1,
            ROLE_TOOTH2: self.tooth2,
            ROLE_TOOTH3: self.tooth3,
            ROLE_LINK_H: self.link_h.poly,
            ROLE_LINK_V: self.link_v.poly,
        }


def reduce_set(ts: WangTileSet) -> Reduction:
    """Build all eight polyominoes for a Wang tile set (n >= 2)."""
    params = _require_reducible(ts)
    t1, t2, t3 = teeth()
    link_h, link_v = build_link_tiles(ts)
    return Reduction(
        params=params,
        tile_set=ts,
        meat=build_meat_tile(ts),
        jaw=build_jaw_tile(ts),
        filler=build_filler_tile(ts),
        link_h=link_h,
        link_v=link_v,
        tooth1=t1,
        tooth2=t2,
        tooth3=t3,
    )


def manifest(red: Reduction) -> str:
    """Human- and machine-readable summary of a reduction."""
    p = red.params
    lines = [
        f"n: {p.n}",
        f"t: {p.t}",
        f"unit-blocks: {p.unit}",
        f"link-blocks: {p.link_len}",
        f"period-blocks: {p.period}",
        f"jaw-blocks: {p.jaw_side}",
        f"meat-blocks: {p.meat_side}",
    ]
    for role, poly in sorted(red.tiles().items()):
        _, _, w, h = poly.bbox()
        lines.append(f"tile {role}: cells={len(poly)} bbox={w}x{h}")
    lines.append("feature-frozen: unit runs carry T-bump beside the single step,")
    lines.append("  color dents beside the double corner; jaw mouths mirror this")
    lines.append("  and add one T-dent on each of the four slit-opening steps.")
    lines.append("link-shift: a link slides one cell toward its normal-bump end")
    lines.append("  when the connected bit is 0 (both facing dents swap depth).")
    return "\n".join(lines) + "\n"
