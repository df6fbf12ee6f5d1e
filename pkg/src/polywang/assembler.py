"""Assembly of the periodic tiling pattern and the local lemma checks.

The pattern places one jaw per lattice cell at pitch P blocks, one meat
per lattice corner whose diagonal offset selects the exposed simulated
tile, and one link per color bit in every inter-jaw channel.  What is
left uncovered is, by construction, a disjoint union of translated
fillers and teeth; the assembler matches each residual hole by shape,
which certifies every frozen feature constant at once.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .engine import PatternTiling, Placement, Region, RegionKind
from .errors import (
    MalformedPatternError,
    ResidualHoleUnmatchedError,
    WangTilingInvalidError,
)
from .features import Axis, FeatureKind, Side, dent_sequence, encode_color, feature_delta
from .grid import Polyomino, canonicalize
from .reduction import (
    ROLE_FILLER,
    ROLE_JAW,
    ROLE_LINK_H,
    ROLE_LINK_V,
    ROLE_MEAT,
    ROLE_TOOTH1,
    ROLE_TOOTH2,
    ROLE_TOOTH3,
    Reduction,
    reduce_set,
)
from .wang import WangTileSet, WangTorusTiling, check_torus


def _meat_origin(params, i: int, j: int, k: int) -> tuple[int, int]:
    """Word-frame origin (upper-left corner) of the meat exposing unit k."""
    P, U, t = params.period, params.unit, params.t
    return (
        9 * (P * i + P - t - 3 - U * (k - 1)),
        9 * (P * j + P + 3 + U * (k - 1)),
    )


def _bit_of(color_id: int, t: int, b: int) -> int:
    return encode_color(color_id, t)[b - 1]


def assemble_pattern(
    ts: WangTileSet,
    tiling: WangTorusTiling,
    red: Optional[Reduction] = None,
) -> PatternTiling:
    """Compile a valid Wang torus tiling into a verified polyomino tiling."""
    if red is None:
        red = reduce_set(ts)
    if not check_torus(ts, tiling):
        raise WangTilingInvalidError("input tiling violates an edge constraint")
    params = red.params
    P, U, t, L = params.period, params.unit, params.t, params.link_len
    p, q = tiling.p, tiling.q
    W, H = 9 * P * p, 9 * P * q
    region = Region(RegionKind.TORUS, W, H)

    placements: list[Placement] = []
    covered = np.zeros((H, W), dtype=np.int8)

    # Placement records carry the canonical-tile translation; compute it from
    # the word-frame origin and the tile's word-frame minimum corner.
    def add(role: str, built, origin: tuple[int, int]):
        mx, my = built.word_min
        v = ((origin[0] + mx) % W, (origin[1] + my) % H)
        xs = np.fromiter((c[0] for c in built.cells), dtype=np.int64)
        ys = np.fromiter((c[1] for c in built.cells), dtype=np.int64)
        xs = (xs + origin[0]) % W
        ys = (ys + origin[1]) % H
        np.add.at(covered, (ys, xs), 1)
        placements.append(Placement(role, v[0], v[1]))

    for j in range(q):
        for i in range(p):
            add(ROLE_JAW, red.jaw, (9 * P * i, 9 * P * j))
    for j in range(q):
        for i in range(p):
            k = tiling.at(i, j) + 1  # simulated units are 1-based
            origin = _meat_origin(params, i, j, k)
            add(ROLE_MEAT, red.meat, origin)
            # A filler is the meat's single-unit base: one sits at every
            # "virtual unit" position of the staircase beyond the real
            # units, filling the jaw slots the meat leaves empty.
            for m in range(k - params.n + 1, k + params.n):
                if 1 <= m <= params.n:
                    continue
                shift = 9 * U * (m - 1)
                add(ROLE_FILLER, red.filler, (origin[0] + shift, origin[1] - shift))
    for j in range(q):
        for i in range(p):
            tile = ts.tiles[tiling.at(i, j)]
            for b in range(1, t + 1):
                bit = _bit_of(tile.east, t, b)
                ox = 9 * (P * i + P + 2) + (0 if bit == 1 else -1)
                oy = 9 * (P * j + P + 1 - b)
                add(ROLE_LINK_H, red.link_h, (ox, oy))
            for b in range(1, t + 1):
                bit = _bit_of(tile.north, t, b)
                ox = 9 * (P * i + P - t - 1 + b) + 9
                oy = 9 * (P * j + P + 2) + (0 if bit == 1 else 1) + 9 * L
                add(ROLE_LINK_V, red.link_v, (ox, oy))

    if covered.max() > 1:
        ys, xs = np.nonzero(covered > 1)
        raise MalformedPatternError(
            f"big tiles overlap at cell ({int(xs[0])}, {int(ys[0])})"
        )

    # What remains uncovered must be teeth.  Adjacent deeper cavities share
    # their full-width first row, so teeth on the same color run merge into
    # one component; each component is decomposed by exact cover over the
    # three tooth shapes.
    shapes = {
        ROLE_TOOTH1: red.tooth1.cells,
        ROLE_TOOTH2: red.tooth2.cells,
        ROLE_TOOTH3: red.tooth3.cells,
    }
    hole_placements = []
    for seed, lifted in _residual_components(covered):
        pieces = _match_component(frozenset(lifted), shapes)
        if pieces is None:
            raise ResidualHoleUnmatchedError(
                f"residual hole of {len(lifted)} cells near {seed} is not "
                "a union of teeth"
            )
        for role, (ox, oy) in pieces:
            v = ((seed[0] + ox) % W, (seed[1] + oy) % H)
            hole_placements.append(Placement(role, v[0], v[1]))
    hole_placements.sort(key=lambda pl: (pl.role, pl.dy, pl.dx))
    placements.extend(hole_placements)
    return PatternTiling(region, tuple(placements))


def _match_component(component: frozenset, shapes: dict) -> Optional[list]:
    """Partition a residual component into translated shape copies."""
    if not component:
        return []
    target = min(component)
    for role in sorted(shapes):
        cells = shapes[role]
        for ox, oy in cells:
            dx, dy = target[0] - ox, target[1] - oy
            moved = frozenset((x + dx, y + dy) for x, y in cells)
            if moved <= component:
                rest = _match_component(component - moved, shapes)
                if rest is not None:
                    return [(role, (dx, dy))] + rest
    return None


def _residual_components(covered: np.ndarray):
    """Connected components of uncovered cells, in lifted coordinates.

    Components may wrap around the torus; each cell is reported relative
    to the component's seed so the shape is meaningful.  Yields pairs of
    (seed cell, set of lifted offsets).
    """
    H, W = covered.shape
    seen = np.array(covered, dtype=bool)
    out = []
    ys, xs = np.nonzero(~seen)
    order = sorted(zip(ys.tolist(), xs.tolist()))
    for sy, sx in order:
        if seen[sy, sx]:
            continue
        seen[sy, sx] = True
        comp = [(0, 0)]
        stack = [(0, 0)]
        while stack:
            lx, ly = stack.pop()
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nx, ny = lx + dx, ly + dy
                tx, ty = (sx + nx) % W, (sy + ny) % H
                if not seen[ty, tx]:
                    seen[ty, tx] = True
                    comp.append((nx, ny))
                    stack.append((nx, ny))
        out.append(((sx, sy), comp))
    return out


def extract_wang(
    ts: WangTileSet,
    pattern: PatternTiling,
    red: Optional[Reduction] = None,
) -> WangTorusTiling:
    """Recover the Wang tiling from meat anchors of an assembled pattern."""
    if red is None:
        red = reduce_set(ts)
    params = red.params
    P, U, t = params.period, params.unit, params.t
    W, H = pattern.region.width, pattern.region.height
    if W % (9 * P) or H % (9 * P):
        raise MalformedPatternError("region is not a multiple of the lattice pitch")
    p, q = W // (9 * P), H // (9 * P)
    mx, my = red.meat.word_min
    grid = [[-1] * p for _ in range(q)]
    for pl in pattern.placements:
        if pl.role != ROLE_MEAT:
            continue
        wx, wy = pl.dx - mx, pl.dy - my  # word-frame origin, modulo the torus
        if wx % 9 or wy % 9:
            raise MalformedPatternError(f"meat anchor {pl} off the 9-cell grid")
        X, Y = (wx // 9) % (P * p), (wy // 9) % (P * q)
        ox = X % P
        num = P - t - 3 - ox
        if num % U or not 0 <= num // U < params.n:
            raise MalformedPatternError(f"meat anchor {pl} off the staircase lattice")
        k = num // U + 1
        oy = (3 + U * (k - 1)) % P
        if Y % P != oy:
            raise MalformedPatternError(f"meat anchor {pl} has inconsistent x and y")
        i = (X - ox) // P % p
        j = ((Y - oy) // P - 1) % q
        if grid[j][i] != -1:
            raise MalformedPatternError(f"two meats claim lattice corner {(i, j)}")
        grid[j][i] = k - 1
    if any(v == -1 for row in grid for v in row):
        raise MalformedPatternError("missing meat for some lattice corner")
    tiling = WangTorusTiling(p, q, tuple(tuple(row) for row in grid))
    if not check_torus(ts, tiling):
        raise WangTilingInvalidError("extracted grid violates an edge constraint")
    return tiling


def enumerate_meat_jaw_offsets(
    ts: WangTileSet, red: Optional[Reduction] = None
) -> list[tuple[int, int]]:
    """All translations seating the meat against one jaw mouth.

    The jaw sits in canonical position; a translation of the canonical
    meat is valid when the two tiles do not overlap and every meat
    T-bump inside the jaw's bounding box plugs a T-dent of the jaw's
    southeast mouth (counting against one mouth keeps the two symmetric
    roles of the jaw from double-counting the same engagement).
    Returns exactly n collinear offsets at pitch unit blocks.
    """
    if red is None:
        red = reduce_set(ts)
    jaw_cells = red.jaw.cells  # word frame is canonical for the jaw
    side = 9 * red.params.jaw_side
    dents = [s for s in red.jaw.sites if s.kind is FeatureKind.T_DENT]
    bumps = [s for s in red.meat.sites if s.kind is FeatureKind.T_BUMP]
    dent_lookup = {}
    for s in dents:
        dent_lookup[s.cells] = s.slit

    candidates = set()
    for d in dents:
        dmin = min(d.cells)
        for b in bumps:
            bmin = min(b.cells)
            candidates.add((dmin[0] - bmin[0], dmin[1] - bmin[1]))

    valid = []
    for ox, oy in sorted(candidates):
        moved = frozenset((x + ox, y + oy) for x, y in red.meat.cells)
        if not moved.isdisjoint(jaw_cells):
            continue
        engaged = []
        ok = True
        for b in bumps:
            cells = frozenset((x + ox, y + oy) for x, y in b.cells)
            inside = any(0 <= x < side and 0 <= y < side for x, y in cells)
            if not inside:
                continue
            slit = dent_lookup.get(cells)
            if slit is None:
                ok = False
                break
            engaged.append(slit)
        if ok and engaged and all(s == "A" for s in engaged):
            mx, my = red.meat.word_min
            valid.append((ox + mx, oy + my))
    return sorted(valid)


class DeadEndResult(enum.Enum):
    DEAD_END = "dead-end"
    INCONCLUSIVE = "inconclusive"


@dataclass
class _Board:
    """Bitboard window for the bounded dead-end search."""

    width: int
    height: int

    def index(self, x: int, y: int) -> int:
        return y * self.width + x

    def mask(self, cells, dx: int, dy: int) -> Optional[int]:
        m = 0
        for x, y in cells:
            px, py = x + dx, y + dy
            if not (0 <= px < self.width and 0 <= py < self.height):
                return None
            m |= 1 << self.index(px, py)
        return m


def dead_end_check(
    ts: WangTileSet,
    radius: int,
    red: Optional[Reduction] = None,
    node_budget: int = 500_000,
) -> DeadEndResult:
    """Bounded proof that teeth, links, and filler alone cannot continue.

    Seeds each tooth in an empty plane and exhaustively extends with
    translated copies of the six jawless, meatless tiles, always
    covering the first uncovered cell touching the placed cluster.
    DEAD_END means every branch reached an uncoverable cell while cells
    inside the given Chebyshev radius remained uncovered; INCONCLUSIVE
    means some branch covered the whole window (or the node budget ran
    out), so the bounded argument proves nothing.
    """
    if radius < 10:
        raise ValueError("radius must be >= 10")
    if red is None:
        red = reduce_set(ts)
    tiles = [
        red.tooth1.cells,
        red.tooth2.cells,
        red.tooth3.cells,
        red.link_h.poly.cells,
        red.link_v.poly.cells,
        red.filler.poly.cells,
    ]
    margin = max(
        max(max(x for x, _ in c), max(y for _, y in c)) + 1 for c in tiles
    )
    # A dead verdict on a small disk certifies every larger radius: a
    # configuration that cannot even cover the small disk cannot cover a
    # bigger one.  Growing the disk only when the small search escapes
    # keeps the tree anchored to the seed's neighbourhood.
    schedule = [r for r in (10, 14, 20, 26) if r < radius] + [radius]
    for seed in (red.tooth1, red.tooth2, red.tooth3):
        if not any(
            _seed_dead_ends(seed.cells, tiles, r, margin, node_budget)
            for r in schedule
        ):
            return DeadEndResult.INCONCLUSIVE
    return DeadEndResult.DEAD_END


def _seed_dead_ends(seed_cells, tiles, radius, margin, node_budget) -> bool:
    sx0, sy0, sw, sh = Polyomino(frozenset(seed_cells)).bbox()
    cx, cy = sx0 + sw // 2, sy0 + sh // 2
    # Window holds the disk plus any tile overhang.
    ox, oy = cx - radius - margin, cy - radius - margin
    W = H = 2 * (radius + margin) + 1
    board = _Board(W, H)

    disk = 0
    for y in range(cy - radius, cy + radius + 1):
        row = board.index(0, y - oy)
        for x in range(cx - radius, cx + radius + 1):
            disk |= 1 << (row + x - ox)

    # Per tile: base mask at the canonical anchor (one shift per placement)
    # and cells grouped by their in-tile neighbour profile, so that at a
    # pocket only cells that keep the tile away from covered neighbours
    # are ever tried.  Bits: 1 east, 2 west, 4 north, 8 south.
    base = []
    for cells in tiles:
        bmask = board.mask(cells, 0, 0)
        tw = max(x for x, _ in cells) + 1
        th = max(y for _, y in cells) + 1
        groups: dict[int, list] = {}
        for x, y in sorted(cells):
            prof = (
                ((x + 1, y) in cells)
                | ((x - 1, y) in cells) << 1
                | ((x, y + 1) in cells) << 2
                | ((x, y - 1) in cells) << 3
            )
            groups.setdefault(prof, []).append((x, y))
        base.append((bmask, tw, th, groups))
    placed0 = board.mask(seed_cells, -ox, -oy)
    assert placed0 is not None

    nodes = 0

    def pick_target(placed: int) -> int:
        """Most-walled uncovered disk cell next to the cluster, or -1.

        Concave pockets are where the local contradictions show up, so
        cells with three or four covered neighbours are tried first;
        this keeps the branching factor near the paper's local argument
        instead of fanning out over open boundary.  Row-wrap bleed from
        the shifts lands outside the disk, so it is harmless.
        """
        e = placed >> 1
        w = placed << 1
        n = placed >> W
        s = placed << W
        open_cells = disk & ~placed
        c4 = e & w & n & s
        c3 = (e & w & n) | (e & w & s) | (e & n & s) | (w & n & s)
        c2 = (e & w) | (e & n) | (e & s) | (w & n) | (w & s) | (n & s)
        c1 = e | w | n | s
        for cls in (c4, c3, c2, c1):
            m = cls & open_cells
            if m:
                return (m & -m).bit_length() - 1
        return -1

    def search(placed: int) -> bool:
        """True if every continuation dead-ends inside the window."""
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            return False
        target = pick_target(placed)
        if target < 0:
            return False  # disk fully covered: escape found
        ty, tx = divmod(target, W)
        covered_dirs = (
            (placed >> (target + 1)) & 1
            | ((placed >> (target - 1)) & 1) << 1
            | ((placed >> (target + W)) & 1) << 2
            | ((placed >> (target - W)) & 1) << 3
        )
        for bmask, tw, th, groups in base:
            for prof, cells in groups.items():
                if prof & covered_dirs:
                    continue
                for cellx, celly in cells:
                    dx, dy = tx - cellx, ty - celly
                    if not (0 <= dx <= W - tw and 0 <= dy <= H - th):
                        continue
                    m = bmask << (dy * W + dx)
                    if m & placed:
                        continue
                    if not search(placed | m):
                        return False
        return True  # nothing covers the target cell, or all branches died

    return search(placed0)


def link_color_gate(
    ts: WangTileSet,
    color_a: int,
    color_b: int,
    axis: Axis | str,
    red: Optional[Reduction] = None,
) -> bool:
    """True iff a link can seal the channel between two facing color groups.

    For the vertical axis, color_a reads off the south meat's north side
    and color_b off the north meat's south side (horizontal: east side
    against west side).  Bit columns are independent, so the gate holds
    exactly when one vertical link fits each bit's strip, dent cavities
    included; by the depth-swap encoding that happens iff the colors are
    equal.
    """
    if red is None:
        red = reduce_set(ts)
    t, L = red.params.t, red.params.link_len
    axis_name = axis.value if isinstance(axis, Axis) else str(axis)
    vertical = axis_name in ("vertical", "v")
    bits_a = encode_color(color_a, t)
    bits_b = encode_color(color_b, t)
    for b in range(t):
        if vertical:
            ka = dent_sequence([bits_a[b]], Side.NORTH)[0]
            kb = dent_sequence([bits_b[b]], Side.SOUTH)[0]
        else:
            ka = dent_sequence([bits_a[b]], Side.EAST)[0]
            kb = dent_sequence([bits_b[b]], Side.WEST)[0]
        if not _link_fits(red, ka, kb, vertical, L):
            return False
    return True


def _link_fits(red: Reduction, ka, kb, vertical: bool, L: int) -> bool:
    """Exact fill of one bit strip by the link at some small slide."""
    if vertical:
        region = {(x, y) for x in range(9) for y in range(9 * L)}
        region |= set(feature_delta(ka, Side.NORTH))
        region |= {(x + 9, y + 9 * L) for x, y in feature_delta(kb, Side.SOUTH)}
        cells = red.link_v.cells  # word frame: base x in [-9,0), y in [-9L,0)
        for s in range(-2, 3):
            placed = {(x + 9, y + 9 * L + s) for x, y in cells}
            if placed == region:
                return True
    else:
        region = {(x, y) for x in range(9 * L) for y in range(-9, 0)}
        region |= set(feature_delta(ka, Side.EAST))
        region |= {(x + 9 * L, y - 9) for x, y in feature_delta(kb, Side.WEST)}
        cells = red.link_h.cells  # word frame: base x in [0,9L), y in [-9,0)
        for s in range(-2, 3):
            placed = {(x + s, y) for x, y in cells}
            if placed == region:
                return True
    return False
