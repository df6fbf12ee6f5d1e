"""Bump and dent vocabulary: feature words, substitution, color encoding.

Every feature is transcribed once for a north side (an l-run traversed
westward, host body below) and rotated to the other sides.  A feature
word replaces one 9-cell block of a straight run and has the same net
displacement, so substitution preserves closure.

Shapes, for a north side (cells relative to the block, replaced run
from (9, 0) to (0, 0)):

  T-bump      adds a sideways T above the edge: bar of 3 plus one stem cell.
  T-dent      removes the mirror-image T below the edge.
  normal dent removes a 16-cell cavity, maximum depth 4.
  deeper dent removes a 25-cell cavity, maximum depth 5: the normal
              cavity pushed one row deeper, under a full 9-cell row.
  bumps       normal/deeper plugs: the dent cavities mirrored above the
              edge, used by the links and the filler.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BlockNotOnSideError,
    CavitiesDisjointError,
    ColorOverflowError,
    OverlappingFeaturesError,
    ResultSelfIntersectsError,
)
from .grid import (
    BoundaryWord,
    cancel_backtracks,
    Polyomino,
    Step,
    canonicalize,
    rotate_word_cw,
    word,
    word_to_polyomino,
)


class FeatureKind(enum.Enum):
    T_BUMP = "t-bump"
    T_DENT = "t-dent"
    NORMAL_DENT = "normal-dent"
    DEEPER_DENT = "deeper-dent"
    NORMAL_BUMP = "normal-bump"
    DEEPER_BUMP = "deeper-bump"


class Side(enum.Enum):
    NORTH = "north"
    EAST = "east"
    SOUTH = "south"
    WEST = "west"


# In a ccw word the run direction determines the side it bounds.
RUN_SIDE = {"l": Side.NORTH, "r": Side.SOUTH, "d": Side.WEST, "u": Side.EAST}

# Number of cw rotations taking a north-side word to each side.
_SIDE_TURNS = {Side.NORTH: 0, Side.EAST: 1, Side.SOUTH: 2, Side.WEST: 3}

# North-side source words.  T-bump and both dents are fixed by the
# construction; the T-dent is the bump mirrored into the host, and each
# bump is its dent mirrored out of the host (swap u and d).
_NORTH_WORDS = {
    FeatureKind.T_BUMP: "l4 u1 r1 u1 l1 u1 l1 d3 l4",
    FeatureKind.T_DENT: "l4 d3 l1 u1 l1 u1 r1 u1 l4",
    FeatureKind.NORMAL_DENT: "d1 l1 u1 l1 d2 l2 d1 r1 d1 l3 u1 r1 u1 l2 u2 l1 d1 l1 u1",
    FeatureKind.DEEPER_DENT: "d2 l1 u1 l1 d2 l2 d1 r1 d1 l3 u1 r1 u1 l2 u2 l1 d1 l1 u2",
    FeatureKind.NORMAL_BUMP: "u1 l1 d1 l1 u2 l2 u1 r1 u1 l3 d1 r1 d1 l2 d2 l1 u1 l1 d1",
    FeatureKind.DEEPER_BUMP: "u2 l1 d1 l1 u2 l2 u1 r1 u1 l3 d1 r1 d1 l2 d2 l1 u1 l1 d2",
}

BUMP_KINDS = frozenset(
    {FeatureKind.T_BUMP, FeatureKind.NORMAL_BUMP, FeatureKind.DEEPER_BUMP}
)
DENT_KINDS = frozenset(
    {FeatureKind.T_DENT, FeatureKind.NORMAL_DENT, FeatureKind.DEEPER_DENT}
)


def feature_word(kind: FeatureKind, side: Side) -> BoundaryWord:
    """The boundary word replacing one 9-block of the given side."""
    w = word(_NORTH_WORDS[kind])
    for _ in range(_SIDE_TURNS[side]):
        w = rotate_word_cw(w)
    return w


def tbump_word(side: Side) -> BoundaryWord:
    return feature_word(FeatureKind.T_BUMP, side)


def dent_word(kind: FeatureKind, side: Side) -> BoundaryWord:
    if kind not in (FeatureKind.NORMAL_DENT, FeatureKind.DEEPER_DENT):
        raise ValueError(f"{kind} is not a color dent")
    return feature_word(kind, side)


# Host-square bookkeeping for feature_delta: run index of each side in the
# ccw square word "r27 u27 l27 d27", and the translation taking the middle
# block of that side to the feature word's own frame (anchored at the
# block's traversal start vertex).
_HOST_RUN = {Side.SOUTH: 0, Side.EAST: 1, Side.NORTH: 2, Side.WEST: 3}
_HOST_SHIFT = {
    Side.NORTH: (-9, -27),
    Side.SOUTH: (-18, 0),
    Side.EAST: (-27, -18),
    Side.WEST: (0, -9),
}
_delta_cache: dict[tuple[FeatureKind, Side], frozenset[tuple[int, int]]] = {}


def feature_delta(kind: FeatureKind, side: Side) -> frozenset[tuple[int, int]]:
    """Cells a feature adds (bumps) or removes (dents), in block frame.

    The block frame anchors the replaced 9-run at its traversal start:
    the north run goes from (9, 0) to (0, 0) with host cells below the
    edge, and the other sides are clockwise rotations of that picture.
    """
    key = (kind, side)
    if key not in _delta_cache:
        host = word("r27 u27 l27 d27")
        plan = FeaturePlan.of([(_HOST_RUN[side], 1, kind, side)])
        shaped = word_to_polyomino(substitute(host, plan))
        square = word_to_polyomino(host)
        delta = shaped.cells ^ square.cells
        sx, sy = _HOST_SHIFT[side]
        _delta_cache[key] = frozenset((x + sx, y + sy) for x, y in delta)
    return _delta_cache[key]


@dataclass(frozen=True)
class PlanEntry:
    run_index: int
    block_index: int
    kind: FeatureKind
    side: Side


@dataclass(frozen=True)
class FeaturePlan:
    entries: tuple[PlanEntry, ...]

    def __post_init__(self):
        seen = set()
        for e in self.entries:
            key = (e.run_index, e.block_index)
            if key in seen:
                raise OverlappingFeaturesError(f"duplicate target {key}")
            seen.add(key)

    @classmethod
    def of(cls, entries: Iterable[tuple[int, int, FeatureKind, Side]]) -> "FeaturePlan":
        return cls(tuple(PlanEntry(*e) for e in entries))


def substitute(base: BoundaryWord, plan: FeaturePlan) -> BoundaryWord:
    """Replace targeted 9-cell blocks of the base word with feature words."""
    base.require_simple_closed()
    by_run: dict[int, list[PlanEntry]] = {}
    for e in plan.entries:
        by_run.setdefault(e.run_index, []).append(e)
    out: list[Step] = []
    for idx, run in enumerate(base.steps):
        targets = sorted(by_run.pop(idx, []), key=lambda e: e.block_index)
        if not targets:
            out.append(run)
            continue
        side = RUN_SIDE[run.direction]
        pos = 0  # units consumed within this run
        for e in targets:
            lo = 9 * e.block_index
            if e.side is not side:
                raise BlockNotOnSideError(
                    f"run {idx} lies on {side.value}, plan entry says {e.side.value}"
                )
            if lo + 9 > run.count or lo < 0:
                raise BlockNotOnSideError(
                    f"block {e.block_index} outside run of {run.count} cells"
                )
            if lo > pos:
                out.append(Step(run.direction, lo - pos))
            out.extend(feature_word(e.kind, side).steps)
            pos = lo + 9
        if pos < run.count:
            out.append(Step(run.direction, run.count - pos))
    if by_run:
        raise BlockNotOnSideError(f"plan targets missing runs {sorted(by_run)}")
    # Adjacent features with full-width cavities (or bumps) merge; cancel
    # the zero-width seam walls before validating.
    result = cancel_backtracks(BoundaryWord(tuple(out)))
    if not result.is_closed():
        raise ResultSelfIntersectsError("substitution broke closure")
    if not result.is_simple():
        raise ResultSelfIntersectsError("substitution produced a self-intersection")
    return result


def encode_color(color_id: int, t: int) -> tuple[int, ...]:
    """Big-endian binary of the color id, padded to t bits."""
    if color_id >= (1 << t):
        raise ColorOverflowError(f"color id {color_id} needs more than {t} bits")
    return tuple((color_id >> (t - 1 - i)) & 1 for i in range(t))


def dent_sequence(bits: Sequence[int], side: Side) -> list[FeatureKind]:
    """Dent kinds for a bit vector, in reading order.

    Reading order is west to east on horizontal sides and north to south
    on vertical sides.  A normal dent means 0 on the north and west
    sides and 1 on the south and east sides; the deeper dent is the
    reverse.
    """
    zero_is_normal = side in (Side.NORTH, Side.WEST)
    out = []
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bad bit {b!r}")
        normal = (b == 0) == zero_is_normal
        out.append(FeatureKind.NORMAL_DENT if normal else FeatureKind.DEEPER_DENT)
    return out


def decode_dent(kind: FeatureKind, side: Side) -> int:
    """Inverse of dent_sequence for a single dent."""
    zero_is_normal = side in (Side.NORTH, Side.WEST)
    if kind is FeatureKind.NORMAL_DENT:
        return 0 if zero_is_normal else 1
    if kind is FeatureKind.DEEPER_DENT:
        return 1 if zero_is_normal else 0
    raise ValueError(f"{kind} is not a color dent")


class Axis(enum.Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"


def facing_hole(
    a: FeatureKind,
    b: FeatureKind,
    axis: Axis = Axis.VERTICAL,
    lateral_offset: int = 0,
) -> Polyomino:
    """Union of two dent cavities opening toward each other across an edge.

    For the vertical axis, a is carved downward into the south host (a
    north-side dent) and b upward into the north host (a south-side
    dent) along the same 9-cell block; for the horizontal axis, a is an
    east-side dent of the west host and b a west-side dent of the east
    host.  The lateral offset slides b's block along the shared edge.
    """
    for kind in (a, b):
        if kind not in (FeatureKind.NORMAL_DENT, FeatureKind.DEEPER_DENT):
            raise ValueError(f"{kind} is not a color dent")
    # Shift b's canonical block onto a's so both cavities share the same
    # 9-cell span of the common edge, then apply the lateral offset.
    if axis is Axis.VERTICAL:
        ca = feature_delta(a, Side.NORTH)
        cb = {(x + 9 + lateral_offset, y) for x, y in feature_delta(b, Side.SOUTH)}
    else:
        ca = feature_delta(a, Side.EAST)
        cb = {(x, y - 9 + lateral_offset) for x, y in feature_delta(b, Side.WEST)}
    hole = Polyomino.of(set(ca) | set(cb))
    if len(hole) != len(ca) + len(cb) or not hole.is_connected():
        raise CavitiesDisjointError(
            f"cavities at lateral offset {lateral_offset} do not form one hole"
        )
    return canonicalize(hole)
