"""Integer-lattice geometry: boundary words, cell sets, and transforms.

Coordinates follow the mathematical convention: y grows northward.  A
boundary word is a run-length sequence of unit steps over {u, d, l, r}
traced counterclockwise, so the interior always lies on the left of the
walk.  That fixes a side for every run direction: l-runs are north
sides, r-runs south, d-runs west, u-runs east.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import FormatError, NotClosedError, SelfIntersectingError

DIRECTIONS = "udlr"
DIR_VECTORS = {"u": (0, 1), "d": (0, -1), "l": (-1, 0), "r": (1, 0)}
# One clockwise quarter turn of the traced shape.
DIR_CW = {"u": "r", "r": "d", "d": "l", "l": "u"}
DIR_OPPOSITE = {"u": "d", "d": "u", "l": "r", "r": "l"}

Cell = tuple[int, int]

_STEP_RE = re.compile(r"([udlr])(\d+)$")


@dataclass(frozen=True)
class Step:
    direction: str
    count: int

    def __post_init__(self):
        if self.direction not in DIR_VECTORS:
            raise ValueError(f"bad direction {self.direction!r}")
        if self.count < 1:
            raise ValueError("step count must be >= 1")

    def __str__(self):
        return f"{self.direction}{self.count}"


@dataclass(frozen=True)
class BoundaryWord:
    steps: tuple[Step, ...]

    @classmethod
    def parse(cls, text: str) -> "BoundaryWord":
        """Parse whitespace-separated <dir><count> tokens, e.g. 'r9 u9 l9 d9'."""
        steps = []
        for token in text.split():
            m = _STEP_RE.match(token)
            if not m:
                raise FormatError(f"bad boundary word token {token!r}")
            steps.append(Step(m.group(1), int(m.group(2))))
        if not steps:
            raise FormatError("empty boundary word")
        return cls(tuple(steps))

    def __str__(self):
        return " ".join(str(s) for s in self.steps)

    def __add__(self, other: "BoundaryWord") -> "BoundaryWord":
        return BoundaryWord(self.steps + other.steps)

    def __mul__(self, k: int) -> "BoundaryWord":
        return BoundaryWord(self.steps * k)

    def unit_steps(self) -> Iterator[str]:
        for step in self.steps:
            for _ in range(step.count):
                yield step.direction

    def total_length(self) -> int:
        return sum(s.count for s in self.steps)

    def vertices(self, start: Cell = (0, 0)) -> list[Cell]:
        """All lattice points visited, start first and (if closed) last."""
        x, y = start
        out = [(x, y)]
        for d in self.unit_steps():
            dx, dy = DIR_VECTORS[d]
            x, y = x + dx, y + dy
            out.append((x, y))
        return out

    def closure(self) -> tuple[int, int]:
        """Signed net displacement; (0, 0) iff the word closes."""
        dx = dy = 0
        for step in self.steps:
            vx, vy = DIR_VECTORS[step.direction]
            dx += vx * step.count
            dy += vy * step.count
        return dx, dy

    def is_closed(self) -> bool:
        return self.closure() == (0, 0)

    def is_simple(self) -> bool:
        """True if no lattice vertex is visited twice (start excepted)."""
        verts = self.vertices()
        if verts[0] == verts[-1]:
            verts = verts[:-1]
        return len(verts) == len(set(verts))

    def require_simple_closed(self):
        if not self.is_closed():
            raise NotClosedError(f"net displacement {self.closure()}")
        if not self.is_simple():
            raise SelfIntersectingError("boundary path revisits a vertex")

    def normalized(self) -> "BoundaryWord":
        """Merge adjacent runs that share a direction."""
        merged: list[Step] = []
        for step in self.steps:
            if merged and merged[-1].direction == step.direction:
                merged[-1] = Step(step.direction, merged[-1].count + step.count)
            else:
                merged.append(step)
        # A closed word may also wrap around (last run same dir as first).
        if len(merged) > 1 and merged[0].direction == merged[-1].direction:
            pass  # keep the seam; callers relying on run indices need it stable
        return BoundaryWord(tuple(merged))

    def reversed(self) -> "BoundaryWord":
        """Same curve traced the other way (cw <-> ccw)."""
        return BoundaryWord(
            tuple(Step(DIR_OPPOSITE[s.direction], s.count) for s in reversed(self.steps))
        )


def word(text: str) -> BoundaryWord:
    return BoundaryWord.parse(text)


def cancel_backtracks(w: BoundaryWord) -> BoundaryWord:
    """Drop zero-width fingers: unit steps immediately undone by their inverse.

    Substituting features into adjacent blocks can leave the seam wall
    between two merging cavities traced out and straight back; the
    enclosed region is unchanged, so the degenerate wall is removed to
    recover the true simple boundary.
    """
    stack: list[str] = []
    for d in w.unit_steps():
        if stack and stack[-1] == DIR_OPPOSITE[d]:
            stack.pop()
        else:
            stack.append(d)
    if not stack:
        raise NotClosedError("word cancels away entirely")
    runs: list[Step] = []
    for d in stack:
        if runs and runs[-1].direction == d:
            runs[-1] = Step(d, runs[-1].count + 1)
        else:
            runs.append(Step(d, 1))
    return BoundaryWord(tuple(runs))


def word_closure(w: BoundaryWord) -> tuple[int, int]:
    return w.closure()


def rotate_word_cw(w: BoundaryWord) -> BoundaryWord:
    """Rotate the traced shape 90 degrees clockwise (u->r->d->l->u)."""
    return BoundaryWord(tuple(Step(DIR_CW[s.direction], s.count) for s in w.steps))


def shoelace_area(w: BoundaryWord) -> int:
    """Signed enclosed area in unit cells; positive iff counterclockwise."""
    if not w.is_closed():
        raise NotClosedError(f"net displacement {w.closure()}")
    area2 = 0
    x, y = 0, 0
    for d in w.unit_steps():
        dx, dy = DIR_VECTORS[d]
        # Trapezoid form: sum of x*dy along the path.
        area2 += (2 * x + dx) * dy
        x, y = x + dx, y + dy
    assert area2 % 2 == 0
    return area2 // 2


def _interior_cells(w: BoundaryWord, start: Cell = (0, 0)) -> frozenset[Cell]:
    """Scanline parity fill bounded by the path (orientation agnostic)."""
    columns: dict[int, list[int]] = {}
    x, y = start
    for d in w.unit_steps():
        dx, dy = DIR_VECTORS[d]
        if dy:
            # Vertical unit edge at this x, spanning row min(y, y+dy).
            columns.setdefault(x, []).append(min(y, y + dy))
        x, y = x + dx, y + dy
    rows: dict[int, list[int]] = {}
    for ex, ys in columns.items():
        for ey in ys:
            rows.setdefault(ey, []).append(ex)
    cells = set()
    for ey, xs in rows.items():
        xs.sort()
        assert len(xs) % 2 == 0
        for i in range(0, len(xs), 2):
            for cx in range(xs[i], xs[i + 1]):
                cells.add((cx, ey))
    return frozenset(cells)


@dataclass(frozen=True)
class Polyomino:
    """A finite set of unit cells, optionally tagged with a tile role."""

    cells: frozenset[Cell]
    role: Optional[str] = None

    def __post_init__(self):
        if not self.cells:
            raise ValueError("polyomino must have at least one cell")

    @classmethod
    def of(cls, cells: Iterable[Cell], role: Optional[str] = None) -> "Polyomino":
        return cls(frozenset((int(x), int(y)) for x, y in cells), role)

    def __len__(self):
        return len(self.cells)

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def min_corner(self) -> Cell:
        return (min(x for x, _ in self.cells), min(y for _, y in self.cells))

    def bbox(self) -> tuple[int, int, int, int]:
        """(min_x, min_y, width, height) in cells."""
        xs = [x for x, _ in self.cells]
        ys = [y for _, y in self.cells]
        return min(xs), min(ys), max(xs) - min(xs) + 1, max(ys) - min(ys) + 1

    def translate(self, dx: int, dy: int) -> "Polyomino":
        return Polyomino(frozenset((x + dx, y + dy) for x, y in self.cells), self.role)

    def rotate_cw(self) -> "Polyomino":
        """Rotate cells 90 degrees clockwise about the origin."""
        return Polyomino(frozenset((y, -x - 1) for x, y in self.cells), self.role)

    def with_role(self, role: Optional[str]) -> "Polyomino":
        return Polyomino(self.cells, role)

    def is_connected(self) -> bool:
        todo = [next(iter(self.cells))]
        seen = {todo[0]}
        while todo:
            x, y = todo.pop()
            for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if nb in self.cells and nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        return len(seen) == len(self.cells)


def canonicalize(p: Polyomino) -> Polyomino:
    """Translate so min x = min y = 0."""
    mx, my = p.min_corner()
    if (mx, my) == (0, 0):
        return p
    return p.translate(-mx, -my)


def word_to_polyomino(w: BoundaryWord, role: Optional[str] = None) -> Polyomino:
    """Interior unit cells of a closed simple word anchored at (0, 0)."""
    w.require_simple_closed()
    return Polyomino(_interior_cells(w), role)


def vertices_to_word(vertices: list[Cell]) -> BoundaryWord:
    """Convert a rectilinear vertex cycle (closing edge implied) to a word."""
    pts = list(vertices)
    if pts[0] != pts[-1]:
        pts.append(pts[0])
    steps = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if x0 == x1 and y0 != y1:
            steps.append(Step("u" if y1 > y0 else "d", abs(y1 - y0)))
        elif y0 == y1 and x0 != x1:
            steps.append(Step("r" if x1 > x0 else "l", abs(x1 - x0)))
        else:
            raise ValueError(f"segment {(x0, y0)} -> {(x1, y1)} is not axis-aligned")
    return BoundaryWord(tuple(steps))


def polyomino_to_word(p: Polyomino) -> BoundaryWord:
    """Boundary word of a polyomino; see trace_boundary."""
    return trace_boundary(p)[1]


def trace_boundary(p: Polyomino) -> tuple[Cell, BoundaryWord]:
    """Trace the outer boundary counterclockwise from the lowest-left vertex.

    Returns the start vertex and the word.  Requires a simply connected
    cell set whose boundary never touches itself at a vertex (true for
    every shape in this package).
    """
    cells = p.cells
    # Directed boundary edges keyed by start vertex, interior on the left.
    nxt: dict[Cell, tuple[Cell, str]] = {}

    def put(a, b, d):
        if a in nxt:
            raise SelfIntersectingError(f"boundary touches itself at {a}")
        nxt[a] = (b, d)

    for (x, y) in cells:
        if (x, y - 1) not in cells:
            put((x, y), (x + 1, y), "r")
        if (x, y + 1) not in cells:
            put((x + 1, y + 1), (x, y + 1), "l")
        if (x - 1, y) not in cells:
            put((x, y + 1), (x, y), "d")
        if (x + 1, y) not in cells:
            put((x + 1, y), (x + 1, y + 1), "u")

    start = min(nxt)
    runs: list[Step] = []
    v, d = start, None
    count = 0
    while True:
        v2, d2 = nxt.pop(v)
        if d2 == d:
            count += 1
        else:
            if d is not None:
                runs.append(Step(d, count))
            d, count = d2, 1
        v = v2
        if v == start:
            break
    runs.append(Step(d, count))
    if nxt:
        raise SelfIntersectingError("cell set has holes or extra boundary loops")
    return start, BoundaryWord(tuple(runs))


# ---------------------------------------------------------------------------
# .poly text format: role line plus either a word line or a cell list.

def write_poly(p: Polyomino) -> str:
    canon = canonicalize(p)
    lines = [f"role: {p.role or 'none'}"]
    lines.append(f"word: {polyomino_to_word(canon)}")
    lines.append("cells:")
    for x, y in canon.sorted_cells():
        lines.append(f"{x} {y}")
    return "\n".join(lines) + "\n"


def read_poly(text: str) -> Polyomino:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("role:"):
        raise FormatError("missing 'role:' header", line=1)
    role = lines[0].split(":", 1)[1].strip()
    if role == "none":
        role = None
    if len(lines) < 2:
        raise FormatError("missing word or cells section", line=2)
    if lines[1].startswith("word:"):
        w = BoundaryWord.parse(lines[1].split(":", 1)[1])
        return canonicalize(word_to_polyomino(w, role))
    if lines[1] != "cells:":
        raise FormatError("expected 'word:' or 'cells:'", line=2)
    cells = []
    for i, ln in enumerate(lines[2:], start=3):
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad cell line {ln!r}", line=i)
        cells.append((int(parts[0]), int(parts[1])))
    if not cells:
        raise FormatError("empty cell list", line=3)
    return canonicalize(Polyomino.of(cells, role))
