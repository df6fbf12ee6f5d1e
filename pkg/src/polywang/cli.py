"""Command-line front end.

Exit codes: 0 success, 1 domain failure (no tiling, failed verification,
inconclusive search), 2 usage or parse error.  Every command writes its
result as line-based text on stdout and is deterministic, so reruns are
byte-identical.  A --seed option is accepted for interface stability and
ignored: nothing here is randomized.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import assembler, engine, svg
from .errors import FormatError, PolywangError
from .features import FeatureKind, Side, feature_word
from .grid import read_poly, word_to_polyomino, write_poly
from .reduction import (
    ALL_ROLES,
    jaw_base_word,
    link_base_word,
    manifest,
    meat_base_word,
    filler_base_word,
    printed_filler_word,
    reduce_set,
)
from .wang import parse_wang, parse_wtil, solve_torus, write_wtil


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PolywangError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polywang",
        description="Compile Wang tile sets into 8-polyomino translational "
        "tiling instances and certify the construction.",
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="accepted and ignored; all algorithms are deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wang-solve", help="search for a periodic (torus) Wang tiling")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--max-period", type=int, default=6,
                   help="largest torus side to try; finding nothing proves nothing")
    p.add_argument("--output", type=Path)
    p.set_defaults(func=_cmd_wang_solve)

    p = sub.add_parser("reduce", help="build the eight polyominoes for a Wang set")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--out-dir", required=True, type=Path)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("features", help="dump the bump and dent vocabulary")
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=_cmd_features)

    p = sub.add_parser("check-words", help="closure/simplicity report for the base words")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--printed-filler", action="store_true",
                   help="only print the filler word as published and its closure defect")
    p.set_defaults(func=_cmd_check_words)

    p = sub.add_parser("tile", help="exact-cover search over a rectangle or torus")
    p.add_argument("--tiles", required=True, type=Path)
    p.add_argument("--region", required=True,
                   help="'rect WxH' or 'torus WxH' in cells")
    p.add_argument("--most-constrained", action="store_true")
    p.add_argument("--output", type=Path)
    p.set_defaults(func=_cmd_tile)

    p = sub.add_parser("verify", help="check placements for exact cover")
    p.add_argument("--tiles", required=True, type=Path)
    p.add_argument("--placements", required=True, type=Path)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("assemble", help="compile a Wang torus tiling into placements")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--tiling", required=True, type=Path)
    p.add_argument("--output", type=Path)
    p.add_argument("--emit-svg", type=Path)
    p.set_defaults(func=_cmd_assemble)

    p = sub.add_parser("extract", help="read the Wang tiling back from placements")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--placements", required=True, type=Path)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("deadend", help="bounded teeth/links/filler dead-end search")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--radius", type=int, default=30)
    p.set_defaults(func=_cmd_deadend)

    p = sub.add_parser("render", help="render tiles or an assembled pattern to SVG")
    p.add_argument("--tiles", required=True, type=Path)
    p.add_argument("--placements", type=Path)
    p.add_argument("--output", required=True, type=Path)
    p.set_defaults(func=_cmd_render)

    return parser


def _load_tiles(directory: Path):
    tiles = {}
    for role in ALL_ROLES:
        path = directory / f"{role}.poly"
        if path.exists():
            tiles[role] = read_poly(path.read_text())
    if not tiles:
        # Fall back to any .poly files present, keyed by their role line.
        for path in sorted(directory.glob("*.poly")):
            poly = read_poly(path.read_text())
            tiles[poly.role or path.stem] = poly
    if not tiles:
        raise FormatError(f"no .poly tiles found in {directory}")
    return tiles


def _cmd_wang_solve(args) -> int:
    ts = parse_wang(args.input.read_text())
    tiling = solve_torus(ts, args.max_period)
    if tiling is None:
        print(f"no torus tiling with period <= {args.max_period} "
              "(the set may still tile the plane aperiodically)")
        return 1
    text = write_wtil(ts, tiling)
    sys.stdout.write(text)
    if args.output:
        args.output.write_text(text)
    return 0


def _cmd_reduce(args) -> int:
    ts = parse_wang(args.input.read_text())
    red = reduce_set(ts)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for role, poly in sorted(red.tiles().items()):
        (args.out_dir / f"{role}.poly").write_text(write_poly(poly))
    text = manifest(red)
    (args.out_dir / "manifest").write_text(text)
    sys.stdout.write(text)
    return 0


def _cmd_features(args) -> int:
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
    for kind in FeatureKind:
        for side in Side:
            w = feature_word(kind, side)
            print(f"{kind.value} {side.value}: {w}")
            if args.out_dir:
                host = word_to_polyomino(_host_with(kind, side))
                name = f"{kind.value}-{side.value}.poly"
                (args.out_dir / name).write_text(write_poly(host))
    return 0


def _host_with(kind: FeatureKind, side: Side):
    from .features import FeaturePlan, _HOST_RUN, substitute
    from .grid import word

    return substitute(word("r27 u27 l27 d27"), FeaturePlan.of([(_HOST_RUN[side], 1, kind, side)]))


def _cmd_check_words(args) -> int:
    n, t = args.n, args.t
    printed = printed_filler_word(t)
    if args.printed_filler:
        print(f"printed-filler: {printed}")
        print(f"printed-filler closure: {printed.closure()} (does not close)")
        return 0
    words = [
        ("meat", meat_base_word(n, t)),
        ("jaw", jaw_base_word(n, t)),
        ("filler", filler_base_word(t)),
        ("link", link_base_word(n, t)),
    ]
    for name, w in words:
        closed = w.is_closed()
        simple = w.is_simple()
        poly = word_to_polyomino(w) if closed and simple else None
        bbox = f"{poly.bbox()[2]}x{poly.bbox()[3]}" if poly else "-"
        print(f"{name}: closure={w.closure()} simple={simple} bbox={bbox}")
    print(f"printed-filler: closure={printed.closure()} (defect: does not close)")
    return 0


def _cmd_tile(args) -> int:
    tiles = _load_tiles(args.tiles)
    try:
        kind_name, size = args.region.split()
        w, h = size.lower().split("x")
        kind = {"rect": engine.RegionKind.RECTANGLE, "torus": engine.RegionKind.TORUS}[kind_name]
        region = engine.Region(kind, int(w), int(h))
    except (ValueError, KeyError):
        raise FormatError(f"bad region spec {args.region!r}; want 'torus 12x8'")
    sol = engine.solve_region(tiles, region, most_constrained=args.most_constrained)
    if sol is None:
        print("no tiling")
        return 1
    text = engine.write_plc(sol)
    sys.stdout.write(text)
    if args.output:
        args.output.write_text(text)
    return 0


def _cmd_verify(args) -> int:
    tiles = _load_tiles(args.tiles)
    tiling = engine.read_plc(args.placements.read_text())
    defect = engine.coverage_defect(tiles, tiling)
    if defect is None:
        print(f"verified: exact cover of {tiling.region.kind.value} "
              f"{tiling.region.width}x{tiling.region.height}")
        return 0
    x, y, count = defect
    print(f"not a tiling: cell ({x}, {y}) covered {count} times")
    return 1


def _cmd_assemble(args) -> int:
    ts = parse_wang(args.input.read_text())
    tiling = parse_wtil(ts, args.tiling.read_text())
    red = reduce_set(ts)
    pattern = assembler.assemble_pattern(ts, tiling, red)
    if not engine.verify_tiling(red.tiles(), pattern):
        print("assembly failed verification")
        return 1
    text = engine.write_plc(pattern)
    sys.stdout.write(text)
    if args.output:
        args.output.write_text(text)
    if args.emit_svg:
        args.emit_svg.write_text(svg.render_pattern(red.tiles(), pattern))
    return 0


def _cmd_extract(args) -> int:
    ts = parse_wang(args.input.read_text())
    pattern = engine.read_plc(args.placements.read_text())
    tiling = assembler.extract_wang(ts, pattern)
    sys.stdout.write(write_wtil(ts, tiling))
    return 0


def _cmd_deadend(args) -> int:
    ts = parse_wang(args.input.read_text())
    result = assembler.dead_end_check(ts, args.radius)
    print(f"dead-end check at radius {args.radius}: {result.value}")
    return 0 if result is assembler.DeadEndResult.DEAD_END else 1


def _cmd_render(args) -> int:
    tiles = _load_tiles(args.tiles)
    if args.placements:
        tiling = engine.read_plc(args.placements.read_text())
        out = svg.render_pattern(tiles, tiling)
    else:
        out = svg.render_tiles(tiles)
    args.output.write_text(out)
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
