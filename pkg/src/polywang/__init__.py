"""Wang tile sets compiled into 8-polyomino translational tiling instances.

The package builds the fixed family of eight polyominoes (meat, jaw,
filler, three teeth, two links) that simulates an arbitrary Wang tile
set under translation-only tiling, assembles periodic witnesses, and
machine-checks the construction's local placement lemmas.
"""

from .assembler import (
    DeadEndResult,
    assemble_pattern,
    dead_end_check,
    enumerate_meat_jaw_offsets,
    extract_wang,
    link_color_gate,
)
from .engine import (
    PatternTiling,
    Placement,
    Region,
    RegionKind,
    solve_region,
    verify_tiling,
)
from .features import (
    Axis,
    FeatureKind,
    FeaturePlan,
    Side,
    dent_sequence,
    dent_word,
    encode_color,
    facing_hole,
    feature_word,
    substitute,
    tbump_word,
)
from .grid import (
    BoundaryWord,
    Polyomino,
    Step,
    canonicalize,
    rotate_word_cw,
    shoelace_area,
    word,
    word_closure,
    word_to_polyomino,
)
from .reduction import (
    Reduction,
    ReductionParams,
    build_filler,
    build_jaw,
    build_links,
    build_meat,
    filler_base_word,
    jaw_base_word,
    link_base_word,
    meat_base_word,
    printed_filler_word,
    reduce_set,
    teeth,
)
from .wang import (
    WangTile,
    WangTileSet,
    WangTorusTiling,
    check_torus,
    figure_one_set,
    parse_wang,
    solve_torus,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
