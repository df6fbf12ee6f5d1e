"""Exception types shared across the package."""


class PolywangError(Exception):
    """Base class for all domain errors."""


class NotClosedError(PolywangError):
    """Boundary word does not return to its start point."""


class SelfIntersectingError(PolywangError):
    """Boundary path revisits a lattice edge or vertex."""


class BlockNotOnSideError(PolywangError):
    """Feature orientation does not match the side its target block lies on."""


class OverlappingFeaturesError(PolywangError):
    """Two plan entries target the same block."""


class ResultSelfIntersectsError(SelfIntersectingError):
    """Feature substitution produced a non-simple word."""


class ColorOverflowError(PolywangError):
    """Color id does not fit in the requested number of bits."""


class CavitiesDisjointError(PolywangError):
    """Facing dent cavities do not form one connected hole."""


class FormatError(PolywangError):
    """Malformed input file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownColorError(FormatError):
    pass


class DuplicateTileNameError(FormatError):
    pass


class IndexOutOfRangeError(PolywangError):
    """Tile index outside the tile set."""


class UnknownRoleError(PolywangError):
    """Placement references a role missing from the tile map."""


class ResidualHoleUnmatchedError(PolywangError):
    """A residual hole is not a translate of any tooth or the filler."""


class WangTilingInvalidError(PolywangError):
    """Input Wang tiling violates an edge constraint."""


class MalformedPatternError(PolywangError):
    """Pattern tiling does not have meats on the expected lattice."""
