"""Exception types shared across the package."""


class DGHAError(Exception):
    """Base class for all engine errors."""


# exact linear algebra
class WNotContained(DGHAError):
    """A claimed subspace vector is not inside the ambient span."""


# algebra construction
class InhomogeneousRelation(DGHAError):
    pass


class DifferentialDegreeMismatch(DGHAError):
    pass


class LeibnizSquareNonzero(DGHAError):
    """The induced differential does not square to zero modulo the relation ideal."""


class NotConnected(DGHAError):
    pass


# modules and morphisms
class RangeExceeded(DGHAError):
    """A computation was requested beyond the certified truncation range."""


class MissingStageLabels(DGHAError):
    pass


# resolutions
class NotBoundedBelow(DGHAError):
    pass


class TruncationTooSmall(DGHAError):
    pass


class WindowTooSmall(DGHAError):
    pass


class NotAResolutionOfHM(DGHAError):
    pass


class ResolutionDiverged(DGHAError):
    """The degreewise builder exceeded its round cap at a fixed degree.

    Carries the partial per-degree generator log so callers can turn the
    failure into growth evidence instead of an unbounded loop.
    """

    def __init__(self, degree, rounds, generator_log):
        super().__init__(
            f"no stable generator set at degree {degree} after {rounds} rounds"
        )
        self.degree = degree
        self.rounds = rounds
        self.generator_log = generator_log


# cli
class UnknownExample(DGHAError):
    pass


class JobSyntaxError(DGHAError):
    def __init__(self, message, line, col=1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class JobSemanticError(DGHAError):
    pass
