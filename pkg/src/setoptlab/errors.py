"""Exception hierarchy. Every error names the offending input where possible."""


class SetOptError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(SetOptError):
    """Inputs disagree on the ambient dimension."""


class EmptyDescription(SetOptError):
    """A cone was given no dual generators."""


class NotPointed(SetOptError):
    """Dual generators do not span the ambient space."""


class NotInterior(SetOptError):
    """A declared interior direction is not strictly inside the cone."""


class NotSimplicial(SetOptError):
    """Operation requires a simplicial cone (dim-many independent generators)."""


class BracketFailure(SetOptError):
    """Bisection bracket does not straddle the threshold; cone data is suspect."""


class NotInDualCone(SetOptError):
    """Functional has a negative weight in the dual-generator basis."""


class NotSingleValued(SetOptError):
    """Vector-optimization adapter needs singleton values."""


class OutsideDomain(SetOptError):
    """Snap target is farther than the grid spacing; star invariant violated."""


class EmptyWeakMinimalSet(SetOptError):
    """Defensive: a finite instance produced no weakly minimal point."""


class ParseError(SetOptError):
    """Instance or report file is structurally malformed."""


class ValidationError(SetOptError):
    """File parsed but violates a model invariant."""


class BadParams(SetOptError):
    """Generator parameters outside the documented ranges."""
