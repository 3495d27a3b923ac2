"""Exception types shared across the toolkit.

Every mathematically meaningful failure gets its own class so callers can
react precisely (retry with a shift, raise precision, report a hypothesis
violation) instead of pattern-matching message strings.
"""


class VFError(Exception):
    """Base class for all toolkit errors."""


class Inseparable(VFError):
    """A polynomial (or extension) required to be separable is not."""


class PrecisionUnderflow(VFError):
    """A requested working precision is below the minimum of 1."""


class IndeterminateValuation(VFError):
    """All retained digits of an element vanish; the valuation cannot be
    read off at the current precision.  Callers should raise precision."""


class NotAUnit(VFError):
    """Residue of an element with nonzero valuation was requested."""


class DivisionByExactZero(VFError):
    """Division by an element that is exactly zero (not merely zero at
    the current precision, which raises IndeterminateValuation instead)."""


class NotCoprime(VFError):
    """Hensel lifting failed: the initial factors are not coprime at the
    available precision (no Bezout identity)."""


class NotRegular(VFError):
    """Newton-polygon/residual refinement failed to separate the factors
    of a squarefree local polynomial within the round budget."""


class NotRegularAfterShifts(VFError):
    """Every substitution x -> x + c in the shift budget still produced a
    NotRegular factorization."""


class MismatchedBasePlace(VFError):
    """Two places handed to a two-place operation do not lie over the
    same place of the common base field."""


class HypothesisViolated(VFError):
    """The tameness/separability hypotheses of a ramification identity do
    not hold for the given input."""


class NotGalois(VFError):
    """Degree bookkeeping contradicts the Galois assumption on a tower."""


class ResidueDegreeObstruction(VFError):
    """A residue degree > 1 was encountered where the geometric model
    requires all residue degrees to be 1 (constant field too small)."""

    def __init__(self, message, required_degree=None):
        super().__init__(message)
        self.required_degree = required_degree


class OracleInconclusive(VFError):
    """The branch-counting oracle exceeded its refinement depth bound or
    ran out of series precision."""


class InternalInvariantError(VFError):
    """An internal consistency check failed; indicates a bug, not bad
    input."""
