"""Exception types shared across the package."""


class PfafflabError(Exception):
    """Base class for all package errors."""


class FieldError(PfafflabError):
    pass


class ConductorMismatch(FieldError):
    """Arithmetic between cyclotomic numbers of different conductors."""


class BadRootOrder(FieldError):
    """Claimed root of unity does not have the required exact order."""


class NonInvertibleDenominator(FieldError):
    """A denominator reduces to zero modulo the working prime."""


class NoRoot(FieldError):
    """GF(p) contains no element of the requested order."""


class ArityMismatch(PfafflabError):
    """Polynomial operands disagree in variable count or field."""


class SearchSpaceTooLarge(PfafflabError):
    """Labeling search refused: too many variables for exhaustion."""


class CapExceeded(PfafflabError):
    """Group enumeration exceeded the element cap."""


class NonIntegerMultiplicity(PfafflabError):
    """Character inner product is not a non-negative integer."""


class DimensionShortfall(PfafflabError):
    """Averaging produced fewer equivariant maps than characters predict."""


class NotSkew(PfafflabError):
    pass


class OddSize(PfafflabError):
    pass


class DimensionMismatch(PfafflabError):
    pass


class BudgetExceeded(PfafflabError):
    """Buchberger pair processing exceeded its cap."""


class BadReduction(PfafflabError):
    """Reduction mod p degenerates (for example deg f is 0 mod p)."""


class DegenerateSpan(PfafflabError):
    """Two surface planes span less than four dimensions."""


class UnexpectedSolutionDim(PfafflabError):
    """Line solve returned a solution space of unexpected dimension."""


class NotSemiInvariant(PfafflabError):
    pass


class NonIsolatedFixedPoint(PfafflabError):
    """Diagonal action has repeated eigenvalues, fixed locus not isolated."""


class FixtureCorrupt(PfafflabError):
    pass


class UnknownFixture(PfafflabError):
    pass
