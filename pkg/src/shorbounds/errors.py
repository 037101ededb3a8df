"""Exception types raised by the library's domain checks."""


class EvenModulusError(ValueError):
    """The modulus is even; the valuation counts are defined for odd n only."""


class PrimePowerError(ValueError):
    """The modulus has a single prime factor (k = 1), outside the formulas' domain."""


class NotSquarefreeError(ValueError):
    """A squarefree-only count was requested for a modulus with a repeated prime."""


class EnumerationCapError(ValueError):
    """A brute-force enumeration exceeds the configured cap."""


class NotAUnitError(ValueError):
    """The base shares a factor with the modulus, so it has no multiplicative order."""


class InsufficientDataError(ValueError):
    """The tally's denominator is empty, so no estimate can be formed."""
