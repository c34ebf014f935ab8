"""Exception types. The CLI prints the class name verbatim."""


class RepkitError(Exception):
    """Base class for all library errors."""


class InvalidSpec(RepkitError, ValueError):
    pass


class ClosureOverflow(RepkitError):
    """Generator closure grew past the catalog order (bad generators)."""


class NumericalDegeneracy(RepkitError):
    pass


class NonIntegralMultiplicity(RepkitError):
    """A character inner product was not close enough to an integer."""


class NotBinaryGroup(RepkitError):
    pass


class HalfIntegerOnNonBinary(RepkitError, ValueError):
    pass


class DegenerateImmirzi(RepkitError, ValueError):
    pass


class SearchBudgetExceeded(RepkitError):
    pass
