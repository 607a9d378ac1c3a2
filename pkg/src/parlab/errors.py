"""Exception types shared across the package."""


class ParlabError(ValueError):
    """Base class for all parlab errors."""


class DimensionError(ParlabError):
    """Mismatched lengths or arities."""


class DomainError(ParlabError):
    """Input outside the defined domain of an operation."""


class CapacityError(ParlabError):
    """Instance exceeds the materialization caps of the exhaustive backends."""


class RangeError(ParlabError):
    """A number violates its declared range bound."""
