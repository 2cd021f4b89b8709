"""Exception hierarchy shared across the toolkit.

Everything raised deliberately by this package derives from
:class:`NetworkModelError`, so callers (and the CLI) can catch one type.
"""


class NetworkModelError(Exception):
    """Base class for all errors raised by this package."""


class GraphIndexError(NetworkModelError):
    """A node index lies outside ``range(node_count)``."""


class DimensionError(NetworkModelError):
    """Two objects that must share a shape or node set do not."""


class InvalidDyadError(NetworkModelError):
    """A dyad (i, j) with i == j, or otherwise outside the dyad space."""


class ValidationError(NetworkModelError):
    """Malformed input data: bad rows, unknown levels, duplicate ids."""


class UnknownNodeError(NetworkModelError):
    """An event references a participant id absent from the node table."""


class UnknownAttributeError(NetworkModelError):
    """A model term references an attribute the node table lacks."""


class ConfigError(NetworkModelError):
    """Unusable run configuration or term grammar."""


class UndefinedMetricError(NetworkModelError):
    """A descriptive statistic has no value on this graph (0/0 case)."""


class NumericalError(NetworkModelError):
    """Iteration failed to converge or produced non-finite values."""


class RankDeficiencyError(NetworkModelError):
    """The design matrix has collinear columns; names are in the message."""


class EmptyDesignError(NetworkModelError):
    """A design with zero rows was requested."""


class InsufficientPeriodsError(NetworkModelError):
    """Temporal operations need at least two network panels."""
