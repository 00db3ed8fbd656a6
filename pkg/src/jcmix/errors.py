"""Exception types raised by the library."""


class JCMixError(Exception):
    """Base class for all library errors."""


class TruncationError(JCMixError):
    """Probability mass beyond the Fock cutoff exceeds the tolerance."""


class NonConvergence(JCMixError):
    """An iterative or recursive computation failed its self-check."""


class DegenerateInput(JCMixError):
    """Input parameters make the requested quantity undefined."""


class DimensionMismatch(JCMixError):
    """Operand shapes are incompatible."""


class NotHermitian(JCMixError):
    """Matrix failed the Hermiticity pre-check."""


class GridTooSmall(JCMixError):
    """Phase-space grid does not capture enough of the Wigner mass."""


class ConfigError(JCMixError):
    """Scenario configuration could not be parsed or is invalid."""
