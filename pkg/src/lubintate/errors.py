"""Exception types raised by the library.

Every error carries the name used in reports and CLI output, so a failed
check can be traced back to the precondition that was violated.
"""


class LubinTateError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ConfigError(LubinTateError):
    exit_code = 2


class NotIrreducible(ConfigError):
    pass


class NotUniformizer(ConfigError):
    pass


class NotAFrobeniusSeries(ConfigError):
    pass


class NotCyclotomic(ConfigError):
    pass


class PrecisionExhausted(LubinTateError):
    exit_code = 3


class DivergentComposition(PrecisionExhausted):
    pass


class NotAUnit(LubinTateError):
    pass


class NotInvertible(LubinTateError):
    pass


class ConvergenceDomain(LubinTateError):
    pass


class NotGaloisInvariant(LubinTateError):
    pass


class NotInImage(LubinTateError):
    pass


class NoStabilization(LubinTateError):
    pass


class NotNormFixed(LubinTateError):
    pass


class PsiOneViolation(LubinTateError):
    pass


class PsiZeroViolation(LubinTateError):
    pass


class NormCompatibilityViolation(LubinTateError):
    pass


class BaseLevelMismatch(LubinTateError):
    pass


class LevelMismatch(LubinTateError):
    pass


class TrivialCharacter(LubinTateError):
    pass


class DegenerateFrobenius(LubinTateError):
    pass


class ConductorMismatch(LubinTateError):
    pass


class NotPrincipalUnit(LubinTateError):
    pass


class NotAGenerator(LubinTateError):
    pass
