"""Exception hierarchy shared by every module."""


class CduError(Exception):
    """Base class for all errors raised by cdulab."""


class ConfigError(CduError):
    """Bad user input: field parameters, parse failures, hypotheses (CLI exit 2)."""


class EngineError(CduError):
    """Computation could not be carried out (CLI exit 3)."""


class CompositeCharacteristic(ConfigError):
    pass


class ReducibleModulus(ConfigError):
    pass


class DivisionByZero(CduError, ZeroDivisionError):
    pass


class MixedFields(CduError):
    pass


class NotADivisor(ConfigError):
    pass


class SingularBasis(ConfigError):
    pass


class DomainTooLarge(EngineError):
    pass


class NonBijectiveAffine(ConfigError):
    pass


class OddCharacteristic(ConfigError):
    pass


class SubfieldEscape(ConfigError):
    pass


class NonCoprimeDegrees(ConfigError):
    pass


class BadChain(ConfigError):
    pass


class AlphaOutsideSubfield(ConfigError):
    pass


class AlphaZero(ConfigError):
    pass


class BaseFieldMismatch(ConfigError):
    pass


class CoefficientsNotInSubfield(ConfigError):
    pass


class HypothesisViolation(ConfigError):
    """A claim was run with parameters outside the cited result's hypotheses."""

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        msg = f"hypothesis violated: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
