"""Exception hierarchy.

Every error carries a stable ``code`` (the class name) that the CLI emits.
Errors are split into domain errors (exit code 2) and precision errors
(exit code 3).
"""


class LlabError(Exception):
    exit_code = 2

    @property
    def code(self) -> str:
        return type(self).__name__


class DomainError(LlabError):
    exit_code = 2


class PrecisionError(LlabError):
    exit_code = 3


# arithmetic substrate
class ZeroInput(DomainError):
    pass


class ConditionFailed(DomainError):
    pass


class PrecisionExceeded(PrecisionError):
    pass


class MixedModuli(DomainError):
    pass


# finite fields
class ZeroPolynomial(DomainError):
    pass


class NotASubfield(DomainError):
    pass


class InseparablePolynomial(DomainError):
    pass


class NotIrreducible(DomainError):
    pass


# local fields
class NotEisenstein(DomainError):
    pass


class PrecisionTooLow(PrecisionError):
    pass


class MixedFields(DomainError):
    pass


class NonUnitInverse(DomainError):
    pass


class PrecisionExhausted(PrecisionError):
    pass


class ZeroResidue(DomainError):
    pass


class CriterionOracleMismatch(DomainError):
    pass


class NoSuchTorsion(DomainError):
    pass


class NotCoprime(DomainError):
    pass


# unit filtration
class NotAUnit(DomainError):
    pass


class TooLarge(DomainError):
    pass


# kummer
class NotALine(DomainError):
    pass


class KummerHypothesisFails(DomainError):
    pass


class NotDeepEnough(DomainError):
    pass


class LiftFailed(DomainError):
    pass


class NotDivisible(DomainError):
    pass


class DegenerateLines(DomainError):
    pass


# discriminants
class ChainMismatch(DomainError):
    pass


# Same condition as InseparablePolynomial, raised from the lifting route.
class Inseparable(InseparablePolynomial):
    pass


# elliptic curves
class SingularCubic(DomainError):
    pass


class NonUnitScale(DomainError):
    pass


class MinimalityNotCertified(DomainError):
    pass


class PointSearchFailed(DomainError):
    pass


# cli
class ParseError(DomainError):
    pass
