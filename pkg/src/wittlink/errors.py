"""Exception hierarchy. Every domain failure derives from ``WittError``."""


class WittError(Exception):
    """Base class for domain errors; ``kind`` is the stable error name."""

    @property
    def kind(self):
        return type(self).__name__


class ParseError(WittError, ValueError):
    pass


class EvenVerschiebungOnMinusRing(WittError):
    pass


class NotInSubring(WittError):
    pass


class NotSelfConjugate(WittError):
    pass


class DenominatorTooLarge(WittError):
    pass


class NotLengthOne(WittError):
    pass


class BadRing(WittError):
    pass


class ExponentTooHigh(WittError):
    pass


class NotASubmodule(WittError):
    pass


class QuotientNotLengthOne(WittError):
    pass


class Singular(WittError):
    pass


class SymmetryViolated(WittError):
    pass


class QuadraticIncompatible(WittError):
    pass


class BadTemplateParams(WittError):
    pass


class RingMismatch(WittError):
    pass


class NotSubLagrangian(WittError):
    pass


class BadEvaluationPoint(WittError):
    pass


class SearchSpaceTooLarge(WittError):
    pass


class Unsupported(WittError):
    pass


class ModuleTooLarge(WittError):
    pass


class NoCandidateMatch(WittError):
    pass


class NotEvenType(WittError):
    pass


class NotSymplectic(WittError):
    pass


class BadDomain(WittError):
    pass


class NotReducedClass(WittError):
    pass


class NotInKernelOfQ(WittError):
    pass


class ObstructionNonzero(WittError):
    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class BadSignOrder(WittError):
    pass
