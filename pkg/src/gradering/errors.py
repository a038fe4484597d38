"""Exception hierarchy; every validation failure names the violated condition."""


class GraderingError(Exception):
    """Base class for all engine errors."""


class ValidationError(GraderingError, ValueError):
    pass


class EmptyOrders(ValidationError):
    pass


class BadUnity(ValidationError):
    pass


class NonAssociative(ValidationError):
    pass


class IllDefinedBilinearMap(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class EmptyList(ValidationError):
    pass


class NotAGroup(ValidationError):
    pass


class NotASubgroup(ValidationError):
    pass


class NotNormal(ValidationError):
    pass


class OrderCapExceeded(GraderingError):
    pass


class NotDirectSum(ValidationError):
    pass


class NotMultiplicative(ValidationError):
    pass


class UnknownGroupElement(ValidationError):
    pass


class NotHomogeneousIdeal(ValidationError):
    pass


class NotTwoSided(ValidationError):
    pass


class IdealLatticeCap(GraderingError):
    pass


class ActionAxiomViolation(ValidationError):
    pass


class SearchBudgetExceeded(GraderingError):
    pass


class NegativeDegreeInPolynomial(ValidationError):
    pass


class BaseNotField(GraderingError):
    pass


class TransferIdentityFailed(GraderingError):
    pass


class UnknownTheoremId(GraderingError, KeyError):
    pass
