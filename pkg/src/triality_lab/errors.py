"""Exception hierarchy shared by every module."""


class TrialityLabError(Exception):
    pass


class FieldMismatch(TrialityLabError, TypeError):
    pass


class DegenerateInput(TrialityLabError, ValueError):
    pass


class ZeroPolynomial(TrialityLabError, ValueError):
    pass


class NotExactDivision(TrialityLabError, ArithmeticError):
    pass


class DimensionMismatch(TrialityLabError, ValueError):
    pass


class FormMismatch(TrialityLabError, ValueError):
    pass


class NotAnAutomorphism(TrialityLabError, ValueError):
    pass


class NotClosed(TrialityLabError, ValueError):
    pass


class DegenerateRestriction(TrialityLabError, ValueError):
    pass


class NotFound(TrialityLabError, LookupError):
    pass


class NotAPermutation(TrialityLabError, ValueError):
    pass


class NotARoot(TrialityLabError, ValueError):
    pass


class NotInvariant(TrialityLabError, ValueError):
    pass


class NoSolution(TrialityLabError, ValueError):
    pass


class BadReduction(TrialityLabError, ValueError):
    pass


class NotIsolated(TrialityLabError, ValueError):
    pass


class ZeroParameter(TrialityLabError, ValueError):
    pass


class ActionNotPreserving(TrialityLabError, ValueError):
    pass


class SingularFiber(TrialityLabError, ValueError):
    def __init__(self, message, discriminant=None):
        super().__init__(message)
        self.discriminant = discriminant


class EliminationCollapse(TrialityLabError, ArithmeticError):
    pass


class UnknownSelector(TrialityLabError, LookupError):
    pass
