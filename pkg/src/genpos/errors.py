"""Exception hierarchy.

``InfeasibleError`` subclasses signal a mathematical obstruction in the data
(the CLI maps them to exit status 1); ``InputError`` subclasses signal a
malformed request (exit status 2); ``NumericalError`` signals a breakdown of
the floating point machinery itself.
"""


class GenPosError(Exception):
    """Base class for all package errors."""


class InputError(GenPosError, ValueError):
    pass


class InfeasibleError(GenPosError):
    pass


class NumericalError(GenPosError, ArithmeticError):
    pass


# polynomial / ratfun
class NonConvergence(NumericalError):
    pass


class ZeroDenominator(InputError, ZeroDivisionError):
    pass


class DivisionByZeroFunction(InputError, ZeroDivisionError):
    pass


class DegenerateComposition(InputError):
    pass


class Indeterminate(NumericalError):
    pass


# classify / factor
class BadG(InputError):
    """g (or 1/g) is not analytic in the open left half plane."""


class InconsistentRoutes(NumericalError):
    pass


class NotGP(InfeasibleError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotGPE(InfeasibleError):
    pass


class NotOdd(InfeasibleError):
    pass


class NotPositive(InfeasibleError):
    pass


class NotGB(InfeasibleError):
    pass


class NoWitness(InfeasibleError):
    pass


class UnpairedRoot(NumericalError):
    pass


class VerificationFailure(NumericalError):
    pass


# interpolation
class NodeOnAxis(InputError):
    pass


class DuplicateNode(InputError):
    pass


class BadData(InputError):
    pass


class NodeHitsGZero(InfeasibleError):
    pass


class PickIndefinite(InfeasibleError):
    def __init__(self, message, pick=None):
        super().__init__(message)
        self.pick = pick


class DegeneratePSD(InfeasibleError):
    pass


class BudgetExhausted(InfeasibleError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class InfeasibleBasis(InfeasibleError):
    pass


class MixedProblems(InputError):
    pass


class CertificateFailure(InfeasibleError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# bounded
class DegenerateTransform(InputError):
    pass


class Degenerate(InputError):
    pass
