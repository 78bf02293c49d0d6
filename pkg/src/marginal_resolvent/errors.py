"""Exception types raised across the package."""


class MarginalResolventError(Exception):
    """Base class for all errors raised by this package."""


# exact algebra
class NonZeroRemainder(MarginalResolventError, ArithmeticError):
    pass


class DegenerateInput(MarginalResolventError, ValueError):
    pass


class OrderMismatch(MarginalResolventError, ValueError):
    pass


class NonUnitConstantTerm(MarginalResolventError, ValueError):
    pass


# combinatorial oracle
class NonPlanarMap(MarginalResolventError, ValueError):
    pass


class TooLarge(MarginalResolventError, ValueError):
    pass


# generating functions and elimination
class NoConvergence(MarginalResolventError, RuntimeError):
    pass


class InsufficientOrder(MarginalResolventError, ValueError):
    pass


class EliminationFailed(MarginalResolventError, RuntimeError):
    pass


class OddPowerEncountered(MarginalResolventError, ValueError):
    pass


# curve numerics
class InconsistentLeadingOrder(MarginalResolventError, ValueError):
    pass


class BranchAmbiguity(MarginalResolventError, RuntimeError):
    pass


class NoRootConverged(MarginalResolventError, RuntimeError):
    pass


class DiscriminantDegenerate(MarginalResolventError, ValueError):
    pass


class OnBranchCut(MarginalResolventError, ValueError):
    pass


# simulation
class DimensionMismatch(MarginalResolventError, ValueError):
    pass


class EigensolverFailure(MarginalResolventError, RuntimeError):
    pass
