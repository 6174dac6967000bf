"""Exception hierarchy shared by all modules."""


class EllipDivError(Exception):
    pass


class SingularCurve(EllipDivError):
    pass


class PointNotOnCurve(EllipDivError):
    pass


class TorsionPoint(EllipDivError):
    pass


class BadReductionPrime(EllipDivError):
    pass


class SingularReduction(EllipDivError):
    pass


class ZeroInput(EllipDivError):
    pass


class OddNegativeXValuation(EllipDivError):
    """x(P) has odd negative valuation: the model is not integral at p."""


class NotInKernelOfReduction(EllipDivError):
    pass


class NonIntegralBeta(EllipDivError):
    """e_1 does not divide e_n, so beta_n would not be an integer."""


class ComponentOrderSearchExceeded(EllipDivError):
    pass


class HypothesisNotMet(EllipDivError):
    pass


class FactoringBudgetExceeded(EllipDivError):
    pass


class BoundExceedsCap(EllipDivError):
    def __init__(self, bound, cap):
        super().__init__(f"divisor bound {bound} exceeds cap {cap}")
        self.bound = bound
        self.cap = cap


class CompositeModulus(EllipDivError):
    pass


class InvalidDiscriminant(EllipDivError):
    pass


class FiberDegenerate(EllipDivError):
    pass


class PrecisionLoss(EllipDivError):
    pass


class NoConsistentFit(EllipDivError):
    pass


class AmbiguousFloor(EllipDivError):
    pass


class ConfigError(EllipDivError):
    pass
