"""Exception types shared across the package."""


class SkewcodeError(Exception):
    """Base class for all package errors."""


class ConfigError(SkewcodeError):
    """Malformed or unresolvable configuration input."""


class OrderTooLarge(SkewcodeError):
    """Requested ring exceeds the supported order cap."""


class NonMonicRelation(SkewcodeError):
    """Quotient relation polynomial is not monic."""


class InconsistentTables(SkewcodeError):
    """Element tables fail the ring-axiom audit."""


class MixedRings(SkewcodeError):
    """Operands belong to different rings."""


class MixedTheta(SkewcodeError):
    """Skew polynomials carry different twist automorphisms."""


class NotInvolution(SkewcodeError):
    """Map is not an involution for the requested operation."""


class NotFreeRank(SkewcodeError):
    """|A| is not a power of |R|, so no free rank exists."""


class SigmaDoesNotPreserveR(SkewcodeError):
    """The involution does not map the subring onto itself."""


class PhiDoesNotPreserveR(SkewcodeError):
    """The transforming involution does not map the subring onto itself."""


class RNotFixedByH(SkewcodeError):
    """Trace predicates need the subring inside the fixed ring of H."""


class RNotCentral(SkewcodeError):
    """Symmetric predicate needs the subring inside the center."""


class NotTruncatedPolyRing(SkewcodeError):
    """Operation only applies to F_q[x]/(x^r) over F_q."""


class LeadingCoeffNotInvertible(SkewcodeError):
    """Right division needs an invertible leading coefficient."""


class NoncommutativeRing(SkewcodeError):
    """Operation is only defined over commutative rings."""


class ConstantTermNotUnit(SkewcodeError):
    """Monic reciprocal needs a unit constant term."""


class BudgetExceeded(SkewcodeError):
    """Search space exceeds the configured candidate budget."""

    def __init__(self, needed: int, budget: int, what: str = "enumeration"):
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"{what} needs {needed} candidate evaluations, budget is {budget}; "
            "raise it with --budget / budget="
        )


class NotRightDivisor(SkewcodeError):
    """Generator polynomial does not right-divide the modulus."""


class NotMonic(SkewcodeError):
    """Polynomial is required to be monic."""


class NotSelfDual(SkewcodeError):
    """Code is required to be self-dual."""


class NotBinary(SkewcodeError):
    """Code is required to be over the 2-element field."""


class LeeUndefined(SkewcodeError):
    """Ring has no designated Z4-coordinate structure for Lee weights."""


class UnknownRecipe(SkewcodeError):
    """Recipe name not registered."""
