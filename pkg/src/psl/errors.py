"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`PSLError`,
so callers (notably the report runner) can turn computational failures into
FAIL lines instead of crashes.
"""

from __future__ import annotations


class PSLError(Exception):
    """Base class for all library errors."""


# fields and elements
class EvenPrime(PSLError, ValueError):
    pass


class NotEisenstein(PSLError, ValueError):
    pass


class PrecisionTooLow(PSLError, ValueError):
    pass


class FieldMismatch(PSLError, TypeError):
    pass


class DivisionByPrecisionZero(PSLError, ZeroDivisionError):
    pass


class ZeroValuation(PSLError, ValueError):
    """The element is indistinguishable from zero at the working precision."""


class PrecisionLoss(PSLError, ArithmeticError):
    pass


class PrecisionInsufficient(PSLError, ArithmeticError):
    pass


class RootOfZero(PSLError, ValueError):
    pass


class NoPthRoots(PSLError, ValueError):
    pass


# unit filtration / Hilbert symbol
class NoMuP(PSLError, ValueError):
    """The field does not contain the p-th roots of unity."""


class DegenerateBasis(PSLError, ArithmeticError):
    pass


class NotAUnit(PSLError, ValueError):
    pass


class TrivialKummer(PSLError, ValueError):
    pass


class DegeneratePairing(PSLError, ArithmeticError):
    pass


# elliptic curves
class SingularCurve(PSLError, ValueError):
    pass


class NotMinimal(PSLError, ValueError):
    pass


class TruncationTooSmall(PSLError, ValueError):
    pass


class NotGoodReduction(PSLError, ValueError):
    pass


class NonIntegralTorsionValuation(PSLError, ValueError):
    pass


class NotSupersingular(PSLError, ValueError):
    pass


class AdditiveRefused(PSLError, ValueError):
    pass


class NonsplitUnsupported(PSLError, ValueError):
    pass


# Mackey products
class NodeMismatch(PSLError, ValueError):
    pass


class EdgeMismatch(PSLError, ValueError):
    pass


class NotANorm(PSLError, ValueError):
    pass


class PatternUnsupported(PSLError, ValueError):
    pass


class SupersingularFirstArgument(PSLError, ValueError):
    pass


class UnsupportedReduction(PSLError, ValueError):
    pass


class RuleChainNotFound(PSLError, ValueError):
    pass


# reports
class HypothesisNotAsserted(PSLError, ValueError):
    pass


class ConfigParse(PSLError, ValueError):
    pass
