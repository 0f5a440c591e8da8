"""Exception types raised by phigroups."""

from __future__ import annotations


class GroupError(ValueError):
    """Base class for every input/parameter error raised by this package."""


class NotClosed(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NotAssociative(GroupError):
    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        a, b, c = triple
        super().__init__(f"table is not associative: (a*b)*c != a*(b*c) for a={a}, b={b}, c={c}")


class NoInverse(GroupError):
    pass


class InvalidParameter(GroupError):
    pass


class SizeBudgetExceeded(GroupError):
    pass


class LatticeBudgetExceeded(GroupError):
    pass


class ActionNotAutomorphism(GroupError):
    pass


class ActionNotHomomorphism(GroupError):
    pass


class NoIrreducibleAction(GroupError):
    pass


class NotNormal(GroupError):
    pass


class PrimeDoesNotDivide(GroupError):
    pass


class NotPrimePower(GroupError):
    pass


class NotSchmidt(GroupError):
    pass


class NotApplicable(GroupError):
    pass


class DescriptorError(GroupError):
    pass
