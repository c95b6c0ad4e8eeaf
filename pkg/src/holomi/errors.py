"""Exception types raised by holomi."""

from __future__ import annotations


class HolomiError(Exception):
    """Base class for every error raised by the package."""


class DomainError(HolomiError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class OverExtremal(DomainError):
    pass


class NonPositiveMass(DomainError):
    pass


class CoincidentPoints(DomainError):
    pass


class SectorUnsupported(DomainError):
    pass


class NoHorizon(DomainError):
    pass


class BadBranch(DomainError):
    pass


class NotPowerOfBranch(DomainError):
    pass


class BlockOutOfRange(DomainError):
    pass


class NonConvergent(HolomiError, ArithmeticError):
    """A q-series needed more terms than the hard cap allows."""


class NoBracket(HolomiError, ArithmeticError):
    """The root search found no sign change over its bracketing interval."""
