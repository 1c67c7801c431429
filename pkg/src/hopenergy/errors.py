"""Semantic exception hierarchy shared across the library."""


class HopEnergyError(Exception):
    """Base class for all library errors."""


class DomainError(HopEnergyError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class EvalError(HopEnergyError, ArithmeticError):
    """A closed-form expression left its region of validity."""


class InfeasibleAtZeroPower(HopEnergyError):
    """The outage model predicts the target is met at nonpositive SNR.

    Raised instead of clamping to zero energy: a silent clamp would corrupt
    energy-ratio comparisons downstream.
    """


class InvalidGeometry(HopEnergyError, ValueError):
    """The sector path-efficiency factor is nonpositive."""


class ConfigError(HopEnergyError, ValueError):
    """A run configuration violates a structural requirement."""


class PreconditionError(HopEnergyError, ValueError):
    """A limit-check hypothesis does not hold for the given parameters."""
