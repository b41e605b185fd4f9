"""Exception hierarchy shared by every qkdroute module."""

from __future__ import annotations


class QkdRouteError(Exception):
    """Base class for all errors raised by qkdroute."""


class InvalidNetwork(QkdRouteError):
    """Raised when a raw network description violates the model invariants.

    ``violations`` holds every problem found, not only the first one.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InvalidInput(QkdRouteError):
    """Malformed contract, request, trace or configuration data."""


class BuildError(QkdRouteError):
    """A planning problem cannot be constructed from the given contracts."""

    def __init__(self, message: str, contracts: tuple = ()):
        self.contracts = tuple(contracts)
        super().__init__(message)


class InfeasiblePath(QkdRouteError):
    """A path cannot carry a request in the current buffer state."""


class SearchBudgetExceeded(QkdRouteError):
    """An exact search visited more nodes or states than its configured budget."""


class InvalidInstance(QkdRouteError):
    """Adversarial construction parameters outside the supported range."""
