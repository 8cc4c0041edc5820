"""Shared exception types."""


class DomainError(ValueError):
    """Invalid label or inadmissible label combination."""


class AxiomError(ValueError):
    """Input data violates a fusion-ring axiom."""


class CapabilityError(RuntimeError):
    """Category lacks the tables required for the requested operation."""


class PoleError(ValueError):
    """Evaluation at (or too close to) a pole of a rational function."""

    def __init__(self, message, pole=None):
        super().__init__(message)
        self.pole = pole
