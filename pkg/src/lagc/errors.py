"""Exception hierarchy shared by every lagc module."""


class LagcError(Exception):
    """Base class for all errors raised by lagc."""


class ContractError(LagcError, ValueError):
    """An input violated a documented precondition."""


class SingularMatrixError(LagcError, ArithmeticError):
    """A linear system was singular to working tolerance."""

    def __init__(self, message, sigma_min):
        super().__init__(f"{message} (sigma_min={sigma_min:.3e})")
        self.sigma_min = sigma_min


class DegenerateFormError(ContractError):
    """The raw symplectic form is not an isomorphism."""


class ChartDomainError(ContractError):
    """A chart was requested on a pair that is not complementary."""

    def __init__(self, message, sigma_min):
        super().__init__(f"{message} (sigma_min={sigma_min:.3e})")
        self.sigma_min = sigma_min


class NotInChartError(ContractError):
    """A Lagrangian meets the vertical of a chart nontrivially."""

    def __init__(self, message, intersection_dim):
        super().__init__(f"{message} (intersection dimension {intersection_dim})")
        self.intersection_dim = intersection_dim


class RefinementError(LagcError, RuntimeError):
    """The delta-halving loop fell through its floor."""


class SamplingError(LagcError, RuntimeError):
    """Random sampling exhausted its try budget."""

    def __init__(self, message, worst_sigma):
        super().__init__(message)
        self.worst_sigma = list(worst_sigma)
