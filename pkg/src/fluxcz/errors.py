"""Exception hierarchy for the fluxcz package."""


class FluxczError(Exception):
    """Base class for all fluxcz-specific errors."""


class ConfigError(FluxczError):
    """Invalid or inconsistent experiment configuration."""


class ConvergenceError(FluxczError):
    """Eigensystem not converged with respect to the oscillator basis size."""


class LabelingError(FluxczError):
    """Dressed state cannot be unambiguously connected to a bare product state."""


class IntegratorError(FluxczError):
    """Time propagation failed its accuracy contract (norm defect too large)."""


class OptimizerError(FluxczError):
    """Drive optimization could not improve on the undriven baseline."""


class CouplerLimitWarning(UserWarning):
    """Coupling element is not small compared to the qubit elements."""
