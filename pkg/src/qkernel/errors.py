"""Exception hierarchy shared by every kernel module."""


class QKernelError(Exception):
    """Base class for all evaluation errors raised by :mod:`qkernel`."""


class DomainError(QKernelError, ValueError):
    """An argument lies outside the domain of the function."""


class TruncationExceeded(QKernelError):
    """An infinite product would need more factors than the policy allows."""


class PoleAtOmega(QKernelError):
    """A parameter sits on (or within guard distance of) the set q^{-k}."""


class PoleInDenominator(QKernelError):
    """A denominator Pochhammer factor vanishes."""


class ThetaZero(QKernelError):
    """A modified theta function argument sits on q^m, m integer."""


class Divergent(QKernelError):
    """The requested series does not converge for the given argument."""


class SlowConvergence(QKernelError):
    """A series or q-integral hit its term cap before the stop rule fired."""


class NoConvergence(QKernelError):
    """Periodic quadrature reached its node cap without agreement."""


class NonFinite(QKernelError):
    """An integrand produced inf or nan at a quadrature node."""


class DegenerateEndpoints(QKernelError):
    """The two endpoints of a symmetric q-integral coincide."""


class HypothesisViolated(QKernelError):
    """Parameters do not satisfy the hypotheses of a theorem."""
