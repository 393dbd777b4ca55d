"""Exception types raised across the package."""


class CausalGameError(Exception):
    pass


class InvalidMode(CausalGameError, ValueError):
    pass


class InvalidConfig(CausalGameError, ValueError):
    pass


class MismatchedCarrier(CausalGameError, ValueError):
    """Analytic overlap requested for modes with different k0."""


class QuadratureFailure(CausalGameError, RuntimeError):
    """Adaptive quadrature hit its depth cap before reaching the tolerance."""


class NoViolation(CausalGameError, RuntimeError):
    pass


class UnknownMode(CausalGameError, KeyError):
    pass


class TruncationOverflow(CausalGameError, RuntimeError):
    pass


class InvalidEta(CausalGameError, ValueError):
    pass
