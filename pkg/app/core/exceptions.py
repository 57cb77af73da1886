"""
Exception hierarchy.

Every error carries the process exit code the CLI reports for it.
"""
from typing import List, Optional


class FWMError(Exception):
    exit_code: int = 3

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


# ============================================================================
# Configuration errors (exit 2)
# ============================================================================

class ConfigError(FWMError):
    exit_code = 2


class ConfigParseError(ConfigError):
    """Config text is not valid TOML."""


class ConfigValidationError(ConfigError):
    """Config is well-formed but violates a domain invariant."""

    def __init__(self, detail: str, fields: Optional[List[str]] = None):
        super().__init__(detail)
        self.fields = fields or []


class UnknownConfigKey(ConfigError):
    def __init__(self, key: str):
        super().__init__(f"Unknown config key: {key}")
        self.key = key


# ============================================================================
# Simulation errors (exit 3)
# ============================================================================

class SimulationError(FWMError):
    exit_code = 3


class NonConvergenceError(SimulationError):
    def __init__(self, detail: str, iterations: int = 0):
        super().__init__(detail)
        self.iterations = iterations


class InvariantViolation(SimulationError):
    """Density-matrix positivity or population range broken beyond tolerance."""

    def __init__(self, detail: str, time: float = 0.0, excess: float = 0.0):
        super().__init__(detail)
        self.time = time
        self.excess = excess


class IntegratorFailure(SimulationError):
    pass


class DegenerateDenominator(SimulationError):
    def __init__(self, denominator: complex):
        super().__init__(f"Steady-state denominator vanishes: |D| = {abs(denominator):.3e}")
        self.denominator = denominator


class ComplexRoots(SimulationError):
    def __init__(self, discriminant: float):
        super().__init__(
            f"Enhancement condition has no real roots (discriminant {discriminant:.3e})"
        )
        self.discriminant = discriminant


class NoInteriorOptimum(SimulationError):
    def __init__(self, param_value: float, factor: float):
        super().__init__(
            f"Maximum factor {factor:.6g} lies on the sweep boundary at {param_value:.6g}"
        )
        self.param_value = param_value
        self.factor = factor


class OutputWriteError(SimulationError):
    pass
