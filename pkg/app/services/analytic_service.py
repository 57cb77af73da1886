"""
Analytic Steady-State Service

Closed forms for the converted-mode envelope α̃₃, the enhancement-resonance
roots and a damped fixed-point solver for the full algebraic steady state.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from app.core.exceptions import ComplexRoots, DegenerateDenominator, NonConvergenceError
from app.schemas.analytic import DenominatorBreakdown, EnhancementRoots, InversionEstimate
from app.schemas.params import CoupledEmitterParams, SingleEmitterParams
from app.schemas.state import HybridState, SteadyStateResult
from app.services.dynamics_service import AnyParams, make_rotating_rhs

logger = logging.getLogger(__name__)

DEGENERATE_DENOMINATOR = 1e-30
_TINY = 1e-300


class AnalyticService:

    # ========================================================================
    # Closed forms
    # ========================================================================

    @staticmethod
    def alpha3_single(
        alpha1: complex, alpha2: complex, y: float, params: SingleEmitterParams
    ) -> Tuple[complex, DenominatorBreakdown]:
        """α̃₃ = iχ α̃₂* α̃₁² / (|f|²y/β − ε₃) for a given inversion y."""
        InversionEstimate(y1=y)
        return _alpha3_single(complex(alpha1), complex(alpha2), y, params)

    @staticmethod
    def alpha3_coupled(
        alpha1: complex, alpha2: complex, y1: float, y2: float, params: CoupledEmitterParams
    ) -> Tuple[complex, DenominatorBreakdown]:
        """
        Two-emitter α̃₃ = iχ N α̃₂* α̃₁² / D with

            N = β₁β₂ + y₁y₂|g|²
            D = y₁|f₁|²β₂ + y₂|f₂|²β₁ + i y₁y₂(f₁f₂*g* + f₁*f₂g) − ε₃N

        Reduces to alpha3_single when f₂ = g = 0.
        """
        InversionEstimate(y1=y1, y2=y2)
        return _alpha3_coupled(complex(alpha1), complex(alpha2), y1, y2, params)

    # ========================================================================
    # Enhancement resonance
    # ========================================================================

    @staticmethod
    def enhancement_coefficients(params: SingleEmitterParams, y: float) -> Tuple[float, float, float]:
        """(a, b, c) of a x² + b x + c = 0 with x = ω_eg + ω′ − 2ω."""
        delta3 = params.mode3_detuning
        return delta3, abs(params.f) ** 2 * y, delta3 * params.gamma_eg ** 2

    @staticmethod
    def enhancement_roots(params: SingleEmitterParams, y: float = -1.0) -> EnhancementRoots:
        """
        Both real roots of the enhancement condition, solved exactly.

        The second root (largest |x|) is the one that minimises the closed-form
        denominator. Raises ComplexRoots when the discriminant is negative.
        """
        InversionEstimate(y1=y)
        a, b, c = AnalyticService.enhancement_coefficients(params, y)
        if a == 0.0:
            raise ValueError("enhancement roots need an off-resonant converted mode (ω₃ ≠ 2ω − ω′)")

        discriminant = b * b - 4.0 * a * c
        if discriminant < 0.0:
            raise ComplexRoots(discriminant)

        # cancellation-free form of the quadratic formula
        q = -0.5 * (b + math.copysign(math.sqrt(discriminant), b))
        first, second = q / a, c / q
        x_small, x_large = sorted((first, second), key=abs)

        base = params.fwm_frequency
        return EnhancementRoots(
            x_suppression=x_small,
            x_enhancement=x_large,
            omega_eg_suppression=base + x_small,
            omega_eg_enhancement=base + x_large,
            coefficients=(a, b, c),
            discriminant=discriminant,
        )

    @staticmethod
    def polynomial_residual(x: float, coefficients: Tuple[float, float, float]) -> float:
        a, b, c = coefficients
        return abs((a * x + b) * x + c)

    @staticmethod
    def printed_root_guess(params: SingleEmitterParams, y: float = -1.0) -> Tuple[float, float]:
        """
        The approximate two-root expression usually quoted for this condition,
        x = |f|²y/Δ₃ ∓ sqrt(|f|⁴y²/Δ₃² − 4γ_eg²), returned as ω_eg values.

        Kept as a seed and for comparison; enhancement_roots is exact.
        """
        delta3 = params.mode3_detuning
        lead = abs(params.f) ** 2 * y / delta3
        root = math.sqrt(max(lead * lead - 4.0 * params.gamma_eg ** 2, 0.0))
        base = params.fwm_frequency
        return base + lead - root, base + lead + root

    # ========================================================================
    # Fixed point of the full steady-state system
    # ========================================================================

    def fixed_point_solve(
        self,
        params: AnyParams,
        init: Optional[HybridState] = None,
        damping: float = 0.5,
        tol: float = 1e-12,
        max_iterations: int = 100_000,
    ) -> SteadyStateResult:
        """
        Damped Gauss-Seidel iteration: α̃₁, α̃₂ given α̃₃; α̃₃ from the closed
        form; then the emitter coherences and populations given α̃₃.

        Starts from the pump-linearised amplitudes with empty emitters unless
        init is given. Converged when every component's relative update is
        below tol. Raises NonConvergenceError after max_iterations.
        """
        x = init.to_vector() if init is not None else self.linear_guess(params)
        update = _sweep_single if params.n_emitters == 1 else _sweep_coupled

        change = float("inf")
        for iteration in range(1, max_iterations + 1):
            proposal = update(x, params)
            delta = np.abs(proposal - x)
            change = float(np.max(delta / np.maximum(np.abs(x), _TINY)))
            if change < tol:
                x = proposal
                break
            x = x + damping * (proposal - x)
        else:
            raise NonConvergenceError(
                f"Fixed-point iteration did not converge in {max_iterations} iterations "
                f"(last relative update {change:.3e})",
                iterations=max_iterations,
            )

        state = HybridState.from_vector(x)
        derivative = make_rotating_rhs(params)(0.0, x)
        residual = float(np.max(np.abs(derivative)) / max(1.0, float(np.max(np.abs(x)))))
        logger.debug("Fixed point after %d iterations, residual %.3e", iteration, residual)

        return SteadyStateResult(
            state=state,
            converged=True,
            final_residual=residual,
            elapsed_sim_time=0.0,
            solver="fixed_point",
            n_steps=iteration,
            max_invariant_excess=state.invariant_excess(),
        )

    @staticmethod
    def linear_guess(params: AnyParams) -> np.ndarray:
        """α̃₁ = ε_p/ε₁, α̃₂ = ε_p′/ε₂, emitters in the ground state, α̃₃ from y = −1."""
        x = HybridState.zero(params.n_emitters).to_vector()
        x[0] = params.eps_p / params.eps1
        x[1] = params.eps_p_prime / params.eps2
        return (_sweep_single if params.n_emitters == 1 else _sweep_coupled)(x, params)


# ============================================================================
# Unvalidated kernels (hot path of the fixed-point iteration)
# ============================================================================

def _alpha3_single(a1: complex, a2: complex, y: float, params: SingleEmitterParams):
    emitter_term = abs(params.f) ** 2 * y / params.beta
    bare_term = -params.eps3
    denominator = emitter_term + bare_term
    if abs(denominator) < DEGENERATE_DENOMINATOR:
        raise DegenerateDenominator(denominator)
    alpha3 = 1j * params.chi * a2.conjugate() * a1 * a1 / denominator
    return alpha3, DenominatorBreakdown(
        emitter_term=emitter_term, bare_term=bare_term, total=denominator
    )


def _alpha3_coupled(a1: complex, a2: complex, y1: float, y2: float, params: CoupledEmitterParams):
    f1, f2, g = complex(params.f1), complex(params.f2), complex(params.g)
    beta1, beta2 = params.beta1, params.beta2
    numerator = beta1 * beta2 + y1 * y2 * abs(g) ** 2
    emitter_term = (
        y1 * abs(f1) ** 2 * beta2
        + y2 * abs(f2) ** 2 * beta1
        + 1j * y1 * y2 * (f1 * f2.conjugate() * g.conjugate() + f1.conjugate() * f2 * g)
    )
    bare_term = -params.eps3 * numerator
    denominator = emitter_term + bare_term
    if abs(denominator) < DEGENERATE_DENOMINATOR:
        raise DegenerateDenominator(denominator)
    alpha3 = 1j * params.chi * numerator * a2.conjugate() * a1 * a1 / denominator
    return alpha3, DenominatorBreakdown(
        emitter_term=emitter_term, bare_term=bare_term, total=denominator, numerator_factor=numerator
    )


def _pump_update(a1: complex, a2: complex, a3: complex, params: AnyParams) -> Tuple[complex, complex]:
    chi = params.chi
    a1 = (params.eps_p - 2j * chi * a1.conjugate() * a2 * a3) / params.eps1
    a2 = (params.eps_p_prime - 1j * chi * a3.conjugate() * a1 * a1) / params.eps2
    return a1, a2


def _sweep_single(x: np.ndarray, params: SingleEmitterParams) -> np.ndarray:
    a1, a2, a3, _, p = x.tolist()
    a1, a2 = _pump_update(a1, a2, a3, params)
    a3, _ = _alpha3_single(a1, a2, 2.0 * p.real - 1.0, params)

    f, beta = complex(params.f), params.beta
    # ρ_ee = κ/(1 + 2κ) solves the population balance with ρ̃_ge eliminated
    kappa = 2.0 * abs(f) ** 2 * abs(a3) ** 2 * params.gamma_eg / (params.gamma_ee * abs(beta) ** 2)
    p = kappa / (1.0 + 2.0 * kappa)
    r = 1j * f.conjugate() * a3 * (2.0 * p - 1.0) / beta
    return np.array([a1, a2, a3, r, complex(p, 0.0)], dtype=complex)


def _sweep_coupled(x: np.ndarray, params: CoupledEmitterParams) -> np.ndarray:
    a1, a2, a3, _, p1, _, p2 = x.tolist()
    y1, y2 = 2.0 * p1.real - 1.0, 2.0 * p2.real - 1.0
    a1, a2 = _pump_update(a1, a2, a3, params)
    a3, breakdown = _alpha3_coupled(a1, a2, y1, y2, params)

    f1, f2, g = complex(params.f1), complex(params.f2), complex(params.g)
    beta1, beta2 = params.beta1, params.beta2
    det = breakdown.numerator_factor
    source1 = 1j * f1.conjugate() * a3 * y1
    source2 = 1j * f2.conjugate() * a3 * y2
    r1 = (source1 * beta2 + 1j * g.conjugate() * y1 * source2) / det
    r2 = (beta1 * source2 + 1j * g * y2 * source1) / det

    exchange = (g * r2.conjugate() * r1).imag
    p1 = (-2.0 * (f1 * a3.conjugate() * r1).imag - 2.0 * exchange) / params.gamma_ee_1
    p2 = (-2.0 * (f2 * a3.conjugate() * r2).imag + 2.0 * exchange) / params.gamma_ee_2
    p1 = min(max(p1, 0.0), 1.0)
    p2 = min(max(p2, 0.0), 1.0)
    return np.array([a1, a2, a3, r1, complex(p1, 0.0), r2, complex(p2, 0.0)], dtype=complex)
