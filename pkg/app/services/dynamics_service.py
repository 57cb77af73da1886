"""
Dynamics Service - equations of motion of the grating modes and emitters.

Rotating frame: envelopes α̃₁, α̃₂, α̃₃, ρ̃_ge oscillate at ω, ω′, 2ω − ω′ and
2ω − ω′ respectively, which makes the system autonomous. The lab-frame
equations keep the explicit drive phases and exist for cross-checking.

State vectors are complex numpy arrays laid out as
[α₁, α₂, α₃, ρ_ge⁽¹⁾, ρ_ee⁽¹⁾, (ρ_ge⁽²⁾, ρ_ee⁽²⁾)]; ρ_ee sits in a complex slot
with imaginary part 0.
"""
import cmath
from typing import Callable, Union

import numpy as np

from app.schemas.params import CoupledEmitterParams, SingleEmitterParams
from app.schemas.state import HybridState

RHS = Callable[[float, np.ndarray], np.ndarray]
AnyParams = Union[SingleEmitterParams, CoupledEmitterParams]


def _single_derivative(a1, a2, a3, r, p, eps1, eps2, eps3, beta, chi, f, ep, epp, gamma_ee):
    inv = 2.0 * p - 1.0
    da1 = -eps1 * a1 - 2j * chi * a1.conjugate() * a2 * a3 + ep
    da2 = -eps2 * a2 - 1j * chi * a3.conjugate() * a1 * a1 + epp
    da3 = -eps3 * a3 - 1j * chi * a2.conjugate() * a1 * a1 - 1j * f * r
    dr = -beta * r + 1j * f.conjugate() * a3 * inv
    dp = -gamma_ee * p - 2.0 * (f * a3.conjugate() * r).imag
    return da1, da2, da3, dr, complex(dp, 0.0)


def _coupled_derivative(a1, a2, a3, r1, p1, r2, p2, eps1, eps2, eps3, beta1, beta2,
                        chi, f1, f2, g, ep, epp, gamma_ee_1, gamma_ee_2):
    inv1 = 2.0 * p1 - 1.0
    inv2 = 2.0 * p2 - 1.0
    exchange = (g * r2.conjugate() * r1).imag
    da1 = -eps1 * a1 - 2j * chi * a1.conjugate() * a2 * a3 + ep
    da2 = -eps2 * a2 - 1j * chi * a3.conjugate() * a1 * a1 + epp
    da3 = -eps3 * a3 - 1j * chi * a2.conjugate() * a1 * a1 - 1j * f1 * r1 - 1j * f2 * r2
    dr1 = -beta1 * r1 + 1j * f1.conjugate() * a3 * inv1 + 1j * g.conjugate() * inv1 * r2
    dr2 = -beta2 * r2 + 1j * f2.conjugate() * a3 * inv2 + 1j * g * inv2 * r1
    dp1 = -gamma_ee_1 * p1 - 2.0 * (f1 * a3.conjugate() * r1).imag - 2.0 * exchange
    dp2 = -gamma_ee_2 * p2 - 2.0 * (f2 * a3.conjugate() * r2).imag + 2.0 * exchange
    return da1, da2, da3, dr1, complex(dp1, 0.0), dr2, complex(dp2, 0.0)


class DynamicsService:
    """Right-hand sides of the single- and two-emitter systems."""

    # ========================================================================
    # State-level API
    # ========================================================================

    @staticmethod
    def rhs_single(state: HybridState, params: SingleEmitterParams) -> HybridState:
        """Time derivative of every component; the ρ_ee entry is real."""
        derivative = make_rotating_rhs(params)(0.0, state.to_vector())
        return HybridState.from_vector(derivative)

    @staticmethod
    def rhs_coupled(state: HybridState, params: CoupledEmitterParams) -> HybridState:
        derivative = make_rotating_rhs(params)(0.0, state.to_vector())
        return HybridState.from_vector(derivative)

    @staticmethod
    def rhs(state: HybridState, params: AnyParams) -> HybridState:
        if params.n_emitters == 1:
            return DynamicsService.rhs_single(state, params)
        return DynamicsService.rhs_coupled(state, params)

    @staticmethod
    def residual_norm(state: HybridState, params: AnyParams) -> float:
        """Infinity norm of the rotating-frame derivative at state."""
        derivative = make_rotating_rhs(params)(0.0, state.to_vector())
        return float(np.max(np.abs(derivative)))


# ============================================================================
# Vector kernels handed to the integrator
# ============================================================================

def make_rotating_rhs(params: AnyParams) -> RHS:
    """Autonomous rotating-frame RHS f(t, y) bound to params."""
    chi, ep, epp = params.chi, complex(params.eps_p), complex(params.eps_p_prime)
    eps1, eps2, eps3 = params.eps1, params.eps2, params.eps3

    if params.n_emitters == 1:
        beta, f, gamma_ee = params.beta, complex(params.f), params.gamma_ee

        def rhs(t: float, y: np.ndarray) -> np.ndarray:
            a1, a2, a3, r, p = y.tolist()
            return np.array(
                _single_derivative(a1, a2, a3, r, p.real, eps1, eps2, eps3, beta, chi, f, ep, epp, gamma_ee),
                dtype=complex,
            )

        return rhs

    beta1, beta2 = params.beta1, params.beta2
    f1, f2, g = complex(params.f1), complex(params.f2), complex(params.g)
    gamma_ee_1, gamma_ee_2 = params.gamma_ee_1, params.gamma_ee_2

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        a1, a2, a3, r1, p1, r2, p2 = y.tolist()
        return np.array(
            _coupled_derivative(
                a1, a2, a3, r1, p1.real, r2, p2.real, eps1, eps2, eps3, beta1, beta2,
                chi, f1, f2, g, ep, epp, gamma_ee_1, gamma_ee_2,
            ),
            dtype=complex,
        )

    return rhs


def make_lab_rhs(params: AnyParams) -> RHS:
    """
    Lab-frame RHS with explicit e^{−iωt}, e^{−iω′t} drives.

    Reuses the rotating-frame kernels with bare frequencies in place of the
    detunings; the FWM phase factors are carried by the amplitudes themselves.
    """
    omega, omega_p = params.omega_drive, params.omega_drive_prime
    chi = params.chi
    eps1 = complex(params.gamma1, params.omega1)
    eps2 = complex(params.gamma2, params.omega2)
    eps3 = complex(params.gamma3, params.omega3)

    if params.n_emitters == 1:
        beta = complex(params.gamma_eg, params.omega_eg)
        f, gamma_ee = complex(params.f), params.gamma_ee

        def rhs(t: float, y: np.ndarray) -> np.ndarray:
            a1, a2, a3, r, p = y.tolist()
            ep = params.eps_p * cmath.exp(-1j * omega * t)
            epp = params.eps_p_prime * cmath.exp(-1j * omega_p * t)
            return np.array(
                _single_derivative(a1, a2, a3, r, p.real, eps1, eps2, eps3, beta, chi, f, ep, epp, gamma_ee),
                dtype=complex,
            )

        return rhs

    beta1 = complex(params.gamma_eg_1, params.omega_eg_1)
    beta2 = complex(params.gamma_eg_2, params.omega_eg_2)
    f1, f2, g = complex(params.f1), complex(params.f2), complex(params.g)
    gamma_ee_1, gamma_ee_2 = params.gamma_ee_1, params.gamma_ee_2

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        a1, a2, a3, r1, p1, r2, p2 = y.tolist()
        ep = params.eps_p * cmath.exp(-1j * omega * t)
        epp = params.eps_p_prime * cmath.exp(-1j * omega_p * t)
        return np.array(
            _coupled_derivative(
                a1, a2, a3, r1, p1.real, r2, p2.real, eps1, eps2, eps3, beta1, beta2,
                chi, f1, f2, g, ep, epp, gamma_ee_1, gamma_ee_2,
            ),
            dtype=complex,
        )

    return rhs


def lab_to_envelopes(t: np.ndarray, columns: np.ndarray, params: AnyParams) -> np.ndarray:
    """Strip the carrier phases from lab-frame columns (n_components x n_times)."""
    omega, omega_p = params.omega_drive, params.omega_drive_prime
    fwm = params.fwm_frequency
    phases = [np.exp(1j * omega * t), np.exp(1j * omega_p * t), np.exp(1j * fwm * t)]
    phases += [np.exp(1j * fwm * t), np.ones_like(t, dtype=complex)] * params.n_emitters
    return columns * np.vstack(phases)

