"""
Figure Presets

Parameter sets of the four reference scenarios, in units of the first drive
frequency ω. Each preset carries its default sweep and baseline.
"""
from typing import Any, Dict

from app.core.config import settings
from app.core.exceptions import ConfigValidationError
from app.schemas.sweep import BaselineKind

PRESET_NAMES = ("fig1", "fig2", "fig3", "fig4")


# ============================================================================
# Single emitter: suppression (fig1, fig2) and enhancement (fig3)
# ============================================================================

_SUPPRESSION_PARAMS: Dict[str, Any] = {
    "variant": "single",
    "omega1": 1.0,
    "omega2": 0.5,
    "omega3": 1.5,
    "omega_eg": 1.5,
    "gamma1": 0.01,
    "gamma2": 0.01,
    "gamma3": 0.01,
    "gamma_eg": 1e-5,
    "gamma_ee": 2e-5,  # γ_ee = 2γ_eg
    "chi": 1e-5,
    "f": 0.1,
    "omega_drive": 1.0,
    "omega_drive_prime": 0.5,
}

_SUPPRESSION_SWEEP: Dict[str, Any] = {
    "target": "omega_eg",
    "start": 1.3,
    "stop": 1.7,
    "n_points": 801,
}

_ENHANCEMENT_PARAMS: Dict[str, Any] = {
    **_SUPPRESSION_PARAMS,
    "omega3": 1.85,
    "omega_eg": 1.52,
}

_ENHANCEMENT_SWEEP: Dict[str, Any] = {
    "target": "omega_eg",
    "start": 1.40,
    "stop": 1.70,
    "n_points": 1201,
}


# ============================================================================
# Two coupled emitters (fig4)
# ============================================================================

_COUPLED_PARAMS: Dict[str, Any] = {
    "variant": "coupled",
    "omega1": 1.0,
    "omega2": 0.5,
    "omega3": 1.90,
    "omega_eg_1": 1.5732,
    "omega_eg_2": 1.5810,
    "gamma1": 0.01,
    "gamma2": 0.01,
    "gamma3": 0.01,
    "gamma_ee_1": 1e-5,
    "gamma_ee_2": 1e-5,
    "gamma_eg_1": 5e-6,  # γ_eg = γ_ee/2
    "gamma_eg_2": 5e-6,
    "chi": 1e-5,
    "f1": 0.1909,
    "f2": 0.1909,
    "g": "0.1+0.0101j",
    "omega_drive": 1.0,
    "omega_drive_prime": 0.5,
}

_COUPLED_SWEEP: Dict[str, Any] = {
    "target": "omega_eg_1",
    "start": 1.40,
    "stop": 1.70,
    "n_points": 1201,
}


PRESETS: Dict[str, Dict[str, Any]] = {
    "fig1": {
        "description": "Suppressed conversion, emitter resonant with 2ω − ω′",
        "params": _SUPPRESSION_PARAMS,
        "sweep": _SUPPRESSION_SWEEP,
        "baseline": BaselineKind.RESONANT_NO_EMITTER,
    },
    "fig2": {
        "description": "Excited-state population over the suppression sweep",
        "params": _SUPPRESSION_PARAMS,
        "sweep": _SUPPRESSION_SWEEP,
        "baseline": BaselineKind.RESONANT_NO_EMITTER,
    },
    "fig3": {
        "description": "Enhanced conversion with an off-resonant converted mode",
        "params": _ENHANCEMENT_PARAMS,
        "sweep": _ENHANCEMENT_SWEEP,
        "baseline": BaselineKind.OFF_RESONANT_NO_EMITTER,
    },
    "fig4": {
        "description": "Enhanced conversion with two coupled emitters",
        "params": _COUPLED_PARAMS,
        "sweep": _COUPLED_SWEEP,
        "baseline": BaselineKind.OFF_RESONANT_NO_EMITTER,
    },
}


def get_preset(name: str) -> Dict[str, Any]:
    """Fresh copy of a preset; params include the default pump amplitudes."""
    if name not in PRESETS:
        raise ConfigValidationError(
            f"preset: unknown preset '{name}' (choose from {', '.join(PRESET_NAMES)})",
            fields=["preset"],
        )
    preset = PRESETS[name]
    pump = settings.FWM_DEFAULT_PUMP
    return {
        "description": preset["description"],
        "params": {"eps_p": pump, "eps_p_prime": pump, **preset["params"]},
        "sweep": dict(preset["sweep"]),
        "baseline": preset["baseline"],
    }
