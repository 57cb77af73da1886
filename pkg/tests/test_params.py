import pytest
from pydantic import ValidationError

from app.core.exceptions import InvariantViolation
from app.schemas.params import CoupledEmitterParams, SingleEmitterParams
from app.schemas.state import EmitterState, HybridState, IntegrationSettings

BASE = dict(
    omega1=1.0, omega2=0.5, omega3=1.5, omega_eg=1.5,
    gamma1=0.01, gamma2=0.01, gamma3=0.01, gamma_eg=1e-5, gamma_ee=2e-5,
    chi=1e-5, f=0.1, omega_drive_prime=0.5,
)


def test_fig1_preset_matches_caption(fig1_params):
    assert fig1_params.gamma1 == fig1_params.gamma2 == fig1_params.gamma3 == 0.01
    assert fig1_params.gamma_eg == 1e-5
    assert fig1_params.chi == 1e-5
    assert fig1_params.f == 0.1
    assert fig1_params.omega_eg == 1.5
    assert fig1_params.fwm_frequency == 1.5


def test_fig4_preset_matches_caption(fig4_params):
    assert fig4_params.g == complex(0.1, 0.0101)
    assert fig4_params.f1 == fig4_params.f2 == 0.1909
    assert fig4_params.omega3 == 1.90
    assert (fig4_params.omega_eg_1, fig4_params.omega_eg_2) == (1.5732, 1.5810)
    assert fig4_params.gamma_eg_1 == fig4_params.gamma_ee_1 / 2


@pytest.mark.parametrize("field", ["gamma1", "gamma3", "gamma_eg", "omega2", "omega_eg"])
def test_non_positive_rates_and_frequencies_rejected(field):
    with pytest.raises(ValidationError) as info:
        SingleEmitterParams(**{**BASE, field: -0.01})
    assert field in str(info.value)


def test_negative_chi_rejected():
    with pytest.raises(ValidationError):
        SingleEmitterParams(**{**BASE, "chi": -1e-5})


@pytest.mark.parametrize("raw", [[0.1, 0.0101], {"re": 0.1, "im": 0.0101}, "0.1+0.0101j", complex(0.1, 0.0101)])
def test_complex_inputs_accepted(raw):
    assert SingleEmitterParams(**{**BASE, "f": raw}).f == complex(0.1, 0.0101)


def test_detunings(fig1_params):
    assert fig1_params.eps1 == complex(0.01, 0.0)
    assert fig1_params.eps3 == complex(0.01, 0.0)
    assert fig1_params.beta == complex(1e-5, 0.0)


def test_without_emitters_keeps_modes(fig1_params):
    bare = fig1_params.without_emitters()
    assert bare.f == 0
    assert bare.omega3 == fig1_params.omega3


def test_swapped_twice_is_identity(fig4_params):
    swapped = fig4_params.swapped()
    assert swapped.omega_eg_1 == fig4_params.omega_eg_2
    assert swapped.g == fig4_params.g.conjugate()
    assert swapped.swapped() == fig4_params


def test_first_emitter_only(fig4_params):
    single = fig4_params.first_emitter_only()
    assert single.variant == "single"
    assert single.f == fig4_params.f1
    assert single.omega_eg == fig4_params.omega_eg_1
    assert single.omega3 == fig4_params.omega3


def test_with_updates_revalidates(fig1_params):
    with pytest.raises(ValidationError):
        fig1_params.with_updates(gamma3=0.0)


def test_coupled_params_require_both_emitters():
    with pytest.raises(ValidationError):
        CoupledEmitterParams(**{k: v for k, v in BASE.items() if k not in ("omega_eg", "f", "gamma_eg", "gamma_ee")})


def test_settings_horizon_invariant():
    with pytest.raises(ValidationError):
        IntegrationSettings(max_time=10.0, residual_window=20.0)
    with pytest.raises(ValidationError):
        IntegrationSettings(rel_tol=0.0)


def test_settings_resolved_for_fig1(fig1_params):
    resolved = IntegrationSettings().resolved_for(fig1_params)
    assert resolved.residual_window == pytest.approx(1000.0)
    assert resolved.max_time == pytest.approx(50 / 1e-5)
    assert resolved.rel_tol == 1e-9
    assert resolved.abs_tol == 1e-12


def test_state_vector_layout():
    state = HybridState(
        alpha=(1 + 2j, 3j, -1.0),
        emitters=(EmitterState(rho_ge=0.1j, rho_ee=0.2), EmitterState(rho_ge=0.05, rho_ee=0.1)),
    )
    vector = state.to_vector()
    assert list(vector) == [1 + 2j, 3j, -1.0, 0.1j, 0.2, 0.05, 0.1]
    assert HybridState.from_vector(vector) == state


def test_zero_state_is_physical():
    state = HybridState.zero(2)
    assert state.n_emitters == 2
    assert state.invariant_excess() == 0.0
    assert state.emitters[0].inversion == -1.0


@pytest.mark.parametrize("emitter", [
    EmitterState(rho_ee=1.5),
    EmitterState(rho_ee=-0.1),
    EmitterState(rho_ge=0.6, rho_ee=0.5),
])
def test_unphysical_emitters_detected(emitter):
    state = HybridState(alpha=(0j, 0j, 0j), emitters=(emitter,))
    with pytest.raises(InvariantViolation):
        state.check_invariants(1e-9)
