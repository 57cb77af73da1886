import numpy as np
import pytest

from app.core.exceptions import InvariantViolation
from app.schemas.state import EmitterState, HybridState, IntegrationSettings
from app.schemas.sweep import BaselineKind
from app.services.analytic_service import AnalyticService
from app.services.dynamics_service import make_rotating_rhs
from app.services.integration_service import IntegrationService, component_atol, fastest_rate
from app.services.sweep_service import SweepService


@pytest.fixture
def linear_params(fig1_params):
    return fig1_params.with_updates(chi=0.0, f=0.0)


def test_linear_mode_relaxes_to_closed_form(linear_params):
    result = IntegrationService().integrate_to_steady_state(linear_params)

    assert result.converged
    assert result.solver == "integrate"
    expected = linear_params.eps_p / linear_params.eps1
    assert abs(result.state.alpha[0] - expected) <= 1e-8 * abs(expected)
    assert result.state.alpha3 == 0


def test_resonant_bare_intensity_matches_weak_conversion_formula(fig1_params):
    params = fig1_params.without_emitters()
    result = IntegrationService().integrate_to_steady_state(params)

    a1 = abs(params.eps_p / params.eps1)
    a2 = abs(params.eps_p_prime / params.eps2)
    expected = (params.chi * a1 ** 2 * a2 / params.gamma3) ** 2
    assert result.converged
    assert result.fwm_intensity == pytest.approx(expected, rel=1e-4)


def test_running_out_of_time_is_reported_not_hidden(fig1_params):
    settings = IntegrationSettings(max_time=20.0, residual_window=10.0)
    result = IntegrationService(settings).integrate_to_steady_state(fig1_params)

    assert not result.converged
    assert result.elapsed_sim_time == pytest.approx(20.0)
    assert result.final_residual > settings.steady_residual_tol


def test_unphysical_start_raises(fig1_params):
    init = HybridState(alpha=(0j, 0j, 0j), emitters=(EmitterState(rho_ee=1.5),))
    with pytest.raises(InvariantViolation) as info:
        IntegrationService().integrate_to_steady_state(fig1_params, init)
    assert info.value.excess > 0.4


def test_converged_result_is_a_fixed_point(linear_params, default_settings):
    result = IntegrationService(default_settings).integrate_to_steady_state(linear_params)
    assert result.final_residual <= 10 * default_settings.steady_residual_tol
    assert result.max_invariant_excess <= default_settings.positivity_tol


def test_tolerances_follow_component_size(fig1_params, default_settings):
    linear = AnalyticService.linear_guess(fig1_params)
    atol = component_atol(fig1_params, default_settings)

    assert atol[0] == pytest.approx(default_settings.abs_tol * abs(linear[0]))
    assert atol[2] == pytest.approx(default_settings.abs_tol * abs(linear[2]))
    assert atol[2] < 1e-20
    assert atol[4] < 1e-24


def test_zero_components_fall_back_to_plain_abs_tol(linear_params, default_settings):
    atol = component_atol(linear_params, default_settings)
    assert list(atol[2:]) == [default_settings.abs_tol] * 3


def test_alpha3_test_floors_at_the_tolerance_band(fig1_params, default_settings):
    y = AnalyticService.linear_guess(fig1_params)
    atol = component_atol(fig1_params, default_settings)
    rate = fastest_rate(fig1_params)
    band = default_settings.rel_tol * abs(y[2]) + atol[2]

    def stationary(alpha3_rate):
        dydt = np.zeros_like(y)
        dydt[2] = alpha3_rate
        return IntegrationService._stationarity(y, dydt, atol, rate, fig1_params, default_settings)[1]

    assert 5 * rate * band > default_settings.steady_residual_tol * abs(y[2])
    assert stationary(5 * rate * band)
    assert not stationary(20 * rate * band)


def test_suppressed_intensity_matches_fixed_point(quick_params):
    integrated = IntegrationService().integrate_to_steady_state(quick_params)
    fixed = AnalyticService().fixed_point_solve(quick_params)
    bare = SweepService().baseline_intensity(quick_params, BaselineKind.RESONANT_NO_EMITTER)

    assert integrated.converged
    assert integrated.fwm_intensity / bare < 1e-4
    assert integrated.fwm_intensity == pytest.approx(fixed.fwm_intensity, rel=1e-6)


def test_converged_emitter_state_is_a_fixed_point(quick_params):
    result = IntegrationService().integrate_to_steady_state(quick_params)
    assert result.converged
    derivative = make_rotating_rhs(quick_params)(0.0, result.state.to_vector())
    assert np.max(np.abs(derivative)) <= 10 * IntegrationSettings().steady_residual_tol


def test_lab_frame_matches_rotating_frame_for_linear_system(linear_params):
    settings = IntegrationSettings(rel_tol=1e-11, abs_tol=1e-14)
    deviation = IntegrationService(settings).lab_frame_check(linear_params, horizon=200.0)
    assert deviation < 1e-8


@pytest.mark.slow
def test_fig1_suppression(fig1_params):
    result = IntegrationService().integrate_to_steady_state(fig1_params)
    baseline = SweepService().baseline_intensity(fig1_params, BaselineKind.RESONANT_NO_EMITTER)
    ratio = result.fwm_intensity / baseline

    _, breakdown = AnalyticService.alpha3_single(1.0, 1.0, -1.0, fig1_params)
    predicted = (fig1_params.gamma3 / abs(breakdown.total)) ** 2
    assert result.converged
    assert ratio <= 1e-9
    assert 0.5 <= ratio / predicted <= 2.0
    assert result.max_invariant_excess <= 1e-9


@pytest.mark.slow
@pytest.mark.parametrize("preset", ["fig1_params", "fig3_params", "fig4_params"])
def test_solvers_agree(preset, request):
    params = request.getfixturevalue(preset)
    integrated = IntegrationService().integrate_to_steady_state(params)
    fixed = AnalyticService().fixed_point_solve(params)

    assert integrated.converged
    assert fixed.fwm_intensity == pytest.approx(integrated.fwm_intensity, rel=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("preset", ["fig1_params", "fig4_params"])
def test_lab_frame_matches_rotating_frame(preset, request):
    params = request.getfixturevalue(preset)
    assert IntegrationService().lab_frame_check(params, horizon=1e3) < 1e-6
