import pytest

from app.core.exceptions import NoInteriorOptimum
from app.schemas.params import CoupledEmitterParams
from app.schemas.sweep import BaselineKind, SweepSpec
from app.services.analytic_service import AnalyticService
from app.services.optimum_service import OptimumService, golden_section_max

OFF_RESONANT = BaselineKind.OFF_RESONANT_NO_EMITTER


def test_golden_section_recovers_parabola_peak():
    x, value, evaluations = golden_section_max(lambda v: 3.0 - (v - 0.3721) ** 2, 0.0, 1.0, tol=1e-5)
    assert x == pytest.approx(0.3721, abs=1e-5)
    assert value == pytest.approx(3.0, abs=1e-9)
    assert evaluations > 2


def test_stub_evaluator_optimum(fig1_params):
    spec = SweepSpec(target="chi", start=0.1, stop=1.0, n_points=19, base_params=fig1_params)
    result = OptimumService().find_optimum(spec, OFF_RESONANT, evaluator=lambda v: -((v - 0.537) ** 2))

    assert result.param_value == pytest.approx(0.537, abs=1e-5)
    assert result.bracket[0] < 0.537 < result.bracket[1]
    assert result.baseline_intensity == 1.0
    assert result.seed is None


def test_boundary_maximum_rejected(fig1_params):
    spec = SweepSpec(target="chi", start=0.1, stop=1.0, n_points=10, base_params=fig1_params)
    with pytest.raises(NoInteriorOptimum) as info:
        OptimumService().find_optimum(spec, OFF_RESONANT, evaluator=lambda v: v)
    assert info.value.param_value == 1.0


def test_fig3_interior_optimum_near_enhancement_root(fig3_fast_spec):
    result = OptimumService().find_optimum(fig3_fast_spec, OFF_RESONANT)
    root = AnalyticService.enhancement_roots(fig3_fast_spec.base_params, -1.0).omega_eg_enhancement

    assert 1.50 <= result.param_value <= 1.56
    assert abs(result.param_value - root) < 0.01
    assert result.seed == pytest.approx(root)
    assert result.factor > 10
    assert result.fwm_intensity == result.factor * result.baseline_intensity


def test_fig4_coupled_optimum(fig4_fast_spec):
    result = OptimumService().find_optimum(fig4_fast_spec, OFF_RESONANT)
    assert result.param_value == pytest.approx(1.5732, abs=0.01)
    assert 600 <= result.factor <= 3200


def test_decoupled_pair_matches_single_emitter(fig3_fast_spec):
    single_spec = fig3_fast_spec.with_window(1.45, 1.60, 301)
    single_params = single_spec.base_params
    coupled = CoupledEmitterParams(
        **single_params.model_dump(exclude={"variant", "omega_eg", "gamma_eg", "gamma_ee", "f"}),
        omega_eg_1=single_params.omega_eg, omega_eg_2=1.6,
        gamma_ee_1=single_params.gamma_ee, gamma_ee_2=1e-5,
        gamma_eg_1=single_params.gamma_eg, gamma_eg_2=5e-6,
        f1=single_params.f, f2=0.0, g=0.0,
    )
    coupled_spec = SweepSpec(
        target="omega_eg_1", start=1.45, stop=1.60, n_points=301, solver="fixed_point", base_params=coupled,
    )

    report = OptimumService().coupled_vs_single_report(single_spec, coupled_spec)
    assert report.ratio == pytest.approx(1.0, abs=1e-6)


def test_relabelled_emitters_share_the_optimum(fig4_fast_spec):
    spec = fig4_fast_spec.with_window(1.50, 1.65, 301)
    swapped = SweepSpec(
        target="omega_eg_2", start=1.50, stop=1.65, n_points=301, solver="fixed_point",
        base_params=spec.base_params.swapped(),
    )
    service = OptimumService()
    original = service.find_optimum(spec, OFF_RESONANT)
    relabelled = service.find_optimum(swapped, OFF_RESONANT)

    assert relabelled.param_value == pytest.approx(original.param_value, abs=1e-5)
    assert relabelled.factor == pytest.approx(original.factor, rel=1e-6)
