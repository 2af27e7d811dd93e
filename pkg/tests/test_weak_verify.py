from __future__ import annotations

import math

import pytest

from brio_riemann.core.errors import DomainError
from brio_riemann.lab.weak_verify import (
    ResidualReport,
    bump_residual,
    make_bump,
    perturb_delta,
    random_bumps,
    weak_residual,
)
from brio_riemann.solvers.brio_solver import solve_riemann
from brio_riemann.solvers.limit_models import solve_single_param, solve_transport
from conftest import fp, st

BOUND = 1e-8


@pytest.fixture
def transport_delta():
    return solve_transport(st(1.0, 2.0), st(-1.0, 2.0))


class TestBump:
    def test_values(self):
        bump = make_bump((0.0, 1.0), (1.0, 0.5))
        assert bump(0.0, 1.0) == 1.0
        assert bump(1.0, 1.0) == 0.0
        assert bump(0.0, 0.5) == 0.0
        assert bump(0.5, 1.0) == pytest.approx(math.exp(-1.0 / 3.0), abs=1e-12)
        assert bump(0.5, 1.0) == pytest.approx(0.716531, abs=1e-6)

    def test_gradient_matches_finite_differences(self):
        bump = make_bump((0.2, 1.1), (0.8, 0.4))
        h = 1e-6
        for x, t in [(0.3, 1.0), (-0.1, 1.3), (0.6, 1.15)]:
            phi_x, phi_t = bump.gradient(x, t)
            assert phi_x == pytest.approx((bump(x + h, t) - bump(x - h, t)) / (2 * h), abs=1e-7)
            assert phi_t == pytest.approx((bump(x, t + h) - bump(x, t - h)) / (2 * h), abs=1e-7)

    def test_support_range(self):
        bump = make_bump((0.0, 1.0), (1.0, 0.5))
        assert bump.t_range == (0.5, 1.5)
        assert bump.x_range(1.0) == pytest.approx((-1.0, 1.0))

    @pytest.mark.parametrize("center,radii", [
        ((0.0, 0.4), (1.0, 0.5)),
        ((0.0, 0.5), (1.0, 0.5)),
        ((0.0, 1.0), (0.0, 0.5)),
        ((0.0, 1.0), (1.0, -0.1)),
    ])
    def test_rejects_bad_support(self, center, radii):
        with pytest.raises(DomainError):
            make_bump(center, radii)

    def test_random_bumps_stay_in_positive_time(self, rng):
        for bump in random_bumps(rng, 50):
            assert bump.t_range[0] > 0.0


class TestExactSolutions:
    def test_two_shocks(self, rng, two_shock_data):
        report = weak_residual(solve_riemann(*two_shock_data), random_bumps(rng, 10))
        assert report.max_abs["u"] <= BOUND
        assert report.max_abs["v"] <= BOUND
        assert report.passed()

    def test_transport_delta(self, rng, transport_delta):
        bumps = random_bumps(rng, 10, x_span=(-0.5, 0.5))
        report = weak_residual(transport_delta, bumps)
        assert max(report.max_abs.values()) <= BOUND

    def test_single_param_delta(self, rng):
        sol = solve_single_param(st(2.0, 1.0), st(0.0, 1.0), 0.5)
        bumps = random_bumps(rng, 10, x_span=(0.5, 1.5))
        report = weak_residual(sol, bumps)
        assert max(report.max_abs.values()) <= BOUND

    def test_single_param_contact_rarefaction(self, rng):
        sol = solve_single_param(st(0.0, 2.0), st(1.0, 1.5), 0.5)
        report = weak_residual(sol, random_bumps(rng, 10))
        assert max(report.max_abs.values()) <= BOUND

    def test_two_rarefactions(self, rng, two_rarefaction_data):
        report = weak_residual(solve_riemann(*two_rarefaction_data), random_bumps(rng, 10))
        assert max(report.max_abs.values()) <= BOUND

    def test_transport_vacuum(self, rng):
        sol = solve_transport(st(-1.0, 1.0), st(1.0, 1.0))
        assert sol.has_vacuum
        report = weak_residual(sol, random_bumps(rng, 10))
        assert max(report.max_abs.values()) <= BOUND

    def test_per_bump_entries(self, rng, transport_delta):
        bumps = random_bumps(rng, 4)
        report = weak_residual(transport_delta, bumps)
        assert len(report.per_bump) == 4
        assert set(report.per_bump[0]) == {"u", "v"}


class TestPerturbedDelta:
    def test_sigma_shift_is_first_order(self, transport_delta):
        bump = make_bump((0.3, 1.0), (1.0, 0.5))
        small = bump_residual(perturb_delta(transport_delta, d_sigma=0.01), bump)["v"]
        large = bump_residual(perturb_delta(transport_delta, d_sigma=0.02), bump)["v"]
        assert abs(small) > 1e-6
        assert 1.6 <= large / small <= 2.4

    @pytest.mark.parametrize("shift", [
        {"d_sigma": 1e-3}, {"d_u_delta": 1e-3}, {"d_rate": 1e-3},
    ])
    def test_any_parameter_shift_is_detected(self, transport_delta, shift):
        bump = make_bump((0.3, 1.0), (0.8, 0.5))
        residual = bump_residual(perturb_delta(transport_delta, **shift), bump)
        assert max(abs(value) for value in residual.values()) > 10 * BOUND

    def test_single_param_sigma_shift(self, rng):
        sol = solve_single_param(st(2.0, 1.0), st(0.0, 1.0), 0.5)
        report = weak_residual(perturb_delta(sol, d_sigma=0.01), [make_bump((1.0, 1.0), (0.8, 0.5))])
        assert report.max_abs["v"] > 1e-6
        assert not report.passed()

    def test_perturb_needs_delta(self, two_shock_data):
        with pytest.raises(DomainError):
            perturb_delta(solve_riemann(*two_shock_data), d_sigma=0.1)


def test_needs_bumps(transport_delta):
    with pytest.raises(DomainError):
        weak_residual(transport_delta, [])


def test_report_bound():
    report = ResidualReport(per_bump=[{"u": 1e-9, "v": -3e-9}], max_abs={"u": 1e-9, "v": 3e-9})
    assert report.passed()
    assert not report.passed(bound=2e-9)
