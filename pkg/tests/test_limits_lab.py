from __future__ import annotations

import math

import pytest

from brio_riemann.core.errors import DomainError, SolverError, UnsupportedCaseError
from brio_riemann.lab.limits_lab import (
    estimate_limit,
    estimate_rate,
    find_region_threshold,
    predicted_limit_both,
    predicted_limit_eps1,
    predicted_scaled_vstar,
    shock_threshold_closed_form,
    summarize_sweep,
    sweep_both,
    sweep_eps1,
)
from brio_riemann.models.domain import Region4, Schedule, ScheduleMode, VacuumFan
from brio_riemann.solvers.brio_solver import classify, sample, solve_riemann
from conftest import fp, st


def _schedule(mode: ScheduleMode, start: float = 1e-2, ratio: float = 0.1, count: int = 9) -> Schedule:
    return Schedule(eps_start=start, ratio=ratio, count=count, mode=mode)


@pytest.fixture
def both_schedule() -> Schedule:
    return _schedule(ScheduleMode.BOTH_EQUAL)


@pytest.fixture
def eps1_schedule() -> Schedule:
    return _schedule(ScheduleMode.EPS1_ONLY)


class TestSchedule:
    def test_geometric(self):
        sch = Schedule(eps_start=1.0, ratio=0.5, count=4)
        assert sch.epsilons() == [1.0, 0.5, 0.25, 0.125]

    def test_floor(self):
        sch = Schedule(eps_start=1e-1, ratio=0.25, count=20, floor=1e-12)
        values = sch.epsilons()
        assert len(values) == 19
        assert min(values) >= 1e-12

    def test_ratio_must_be_below_one(self):
        with pytest.raises(ValueError):
            Schedule(eps_start=1.0, ratio=1.0, count=3)


class TestExactlySolvableFamily:
    def test_closed_form_records(self):
        sch = _schedule(ScheduleMode.EPS1_ONLY, start=1.0, ratio=1e-2, count=4)
        records = sweep_eps1(st(1.0, 1.0), st(-1.0, 1.0), 0.0, sch)
        assert [r.eps1 for r in records] == pytest.approx([1.0, 1e-2, 1e-4, 1e-6])
        for r in records:
            root = math.sqrt(r.eps1)
            assert r.v_star == pytest.approx(1.0 + 1.0 / root, rel=1e-9)
            assert r.sigma1 == pytest.approx(-root, rel=1e-9)
            assert r.sigma2 == pytest.approx(root, rel=1e-9)
            assert r.strength_surrogate == pytest.approx(2.0 + 2.0 * root, rel=1e-9)
            assert r.scaled_vstar == pytest.approx(1.0 + root, rel=1e-9)
            assert r.region is Region4.S1S2

    def test_example_point(self):
        sch = _schedule(ScheduleMode.EPS1_ONLY, start=1e-4, ratio=0.5, count=1)
        (r,) = sweep_eps1(st(1.0, 1.0), st(-1.0, 1.0), 0.0, sch)
        assert r.v_star == pytest.approx(101.0, rel=1e-9)
        assert (r.sigma1, r.sigma2) == pytest.approx((-0.01, 0.01), rel=1e-9)
        assert r.strength_surrogate == pytest.approx(2.02, rel=1e-9)

    def test_sigma_rate(self):
        sch = _schedule(ScheduleMode.EPS1_ONLY, start=1e-2, ratio=0.25, count=8)
        records = sweep_eps1(st(1.0, 1.0), st(-1.0, 1.0), 0.0, sch)
        est = estimate_limit(records, "sigma1")
        assert est.limit == pytest.approx(0.0, abs=1e-3)
        assert est.rate == pytest.approx(0.5, abs=1e-6)
        assert est.extrapolated == pytest.approx(0.0, abs=1e-12)


class TestTransportLimit:
    def test_delta_formation(self, both_schedule):
        left, right = st(1.0, 1.0), st(-1.0, 1.0)
        records = sweep_both(left, right, both_schedule)
        last = records[-1]
        assert last.eps1 == pytest.approx(1e-10)
        assert abs(last.sigma1) <= 1e-3 and abs(last.sigma2) <= 1e-3
        assert last.strength_surrogate == pytest.approx(2.0, abs=1e-3)
        assert all(b.v_star > a.v_star for a, b in zip(records, records[1:]))
        gaps = [r.sigma2 - r.sigma1 for r in records]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        for name in ("sigma1", "sigma2"):
            assert estimate_limit(records, name).rate == pytest.approx(0.5, abs=0.1)

    def test_vacuum_formation(self, both_schedule):
        left, right = st(-1.0, 1.0), st(1.0, 1.0)
        records = sweep_both(left, right, both_schedule)
        logs = [r.log_v_star for r in records]
        assert all(b < a for a, b in zip(logs, logs[1:]))
        last = records[-1]
        assert last.v_star <= 1e-3
        outer = (last.fan_edges[0], last.fan_edges[3])
        assert outer == pytest.approx((-1.0, 1.0), abs=1e-3)
        assert last.fan_edges[1] == pytest.approx(-1.0, abs=1e-3)
        assert last.fan_edges[2] == pytest.approx(-1.0, abs=1e-3)

    def test_vacuum_inside_second_fan(self):
        sol = solve_riemann(st(-1.0, 1.0), st(1.0, 1.0), fp(1e-10, 1e-10))
        for xi in (-0.5, 0.0, 0.5):
            s = sample(sol, xi)
            assert s.v <= 1e-3
            assert s.u == pytest.approx(xi, abs=1e-6)

    def test_requires_both_equal_schedule(self, eps1_schedule):
        with pytest.raises(DomainError):
            sweep_both(st(1.0, 1.0), st(-1.0, 1.0), eps1_schedule)

    def test_requires_velocity_jump(self, both_schedule):
        with pytest.raises(DomainError):
            sweep_both(st(1.0, 1.0), st(1.0, 2.0), both_schedule)

    def test_parallel_matches_serial(self):
        sch = _schedule(ScheduleMode.BOTH_EQUAL, start=1e-1, ratio=0.25, count=4)
        serial = sweep_both(st(1.0, 1.0), st(-1.0, 1.0), sch, n_jobs=1)
        parallel = sweep_both(st(1.0, 1.0), st(-1.0, 1.0), sch, n_jobs=2)
        assert parallel == serial


class TestSingleParamLimit:
    def test_delta_limit(self, eps1_schedule):
        records = sweep_eps1(st(2.0, 1.0), st(0.0, 1.0), 0.25, eps1_schedule)
        last = records[-1]
        assert last.eps1 == pytest.approx(1e-10)
        assert last.sigma1 == pytest.approx(1.0, abs=1e-3)
        assert last.sigma2 == pytest.approx(1.0, abs=1e-3)
        assert last.u_star == pytest.approx(1.25, abs=1e-3)
        assert last.strength_surrogate == pytest.approx(2.0, abs=1e-3)
        assert all(r.region is Region4.S1S2 for r in records)

    def test_contact_rarefaction_limit(self, eps1_schedule):
        records = sweep_eps1(st(0.0, 1.0), st(1.0, 2.0), 0.5, eps1_schedule)
        last = records[-1]
        assert last.u_star == pytest.approx(0.0, abs=1e-4)
        assert last.v_star == pytest.approx(2.0 * math.exp(-2.0), abs=1e-4)
        assert last.region is Region4.R1R2

    def test_solver_failure_carries_eps(self, eps1_schedule):
        with pytest.raises(SolverError) as info:
            sweep_eps1(st(-1.0, 1.0), st(1.0, 1.0), 0.0, eps1_schedule)
        assert "eps1" in info.value.diagnostics

    def test_requires_eps1_schedule(self, both_schedule):
        with pytest.raises(DomainError):
            sweep_eps1(st(2.0, 1.0), st(0.0, 1.0), 0.25, both_schedule)


class TestPredictedLimits:
    @pytest.mark.parametrize("left,right,sigma,rate", [
        ((1.0, 1.0), (-1.0, 1.0), 0.0, 2.0),
        ((2.0, 3.0), (0.0, 5.0), 1.0, 8.0),
    ])
    def test_transport_delta(self, left, right, sigma, rate):
        delta = predicted_limit_both(st(*left), st(*right)).delta_shock
        assert delta.sigma == pytest.approx(sigma)
        assert delta.strength_rate == pytest.approx(rate)

    def test_transport_vacuum(self):
        sol = predicted_limit_both(st(-1.0, 0.5), st(1.0, 2.0))
        fan = next(w for w in sol.waves if isinstance(w, VacuumFan))
        assert (fan.xi_left, fan.xi_right) == (-1.0, 1.0)

    def test_single_param_delta(self):
        delta = predicted_limit_eps1(st(2.0, 1.0), st(0.0, 1.0), 0.5).delta_shock
        assert (delta.sigma, delta.u_delta, delta.strength_rate) == pytest.approx((1.0, 1.5, 2.0))

    def test_single_param_contact_rarefaction(self):
        sol = predicted_limit_eps1(st(0.0, 1.0), st(1.0, 2.0), 0.5)
        assert sol.waves[0].speed == -0.5
        assert sol.intermediate.as_tuple() == pytest.approx((0.0, 2.0 * math.exp(-2.0)))

    def test_region_two_is_unsupported(self):
        with pytest.raises(UnsupportedCaseError):
            predicted_limit_eps1(st(2.0, 1.0), st(1.5, 1.0), 0.5)

    def test_scaled_vstar_constants(self):
        assert predicted_scaled_vstar(st(1.0, 1.0), st(-1.0, 1.0)) == {"corrected": 1.0, "printed": 1.0}


class TestEstimates:
    def test_linear_decay(self):
        eps = [0.5 ** k for k in range(10)]
        est = estimate_rate(eps, [1.0 + e for e in eps])
        assert est.limit == pytest.approx(1.0, abs=0.01)
        assert est.rate == pytest.approx(1.0, abs=1e-9)
        assert est.extrapolated == pytest.approx(1.0, abs=1e-12)

    def test_square_root_decay(self):
        eps = [0.5 ** k for k in range(10)]
        est = estimate_rate(eps, [1.0 + math.sqrt(e) for e in eps])
        assert est.rate == pytest.approx(0.5, abs=1e-9)

    def test_non_monotone_tail(self):
        est = estimate_rate([1.0, 0.5, 0.25, 0.125], [1.0, 2.0, 1.0, 2.0])
        assert est.rate is None and est.extrapolated is None
        assert est.limit == 2.0

    def test_needs_three_points(self):
        with pytest.raises(DomainError):
            estimate_rate([1.0, 0.5], [1.0, 1.0])

    def test_summary_names_the_matching_constant(self):
        sch = _schedule(ScheduleMode.EPS1_ONLY, start=1e-2, ratio=0.1, count=6)
        left, right = st(1.0, 1.0), st(-1.0, 1.0)
        summary = summarize_sweep(left, right, sweep_eps1(left, right, 0.0, sch))
        assert summary["count"] == 6
        assert summary["scaled_vstar"]["matched"] == "corrected"
        assert summary["estimates"]["strength_surrogate"]["limit"] == pytest.approx(2.0, abs=1e-3)
        assert summary["predicted"]["waves"][0]["type"] == "delta_shock"


class TestRegionThreshold:
    def test_equal_densities_give_infinity(self):
        assert find_region_threshold(st(2.0, 1.0), st(0.0, 1.0), 0.25) == math.inf

    def test_shock_pair_threshold(self):
        left, right, eps2 = st(1.0, 1.0), st(0.5, 2.0), 0.1
        threshold = find_region_threshold(left, right, eps2)
        assert 0.0 < threshold < math.inf
        assert threshold == pytest.approx(shock_threshold_closed_form(left, right, eps2), rel=1e-8)
        assert classify(left, right, fp(0.5 * threshold, eps2)) is Region4.S1S2
        assert classify(left, right, fp(2.0 * threshold, eps2)) is not Region4.S1S2

    def test_closed_form_value(self):
        value = shock_threshold_closed_form(st(1.0, 1.0), st(0.5, 2.0), 0.1)
        assert value == pytest.approx((1.6 ** 2 - 0.01) / 9.0)
        printed = shock_threshold_closed_form(st(1.0, 1.0), st(0.5, 2.0), 0.1, printed=True)
        assert printed == pytest.approx(value / 4.0)

    def test_rarefaction_pair_threshold(self):
        left, right, eps2 = st(0.0, 1.0), st(1.0, 3.0), 0.5
        threshold = find_region_threshold(left, right, eps2)
        assert 0.0 < threshold < math.inf
        assert classify(left, right, fp(0.5 * threshold, eps2)) is Region4.R1R2
        assert classify(left, right, fp(2.0 * threshold, eps2)) is not Region4.R1R2

    def test_unreachable_rarefaction_pair(self):
        with pytest.raises(SolverError):
            find_region_threshold(st(0.0, 1.0), st(0.1, 3.0), 0.5)

    def test_region_two_is_unsupported(self):
        with pytest.raises(UnsupportedCaseError):
            find_region_threshold(st(2.0, 1.0), st(1.5, 2.0), 0.5)

    def test_random_region3_data(self, rng):
        for _ in range(100):
            eps2 = rng.uniform(0.05, 0.5)
            left = st(rng.uniform(-1.0, 1.0), rng.uniform(0.2, 3.0))
            right_v = left.v + rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 0.9) * left.v
            right = st(left.u - 2.0 * eps2 - rng.uniform(0.05, 2.0), right_v)
            threshold = find_region_threshold(left, right, eps2)
            assert threshold == pytest.approx(shock_threshold_closed_form(left, right, eps2), rel=1e-8)
            for factor in (0.5, 1e-3, 1e-8):
                assert classify(left, right, fp(factor * threshold, eps2)) is Region4.S1S2

    def test_random_region1_data(self, rng):
        # R1R2 is reachable when v+ exp(-(u+ - u-)/eps2) < v-
        for _ in range(100):
            eps2 = rng.uniform(0.05, 0.5)
            left = st(rng.uniform(-1.0, 1.0), rng.uniform(0.2, 3.0))
            right_v = left.v + rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 0.9) * left.v
            floor = eps2 * max(0.0, math.log(right_v / left.v))
            right = st(left.u + floor + rng.uniform(0.05, 2.0), right_v)
            threshold = find_region_threshold(left, right, eps2)
            assert 0.0 < threshold < math.inf
            for factor in (0.5, 1e-3, 1e-8):
                assert classify(left, right, fp(factor * threshold, eps2)) is Region4.R1R2

    def test_random_unreachable_region1_data(self, rng):
        for _ in range(10):
            eps2 = rng.uniform(0.2, 0.5)
            left = st(0.0, rng.uniform(0.5, 1.0))
            right_v = left.v * rng.uniform(2.0, 4.0)
            right = st(0.5 * eps2 * math.log(right_v / left.v), right_v)
            with pytest.raises(SolverError):
                find_region_threshold(left, right, eps2)
