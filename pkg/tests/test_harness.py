"""Experiment orchestration: configs, budget audits, sweeps, heatmap."""

from __future__ import annotations

import math

import numpy as np
import pytest

from photonzne.harness import (
    ExperimentConfig,
    deferred_heatmap,
    diag,
    feasible_k1,
    hom_scan,
    run_vqe,
    sweep_m,
    sweep_noise,
)
from photonzne.mitigation import epsilon_of_theta, measurements_used
from photonzne.processor import hom_visibility
from photonzne.schwinger import exact_ground_energy


def exact_config(**kw) -> ExperimentConfig:
    base = dict(m=-10.0, epsilon_levels=(0.18, 0.29), shot_scale="exact", schedule=(6, 4))
    base.update(kw)
    return ExperimentConfig(**base)


class TestExperimentConfig:
    def test_defaults_are_valid(self):
        config = ExperimentConfig()
        assert config.epsilon_pair == (0.18, 0.29)
        assert not config.is_exact

    @pytest.mark.parametrize(
        "kw",
        [
            dict(runs=0),
            dict(shot_scale="approx"),
            dict(shot_scale=0.0),
            dict(shot_scale=-100.0),
            dict(schedule=(0, 0)),
            dict(schedule=(-1, 2)),
            dict(schedule=(2, -1)),
            dict(epsilon_levels=()),
            dict(epsilon_levels=(1.2,)),
            dict(epsilon_levels=(-0.1, 0.3)),
            dict(ratio=1.0),
            dict(ratio=0.5),
            dict(m=float("nan")),
            dict(m=(1.0, float("inf"))),
        ],
    )
    def test_rejects_bad_fields(self, kw):
        with pytest.raises(ValueError):
            ExperimentConfig(**kw)

    def test_scalar_and_grid_m(self):
        assert ExperimentConfig(m=-10.0).m_values == (-10.0,)
        assert ExperimentConfig(m=-10.0).scalar_m == -10.0
        grid = ExperimentConfig(m=(1, 2, 3))
        assert grid.m_values == (1.0, 2.0, 3.0)
        with pytest.raises(ValueError):
            grid.scalar_m

    def test_epsilon_pair_needs_two_levels(self):
        with pytest.raises(ValueError):
            ExperimentConfig(epsilon_levels=(0.1, 0.2, 0.3)).epsilon_pair

    def test_exact_mode_flag(self):
        assert ExperimentConfig(shot_scale="exact").is_exact
        assert not ExperimentConfig(shot_scale=500.0).is_exact

    def test_mitigation_schedule_carries_iteration_cost(self):
        sched = ExperimentConfig(schedule=(7, 3)).mitigation_schedule
        assert (sched.k0, sched.k1, sched.n) == (7, 3, 6)


class TestFeasibleK1:
    @pytest.mark.parametrize(
        "budget,k0,expected",
        [
            (12, 0, 1),
            (12, 1, None),
            (12, 2, 0),
            (24, 0, 2),
            (24, 2, 1),
            (24, 4, 0),
            (24, 3, None),
            (18, 0, None),
            (18, 1, 1),
            (18, 3, 0),
            (11, 0, None),
            (120, 18, 1),
            (120, 0, 10),
            (120, 20, 0),
            (120, 21, None),
        ],
    )
    def test_budget_arithmetic(self, budget, k0, expected):
        assert feasible_k1(budget, k0) == expected

    def test_solution_spends_budget_exactly(self, rng):
        for _ in range(200):
            budget = int(rng.integers(1, 300))
            k0 = int(rng.integers(0, 40))
            k1 = feasible_k1(budget, k0)
            if k1 is not None:
                assert k1 >= 0
                assert 6 * k0 + 12 * k1 == budget


class TestRunVqe:
    def test_exact_runs_are_deterministic(self):
        a = run_vqe(exact_config(), seed=3)
        b = run_vqe(exact_config(), seed=3)
        assert a.final.value == b.final.value
        assert a.phases == b.phases
        assert a.calibrated_gain == b.calibrated_gain
        assert a.traces == b.traces

    def test_exact_mode_reports_zero_uncertainty(self):
        result = run_vqe(exact_config(), seed=3)
        assert result.final.std == 0.0
        assert result.last.std == 0.0

    def test_budget_ledger(self):
        result = run_vqe(exact_config(schedule=(6, 4)), seed=0)
        assert result.budget == (6,) * 6 + (12,) * 4
        assert result.measurements == 84
        assert result.measurements == measurements_used(result.schedule)

    def test_measurement_total_10_plain_5_extrapolated(self):
        result = run_vqe(exact_config(schedule=(10, 5)), seed=0)
        assert result.measurements == 120

    def test_traces_cover_both_noise_levels(self):
        result = run_vqe(exact_config(schedule=(6, 4)), seed=1)
        assert set(result.traces) == {0.18, 0.29}
        # eps1 is probed in every iteration, eps2 only after the switch
        assert len(result.traces[0.18]) == 10
        assert len(result.traces[0.29]) == 4
        assert len(result.mitigated_trace) == 4
        assert result.mitigated is not None
        assert result.mitigated.value == result.final.value
        assert result.mitigated.c1 == result.final.value

    def test_plain_schedule_has_no_mitigated_estimate(self):
        result = run_vqe(exact_config(schedule=(8, 0)), seed=1)
        assert result.mitigated is None
        assert result.mitigated_trace == ()
        assert set(result.traces) == {0.18}

    def test_final_is_trailing_window_mean(self):
        result = run_vqe(exact_config(schedule=(15, 0)), seed=2)
        trace = result.traces[0.18]
        assert result.final.value == pytest.approx(np.mean(trace[-10:]), abs=1e-12)
        assert result.last.value == pytest.approx(trace[-1], abs=1e-12)

    def test_integer_and_tuple_seeds_agree(self):
        a = run_vqe(exact_config(), seed=5)
        b = run_vqe(exact_config(), seed=(5,))
        assert a.seed == b.seed == (5,)
        assert a.final.value == b.final.value

    def test_sampled_runs_are_reproducible(self):
        config = exact_config(shot_scale=500.0, schedule=(5, 3))
        a = run_vqe(config, seed=(1, 2))
        b = run_vqe(config, seed=(1, 2))
        c = run_vqe(config, seed=(1, 3))
        assert a.final.value == b.final.value
        assert a.traces == b.traces
        assert c.final.value != a.final.value

    def test_shared_seed_pairs_first_iteration_across_schedules(self):
        # evaluation noise is keyed by evaluation index, and the probe
        # points of iteration one precede any gain-dependent update, so
        # schedules sharing a seed must report identical first estimates
        long_plain = run_vqe(exact_config(shot_scale=500.0, schedule=(4, 0)), seed=(9, 0))
        deferred = run_vqe(exact_config(shot_scale=500.0, schedule=(2, 1)), seed=(9, 0))
        assert long_plain.traces[0.18][0] == deferred.traces[0.18][0]

    def test_extrapolation_needs_positive_first_level(self):
        with pytest.raises(ValueError):
            run_vqe(exact_config(epsilon_levels=(0.0, 0.29), schedule=(2, 2)), seed=0)

    def test_noise_free_runs_reach_the_ground_level(self):
        config = exact_config(epsilon_levels=(0.0, 0.29), schedule=(200, 0))
        e0 = exact_ground_energy(-10.0)
        errors = [abs(run_vqe(config, seed=s).final.value - e0) for s in range(5)]
        assert min(errors) < 0.05


class TestSweepM:
    def test_noise_free_columns_track_the_exact_level(self):
        config = ExperimentConfig(
            m=(-10.0, -5.0, 0.0, 5.0, 10.0),
            epsilon_levels=(0.0, 0.29),
            shot_scale="exact",
            schedule=(150, 0),
            runs=1,
            master_seed=0,
        )
        rows = sweep_m(config)
        assert [row.m for row in rows] == [-10.0, -5.0, 0.0, 5.0, 10.0]
        for row in rows:
            assert row.e0 == exact_ground_energy(row.m)
            assert abs(row.e_unmitigated - row.e0) < 0.1
            assert abs(row.e_mitigated - row.e0) < 0.1

    def test_noise_bias_concentrates_at_negative_mass(self):
        config = ExperimentConfig(
            m=(-10.0, 10.0),
            epsilon_levels=(0.3, 0.4),
            shot_scale="exact",
            schedule=(100, 0),
            runs=2,
            master_seed=0,
        )
        rows = sweep_m(config)
        err_negative = abs(rows[0].e_unmitigated - rows[0].e0)
        err_positive = abs(rows[1].e_unmitigated - rows[1].e0)
        assert err_positive < 0.5 * err_negative

    def test_rows_are_deterministic(self):
        config = exact_config(m=(1.0, 2.0), schedule=(4, 2), runs=2, master_seed=7)
        assert sweep_m(config) == sweep_m(config)


class TestSweepNoise:
    def test_zero_noise_rows_repeat_the_plain_column(self):
        config = ExperimentConfig(
            m=-10.0,
            epsilon_levels=(0.0,),
            shot_scale="exact",
            schedule=(6, 4),
            runs=2,
            master_seed=0,
        )
        row = sweep_noise(config)[0]
        assert row.e_unmitigated == row.e_mitigated
        assert row.std_unmitigated == row.std_mitigated

    def test_rejects_second_level_above_one(self):
        config = ExperimentConfig(
            m=-10.0, epsilon_levels=(0.7,), ratio=1.61, shot_scale="exact", schedule=(4, 2)
        )
        with pytest.raises(ValueError):
            sweep_noise(config)

    def test_extrapolation_costs_variance(self):
        config = ExperimentConfig(
            m=-10.0,
            epsilon_levels=(0.25,),
            ratio=1.4,
            shot_scale=400.0,
            schedule=(8, 6),
            runs=16,
            master_seed=0,
        )
        row = sweep_noise(config)[0]
        assert row.std_mitigated > row.std_unmitigated


class TestDeferredHeatmap:
    def test_small_grid_structure(self):
        config = ExperimentConfig(m=-10.0, shot_scale=300.0, runs=2, master_seed=1)
        grid = deferred_heatmap(config, budgets=(12, 24), k0_values=(0, 1, 2))
        assert grid.budgets == (12, 24)
        assert grid.k0_values == (0, 1, 2)
        assert np.array_equal(grid.feasible, [[True, False, True], [True, False, True]])
        # reference column is exactly one by construction
        assert np.all(grid.r[:, 0] == 1.0)
        assert np.all(np.isnan(grid.r[:, 1]))
        assert np.all(np.isnan(grid.mean_energy[:, 1]))
        assert np.all(np.isfinite(grid.mean_energy[grid.feasible]))
        assert np.all(grid.delta_e[grid.feasible] >= 0.0)

    def test_heatmap_is_deterministic(self):
        config = ExperimentConfig(m=-10.0, shot_scale=300.0, runs=2, master_seed=4)
        a = deferred_heatmap(config, budgets=(12,), k0_values=(0, 2))
        b = deferred_heatmap(config, budgets=(12,), k0_values=(0, 2))
        assert np.array_equal(a.mean_energy, b.mean_energy, equal_nan=True)

    def test_requires_reference_column(self):
        config = ExperimentConfig(shot_scale=300.0)
        with pytest.raises(ValueError):
            deferred_heatmap(config, budgets=(12,), k0_values=(1, 2))

    @pytest.mark.parametrize("budget", [18, 11])
    def test_rejects_budgets_without_reference_run(self, budget):
        config = ExperimentConfig(shot_scale=300.0)
        with pytest.raises(ValueError):
            deferred_heatmap(config, budgets=(budget,), k0_values=(0, 1))


class TestHomScan:
    def test_endpoint_rows(self):
        rows = hom_scan((0.0, math.pi / 4))
        assert rows[0].epsilon == 0.0
        assert rows[0].visibility == pytest.approx(1.0, abs=1e-12)
        assert rows[0].p_coincidence == pytest.approx(0.0, abs=1e-12)
        assert rows[1].epsilon == pytest.approx(1.0, abs=1e-12)
        assert rows[1].visibility == pytest.approx(0.0, abs=1e-12)
        assert rows[1].p_coincidence == pytest.approx(0.5, abs=1e-12)

    def test_columns_match_their_sources(self, chip):
        thetas = np.linspace(0.0, math.pi / 4, 9)
        for row in hom_scan(thetas):
            assert row.epsilon == epsilon_of_theta(row.theta)
            assert row.visibility == pytest.approx(hom_visibility(chip, row.epsilon), abs=1e-12)
            assert row.p_coincidence == pytest.approx(
                0.5 * math.sin(2 * row.theta) ** 2, abs=1e-12
            )


class TestDiag:
    def test_ground_levels(self):
        result = diag(-10.0)
        assert result.energy == exact_ground_energy(-10.0)
        assert result.energy == pytest.approx(-9.2083, abs=1e-4)
        assert result.energy_dense == pytest.approx(result.energy, abs=1e-10)
        assert diag(0.0).energy == pytest.approx(-1.5616, abs=1e-4)

    def test_ground_state_lives_in_the_middle_block(self):
        for m in (-10.0, 0.0, 10.0):
            amps = np.array(diag(m).amplitudes)
            assert abs(amps[0]) < 1e-12
            assert abs(amps[3]) < 1e-12
            assert np.linalg.norm(amps) == pytest.approx(1.0, abs=1e-12)
