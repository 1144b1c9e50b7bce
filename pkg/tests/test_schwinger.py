"""Hamiltonian construction, exact spectrum, and energy estimators."""

from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import ideal_outcome_probs
from photonzne.schwinger import (
    EnergyEstimate,
    energy_from_counts,
    energy_from_probs,
    exact_ground_energy,
    ground_state,
    hamiltonian,
    pauli_expectation_from_counts,
)

#: Ground energies frozen from an independent eigh run.
# 0.5 - sqrt((m + 0.5)^2 + 4), frozen from the dense 4x4 oracle
KNOWN_GROUND = {
    -10.0: -9.2082439194738,
    -5.0: -4.424428900898053,
    0.0: -1.5615528128088303,
    5.0: -5.352349955359812,
    10.0: -10.188779163215974,
}


def dense_matrix(m: float) -> np.ndarray:
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, -m, 2.0, 0.0],
            [0.0, 2.0, 1.0 + m, 0.0],
            [0.0, 0.0, 0.0, 2.0],
        ],
        dtype=np.complex128,
    )


def test_hamiltonian_dense_matches_matrix_form():
    for m in (-10.0, -2.5, 0.0, 3.0, 10.0):
        assert np.max(np.abs(hamiltonian(m).dense() - dense_matrix(m))) < 1e-12


def test_hamiltonian_rejects_non_finite():
    with pytest.raises(ValueError):
        hamiltonian(math.inf)
    with pytest.raises(ValueError):
        exact_ground_energy(math.nan)


def test_exact_ground_energy_matches_eigh_oracle():
    for m in np.linspace(-10.0, 10.0, 41):
        oracle = float(np.linalg.eigvalsh(dense_matrix(float(m)))[0])
        assert exact_ground_energy(float(m)) == pytest.approx(oracle, abs=1e-12)


def test_known_ground_energies():
    for m, e0 in KNOWN_GROUND.items():
        assert exact_ground_energy(m) == pytest.approx(e0, abs=1e-10)


def test_ground_state_is_eigenvector():
    for m in (-10.0, 0.0, 7.0):
        energy, vec = ground_state(m)
        h = hamiltonian(m).dense()
        assert np.max(np.abs(h @ vec - energy * vec)) < 1e-10
        assert np.linalg.norm(vec) == pytest.approx(1.0)


def test_ground_state_support_in_middle_block():
    """When the middle 2x2 block hosts the minimum, the ground state has no
    |00> or |11> weight."""
    for m in (-10.0, 0.0, 10.0):
        _, vec = ground_state(m)
        assert abs(vec[0]) < 1e-12
        assert abs(vec[3]) < 1e-12


def test_energy_from_probs_equals_expectation(rng):
    """Estimator identity on ideal probabilities of random pure states."""
    for m in (-10.0, -5.0, 0.0, 5.0, 10.0):
        h = hamiltonian(m).dense()
        for _ in range(10):
            state = rng.normal(size=4) + 1j * rng.normal(size=4)
            state /= np.linalg.norm(state)
            probs = {b: ideal_outcome_probs(state, b) for b in ("x", "y", "z")}
            energy = energy_from_probs(probs["x"], probs["y"], probs["z"], m)
            expectation = float(np.real(state.conj() @ h @ state))
            assert energy == pytest.approx(expectation, abs=1e-10)


def test_energy_from_probs_affine_in_probabilities(rng):
    """The estimator is an affine map of the outcome distributions: it
    commutes with convex mixing to machine precision."""
    def random_probs():
        p = rng.random(4)
        return p / p.sum()

    for m in (-10.0, 2.0):
        pa = [random_probs() for _ in range(3)]
        pb = [random_probs() for _ in range(3)]
        ea = energy_from_probs(*pa, m)
        eb = energy_from_probs(*pb, m)
        for t in (0.25, 0.5, 0.9):
            mixed = [t * a + (1 - t) * b for a, b in zip(pa, pb)]
            e_mix = energy_from_probs(*mixed, m)
            assert e_mix == pytest.approx(t * ea + (1 - t) * eb, abs=1e-12)


def test_energy_from_probs_validation():
    good = np.full(4, 0.25)
    with pytest.raises(ValueError):
        energy_from_probs(good, good, np.array([0.5, 0.5, 0.5, 0.5]), 0.0)
    with pytest.raises(ValueError):
        energy_from_probs(good, good, np.array([0.5, 0.6, -0.1, 0.0]), 0.0)
    with pytest.raises(ValueError):
        energy_from_probs(good, good, good[:3], 0.0)


def test_pauli_expectation_from_counts_closed_form():
    signs = (1.0, -1.0, -1.0, 1.0)
    est, std = pauli_expectation_from_counts((80, 20, 0, 0), signs)
    assert est == pytest.approx(0.6)
    var = (80 * (1 - 0.6) ** 2 + 20 * (-1 - 0.6) ** 2) / 100.0**2
    assert std == pytest.approx(math.sqrt(var))
    with pytest.raises(ValueError):
        pauli_expectation_from_counts((0, 0, 0, 0), signs)
    with pytest.raises(ValueError):
        pauli_expectation_from_counts((1, -2, 0, 0), signs)


def test_energy_from_counts_delta_method_std(rng):
    """Reported uncertainty tracks the empirical spread of the estimator
    under Poisson resampling."""
    m = -10.0
    scale = 600.0
    base = {
        "x": np.array([0.4, 0.3, 0.2, 0.1]),
        "y": np.array([0.25, 0.25, 0.25, 0.25]),
        "z": np.array([0.05, 0.55, 0.35, 0.05]),
    }
    trials = 4000
    values = np.empty(trials)
    stds = np.empty(trials)
    for i in range(trials):
        cx = rng.poisson(scale * base["x"])
        cy = rng.poisson(scale * base["y"])
        cz = rng.poisson(scale * base["z"])
        est = energy_from_counts(cx, cy, cz, m)
        values[i] = est.value
        stds[i] = est.std
    assert float(np.mean(stds)) == pytest.approx(float(np.std(values, ddof=1)), rel=0.05)


def test_energy_from_counts_value_matches_probs_on_expected_counts():
    m = 2.0
    px = np.array([0.4, 0.3, 0.2, 0.1])
    py = np.array([0.1, 0.2, 0.3, 0.4])
    pz = np.array([0.25, 0.25, 0.25, 0.25])
    est = energy_from_counts(1000 * px, 1000 * py, 1000 * pz, m)
    assert isinstance(est, EnergyEstimate)
    assert est.value == pytest.approx(energy_from_probs(px, py, pz, m), abs=1e-12)
