"""Two-qubit lattice-gauge Hamiltonian, exact spectrum, and energy
estimators from measured outcome statistics.

``H(m) = I + X1 X2 + Y1 Y2 - (1/2) Z1 + (1/2) Z1 Z2 + (m/2)(Z2 - Z1)``

In the computational basis (|00>, |01>, |10>, |11>, with Z|0> = +|0>) the
diagonal is ``(1, -m, 1+m, 2)`` and the only off-diagonal coupling is the
X1X2 + Y1Y2 element of 2 between |01> and |10>, giving the closed-form
spectrum ``{1, 2, (1 +- sqrt((1+2m)^2 + 16))/2}``.

Measuring both qubits in one basis at a time covers the three commuting
groups {X1X2}, {Y1Y2}, {I, Z1, Z2, Z1Z2}; the energy is recovered from the
three outcome distributions as

``<H> = (p00x - p01x - p10x + p11x) + (p00y - p01y - p10y + p11y)
      + (p00z - m*p01z + (1+m)*p10z + 2*p11z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Tolerance on sum(p) == 1 for probability inputs.
NORMALIZATION_TOL = 1e-6

_PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

#: Pauli strings grouped by the single measurement basis that covers them.
COMMUTING_GROUPS = {"x": ("XX",), "y": ("YY",), "z": ("II", "ZI", "IZ", "ZZ")}


@dataclass(frozen=True)
class EnergyEstimate:
    """An energy value with its one-sigma statistical uncertainty."""

    value: float
    std: float


@dataclass(frozen=True)
class SchwingerHamiltonian:
    """Term list of H(m): pairs (coefficient, two-letter Pauli string)."""

    m: float
    terms: tuple[tuple[float, str], ...]

    def dense(self) -> np.ndarray:
        h = np.zeros((4, 4), dtype=np.complex128)
        for coeff, label in self.terms:
            h += coeff * np.kron(_PAULI[label[0]], _PAULI[label[1]])
        return h


def hamiltonian(m: float) -> SchwingerHamiltonian:
    """Build H(m) as an explicit Pauli term list."""
    if not math.isfinite(m):
        raise ValueError("mass parameter must be finite")
    terms = (
        (1.0, "II"),
        (1.0, "XX"),
        (1.0, "YY"),
        (-(1.0 + m) / 2.0, "ZI"),
        (m / 2.0, "IZ"),
        (0.5, "ZZ"),
    )
    return SchwingerHamiltonian(m=float(m), terms=terms)


def exact_ground_energy(m: float) -> float:
    """Closed-form ground energy min{1, 2, (1 +- sqrt((1+2m)^2 + 16))/2}."""
    if not math.isfinite(m):
        raise ValueError("mass parameter must be finite")
    root = math.sqrt((1.0 + 2.0 * m) ** 2 + 16.0)
    return min(1.0, 2.0, (1.0 - root) / 2.0, (1.0 + root) / 2.0)


def ground_state(m: float) -> tuple[float, np.ndarray]:
    """Ground energy and amplitudes from dense diagonalization of H(m)."""
    evals, evecs = np.linalg.eigh(hamiltonian(m).dense())
    vec = evecs[:, 0]
    # fix the overall sign so the dominant amplitude is positive
    k = int(np.argmax(np.abs(vec)))
    if vec[k].real < 0:
        vec = -vec
    return float(evals[0]), vec


def _energy_weights(m: float) -> dict[str, np.ndarray]:
    sign = np.array([1.0, -1.0, -1.0, 1.0])
    return {
        "x": sign,
        "y": sign,
        "z": np.array([1.0, -m, 1.0 + m, 2.0]),
    }


def _as_prob_array(probs) -> np.ndarray:
    p = probs.as_array() if hasattr(probs, "as_array") else np.asarray(probs, dtype=np.float64)
    if p.shape != (4,):
        raise ValueError(f"expected 4 outcome probabilities, got shape {p.shape}")
    if np.any(p < -NORMALIZATION_TOL):
        raise ValueError("probabilities must be non-negative")
    if abs(float(p.sum()) - 1.0) > NORMALIZATION_TOL:
        raise ValueError(f"probabilities must sum to 1, got {p.sum():.8f}")
    return p


def energy_from_probs(probs_x, probs_y, probs_z, m: float) -> float:
    """Exact energy from normalized outcome probabilities in the x, y, z bases."""
    w = _energy_weights(m)
    px, py, pz = _as_prob_array(probs_x), _as_prob_array(probs_y), _as_prob_array(probs_z)
    return float(w["x"] @ px + w["y"] @ py + w["z"] @ pz)


def _as_count_array(counts) -> np.ndarray:
    c = np.asarray(getattr(counts, "counts", counts), dtype=np.float64)
    if c.shape != (4,):
        raise ValueError(f"expected 4 outcome counts, got shape {c.shape}")
    if np.any(c < 0):
        raise ValueError("counts must be non-negative")
    return c


def pauli_expectation_from_counts(counts, signs) -> tuple[float, float]:
    """Signed-fraction estimator ``sum_i s_i n_i / N`` with its delta-method
    standard deviation under independent Poisson counts."""
    n = _as_count_array(counts)
    s = np.asarray(signs, dtype=np.float64)
    total = float(n.sum())
    if total <= 0:
        raise ValueError("basis has zero total counts")
    est = float(s @ n) / total
    var = float(np.sum(n * (s - est) ** 2)) / total**2
    return est, math.sqrt(var)


def energy_from_counts(counts_x, counts_y, counts_z, m: float) -> EnergyEstimate:
    """Energy estimate from raw coincidence counts in the three bases.

    Counts are normalized per basis; the uncertainty propagates independent
    Poisson fluctuations of every count through the per-basis ratio
    estimator (delta method), so std scales as 1/sqrt(shots).
    """
    w = _energy_weights(m)
    value = 0.0
    var = 0.0
    for counts, weights in ((counts_x, w["x"]), (counts_y, w["y"]), (counts_z, w["z"])):
        est, std = pauli_expectation_from_counts(counts, weights)
        value += est
        var += std**2
    return EnergyEstimate(value=value, std=math.sqrt(var))
