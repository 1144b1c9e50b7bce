"""Shared fixtures: independent oracles the unit tests check against.

The oracles deliberately avoid the package's own probability machinery.
Two-photon statistics come from a brute-force permanent calculation in a
12-dimensional single-photon space (6 spatial modes x 2 polarizations),
with partial distinguishability encoded as a polarization rotation of the
second photon.  Two-qubit logic comes from dense 4-dimensional state
vectors.
"""

from __future__ import annotations

import math

import numpy as np
import pytest


def brute_force_pair_distribution(
    u6: np.ndarray, mode_a: int, mode_b: int, epsilon: float
) -> dict[tuple[int, int], float]:
    """Spatial coincidence distribution of one photon pair, by permanents.

    Photon a enters ``mode_a`` horizontally polarized; photon b enters
    ``mode_b`` rotated so the pair's interference visibility matches the
    noise level: eps = 1 - V and V = v / (2 - v) for overlap v = cos^2.
    The chip acts as ``u6`` on spatial modes and trivially on polarization.
    Output probabilities are summed over polarization outcomes, keyed by
    the unordered spatial pattern (j <= k).
    """
    vis = 1.0 - epsilon
    overlap = 2.0 * vis / (1.0 + vis)
    alpha = math.acos(math.sqrt(overlap))

    # single-photon slots: index 2*mode + pol, pol 0 = H, 1 = V
    u12 = np.kron(u6, np.eye(2, dtype=np.complex128))
    in_a = np.zeros(12, dtype=np.complex128)
    in_a[2 * mode_a] = 1.0
    in_b = np.zeros(12, dtype=np.complex128)
    in_b[2 * mode_b] = math.cos(alpha)
    in_b[2 * mode_b + 1] = math.sin(alpha)
    out = np.vstack([in_a @ u12, in_b @ u12])

    def slot_prob(p: int, q: int) -> float:
        if p == q:
            # both photons in one slot: |perm|^2 / 2! for the doubled column
            return 2.0 * abs(out[0, p] * out[1, p]) ** 2
        perm = out[0, p] * out[1, q] + out[0, q] * out[1, p]
        return abs(perm) ** 2

    probs: dict[tuple[int, int], float] = {}
    for j in range(6):
        for k in range(j, 6):
            slots_j = (2 * j, 2 * j + 1)
            slots_k = (2 * k, 2 * k + 1)
            total = 0.0
            seen = set()
            for p in slots_j:
                for q in slots_k:
                    pair = (min(p, q), max(p, q))
                    if pair in seen:
                        continue
                    seen.add(pair)
                    total += slot_prob(*pair)
            probs[(j, k)] = total
    return probs


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary via QR of a Ginibre matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


# dense two-qubit oracle ---------------------------------------------------

KET0 = np.array([1.0, 0.0], dtype=np.complex128)
KET1 = np.array([0.0, 1.0], dtype=np.complex128)

#: CNOT with qubit 1 as control, basis order |00>, |01>, |10>, |11>.
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)

#: Measurement eigenvectors per basis; row index = outcome bit, +1 first.
BASIS_VECTORS = {
    "z": np.array([KET0, KET1]),
    "x": np.array([(KET0 + KET1) / math.sqrt(2), (KET0 - KET1) / math.sqrt(2)]),
    "y": np.array([(KET0 + 1j * KET1) / math.sqrt(2), (KET0 - 1j * KET1) / math.sqrt(2)]),
}


def prepared_state(phases) -> np.ndarray:
    """Product state the preparation interferometers encode.

    Control: cos(phi2/2)|1> + i e^{+i phi1} sin(phi2/2)|0>;
    target:  cos(phi4/2)|1> + i e^{-i phi3} sin(phi4/2)|0>.
    """
    phi1, phi2, phi3, phi4 = (float(v) for v in phases)
    control = 1j * np.exp(1j * phi1) * math.sin(phi2 / 2) * KET0 + math.cos(phi2 / 2) * KET1
    target = 1j * np.exp(-1j * phi3) * math.sin(phi4 / 2) * KET0 + math.cos(phi4 / 2) * KET1
    return np.kron(control, target)


def ideal_outcome_probs(state: np.ndarray, basis: str) -> np.ndarray:
    """Outcome probabilities (00, 01, 10, 11) of ``state`` measured in one basis."""
    vecs = BASIS_VECTORS[basis]
    out = np.empty(4)
    for o1 in range(2):
        for o2 in range(2):
            proj = np.kron(vecs[o1], vecs[o2])
            out[2 * o1 + o2] = abs(np.vdot(proj, state)) ** 2
    return out


@pytest.fixture(scope="session")
def chip():
    from photonzne.processor import build_chip

    return build_chip()


@pytest.fixture()
def rng():
    return np.random.default_rng(20260816)
