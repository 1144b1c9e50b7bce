"""Linear-optical mode unitaries and two-photon coincidence statistics.

Conventions
-----------
A mode unitary ``U`` relates input to output creation operators,
``a_i^dag = sum_j U[i, j] b_j^dag``, so ``U[i, j]`` is the amplitude for a
photon entering mode ``i`` to leave in mode ``j`` and composition in
application order is a plain matrix product (first element on the left).

Partial distinguishability of a photon pair is a single parameter
``epsilon`` in [0, 1].  The pair behaves as a convex mixture of a fully
indistinguishable pair (weight ``lambda = 2(1 - eps)/(2 - eps)``) and a
fully distinguishable pair (weight ``1 - lambda``); both components are
separately normalized, so every coincidence probability is exactly affine
in ``lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels

#: Tolerance for unitarity checks on mode matrices.
UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class ModeUnitary:
    """A validated unitary acting on optical modes.

    Parameters
    ----------
    entries : np.ndarray
        Square complex matrix, ``entries[i, j]`` = amplitude input mode i
        -> output mode j.  Validated against ``UNITARITY_TOL`` on
        construction.
    """

    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"mode matrix must be square, got shape {m.shape}")
        if m.shape[0] < 2:
            raise ValueError("mode matrix needs at least two modes")
        defect = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
        if defect > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def directional_coupler(reflectivity: float, modes: tuple[int, int], dim: int) -> ModeUnitary:
    """Two-mode coupler embedded in a ``dim``-mode identity.

    Uses the real symmetric convention
    ``[[sqrt(r), sqrt(1-r)], [sqrt(1-r), -sqrt(r)]]`` on ``modes = (i, j)``;
    ``r = 1/2`` is a balanced 50:50 coupler.
    """
    if not 0.0 <= reflectivity <= 1.0:
        raise ValueError(f"reflectivity must lie in [0, 1], got {reflectivity}")
    i, j = modes
    if i == j or not (0 <= i < dim and 0 <= j < dim):
        raise ValueError(f"coupler modes {modes} invalid for dim {dim}")
    m = np.eye(dim, dtype=np.complex128)
    sr = np.sqrt(reflectivity)
    st = np.sqrt(1.0 - reflectivity)
    m[i, i] = sr
    m[i, j] = st
    m[j, i] = st
    m[j, j] = -sr
    return ModeUnitary(m)


def phase_shifter(phase: float, mode: int, dim: int) -> ModeUnitary:
    """Single-mode phase ``e^{i*phase}`` on ``mode`` in a ``dim``-mode identity."""
    if not np.isfinite(phase):
        raise ValueError("phase must be finite")
    if not 0 <= mode < dim:
        raise ValueError(f"mode {mode} out of range for dim {dim}")
    m = np.eye(dim, dtype=np.complex128)
    m[mode, mode] = np.exp(1j * phase)
    return ModeUnitary(m)


def compose(first: ModeUnitary, second: ModeUnitary) -> ModeUnitary:
    """Unitary for ``second`` applied after ``first`` (creation-operator order)."""
    if first.dim != second.dim:
        raise ValueError(f"dimension mismatch: {first.dim} vs {second.dim}")
    return ModeUnitary(first.entries @ second.entries)


def indistinguishability_weight(epsilon: float) -> float:
    """Weight ``lambda = 2(1 - eps)/(2 - eps)`` of the indistinguishable component."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    return 2.0 * (1.0 - epsilon) / (2.0 - epsilon)


@dataclass(frozen=True)
class PhotonPairInput:
    """One photon in ``mode_a``, one in ``mode_b`` (distinct), with pair
    distinguishability ``noise_level`` in [0, 1]."""

    mode_a: int
    mode_b: int
    noise_level: float = 0.0

    def __post_init__(self) -> None:
        if self.mode_a == self.mode_b:
            raise ValueError("input photons must occupy distinct modes")
        if self.mode_a < 0 or self.mode_b < 0:
            raise ValueError("input modes must be non-negative")
        if not 0.0 <= self.noise_level <= 1.0:
            raise ValueError(f"noise_level must lie in [0, 1], got {self.noise_level}")


@dataclass(frozen=True)
class CoincidenceDistribution:
    """Probabilities for every output pattern (j, k), j <= k, of a photon pair.

    ``(j, k)`` with ``j < k`` is a coincidence between distinct modes;
    ``(j, j)`` is the bunched pattern with both photons in mode j.
    """

    probs: dict[tuple[int, int], float] = field(repr=False)
    dim: int = 0

    def probability(self, pattern: tuple[int, int]) -> float:
        j, k = pattern
        if j > k:
            j, k = k, j
        return self.probs[(j, k)]

    def items(self):
        return self.probs.items()

    def total(self) -> float:
        return float(sum(self.probs.values()))


def output_distribution(unitary: ModeUnitary, pair: PhotonPairInput) -> CoincidenceDistribution:
    """Full two-photon output distribution for ``pair`` sent through ``unitary``.

    For input modes (a, b) and ``lam`` the indistinguishability weight, the
    unbunched probability is
    ``lam*|U_aj U_bk + U_ak U_bj|^2 + (1-lam)*(|U_aj U_bk|^2 + |U_ak U_bj|^2)``
    and the bunched one is ``(1 + lam)*|U_aj U_bj|^2``; both mixture
    components are separately normalized so the total is exactly 1.
    """
    dim = unitary.dim
    if not (pair.mode_a < dim and pair.mode_b < dim):
        raise ValueError("input modes exceed unitary dimension")
    lam = indistinguishability_weight(pair.noise_level)
    flat = kernels.full_distribution(unitary.entries, pair.mode_a, pair.mode_b, lam)
    probs: dict[tuple[int, int], float] = {}
    idx = 0
    for j in range(dim):
        for k in range(j, dim):
            probs[(j, k)] = float(flat[idx])
            idx += 1
    return CoincidenceDistribution(probs=probs, dim=dim)


def coincidence_probability(
    unitary: ModeUnitary, pair: PhotonPairInput, pattern: tuple[int, int]
) -> float:
    """Probability of one specific output pattern (j, k), j <= k allowed either order."""
    dim = unitary.dim
    j, k = pattern
    if not (0 <= j < dim and 0 <= k < dim):
        raise ValueError(f"pattern {pattern} out of range for dim {dim}")
    lam = indistinguishability_weight(pair.noise_level)
    p = kernels.pattern_probs(
        unitary.entries,
        pair.mode_a,
        pair.mode_b,
        lam,
        np.array([min(j, k)], dtype=np.intp),
        np.array([max(j, k)], dtype=np.intp),
    )
    return float(p[0])
