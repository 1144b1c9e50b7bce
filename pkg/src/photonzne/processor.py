"""Six-mode dual-rail two-qubit chip: state prep, post-selected CNOT,
basis-change measurement interferometers, and distinguishability noise.

Mode map (fixed by :func:`build_chip`)
--------------------------------------
==== =====================
mode role
==== =====================
0    ancilla (empty in/out)
1    control rail, logical |0>   <- control photon injected here
2    control rail, logical |1>
3    target rail,  logical |1>
4    target rail,  logical |0>   <- target photon injected here
5    ancilla (empty in/out)
==== =====================

The layout is mirror symmetric about the chip center: each qubit's |0>
rail is the outer one, its |1> rail the inner one.  The central stage is
the three-coupler 1/3-reflectivity core on modes (0,1), (2,3), (4,5)
sandwiched by 50:50 couplers on the target rails; couplers use the
symmetric sign convention, with the (4,5) attenuator oriented so the
minus sign lands on mode 4, which makes the post-selected logical block
exactly CNOT with uniform success amplitude 1/3 (success probability 1/9)
on the four patterns with one photon per qubit.  Because both inner rails
pass the central coupler, a state whose control qubit is mostly |1> is
maximally exposed to two-photon interference and hence to photon
distinguishability; states near |0x> are barely affected.

Addressable phases: (phi1, phi2) on the control prep interferometer,
(phi3, phi4) on the target one, (phi5..phi8) on the measurement ones.  Odd
indices are external (azimuthal) phases, even indices internal (polar)
phases.  The two prep internal shifters carry a fixed pi offset, so the
all-zero setting routes both photons onto the inner (central-coupler)
rails; that offset is what gives the zero-setting interference diagnostic
(:func:`hom_visibility`) a perfect null.  The prepared states are

* control: ``cos(phi2/2)|1> + i e^{+i phi1} sin(phi2/2)|0>``
* target:  ``cos(phi4/2)|1> + i e^{-i phi3} sin(phi4/2)|0>``

(the target's external phase enters negated because its phase shifter
sits on the |1> rail, mirroring the control's).  Either family reaches
every single-qubit state, in particular the real-amplitude ground-state
family of the target Hamiltonian (expressibility is pinned by tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .optics import ModeUnitary, indistinguishability_weight

TWO_PI = 2.0 * math.pi

#: Injection modes for the logical |00> photon pair (control, target).
INJECTION_MODES = (1, 4)

#: Logical outcome -> output mode pattern, in outcome order 00, 01, 10, 11.
LOGICAL_PATTERNS = ((1, 4), (1, 3), (2, 4), (2, 3))

#: Output pattern watched by the on-chip interference diagnostic.
HOM_PATTERN = (2, 4)

#: Minimum post-selection success probability before declaring failure.
SUCCESS_FLOOR = 1e-9


class Basis(Enum):
    """Measurement basis applied to both qubits."""

    X = "x"
    Y = "y"
    Z = "z"


class PostSelectionError(RuntimeError):
    """Raised when the post-selected success probability degenerates."""


@dataclass(frozen=True)
class PhaseSettings:
    """The chip's eight addressable phases, wrapped to [0, 2*pi)."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != 8:
            raise ValueError(f"expected 8 phases, got {len(self.values)}")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("phases must be finite")
        wrapped = tuple(float(v) % TWO_PI for v in self.values)
        object.__setattr__(self, "values", wrapped)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.float64)


@dataclass(frozen=True)
class OutcomeProbs:
    """Normalized post-selected probabilities of the four logical outcomes."""

    basis: Basis
    p00: float
    p01: float
    p10: float
    p11: float

    def as_array(self) -> np.ndarray:
        return np.array([self.p00, self.p01, self.p10, self.p11], dtype=np.float64)


@dataclass(frozen=True)
class ChipLayout:
    """Packed element list of the six-mode chip (see module docstring)."""

    dim: int
    n_phases: int
    kinds: np.ndarray = field(repr=False)
    mode_i: np.ndarray = field(repr=False)
    mode_j: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        for arr in (self.kinds, self.mode_i, self.mode_j, self.values):
            arr.setflags(write=False)


def _element_table() -> list[tuple[int, int, int, float]]:
    # (kind, mode_i, mode_j_or_slot, value); kind 0 coupler (value = r),
    # kind 1 addressable phase on mode_i reading slot mode_j.
    half, third = 0.5, 1.0 / 3.0
    pi = math.pi
    rows: list[tuple[int, int, int, float]] = []
    # preparation interferometers: DC, internal phase (fixed pi offset), DC,
    # external phase
    rows += [(0, 1, 2, half), (1, 1, 1, pi), (0, 1, 2, half), (1, 1, 0, 0.0)]
    rows += [(0, 3, 4, half), (1, 3, 3, pi), (0, 3, 4, half), (1, 3, 2, 0.0)]
    # post-selected CNOT: target-rail 50:50 sandwich around the 1/3 core;
    # the (4,5) attenuator is listed as (5,4) to orient its minus sign onto
    # mode 4, which fixes the logical block to CNOT exactly
    rows += [(0, 3, 4, half)]
    rows += [(0, 0, 1, third), (0, 2, 3, third), (0, 5, 4, third)]
    rows += [(0, 3, 4, half)]
    # measurement interferometers: external phase, DC, internal phase, DC
    rows += [(1, 1, 4, 0.0), (0, 1, 2, half), (1, 1, 5, 0.0), (0, 1, 2, half)]
    rows += [(1, 3, 6, 0.0), (0, 3, 4, half), (1, 3, 7, 0.0), (0, 3, 4, half)]
    return rows


def build_chip() -> ChipLayout:
    """Construct the canonical six-mode chip layout."""
    rows = _element_table()
    kinds = np.array([r[0] for r in rows], dtype=np.int64)
    mode_i = np.array([r[1] for r in rows], dtype=np.int64)
    mode_j = np.array([r[2] for r in rows], dtype=np.int64)
    values = np.array([r[3] for r in rows], dtype=np.float64)
    n_phases = int(np.sum(kinds == 1))
    assert n_phases == 8
    return ChipLayout(
        dim=6, n_phases=n_phases, kinds=kinds, mode_i=mode_i, mode_j=mode_j, values=values
    )


def chip_unitary(layout: ChipLayout, settings: PhaseSettings) -> ModeUnitary:
    """Full six-mode unitary of the chip at the given phase settings."""
    u = kernels.compose_chip(
        layout.kinds, layout.mode_i, layout.mode_j, layout.values, settings.as_array(), layout.dim
    )
    return ModeUnitary(u)


def basis_settings(basis: Basis) -> tuple[float, float, float, float]:
    """Measurement phases (phi5, phi6, phi7, phi8) rotating ``basis`` onto
    the detection rails; Z is the identity setting.  The X constants differ
    between the qubits because their rail order is mirrored."""
    return {
        Basis.Z: (0.0, 0.0, 0.0, 0.0),
        Basis.X: (0.5 * math.pi, 0.5 * math.pi, 0.5 * math.pi, 1.5 * math.pi),
        Basis.Y: (0.0, 1.5 * math.pi, 0.0, 1.5 * math.pi),
    }[basis]


_PATTERN_JS = np.array([p[0] for p in LOGICAL_PATTERNS], dtype=np.intp)
_PATTERN_KS = np.array([p[1] for p in LOGICAL_PATTERNS], dtype=np.intp)


def _full_settings(prep_phases, basis: Basis) -> PhaseSettings:
    prep = tuple(float(v) for v in prep_phases)
    if len(prep) != 4:
        raise ValueError(f"expected 4 preparation phases, got {len(prep)}")
    return PhaseSettings(prep + basis_settings(basis))


def raw_outcome_probabilities(
    layout: ChipLayout, prep_phases, basis: Basis, epsilon: float = 0.0
) -> tuple[np.ndarray, float]:
    """Unnormalized probabilities of the four logical output patterns and
    their sum (the post-selection success probability).

    These are plain coincidence probabilities of the full chip, each exactly
    affine in ``2*eps/(2-eps)``; renormalization by the success probability
    is applied by :func:`outcome_probabilities`.
    """
    settings = _full_settings(prep_phases, basis)
    lam = indistinguishability_weight(epsilon)
    raw = kernels.chip_pattern_probs(
        layout.kinds,
        layout.mode_i,
        layout.mode_j,
        layout.values,
        settings.as_array(),
        layout.dim,
        INJECTION_MODES[0],
        INJECTION_MODES[1],
        lam,
        _PATTERN_JS,
        _PATTERN_KS,
    )
    return raw, float(raw.sum())


def outcome_probabilities(
    layout: ChipLayout, prep_phases, basis: Basis, epsilon: float = 0.0
) -> tuple[OutcomeProbs, float]:
    """Post-selected logical outcome probabilities and success probability.

    Raises
    ------
    PostSelectionError
        If the success probability falls below ``SUCCESS_FLOOR``.
    """
    raw, success = raw_outcome_probabilities(layout, prep_phases, basis, epsilon)
    if success < SUCCESS_FLOOR:
        raise PostSelectionError(f"post-selection success {success:.3e} below floor")
    p = raw / success
    return OutcomeProbs(basis, float(p[0]), float(p[1]), float(p[2]), float(p[3])), success


def hom_visibility(layout: ChipLayout, epsilon: float) -> float:
    """On-chip two-photon interference visibility at distinguishability
    ``epsilon``.

    Sets phi4 = pi (all other phases 0), which prepares logical |10>; the
    gate maps that to |11>, so the |10> output pattern (``HOM_PATTERN``,
    chip outputs 3 and 5 in 1-based numbering) is a perfect two-photon
    interference null whose direct and exchange paths cross at the central
    coupler.  Returns ``V = (p_dist - p)/(p_dist + p)`` on the raw
    coincidence probability, where ``p_dist`` is the fully distinguishable
    (eps = 1) value.  Satisfies ``V = 1 - epsilon`` identically.
    """
    phases = (0.0, 0.0, 0.0, math.pi)
    js = np.array([HOM_PATTERN[0]], dtype=np.intp)
    ks = np.array([HOM_PATTERN[1]], dtype=np.intp)
    settings = _full_settings(phases, Basis.Z)

    def coincidence(eps: float) -> float:
        lam = indistinguishability_weight(eps)
        p = kernels.chip_pattern_probs(
            layout.kinds,
            layout.mode_i,
            layout.mode_j,
            layout.values,
            settings.as_array(),
            layout.dim,
            INJECTION_MODES[0],
            INJECTION_MODES[1],
            lam,
            js,
            ks,
        )
        return float(p[0])

    p = coincidence(epsilon)
    p_dist = coincidence(1.0)
    denom = p_dist + p
    if denom <= 0.0:
        raise PostSelectionError("interference diagnostic has no signal")
    return (p_dist - p) / denom
