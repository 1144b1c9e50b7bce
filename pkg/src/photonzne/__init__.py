"""Simulation laboratory for a dual-rail photonic two-qubit processor.

The package models a six-mode linear-optical chip executing a two-qubit
variational eigensolver on the lattice Schwinger Hamiltonian, with
partial photon distinguishability as the tunable noise source and
zero-noise extrapolation as the error-mitigation strategy.  ``harness``
ties the layers together and backs the ``photonzne`` command line.
"""

from .harness import (
    DiagResult,
    ExperimentConfig,
    HomScanRow,
    MassSweepRow,
    NoiseSweepRow,
    RelativeErrorGrid,
    VqeRunResult,
    deferred_heatmap,
    diag,
    feasible_k1,
    hom_scan,
    run_vqe,
    sweep_m,
    sweep_noise,
)
from .kernels import BACKEND
from .mitigation import (
    MitigationSchedule,
    ZneEstimate,
    epsilon_of_theta,
    linear_zne,
    lsq_extrapolate,
    measurements_used,
    validate_noise_levels,
    zne_variance,
)
from .optics import (
    CoincidenceDistribution,
    ModeUnitary,
    PhotonPairInput,
    coincidence_probability,
    compose,
    directional_coupler,
    indistinguishability_weight,
    output_distribution,
    phase_shifter,
)
from .processor import (
    Basis,
    ChipLayout,
    OutcomeProbs,
    PhaseSettings,
    PostSelectionError,
    basis_settings,
    build_chip,
    chip_unitary,
    hom_visibility,
    outcome_probabilities,
    raw_outcome_probabilities,
)
from .sampling import CountRecord, sample_counts, seeded_rng
from .schwinger import (
    EnergyEstimate,
    SchwingerHamiltonian,
    energy_from_counts,
    energy_from_probs,
    exact_ground_energy,
    ground_state,
    hamiltonian,
    pauli_expectation_from_counts,
)
from .spsa import OptimTrace, SpsaConfig, calibrate_step, minimize, restart

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Basis",
    "ChipLayout",
    "CoincidenceDistribution",
    "CountRecord",
    "DiagResult",
    "EnergyEstimate",
    "ExperimentConfig",
    "HomScanRow",
    "MassSweepRow",
    "MitigationSchedule",
    "ModeUnitary",
    "NoiseSweepRow",
    "OptimTrace",
    "OutcomeProbs",
    "PhaseSettings",
    "PhotonPairInput",
    "PostSelectionError",
    "RelativeErrorGrid",
    "SchwingerHamiltonian",
    "SpsaConfig",
    "VqeRunResult",
    "ZneEstimate",
    "basis_settings",
    "build_chip",
    "calibrate_step",
    "chip_unitary",
    "coincidence_probability",
    "compose",
    "deferred_heatmap",
    "diag",
    "directional_coupler",
    "energy_from_counts",
    "energy_from_probs",
    "epsilon_of_theta",
    "exact_ground_energy",
    "feasible_k1",
    "ground_state",
    "hamiltonian",
    "hom_scan",
    "hom_visibility",
    "indistinguishability_weight",
    "linear_zne",
    "lsq_extrapolate",
    "measurements_used",
    "minimize",
    "outcome_probabilities",
    "output_distribution",
    "pauli_expectation_from_counts",
    "phase_shifter",
    "raw_outcome_probabilities",
    "restart",
    "run_vqe",
    "sample_counts",
    "seeded_rng",
    "sweep_m",
    "sweep_noise",
    "validate_noise_levels",
    "zne_variance",
]
