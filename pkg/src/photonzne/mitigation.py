"""Zero-noise extrapolation over the distinguishability parameter and the
measurement-budget bookkeeping for deferred mitigation.

The controllable noise knob is the pair distinguishability
``eps(theta) = 2 sin^2(2 theta) / (1 + sin^2(2 theta))`` set by a
preparation half-wave-plate angle ``theta``.  Estimating the energy at two
levels ``eps1 < eps2`` and extrapolating linearly to zero noise gives

``E_est = (eps2 * E(eps1) - eps1 * E(eps2)) / (eps2 - eps1)``

whose variance, for independent estimates, is amplified to
``(eps2^2 var1 + eps1^2 var2) / (eps2 - eps1)^2`` — the bias/variance
trade-off that motivates deferring mitigation to the last optimizer
iterations.  A run with ``k0`` unmitigated and ``k1`` mitigated iterations
consumes ``N = n*k0 + 2*n*k1`` measurements (n = 6: three bases times two
objective evaluations per iteration).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .schwinger import EnergyEstimate


def epsilon_of_theta(theta: float) -> float:
    """Distinguishability produced by preparation plate angle ``theta`` (radians)."""
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    s = math.sin(2.0 * theta) ** 2
    return 2.0 * s / (1.0 + s)


def validate_noise_levels(levels) -> tuple[float, ...]:
    """Check a strictly increasing tuple of noise levels in (0, 1]."""
    out = tuple(float(e) for e in levels)
    if len(out) < 2:
        raise ValueError("extrapolation needs at least two noise levels")
    if any(not 0.0 < e <= 1.0 for e in out):
        raise ValueError(f"noise levels must lie in (0, 1], got {out}")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise ValueError(f"noise levels must be strictly increasing, got {out}")
    return out


@dataclass(frozen=True)
class ZneEstimate:
    """Zero-noise extrapolated energy: value, std, and fit coefficients of
    the linear model E(eps) = c1 + c2*eps."""

    value: float
    std: float
    c1: float
    c2: float


def zne_variance(var1: float, var2: float, eps1: float, eps2: float) -> float:
    """Variance of the two-point linear extrapolation to eps = 0."""
    if var1 < 0 or var2 < 0:
        raise ValueError("variances must be non-negative")
    if eps1 == eps2:
        raise ValueError("noise levels must differ")
    return (eps2**2 * var1 + eps1**2 * var2) / (eps2 - eps1) ** 2


def linear_zne(
    e1: EnergyEstimate, e2: EnergyEstimate, eps1: float, eps2: float
) -> ZneEstimate:
    """Two-point zero-noise extrapolation from estimates at eps1 < eps2."""
    validate_noise_levels((eps1, eps2))
    value = (eps2 * e1.value - eps1 * e2.value) / (eps2 - eps1)
    slope = (e2.value - e1.value) / (eps2 - eps1)
    var = zne_variance(e1.std**2, e2.std**2, eps1, eps2)
    return ZneEstimate(value=value, std=math.sqrt(var), c1=value, c2=slope)


def lsq_extrapolate(points) -> ZneEstimate:
    """Weighted least-squares linear extrapolation from (eps, value, var) triples.

    Weights are inverse variances; if any supplied variance is non-positive
    (exact-mode estimates) the fit falls back to ordinary least squares with
    the intercept uncertainty taken from the fit residuals.  For exactly two
    points this reproduces :func:`linear_zne`.
    """
    pts = [(float(e), float(v), float(s2)) for e, v, s2 in points]
    if len(pts) < 2:
        raise ValueError("extrapolation needs at least two points")
    eps = np.array([p[0] for p in pts])
    if len(set(eps.tolist())) < 2:
        raise ValueError("noise levels must not all coincide")
    y = np.array([p[1] for p in pts])
    var = np.array([p[2] for p in pts])
    x = np.column_stack([np.ones_like(eps), eps])

    if np.all(var > 0):
        w = 1.0 / var
        xtwx = x.T @ (w[:, None] * x)
        cov = np.linalg.inv(xtwx)
        beta = cov @ (x.T @ (w * y))
        intercept_var = cov[0, 0]
    else:
        beta, *_ = np.linalg.lstsq(x, y, rcond=None)
        resid = y - x @ beta
        dof = len(pts) - 2
        sigma2 = float(resid @ resid) / dof if dof > 0 else 0.0
        intercept_var = sigma2 * np.linalg.inv(x.T @ x)[0, 0]

    return ZneEstimate(
        value=float(beta[0]),
        std=math.sqrt(max(float(intercept_var), 0.0)),
        c1=float(beta[0]),
        c2=float(beta[1]),
    )


@dataclass(frozen=True)
class MitigationSchedule:
    """Measurement schedule: k0 unmitigated then k1 mitigated iterations,
    n measurements per unmitigated iteration (2n per mitigated)."""

    k0: int
    k1: int
    n: int = 6

    def __post_init__(self) -> None:
        if self.k0 < 0 or self.k1 < 0:
            raise ValueError("iteration counts must be non-negative")
        if self.k0 + self.k1 < 1:
            raise ValueError("schedule must contain at least one iteration")
        if self.n < 1:
            raise ValueError("measurements per iteration must be positive")


def measurements_used(schedule: MitigationSchedule) -> int:
    """Total measurement budget N = n*k0 + 2*n*k1."""
    return schedule.n * (schedule.k0 + 2 * schedule.k1)
