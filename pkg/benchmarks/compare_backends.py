"""Benchmark the compiled kernels against the pure NumPy fallback.

Imports both backend modules directly (sidestepping the env-var switch
in ``photonzne.kernels``), checks they agree to near machine precision
on a batch of random chip settings, then times the hot path: composing
the six-mode chip and evaluating the four logical coincidence patterns.

Run:  python3 benchmarks/compare_backends.py [--repeats 2000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from photonzne import _fallback
from photonzne.processor import INJECTION_MODES, LOGICAL_PATTERNS, Basis, _full_settings, build_chip

try:
    from photonzne import _speedups
except ImportError:
    _speedups = None


def workload(module, layout, settings_batch, lam, js, ks) -> np.ndarray:
    out = np.empty((len(settings_batch), js.shape[0]))
    for n, phases in enumerate(settings_batch):
        out[n] = module.chip_pattern_probs(
            layout.kinds,
            layout.mode_i,
            layout.mode_j,
            layout.values,
            phases,
            layout.dim,
            INJECTION_MODES[0],
            INJECTION_MODES[1],
            lam,
            js,
            ks,
        )
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=2000, help="chip evaluations per timing pass")
    args = parser.parse_args()

    layout = build_chip()
    rng = np.random.default_rng(7)
    prep = rng.uniform(0.0, 2.0 * np.pi, size=(args.repeats, 4))
    settings_batch = [
        _full_settings(tuple(row), Basis.Z).as_array() for row in prep
    ]
    js = np.array([p[0] for p in LOGICAL_PATTERNS], dtype=np.intp)
    ks = np.array([p[1] for p in LOGICAL_PATTERNS], dtype=np.intp)
    lam = 0.7

    ref = workload(_fallback, layout, settings_batch, lam, js, ks)
    print(f"fallback backend: {args.repeats} evaluations ready")
    if _speedups is None:
        print("compiled backend: not built (pip install -e . compiles it)")
        return 0

    fast = workload(_speedups, layout, settings_batch, lam, js, ks)
    worst = float(np.max(np.abs(fast - ref)))
    print(f"max |compiled - fallback| over batch: {worst:.3e}")
    if worst > 1e-13:
        print("backends disagree; refusing to time")
        return 1

    timings = {}
    for name, module in (("fallback", _fallback), ("compiled", _speedups)):
        # warm once, then best of three passes
        workload(module, layout, settings_batch, lam, js, ks)
        best = float("inf")
        for _ in range(3):
            t0 = time.perf_counter()
            workload(module, layout, settings_batch, lam, js, ks)
            best = min(best, time.perf_counter() - t0)
        timings[name] = best
        rate = args.repeats / best
        print(f"{name:9s} {best * 1e3:8.2f} ms  ({rate:,.0f} chip evaluations/s)")

    print(f"speedup: {timings['fallback'] / timings['compiled']:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
