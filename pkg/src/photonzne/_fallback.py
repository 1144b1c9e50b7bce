"""Pure NumPy implementations of the hot kernels.

Same signatures as the compiled `_speedups` extension; `kernels` picks
whichever is importable.  Element encoding for the packed chip description:
kind 0 = coupler on (mi, mj) with reflectivity `vals`; kind 1 = addressable
phase on mode mi reading slot mj of the phase vector (plus fixed offset
`vals`); kind 2 = fixed phase `vals` on mode mi.
"""

from __future__ import annotations

import numpy as np

BACKEND = "fallback"


def compose_chip(kinds, mi, mj, vals, phases, dim):
    u = np.eye(dim, dtype=np.complex128)
    for n in range(kinds.shape[0]):
        kind = kinds[n]
        if kind == 0:
            i, j = mi[n], mj[n]
            sr = np.sqrt(vals[n])
            st = np.sqrt(1.0 - vals[n])
            ci = u[:, i].copy()
            cj = u[:, j].copy()
            u[:, i] = ci * sr + cj * st
            u[:, j] = ci * st - cj * sr
        elif kind == 1:
            u[:, mi[n]] *= np.exp(1j * (phases[mj[n]] + vals[n]))
        else:
            u[:, mi[n]] *= np.exp(1j * vals[n])
    return u


def pattern_probs(u, a, b, lam, js, ks):
    out = np.empty(js.shape[0], dtype=np.float64)
    for n in range(js.shape[0]):
        j, k = js[n], ks[n]
        if j == k:
            z = u[a, j] * u[b, j]
            out[n] = (1.0 + lam) * (z.real * z.real + z.imag * z.imag)
        else:
            z1 = u[a, j] * u[b, k]
            z2 = u[a, k] * u[b, j]
            zs = z1 + z2
            p_ind = zs.real * zs.real + zs.imag * zs.imag
            p_dis = (z1.real * z1.real + z1.imag * z1.imag) + (
                z2.real * z2.real + z2.imag * z2.imag
            )
            out[n] = lam * p_ind + (1.0 - lam) * p_dis
    return out


def full_distribution(u, a, b, lam):
    dim = u.shape[0]
    out = np.empty(dim * (dim + 1) // 2, dtype=np.float64)
    idx = 0
    for j in range(dim):
        for k in range(j, dim):
            if j == k:
                z = u[a, j] * u[b, j]
                out[idx] = (1.0 + lam) * (z.real * z.real + z.imag * z.imag)
            else:
                z1 = u[a, j] * u[b, k]
                z2 = u[a, k] * u[b, j]
                zs = z1 + z2
                p_ind = zs.real * zs.real + zs.imag * zs.imag
                p_dis = (z1.real * z1.real + z1.imag * z1.imag) + (
                    z2.real * z2.real + z2.imag * z2.imag
                )
                out[idx] = lam * p_ind + (1.0 - lam) * p_dis
            idx += 1
    return out


def chip_pattern_probs(kinds, mi, mj, vals, phases, dim, a, b, lam, js, ks):
    u = compose_chip(kinds, mi, mj, vals, phases, dim)
    return pattern_probs(u, a, b, lam, js, ks)
