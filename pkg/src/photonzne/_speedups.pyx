# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: chip-unitary composition and two-photon pattern
probabilities.  Mirrors `_fallback` exactly; see there for the element
encoding."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()

BACKEND = "speedups"


cdef inline double _abs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef void _compose(
    const long[::1] kinds, const long[::1] mi, const long[::1] mj,
    const double[::1] vals, const double[::1] phases,
    double complex[:, ::1] u, Py_ssize_t dim,
) noexcept nogil:
    cdef Py_ssize_t n, r, i, j
    cdef double sr, st, ph
    cdef double complex ci, cj, rot
    for r in range(dim):
        for i in range(dim):
            u[r, i] = 1.0 if r == i else 0.0
    for n in range(kinds.shape[0]):
        if kinds[n] == 0:
            i = mi[n]
            j = mj[n]
            sr = sqrt(vals[n])
            st = sqrt(1.0 - vals[n])
            for r in range(dim):
                ci = u[r, i]
                cj = u[r, j]
                u[r, i] = ci * sr + cj * st
                u[r, j] = ci * st - cj * sr
        else:
            if kinds[n] == 1:
                ph = phases[mj[n]] + vals[n]
            else:
                ph = vals[n]
            i = mi[n]
            rot = cos(ph) + 1j * sin(ph)
            for r in range(dim):
                u[r, i] = u[r, i] * rot


cdef void _patterns(
    const double complex[:, ::1] u, Py_ssize_t a, Py_ssize_t b, double lam,
    const Py_ssize_t[::1] js, const Py_ssize_t[::1] ks, double[::1] out,
) noexcept nogil:
    cdef Py_ssize_t n, j, k
    cdef double complex z1, z2
    cdef double p_ind, p_dis
    for n in range(js.shape[0]):
        j = js[n]
        k = ks[n]
        if j == k:
            z1 = u[a, j] * u[b, j]
            out[n] = (1.0 + lam) * _abs2(z1)
        else:
            z1 = u[a, j] * u[b, k]
            z2 = u[a, k] * u[b, j]
            p_ind = _abs2(z1 + z2)
            p_dis = _abs2(z1) + _abs2(z2)
            out[n] = lam * p_ind + (1.0 - lam) * p_dis


def compose_chip(kinds, mi, mj, vals, phases, dim):
    cdef Py_ssize_t d = dim
    u = np.empty((d, d), dtype=np.complex128)
    _compose(kinds, mi, mj, vals, phases, u, d)
    return u


def pattern_probs(u, a, b, lam, js, ks):
    cdef const double complex[:, ::1] uc = np.ascontiguousarray(u, dtype=np.complex128)
    cdef Py_ssize_t ca = a, cb = b
    cdef double clam = lam
    out = np.empty(js.shape[0], dtype=np.float64)
    _patterns(uc, ca, cb, clam, js, ks, out)
    return out


def full_distribution(u, a, b, lam):
    cdef Py_ssize_t dim = u.shape[0]
    cdef Py_ssize_t j, k, idx = 0
    js = np.empty(dim * (dim + 1) // 2, dtype=np.intp)
    ks = np.empty_like(js)
    for j in range(dim):
        for k in range(j, dim):
            js[idx] = j
            ks[idx] = k
            idx += 1
    return pattern_probs(u, a, b, lam, js, ks)


def chip_pattern_probs(kinds, mi, mj, vals, phases, dim, a, b, lam, js, ks):
    cdef const long[::1] ckinds = kinds
    cdef const long[::1] cmi = mi
    cdef const long[::1] cmj = mj
    cdef const double[::1] cvals = vals
    cdef const double[::1] cphases = phases
    cdef const Py_ssize_t[::1] cjs = js
    cdef const Py_ssize_t[::1] cks = ks
    cdef Py_ssize_t cdim = dim, ca = a, cb = b
    cdef double clam = lam
    cdef double complex[:, ::1] u = np.empty((cdim, cdim), dtype=np.complex128)
    cdef double[::1] out = np.empty(cjs.shape[0], dtype=np.float64)
    with nogil:
        _compose(ckinds, cmi, cmj, cvals, cphases, u, cdim)
        _patterns(u, ca, cb, clam, cjs, cks, out)
    return np.asarray(out)
