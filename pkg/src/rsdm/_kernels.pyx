# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels.py``.

Each routine consumes deviates from the stream's PCG64 bit generator in the
same order as the scalar operators in ``mutation.py``, and uses the same
arithmetic in the same order, so results match the pure-Python path bit for
bit.
"""

import numpy as np

from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport log1p, sqrt
from numpy.random cimport bitgen_t
from numpy.random.c_distributions cimport random_standard_normal, random_standard_uniform

NAME = "compiled"


cdef struct Params:
    bint recorded
    bint directional
    double coupling
    double lam_mean
    double lam_sd
    double floor


cdef Params _params(cfg):
    cdef Params p
    p.recorded = cfg.recorded_step
    p.directional = cfg.directional
    p.coupling = cfg.coupling_fraction
    p.lam_mean = cfg.lambda_mean
    p.lam_sd = cfg.lambda_sd
    p.floor = cfg.sigma_floor
    return p


cdef bitgen_t* _bitgen(rng) except NULL:
    return <bitgen_t*>PyCapsule_GetPointer(rng.generator.bit_generator.capsule, "BitGenerator")


cdef inline double _gauss(bitgen_t* bg, double mean, double sd) noexcept nogil:
    return mean + sd * random_standard_normal(bg)


cdef inline double _sample_sigma(bitgen_t* bg, double sigma, double k_norm,
                                 const Params* p) noexcept nogil:
    cdef double u = random_standard_uniform(bg)
    cdef double s = -(sigma + p.coupling * k_norm) * log1p(-u)
    if not s >= p.floor:
        s = p.floor
    return s


cdef inline double _norm(const double* v, Py_ssize_t n) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        s += v[i] * v[i]
    return sqrt(s)


cdef inline double _meta(bitgen_t* bg, double sigma, const double* k, double* kc,
                         Py_ssize_t n, const Params* p) noexcept nogil:
    # writes the meta-mutated direction into kc, returns the new rate
    cdef double s = _sample_sigma(bg, sigma, _norm(k, n), p)
    cdef double lam = _gauss(bg, p.lam_mean, p.lam_sd)
    cdef double z
    cdef Py_ssize_t i
    for i in range(n):
        z = _gauss(bg, 0.0, s)
        kc[i] = z + lam * k[i]
    return s


cdef double _spawn(bitgen_t* bg, const double* x, double sigma, const double* k,
                   double* xc, double* kc, Py_ssize_t n, const Params* p) noexcept nogil:
    cdef double s, lam, z, realized, acc
    cdef Py_ssize_t i
    if p.directional:
        s = _meta(bg, sigma, k, kc, n, p)
        if p.recorded:
            for i in range(n):
                xc[i] = x[i] + kc[i]
                kc[i] = xc[i] - x[i]
            return s
        lam = _gauss(bg, p.lam_mean, p.lam_sd)
        for i in range(n):
            z = _gauss(bg, 0.0, s)
            xc[i] = x[i] + z + lam * kc[i]
        return s

    s = _sample_sigma(bg, sigma, 0.0, p)
    for i in range(n):
        xc[i] = x[i] + _gauss(bg, 0.0, s)
        kc[i] = 0.0
    if p.recorded:
        acc = 0.0
        for i in range(n):
            z = xc[i] - x[i]
            acc += z * z
        realized = sqrt(acc)
        s = realized if realized >= p.floor else p.floor
    return s


def spawn_children(X, S, K, Py_ssize_t progeny, cfg, rng):
    cdef double[:, ::1] xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef double[::1] sv = np.ascontiguousarray(S, dtype=np.float64)
    cdef double[:, ::1] kv = np.ascontiguousarray(K, dtype=np.float64)
    cdef Py_ssize_t npar = xv.shape[0], n = xv.shape[1]
    CX = np.empty((npar * progeny, n))
    CS = np.empty(npar * progeny)
    CK = np.empty((npar * progeny, n))
    cdef double[:, ::1] cx = CX
    cdef double[::1] cs = CS
    cdef double[:, ::1] ck = CK
    cdef Params p = _params(cfg)
    cdef bitgen_t* bg = _bitgen(rng)
    cdef Py_ssize_t i, j, row
    if npar == 0 or progeny == 0 or n == 0:
        return CX, CS, CK
    with rng.generator.bit_generator.lock, nogil:
        for i in range(npar):
            for j in range(progeny):
                row = i * progeny + j
                cs[row] = _spawn(bg, &xv[i, 0], sv[i], &kv[i, 0], &cx[row, 0], &ck[row, 0], n, &p)
    return CX, CS, CK


def sample_sigmas(double sigma, double k_norm, Py_ssize_t count, cfg, rng):
    out = np.empty(count)
    cdef double[::1] ov = out
    cdef Params p = _params(cfg)
    cdef bitgen_t* bg = _bitgen(rng)
    cdef Py_ssize_t i
    with rng.generator.bit_generator.lock, nogil:
        for i in range(count):
            ov[i] = _sample_sigma(bg, sigma, k_norm, &p)
    return out


def meta_mutations(double sigma, k, Py_ssize_t count, cfg, rng):
    cdef double[::1] kv = np.ascontiguousarray(k, dtype=np.float64)
    cdef Py_ssize_t n = kv.shape[0], i
    out_s = np.empty(count)
    out_k = np.empty((count, n))
    cdef double[::1] os_ = out_s
    cdef double[:, ::1] ok = out_k
    cdef Params p = _params(cfg)
    cdef bitgen_t* bg = _bitgen(rng)
    if count == 0 or n == 0:
        return out_s, out_k
    with rng.generator.bit_generator.lock, nogil:
        for i in range(count):
            os_[i] = _meta(bg, sigma, &kv[0], &ok[i, 0], n, &p)
    return out_s, out_k


def directional_steps(double sigma, k, Py_ssize_t count, cfg, rng):
    cdef double[::1] kv = np.ascontiguousarray(k, dtype=np.float64)
    cdef Py_ssize_t n = kv.shape[0], i, j
    out = np.empty((count, n))
    cdef double[:, ::1] ov = out
    cdef Params p = _params(cfg)
    cdef bitgen_t* bg = _bitgen(rng)
    cdef double lam, z
    with rng.generator.bit_generator.lock, nogil:
        for i in range(count):
            lam = _gauss(bg, p.lam_mean, p.lam_sd)
            for j in range(n):
                z = _gauss(bg, 0.0, sigma)
                ov[i, j] = z + lam * kv[j]
    return out
