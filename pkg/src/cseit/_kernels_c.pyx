# cython: language_level=3
"""Compiled series kernels. Same algorithms and signatures as ``_kernels_py``."""
from libc.math cimport floor, fabs, INFINITY

import numpy as np


cdef inline double _abs(double complex z) nogil:
    cdef double re = z.real
    cdef double im = z.imag
    return (re * re + im * im) ** 0.5


cdef double _inverse_bound(double complex gn2) nogil:
    cdef double s
    if gn2.real >= 0.0:
        return 1.0
    s = fabs(gn2.imag) / _abs(gn2)
    if s == 0.0:
        return INFINITY
    return 1.0 / s


def inverse_bound(gn2):
    return _inverse_bound(gn2)


cdef double complex _poisson_inverse(double mu, double complex gn2, double rel_tol,
                                     long max_terms, long *terms) nogil:
    cdef double fmax, w, r, wsum
    cdef long m, k, n
    cdef double complex s
    if mu == 0.0:
        terms[0] = 1
        return 1.0
    fmax = _inverse_bound(gn2)
    m = <long>floor(mu)
    s = 1.0 / (1.0 + gn2 * m)
    wsum = 1.0
    n = 1

    w = 1.0
    k = m
    while True:
        if n >= max_terms:
            terms[0] = -1
            return s
        k += 1
        w *= mu / k
        s += w / (1.0 + gn2 * k)
        wsum += w
        n += 1
        r = mu / (k + 1)
        if w * fmax * r / (1.0 - r) <= rel_tol * _abs(s):
            break

    w = 1.0
    k = m
    while k > 0:
        if n >= max_terms:
            terms[0] = -1
            return s
        w *= k / mu
        k -= 1
        s += w / (1.0 + gn2 * k)
        wsum += w
        n += 1
        r = k / mu
        if w * fmax * r / (1.0 - r) <= rel_tol * _abs(s):
            break
    terms[0] = n
    return s / wsum


def poisson_inverse_sum(double mu, gn2, double rel_tol, long max_terms):
    cdef long terms = 0
    cdef double complex v = _poisson_inverse(mu, gn2, rel_tol, max_terms, &terms)
    return complex(v), terms


def poisson_group_sum(double mu, double x, double a, double b, double rel_tol,
                      long max_terms):
    cdef double fmax = a / (b * b) + 0.25 / b
    cdef double w, d, t, s, scale, r, wsum
    cdef long m, k, n
    if mu == 0.0:
        return -a / (b * b), 1
    m = <long>floor(mu)
    d = b + x * m
    t = (x * m - a) / (d * d)
    wsum = 1.0
    s = t
    scale = fabs(t)
    n = 1

    w = 1.0
    k = m
    while True:
        if n >= max_terms:
            return s, -1
        k += 1
        w *= mu / k
        d = b + x * k
        t = w * (x * k - a) / (d * d)
        s += t
        wsum += w
        scale += fabs(t)
        n += 1
        r = mu / (k + 1)
        if w * fmax * r / (1.0 - r) <= rel_tol * scale:
            break

    w = 1.0
    k = m
    while k > 0:
        if n >= max_terms:
            return s, -1
        w *= k / mu
        k -= 1
        d = b + x * k
        t = w * (x * k - a) / (d * d)
        s += t
        wsum += w
        scale += fabs(t)
        n += 1
        r = k / mu
        if w * fmax * r / (1.0 - r) <= rel_tol * scale:
            break
    return s / wsum, n


def hyp1f1_series(a, b, double x, double rel_tol, long max_terms):
    cdef double complex ca = a
    cdef double complex cb = b
    cdef double complex t = 1.0
    cdef double complex s = 1.0
    cdef double r, q
    cdef long k = 0
    while True:
        if k + 1 >= max_terms:
            return complex(s), -1
        t *= (ca + k) / (cb + k) * (x / (k + 1))
        s += t
        k += 1
        if t == 0:
            break
        q = _abs((ca + k) / (cb + k))
        r = x / (k + 1) * (q if q > 1.0 else 1.0)
        if k > x and r < 1.0 and _abs(t) * r / (1.0 - r) <= rel_tol * _abs(s):
            break
    return complex(s), k + 1


def poisson_inverse_many(mu, gn2, double rel_tol, long max_terms):
    cdef double[::1] mu_v = np.ascontiguousarray(mu, dtype=np.float64)
    cdef double complex[::1] g_v = np.ascontiguousarray(gn2, dtype=np.complex128)
    cdef Py_ssize_t n = mu_v.shape[0]
    out = np.empty(n, dtype=np.complex128)
    terms = np.empty(n, dtype=np.int64)
    cdef double complex[::1] out_v = out
    cdef long long[::1] terms_v = terms
    cdef long t
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            out_v[i] = _poisson_inverse(mu_v[i], g_v[i], rel_tol, max_terms, &t)
            terms_v[i] = t
    return out, terms
