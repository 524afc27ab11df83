"""Pure-Python series kernels.

Line-for-line twin of ``_kernels_c.pyx``; used when the compiled extension
is unavailable or ``CSEIT_PURE_PYTHON`` is set. Every function returns
``(value, terms)`` with ``terms == -1`` when ``max_terms`` ran out.

Poisson-weighted sums start at the distribution mode ``floor(mu)`` with
unit weight and walk outwards; the result is divided by the accumulated
weight, which replaces the ``e^-mu mu^m/m!`` prefactor and cannot
underflow. Each direction stops once a geometric bound on the remaining
weight mass, times a bound on the summand, drops below the tolerance.
"""
import math

import numpy as np


def inverse_bound(gn2):
    """sup over real t >= 0 of 1/|1 + gn2*t|."""
    if gn2.real >= 0.0:
        return 1.0
    s = abs(gn2.imag) / abs(gn2)
    if s == 0.0:
        return math.inf
    return 1.0 / s


def poisson_inverse_sum(mu, gn2, rel_tol, max_terms):
    """sum_k e^-mu mu^k/k! / (1 + gn2*k)."""
    gn2 = complex(gn2)
    if mu == 0.0:
        return 1.0 + 0.0j, 1
    fmax = inverse_bound(gn2)
    m = int(math.floor(mu))
    s = 1.0 / (1.0 + gn2 * m)
    wsum = 1.0
    n = 1

    w = 1.0
    k = m
    while True:
        if n >= max_terms:
            return s, -1
        k += 1
        w *= mu / k
        s += w / (1.0 + gn2 * k)
        wsum += w
        n += 1
        r = mu / (k + 1)
        if w * fmax * r / (1.0 - r) <= rel_tol * abs(s):
            break

    w = 1.0
    k = m
    while k > 0:
        if n >= max_terms:
            return s, -1
        w *= k / mu
        k -= 1
        s += w / (1.0 + gn2 * k)
        wsum += w
        n += 1
        r = k / mu
        if w * fmax * r / (1.0 - r) <= rel_tol * abs(s):
            break
    return s / wsum, n


def poisson_group_sum(mu, x, a, b, rel_tol, max_terms):
    """sum_k e^-mu mu^k/k! (x*k - a) / (b + x*k)**2, with x, a >= 0 and b > 0.

    The sum crosses zero as parameters vary, so the stopping scale is the
    running sum of absolute terms rather than the partial sum itself.
    """
    fmax = a / (b * b) + 0.25 / b
    if mu == 0.0:
        return -a / (b * b), 1
    m = int(math.floor(mu))
    d = b + x * m
    t = (x * m - a) / (d * d)
    wsum = 1.0
    s = t
    scale = abs(t)
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
        scale += abs(t)
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
        scale += abs(t)
        n += 1
        r = k / mu
        if w * fmax * r / (1.0 - r) <= rel_tol * scale:
            break
    return s / wsum, n


def hyp1f1_series(a, b, x, rel_tol, max_terms):
    """Kummer 1F1(a; b; x) by its Maclaurin series, x >= 0."""
    a = complex(a)
    b = complex(b)
    t = 1.0 + 0.0j
    s = t
    k = 0
    while True:
        if k + 1 >= max_terms:
            return s, -1
        t *= (a + k) / (b + k) * (x / (k + 1))
        s += t
        k += 1
        if t == 0:
            break
        r = x / (k + 1) * max(1.0, abs((a + k) / (b + k)))
        if k > x and r < 1.0 and abs(t) * r / (1.0 - r) <= rel_tol * abs(s):
            break
    return s, k + 1


def poisson_inverse_many(mu, gn2, rel_tol, max_terms):
    """Elementwise ``poisson_inverse_sum`` over 1-D arrays."""
    mu = np.ascontiguousarray(mu, dtype=np.float64)
    gn2 = np.ascontiguousarray(gn2, dtype=np.complex128)
    out = np.empty(mu.shape[0], dtype=np.complex128)
    terms = np.empty(mu.shape[0], dtype=np.int64)
    for i in range(mu.shape[0]):
        out[i], terms[i] = poisson_inverse_sum(mu[i], gn2[i], rel_tol, max_terms)
    return out, terms
