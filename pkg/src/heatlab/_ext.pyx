# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: angular moment quadrature and wrapped-circle sums.

Same contracts as heatlab._ref; see that module for the definitions.
"""

import numpy as np

from libc.math cimport cos, exp, fabs, pow, sin, sqrt

from .errors import QuadratureError

BACKEND = "compiled"

cdef double PI = 3.141592653589793238462643383279503

cdef double[15] NODES
cdef double[15] WK
cdef double[15] WG

NODES[0] = -0.991455371120812639206854697526329
NODES[1] = -0.949107912342758524526189684047851
NODES[2] = -0.864864423359769072789712788640926
NODES[3] = -0.741531185599394439863864773280788
NODES[4] = -0.586087235467691130294144838258730
NODES[5] = -0.405845151377397166906606412076961
NODES[6] = -0.207784955007898467600689403773245
NODES[7] = 0.0
NODES[8] = 0.207784955007898467600689403773245
NODES[9] = 0.405845151377397166906606412076961
NODES[10] = 0.586087235467691130294144838258730
NODES[11] = 0.741531185599394439863864773280788
NODES[12] = 0.864864423359769072789712788640926
NODES[13] = 0.949107912342758524526189684047851
NODES[14] = 0.991455371120812639206854697526329

WK[0] = 0.022935322010529224963732008058970
WK[1] = 0.063092092629978553290700663189204
WK[2] = 0.104790010322250183839876322541518
WK[3] = 0.140653259715525918745189590510238
WK[4] = 0.169004726639267902826583426598550
WK[5] = 0.190350578064785409913256402421014
WK[6] = 0.204432940075298892414161999234649
WK[7] = 0.209482141084727828012999174891714
WK[8] = 0.204432940075298892414161999234649
WK[9] = 0.190350578064785409913256402421014
WK[10] = 0.169004726639267902826583426598550
WK[11] = 0.140653259715525918745189590510238
WK[12] = 0.104790010322250183839876322541518
WK[13] = 0.063092092629978553290700663189204
WK[14] = 0.022935322010529224963732008058970

WG[0] = 0.0
WG[1] = 0.129484966168869693270611432679082
WG[2] = 0.0
WG[3] = 0.279705391489276667901467771423780
WG[4] = 0.0
WG[5] = 0.381830050505118944950369775488975
WG[6] = 0.0
WG[7] = 0.417959183673469387755102040816327
WG[8] = 0.0
WG[9] = 0.381830050505118944950369775488975
WG[10] = 0.0
WG[11] = 0.279705391489276667901467771423780
WG[12] = 0.0
WG[13] = 0.129484966168869693270611432679082
WG[14] = 0.0


cdef void _panel(double a, double p, double lo, double hi, double* out) noexcept nogil:
    # out[0..2]: K15 moments, out[3..5]: G7 moments
    cdef double xm = 0.5 * (lo + hi)
    cdef double xr = 0.5 * (hi - lo)
    cdef double th, cth, sh, base
    cdef int i
    for i in range(6):
        out[i] = 0.0
    for i in range(15):
        th = xm + xr * NODES[i]
        cth = cos(th)
        # a*(cos t - 1) written as -2a sin^2(t/2) for relative accuracy at large a
        sh = sin(0.5 * th)
        base = exp(-2.0 * a * sh * sh)
        if p != 0.0:
            base *= pow(sin(th), p)
        out[0] += WK[i] * base
        out[1] += WK[i] * base * cth
        out[2] += WK[i] * base * cth * cth
        out[3] += WG[i] * base
        out[4] += WG[i] * base * cth
        out[5] += WG[i] * base * cth * cth
    for i in range(6):
        out[i] *= xr


cdef int _adaptive(double a, double p, double tol, double* res) noexcept nogil:
    cdef double lo_stack[512]
    cdef double hi_stack[512]
    cdef int sp = 0
    cdef int used = 0
    cdef double out[6]
    cdef double lo, hi, mid, err, w, e

    res[0] = 0.0
    res[1] = 0.0
    res[2] = 0.0

    # geometric pre-split toward the theta=0 peak, pushed right-to-left
    w = 4.0 * sqrt(2.0 / (a if a > 1.0 else 1.0))
    if w < PI:
        e = w
        while 2.0 * e < PI:
            e *= 2.0
        lo_stack[sp] = e
        hi_stack[sp] = PI
        sp += 1
        while e > w * 1.0000000001:
            lo_stack[sp] = e * 0.5
            hi_stack[sp] = e
            sp += 1
            e *= 0.5
        lo_stack[sp] = 0.0
        hi_stack[sp] = e
        sp += 1
    else:
        lo_stack[0] = 0.0
        hi_stack[0] = PI
        sp = 1

    cdef double floor
    while sp > 0:
        sp -= 1
        lo = lo_stack[sp]
        hi = hi_stack[sp]
        _panel(a, p, lo, hi, out)
        err = fabs(out[0] - out[3]) + fabs(out[1] - out[4]) + fabs(out[2] - out[5])
        floor = 32.0 * 2.220446049250313e-16 * (fabs(out[0]) + fabs(out[1]) + fabs(out[2]))
        if err <= tol * (hi - lo) / PI or err <= floor or (hi - lo) < 1e-12 or sp > 500:
            res[0] += out[0]
            res[1] += out[1]
            res[2] += out[2]
            used += 1
            if used > 100000:
                return -1
        else:
            mid = 0.5 * (lo + hi)
            lo_stack[sp] = mid
            hi_stack[sp] = hi
            sp += 1
            lo_stack[sp] = lo
            hi_stack[sp] = mid
            sp += 1
    return used


def angular_moments(a, int m, double tol=1e-13):
    """Moments J0, J1, J2 for every entry of `a`; requires m >= 2."""
    if m < 2:
        raise ValueError("angular moments are defined for dimension m >= 2")
    a_arr = np.ascontiguousarray(np.atleast_1d(a), dtype=np.float64)
    cdef double[::1] av = a_arr
    cdef Py_ssize_t n = av.shape[0]
    j0_arr = np.empty(n, dtype=np.float64)
    j1_arr = np.empty(n, dtype=np.float64)
    j2_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] j0 = j0_arr
    cdef double[::1] j1 = j1_arr
    cdef double[::1] j2 = j2_arr
    cdef double p = m - 2
    cdef double res[3]
    cdef Py_ssize_t i
    cdef int status = 0
    with nogil:
        for i in range(n):
            if _adaptive(av[i], p, tol, res) < 0:
                status = -1
                break
            j0[i] = res[0]
            j1[i] = res[1]
            j2[i] = res[2]
    if status < 0:
        raise QuadratureError("angular moments refinement did not terminate")
    return j0_arr, j1_arr, j2_arr


def wrapped_gaussian(d, double L, double t, double cutoff=1e-17):
    """Wrapped-Gaussian circle kernel at signed arc separations `d`."""
    if t <= 0.0:
        raise ValueError("wrapped_gaussian requires t > 0")
    d_arr = np.ascontiguousarray(np.atleast_1d(d), dtype=np.float64)
    cdef double[::1] dv = d_arr
    cdef Py_ssize_t n = dv.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double inv4t = 0.25 / t
    cdef double norm = 1.0 / sqrt(4.0 * PI * t)
    cdef double r, acc, term
    cdef Py_ssize_t i
    cdef long k
    with nogil:
        for i in range(n):
            r = dv[i] - L * (dv[i] // L)
            if r >= 0.5 * L:
                r -= L
            acc = exp(-r * r * inv4t)
            k = 1
            while k < 100000:
                term = exp(-(r + k * L) * (r + k * L) * inv4t) + exp(
                    -(r - k * L) * (r - k * L) * inv4t
                )
                acc += term
                if term < cutoff * acc:
                    break
                k += 1
            out[i] = acc * norm
    return out_arr
