# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled packed kernels: blade-table contractions for supermatrix
products and the bracket power series that dominates the BCH flow.

Mirrors the interface and termination logic of _kernels_np exactly.
"""

import numpy as np

cimport cython
from libc.math cimport fabs, sqrt


ctypedef fused num:
    double
    double complex


cdef inline double _mag(num x) noexcept nogil:
    if num is double:
        return fabs(x)
    else:
        return sqrt(x.real * x.real + x.imag * x.imag)


cdef void _matmul_into(num[:, :, ::1] A, num[:, :, ::1] B, num[:, :, ::1] out,
                       int[::1] I, int[::1] J, int[::1] K,
                       double[::1] S) noexcept nogil:
    cdef Py_ssize_t n = A.shape[0], m = A.shape[1], k = B.shape[1]
    cdef Py_ssize_t T = I.shape[0]
    cdef Py_ssize_t r, c, s, t
    for r in range(n):
        for c in range(k):
            for s in range(m):
                for t in range(T):
                    out[r, c, K[t]] = out[r, c, K[t]] + <num>S[t] * A[r, s, I[t]] * B[s, c, J[t]]


cdef void _bracket_into(num[:, :, ::1] W, num[:, :, ::1] X, num[:, :, ::1] out,
                        int[::1] I, int[::1] J, int[::1] K,
                        double[::1] S) noexcept nogil:
    # out = W@X - X@W, accumulated in one pass
    cdef Py_ssize_t n = W.shape[0]
    cdef Py_ssize_t T = I.shape[0]
    cdef Py_ssize_t r, c, s, t
    for r in range(n):
        for c in range(n):
            for s in range(n):
                for t in range(T):
                    out[r, c, K[t]] = out[r, c, K[t]] + <num>S[t] * (
                        W[r, s, I[t]] * X[s, c, J[t]] - X[r, s, I[t]] * W[s, c, J[t]])


cdef double _norm1(num[:, :, ::1] A) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double acc = 0.0
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            for k in range(A.shape[2]):
                acc += _mag(A[i, j, k])
    return acc


def _zeros_like_dtype(num[:, :, ::1] ref, shape):
    if num is double:
        return np.zeros(shape, dtype=np.float64)
    else:
        return np.zeros(shape, dtype=np.complex128)


def mul_vec(num[::1] a, num[::1] b, tab):
    cdef int[::1] I = tab.I, J = tab.J, K = tab.K
    cdef double[::1] S = tab.S
    cdef Py_ssize_t T = I.shape[0], t
    if num is double:
        out_arr = np.zeros(tab.dim, dtype=np.float64)
    else:
        out_arr = np.zeros(tab.dim, dtype=np.complex128)
    cdef num[::1] out = out_arr
    with nogil:
        for t in range(T):
            out[K[t]] = out[K[t]] + <num>S[t] * a[I[t]] * b[J[t]]
    return out_arr


def matmul(num[:, :, ::1] A, num[:, :, ::1] B, tab):
    cdef int[::1] I = tab.I, J = tab.J, K = tab.K
    cdef double[::1] S = tab.S
    out_arr = _zeros_like_dtype(A, (A.shape[0], B.shape[1], A.shape[2]))
    cdef num[:, :, ::1] out = out_arr
    with nogil:
        _matmul_into(A, B, out, I, J, K, S)
    return out_arr


def bracket_apply(num[:, :, ::1] W, num[:, :, ::1] X, tab):
    cdef int[::1] I = tab.I, J = tab.J, K = tab.K
    cdef double[::1] S = tab.S
    out_arr = _zeros_like_dtype(W, (W.shape[0], W.shape[1], W.shape[2]))
    cdef num[:, :, ::1] out = out_arr
    with nogil:
        _bracket_into(W, X, out, I, J, K, S)
    return out_arr


def norm1(A):
    return float(np.abs(A).sum())


def series_apply(num[:, :, ::1] W, num[:, :, ::1] X, double[::1] coeffs,
                 double[::1] tails, double rtol, tab):
    """sum_k coeffs[k] * ad_W^k(X); same termination rule as the numpy
    backend.  Returns (F, terms_used, last_term_norm, converged)."""
    cdef int[::1] I = tab.I, J = tab.J, K = tab.K
    cdef double[::1] S = tab.S
    cdef Py_ssize_t n = W.shape[0], D = W.shape[2]
    cdef Py_ssize_t ncoeff = coeffs.shape[0]

    acc_arr = _zeros_like_dtype(W, (n, n, D))
    u_arr = _zeros_like_dtype(W, (n, n, D))
    unew_arr = _zeros_like_dtype(W, (n, n, D))
    cdef num[:, :, ::1] acc = acc_arr
    cdef num[:, :, ::1] U = u_arr
    cdef num[:, :, ::1] Unew = unew_arr

    cdef Py_ssize_t i, j, d, k
    cdef double ad_bound, un, last = 0.0, tol_eff
    cdef int small_streak = 0, converged = 0
    cdef Py_ssize_t terms = ncoeff - 1
    cdef num[:, :, ::1] tmp

    with nogil:
        for i in range(n):
            for j in range(n):
                for d in range(D):
                    U[i, j, d] = X[i, j, d]
                    acc[i, j, d] = <num>coeffs[0] * X[i, j, d]
        ad_bound = 2.0 * _norm1(W)
        for k in range(1, ncoeff):
            for i in range(n):
                for j in range(n):
                    for d in range(D):
                        Unew[i, j, d] = 0
            _bracket_into(W, U, Unew, I, J, K, S)
            tmp = U
            U = Unew
            Unew = tmp
            un = _norm1(U)
            if coeffs[k] != 0.0:
                for i in range(n):
                    for j in range(n):
                        for d in range(D):
                            acc[i, j, d] = acc[i, j, d] + <num>coeffs[k] * U[i, j, d]
            last = fabs(coeffs[k]) * un
            if un == 0.0:
                terms = k
                last = 0.0
                converged = 1
                break
            tol_eff = rtol * (1.0 + _norm1(acc))
            if ad_bound <= 1.0:
                if k + 1 < tails.shape[0] and tails[k + 1] * un < tol_eff:
                    terms = k
                    converged = 1
                    break
            else:
                if last < tol_eff:
                    small_streak += 1
                else:
                    small_streak = 0
                if small_streak >= 2:
                    terms = k
                    converged = 1
                    break
    return acc_arr, int(terms), float(last), bool(converged)
