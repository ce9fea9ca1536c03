"""Pure-numpy packed kernels (fallback backend).

Supermatrices are packed as C-contiguous arrays of shape (n, m, D) with
D = 2**budget blade coefficients per entry.  Products contract through
the blade table triples (I, J -> K with sign S); the scatter step uses
bincount, which keeps this backend numpy-only.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def _scatter(P, K, D):
    """Sum P[..., t] into output blade K[t]; P has shape (..., T)."""
    lead = P.shape[:-1]
    rows = int(np.prod(lead)) if lead else 1
    idx = (np.arange(rows)[:, None] * D + K[None, :]).ravel()
    flat = P.reshape(rows, -1).ravel()
    if np.iscomplexobj(flat):
        out = np.bincount(idx, weights=flat.real, minlength=rows * D).astype(np.complex128)
        out += 1j * np.bincount(idx, weights=flat.imag, minlength=rows * D)
    else:
        out = np.bincount(idx, weights=flat, minlength=rows * D)
    return out.reshape(*lead, D)


def mul_vec(a, b, tab):
    """Blade-coefficient product of two supernumbers, shape (D,)."""
    P = tab.S * a[tab.I] * b[tab.J]
    return _scatter(P, tab.K, tab.dim)


def matmul(A, B, tab):
    """Packed supermatrix product: (n, m, D) @ (m, k, D) -> (n, k, D)."""
    Ag = A[:, :, tab.I]
    Bg = B[:, :, tab.J]
    P = np.einsum("rst,sct->rct", Ag, Bg)
    P *= tab.S
    return _scatter(P, tab.K, tab.dim)


def bracket_apply(W, X, tab):
    """Supercommutator of even W against X: W@X - X@W."""
    return matmul(W, X, tab) - matmul(X, W, tab)


def norm1(A):
    return float(np.abs(A).sum())


def series_apply(W, X, coeffs, tails, rtol, tab):
    """Evaluate sum_k coeffs[k] * ad_W^k(X) on packed arrays.

    Termination: the running term is bounded by tails[k+1] * |U_k| when
    the ad operator norm bound 2*|W| is <= 1; otherwise two successive
    small terms are required.  Returns (F, terms_used, last_term_norm,
    converged).
    """
    acc = coeffs[0] * X
    U = X
    ad_bound = 2.0 * norm1(W)
    last = 0.0
    small_streak = 0
    for k in range(1, len(coeffs)):
        U = bracket_apply(W, U, tab)
        un = norm1(U)
        if coeffs[k] != 0.0:
            acc = acc + coeffs[k] * U
        last = abs(coeffs[k]) * un
        if un == 0.0:
            return acc, k, 0.0, True
        tol_eff = rtol * (1.0 + norm1(acc))
        if ad_bound <= 1.0:
            if k + 1 < len(tails) and tails[k + 1] * un < tol_eff:
                return acc, k, last, True
        else:
            small_streak = small_streak + 1 if last < tol_eff else 0
            if small_streak >= 2:
                return acc, k, last, True
    return acc, len(coeffs) - 1, last, False
