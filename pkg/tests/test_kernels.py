"""Compiled and numpy kernels must agree on every operation and dtype."""

import numpy as np
import pytest

from supernum import _kernels_np
from supernum.blades import blade_table

try:
    from supernum import _core
    BACKENDS = [("numpy", _kernels_np), ("compiled", _core)]
except ImportError:
    _core = None
    BACKENDS = [("numpy", _kernels_np)]

B = 6
D = 1 << B


def rand_packed(rng, shape, dtype):
    a = rng.uniform(-1, 1, size=shape + (D,))
    if dtype == np.complex128:
        a = a + 1j * rng.uniform(-1, 1, size=shape + (D,))
    # sparsify a bit so the arrays resemble real supernumbers
    a[rng.uniform(size=a.shape) < 0.7] = 0.0
    return np.ascontiguousarray(a.astype(dtype))


@pytest.mark.parametrize("dtype", [np.float64, np.complex128])
def test_backends_agree_on_mul_vec(dtype):
    rng = np.random.default_rng(5)
    tab = blade_table(B)
    a = rand_packed(rng, (), dtype)
    b = rand_packed(rng, (), dtype)
    ref = _kernels_np.mul_vec(a, b, tab)
    for name, impl in BACKENDS:
        out = impl.mul_vec(a, b, tab)
        np.testing.assert_allclose(out, ref, atol=1e-14, err_msg=name)


@pytest.mark.parametrize("dtype", [np.float64, np.complex128])
@pytest.mark.parametrize("n", [2, 3])
def test_backends_agree_on_matmul(dtype, n):
    rng = np.random.default_rng(6)
    tab = blade_table(B)
    A = rand_packed(rng, (n, n), dtype)
    Bm = rand_packed(rng, (n, n), dtype)
    ref = _kernels_np.matmul(A, Bm, tab)
    for name, impl in BACKENDS:
        np.testing.assert_allclose(impl.matmul(A, Bm, tab), ref,
                                   atol=1e-13, err_msg=name)


@pytest.mark.parametrize("dtype", [np.float64, np.complex128])
def test_backends_agree_on_bracket_and_series(dtype):
    from supernum.expbch import _zeta_coeffs

    rng = np.random.default_rng(7)
    tab = blade_table(B)
    W = rand_packed(rng, (2, 2), dtype)
    X = rand_packed(rng, (2, 2), dtype)
    W *= 0.2 / np.abs(W).sum()
    X *= 0.2 / np.abs(X).sum()
    ref_b = _kernels_np.bracket_apply(W, X, tab)
    coeffs, tails = _zeta_coeffs(64)
    ref_s, ref_terms, _, ref_conv = _kernels_np.series_apply(
        W, X, coeffs, tails, 1e-14, tab)
    assert ref_conv
    for name, impl in BACKENDS:
        np.testing.assert_allclose(impl.bracket_apply(W, X, tab), ref_b,
                                   atol=1e-13, err_msg=name)
        out, terms, last, conv = impl.series_apply(W, X, coeffs, tails, 1e-14, tab)
        assert conv and terms == ref_terms
        np.testing.assert_allclose(out, ref_s, atol=1e-13, err_msg=name)


def test_mul_vec_matches_sparse_supernumber_product():
    from conftest import rand_sn
    from supernum.grassmann import Supernumber

    rng = np.random.default_rng(8)
    tab = blade_table(B)
    for _ in range(50):
        a = rand_sn(rng, B)
        b = rand_sn(rng, B)
        pa = np.zeros(D)
        pb = np.zeros(D)
        for m, c in a.terms():
            pa[m] = c
        for m, c in b.terms():
            pb[m] = c
        packed = _kernels_np.mul_vec(pa, pb, tab)
        want = a * b
        got = Supernumber("R", B, {int(m): packed[m] for m in np.nonzero(packed)[0]})
        assert got.approx_eq(want)


@pytest.mark.skipif(_core is None, reason="compiled kernels not built")
def test_compiled_backend_is_active_by_default():
    from supernum import backend

    assert backend.backend_name() in ("compiled", "numpy")
