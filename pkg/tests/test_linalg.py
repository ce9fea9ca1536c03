"""Graded vectors, supermatrices, norms, module actions."""

import pytest

from conftest import oracle_mul, rand_sn
from supernum.errors import IncompatibleOperands
from supernum.grassmann import Parity, Supernumber, Tolerance
from supernum.linalg import (SuperMatrix, SuperVector, even_coords,
                             from_even_coords, mat_mul, mat_norm, mat_vec,
                             right_action, vec_norm)
from supernum.sampling import random_even_matrix, random_pure_matrix, random_vector

B = 6


def sn(terms, budget=B):
    return Supernumber.from_terms(terms, budget)


def unit11(i, j):
    return SuperMatrix.unit(1, 1, i, j, B)


# -- vectors -----------------------------------------------------------

def test_vec_norm_examples():
    v = SuperVector(1, 1, [sn({(): 1, (1, 2): 1}), sn({(1,): 1})])
    assert vec_norm(v) == 3.0
    assert vec_norm(SuperVector.zero(1, 1, B)) == 0.0
    w = SuperVector(1, 1, [sn({(): 2}), sn({(1,): 1, (2,): 1})])
    assert vec_norm(w) == 4.0


def test_vector_slot_parity_enforced():
    with pytest.raises(IncompatibleOperands):
        SuperVector(1, 1, [sn({(1,): 1}), sn({(1,): 1})])  # odd in even slot
    with pytest.raises(IncompatibleOperands):
        SuperVector(1, 1, [sn({(): 1}), sn({(): 1})])  # even in odd slot


def test_vector_even_scaling_stays_in_kpq():
    v = SuperVector(1, 1, [sn({(): 1}), sn({(1,): 1})])
    scaled = v * sn({(): 2, (1, 2): 1})
    # the z[1,2] part of the scalar annihilates the z[1] slot
    assert vec_norm(scaled) == pytest.approx(5.0)
    with pytest.raises(IncompatibleOperands):
        v * Supernumber.zeta(1, B)


# -- matrix product ------------------------------------------------------

def test_matmul_identity_and_zero(rng):
    M = random_even_matrix(rng, 1, 1, B)
    I = SuperMatrix.identity(1, 1, B)
    Z = SuperMatrix.zeros(1, 1, B)
    assert mat_mul(I, M).approx_eq(M)
    assert mat_mul(M, Z).approx_eq(Z)


def test_matrix_units_multiply():
    assert mat_mul(unit11(1, 2), unit11(2, 1)).approx_eq(unit11(1, 1))
    assert mat_mul(unit11(1, 1), unit11(2, 2)).approx_eq(SuperMatrix.zeros(1, 1, B))


def test_matmul_matches_entrywise_oracle(rng):
    for _ in range(20):
        M = SuperMatrix(1, 1, [[rand_sn(rng, B) for _ in range(2)] for _ in range(2)])
        N = SuperMatrix(1, 1, [[rand_sn(rng, B) for _ in range(2)] for _ in range(2)])
        C = mat_mul(M, N)
        for i in range(2):
            for j in range(2):
                want = oracle_mul(M.entries[i][0], N.entries[0][j]) + \
                       oracle_mul(M.entries[i][1], N.entries[1][j])
                assert C.entries[i][j].approx_eq(want, Tolerance(1e-12, 1e-12))


def test_matmul_dict_path_above_table_budget():
    big = 14  # above MAX_TABLE_BUDGET: falls back to sparse entry products
    a = Supernumber.from_terms({(): 1, (13, 14): 0.5}, big)
    M = SuperMatrix(1, 0, [[a]])
    C = mat_mul(M, M)
    assert C.entries[0][0].approx_eq(
        Supernumber.from_terms({(): 1, (13, 14): 1.0}, big))


# -- matrix norm -----------------------------------------------------------

def test_mat_norm_examples():
    assert mat_norm(SuperMatrix.identity(1, 1, B)) == 2.0
    M = SuperMatrix(1, 1, [[sn({(): 1}), Supernumber.zeta(1, B)],
                           [Supernumber.zeta(2, B), sn({(): 1})]])
    assert mat_norm(M) == 4.0
    assert mat_norm(SuperMatrix.zeros(1, 1, B)) == 0.0


def test_mat_norm_submultiplicative(rng):
    for _ in range(1000):
        M = random_pure_matrix(rng, 1, 1, B, parity=int(rng.integers(0, 2)))
        N = random_pure_matrix(rng, 1, 1, B, parity=int(rng.integers(0, 2)))
        assert mat_norm(mat_mul(M, N)) <= mat_norm(M) * mat_norm(N) + 1e-12


def test_matrix_parity_classification():
    assert SuperMatrix.identity(1, 1, B).parity is Parity.EVEN
    odd = SuperMatrix(1, 1, [[Supernumber.zeta(1, B), sn({(): 1})],
                             [sn({(): 1}), Supernumber.zeta(2, B)]])
    assert odd.parity is Parity.ODD
    mixed = SuperMatrix(1, 1, [[sn({(): 1}), sn({(): 1})],
                               [sn({(): 0}), sn({(): 1})]])
    assert mixed.parity is Parity.MIXED


def test_parity_additive_under_product(rng):
    for _ in range(30):
        pm = int(rng.integers(0, 2))
        pn = int(rng.integers(0, 2))
        M = random_pure_matrix(rng, 1, 1, B, parity=pm)
        N = random_pure_matrix(rng, 1, 1, B, parity=pn)
        C = mat_mul(M, N)
        if C.norm() == 0.0:
            continue
        assert C.parity is (Parity.ODD if (pm + pn) % 2 else Parity.EVEN)


# -- module actions ----------------------------------------------------------

def test_right_action_signs():
    z1 = Supernumber.zeta(1, B)
    v_even = sn({(): 1, (1, 2): 2})
    v_odd = sn({(2,): 1})
    assert right_action(v_even, z1).approx_eq(z1 * v_even)
    assert right_action(v_odd, z1).approx_eq(-(z1 * v_odd))
    z12 = sn({(1, 2): 1})
    assert right_action(v_odd, z12).approx_eq(z12 * v_odd)


def test_right_action_on_vectors_even_only():
    v = SuperVector(1, 1, [sn({(): 1}), Supernumber.zeta(1, B)])
    out = right_action(v, sn({(): 2}))
    assert vec_norm(out) == pytest.approx(4.0)
    with pytest.raises(IncompatibleOperands):
        right_action(v, Supernumber.zeta(2, B))


def test_even_matrix_preserves_kpq(rng):
    for _ in range(20):
        M = random_even_matrix(rng, 2, 1, B)
        v = random_vector(rng, 2, 1, B)
        w = mat_vec(M, v)  # SuperVector constructor re-validates slot parity
        assert w.p == 2 and w.q == 1


def test_even_coords_roundtrip(rng):
    M = random_even_matrix(rng, 1, 1, B)
    v = even_coords(M)
    assert (v.p, v.q) == (2, 2)
    back = from_even_coords(v, 1, 1)
    assert back.approx_eq(M)
