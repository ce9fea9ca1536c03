"""Supercommutator, structure constants, graded axioms, ad, shells."""

import numpy as np
import pytest

from supernum.errors import (DependentBasis, InvalidStructureConstants,
                             NotASubalgebra)
from supernum.grassmann import Supernumber
from supernum.linalg import SuperMatrix, mat_mul, right_action
from supernum.presets import gl11, gl21, heisenberg
from supernum.sampling import random_pure_matrix, random_supernumber
from supernum.superlie import (SuperLieAlgebra, ad_matrix, bracket_bound_constant,
                               bracket_coords, check_graded_jacobi, grassmann_shell,
                               is_conventional, structure_constants, super_bracket)

B = 6


def unit11(i, j, budget=B, field="R"):
    return SuperMatrix.unit(1, 1, i, j, budget, field)


@pytest.fixture(scope="module")
def gl11_alg():
    return gl11(B)


# -- supercommutator ------------------------------------------------------

def test_odd_odd_bracket_is_anticommutator():
    # E12, E21 are odd; [E12, E21] = E12 E21 + E21 E12 = E11 + E22
    got = super_bracket(unit11(1, 2), unit11(2, 1))
    assert got.approx_eq(unit11(1, 1) + unit11(2, 2))


def test_even_odd_bracket():
    assert super_bracket(unit11(1, 1), unit11(1, 2)).approx_eq(unit11(1, 2))
    assert super_bracket(unit11(1, 1), unit11(2, 1)).approx_eq(-unit11(2, 1))


def test_even_self_bracket_vanishes(rng):
    X = random_pure_matrix(rng, 1, 1, B, parity=0)
    assert super_bracket(X, X).norm() == 0.0


def test_graded_skew_exact(rng):
    for _ in range(50):
        pm, pn = int(rng.integers(0, 2)), int(rng.integers(0, 2))
        M = random_pure_matrix(rng, 2, 1, B, parity=pm)
        N = random_pure_matrix(rng, 2, 1, B, parity=pn)
        sign = -1 if (pm and pn) else 1
        lhs = super_bracket(M, N)
        rhs = super_bracket(N, M) * (-sign)
        assert (lhs - rhs).norm() == 0.0


def test_bracket_parity_additive(rng):
    for _ in range(20):
        pm, pn = int(rng.integers(0, 2)), int(rng.integers(0, 2))
        M = random_pure_matrix(rng, 1, 1, B, parity=pm)
        N = random_pure_matrix(rng, 1, 1, B, parity=pn)
        C = super_bracket(M, N)
        if C.norm() == 0.0:
            continue
        assert C.is_odd() if (pm + pn) % 2 else C.is_even()


def test_bracket_right_linearity(rng):
    # [X, Y a] = [X, Y] a  (Eq.-8-style induced right action)
    for _ in range(20):
        pm, pn, pa = (int(rng.integers(0, 2)) for _ in range(3))
        X = random_pure_matrix(rng, 1, 1, B, parity=pm)
        Y = random_pure_matrix(rng, 1, 1, B, parity=pn)
        a = random_supernumber(rng, B, parity=pa)
        lhs = super_bracket(X, right_action(Y, a))
        rhs = right_action(super_bracket(X, Y), a)
        assert (lhs - rhs).norm() <= 1e-12 * max(1.0, X.norm() * Y.norm() * a.norm())


# -- structure constants -----------------------------------------------------

def test_gl11_structure_constants(gl11_alg):
    basis, L = gl11_alg
    assert (L.p, L.q) == (2, 2)
    one = Supernumber.scalar(1, B)
    # [E12, E21] = E11 + E22   (basis order: E11, E22 | E12, E21)
    assert L.constant(3, 4, 1).approx_eq(one)
    assert L.constant(3, 4, 2).approx_eq(one)
    # [E11, E12] = E12, [E11, E21] = -E21
    assert L.constant(1, 3, 3).approx_eq(one)
    assert L.constant(1, 4, 4).approx_eq(-one)
    # every constant is 0 or +-1
    for v in L.f.values():
        assert abs(abs(v.body) - 1.0) < 1e-12 and v.soul_norm() == 0.0


def test_reexpansion_residual(gl11_alg):
    from supernum.linalg import module_scale

    basis, L = gl11_alg
    for M in range(1, 5):
        for N in range(1, 5):
            want = super_bracket(basis[M - 1], basis[N - 1])
            got = SuperMatrix.zeros(1, 1, B)
            for K, c in L.bracket_basis(M, N).items():
                got = got + module_scale(c, basis[K - 1])
            assert (want - got).norm() <= 1e-12


def test_abelian_diagonal_basis():
    basis = [unit11(1, 1), unit11(2, 2)]
    L = structure_constants(basis)
    assert not L.f
    assert bracket_bound_constant(L) == 0.0


def test_two_element_borel_basis():
    # {E11, E12}: [E11, E12] = E12, closed, f^2_12 = 1
    L = structure_constants([unit11(1, 1), unit11(1, 2)])
    assert (L.p, L.q) == (1, 1)
    assert L.constant(1, 2, 2).approx_eq(Supernumber.scalar(1, B))


def test_not_a_subalgebra_error():
    with pytest.raises(NotASubalgebra) as err:
        structure_constants([unit11(1, 2), unit11(2, 1)])
    assert err.value.pair == (1, 2)


def test_dependent_basis_rejected():
    with pytest.raises(DependentBasis):
        structure_constants([unit11(1, 1), unit11(1, 1)])


def test_basis_solver_recovers_soul_coefficients(rng):
    from supernum.linalg import module_scale
    from supernum.superlie import BasisSolver

    basis, _ = gl11(B)
    solver = BasisSolver(basis)
    for _ in range(10):
        coeffs = [random_supernumber(rng, B) for _ in range(4)]
        T = SuperMatrix.zeros(1, 1, B)
        for c, E in zip(coeffs, basis):
            T = T + module_scale(c, E)
        got, residual = solver.expand(T)
        assert residual <= 1e-12
        for c, g in zip(coeffs, got):
            assert g.approx_eq(c)


# -- graded Jacobi -------------------------------------------------------------

def test_jacobi_gl11_exact(gl11_alg):
    _, L = gl11_alg
    rep = check_graded_jacobi(L, 1e-12)
    assert rep["pass"] and rep["max_residual"] == 0.0


def test_jacobi_all_zero_constants():
    L = SuperLieAlgebra(1, 1, B, "R", {})
    assert check_graded_jacobi(L)["pass"]


def test_jacobi_detects_sign_flip(gl11_alg):
    _, L = gl11_alg
    bad = dict(L.f)
    # flip [E12, E21] -> -(E11) in both argument orders (keeps graded skew)
    bad[(3, 4, 1)] = -bad[(3, 4, 1)]
    bad[(4, 3, 1)] = -bad[(4, 3, 1)]
    broken = SuperLieAlgebra(2, 2, B, "R", bad, jacobi_tol=float("inf"))
    rep = check_graded_jacobi(broken, 1e-10)
    assert not rep["pass"] and rep["max_residual"] > 0.5


def test_matrix_jacobi_residual_random(rng):
    # graded Jacobi for the supercommutator itself, on random pure triples
    for p, q in ((1, 1), (2, 1)):
        for _ in range(100):
            eps = [int(rng.integers(0, 2)) for _ in range(3)]
            A, Bm, C = (random_pure_matrix(rng, p, q, B, parity=e, norm_cap=1.0)
                        for e in eps)
            t1 = super_bracket(A, super_bracket(Bm, C)) * ((-1) ** (eps[0] * eps[2]))
            t2 = super_bracket(Bm, super_bracket(C, A)) * ((-1) ** (eps[1] * eps[0]))
            t3 = super_bracket(C, super_bracket(A, Bm)) * ((-1) ** (eps[2] * eps[1]))
            assert (t1 + t2 + t3).norm() <= 1e-12


# -- conventionality, bounds, ad ----------------------------------------------

def test_is_conventional(gl11_alg):
    _, L = gl11_alg
    assert is_conventional(L)
    # soul-valued constant on a single odd generator: unconventional
    unconv = SuperLieAlgebra(0, 1, B, "R",
                             {(1, 1, 1): Supernumber.zeta(1, B)})
    assert not is_conventional(unconv)


def test_bracket_bound_constant(gl11_alg):
    _, L = gl11_alg
    assert bracket_bound_constant(L) == 4.0


def test_bracket_bound_never_violated(gl11_alg, rng):
    _, L = gl11_alg
    bound = bracket_bound_constant(L)
    for _ in range(100):
        u = [random_supernumber(rng, B) for _ in range(4)]
        v = [random_supernumber(rng, B) for _ in range(4)]
        w = bracket_coords(L, u, v)
        nu = sum(z.norm() for z in u)
        nv = sum(z.norm() for z in v)
        assert sum(z.norm() for z in w) <= bound * nu * nv + 1e-12


def test_ad_matrix_examples(gl11_alg):
    _, L = gl11_alg
    zero = [Supernumber.zero(B) for _ in range(4)]
    assert ad_matrix(L, zero).norm() == 0.0
    one = Supernumber.scalar(1, B)
    X = [one, Supernumber.zero(B), Supernumber.zero(B), Supernumber.zero(B)]
    adX = ad_matrix(L, X)
    assert adX.entry(3, 3).approx_eq(one)
    assert adX.entry(4, 4).approx_eq(-one)
    assert adX.entry(1, 1).is_zero() and adX.entry(2, 2).is_zero()
    # identity is central: E11 + E22
    central = [one, one, Supernumber.zero(B), Supernumber.zero(B)]
    assert ad_matrix(L, central).norm() == 0.0


def test_ad_is_bracket_homomorphism(gl11_alg, rng):
    _, L = gl11_alg
    for _ in range(25):
        ex, ey = int(rng.integers(0, 2)), int(rng.integers(0, 2))
        X = [random_supernumber(rng, B, parity=(ex + L.basis_parity(M)) % 2)
             for M in range(1, 5)]
        Y = [random_supernumber(rng, B, parity=(ey + L.basis_parity(M)) % 2)
             for M in range(1, 5)]
        lhs = ad_matrix(L, bracket_coords(L, X, Y))
        sign = -1 if (ex and ey) else 1
        rhs = mat_mul(ad_matrix(L, X), ad_matrix(L, Y)) - \
            mat_mul(ad_matrix(L, Y), ad_matrix(L, X)) * sign
        scale = max(1.0, sum(z.norm() for z in X) * sum(z.norm() for z in Y))
        assert (lhs - rhs).norm() <= 1e-10 * scale


def test_ad_even_element_gives_even_matrix(gl11_alg, rng):
    _, L = gl11_alg
    X = [random_supernumber(rng, B, parity=L.basis_parity(M))
         for M in range(1, 5)]
    assert ad_matrix(L, X).is_even()


# -- Grassmann shell -------------------------------------------------------------

def gl11_complex_constants():
    _, L = gl11(B, field="C")
    return {key: v.body for key, v in L.f.items()}


def test_shell_of_gl11_is_conventional_with_zero_jacobi():
    f0 = gl11_complex_constants()
    L = grassmann_shell(f0, 2, 2, B)
    assert is_conventional(L)
    assert check_graded_jacobi(L)["max_residual"] == 0.0


def test_shell_sign_rule():
    # [z1 x, z2 y] = -z1 z2 [x, y] for odd basis x, y
    f0 = gl11_complex_constants()
    L = grassmann_shell(f0, 2, 2, B)
    z = Supernumber.zero(B, "C")
    u = [z, z, Supernumber.zeta(1, B, "C"), z]          # z1 * E12
    v = [z, z, z, Supernumber.zeta(2, B, "C")]          # z2 * E21
    got = bracket_coords(L, u, v)
    minus_z12 = Supernumber.from_terms({(1, 2): -1}, B, "C")
    # [E12, E21] = E11 + E22, so both even components carry -z1 z2
    assert got[0].approx_eq(minus_z12)
    assert got[1].approx_eq(minus_z12)
    assert got[2].is_zero() and got[3].is_zero()


def test_shell_of_abelian():
    L = grassmann_shell({}, 1, 1, B)
    assert not L.f


def test_shell_rejects_bad_constants():
    # constants failing graded skew at the field level
    bad = {(1, 2, 1): 1.0, (2, 1, 1): 1.0}
    with pytest.raises(InvalidStructureConstants):
        grassmann_shell(bad, 2, 0, B)
