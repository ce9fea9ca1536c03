"""Super Lie algebras: supercommutator, structure constants, graded
axioms, the adjoint endomorphism and Grassmann shells.

Conventions.  Basis elements E_1..E_p are even, E_{p+1}..E_{p+q} odd.
Brackets expand with left coefficients, [E_M, E_N] = sum_K f^K_MN E_K.
Moving a pure supernumber a past a pure basis element E costs the sign
(-1)^(eps(a) eps(E)); the same rule gives [X, a Y] = (-1)^(eps(a) eps(X)) a [X, Y],
which is the only sign the paper-level formulas leave implicit.
"""

from __future__ import annotations

import numpy as np

from .errors import (DependentBasis, IncompatibleOperands, InvalidStructureConstants,
                     NotASubalgebra)
from .grassmann import Parity, Supernumber, even_part, odd_part
from .linalg import SuperMatrix, matrix_parity_project

JACOBI_TOL = 1e-10


def super_bracket(M, N):
    """[M, N] = MN - (-1)^(eps(M) eps(N)) NM, extended bilinearly.

    Mixed-parity inputs are split into their even/odd block parts first.
    """
    M._check_compat(N)
    parts_m = _pure_parts(M)
    parts_n = _pure_parts(N)
    out = SuperMatrix.zeros(M.p, M.q, M.budget, M.field)
    for em, Pm in parts_m:
        for en, Pn in parts_n:
            sign = -1 if (em and en) else 1
            out = out + (Pm @ Pn) - (Pn @ Pm) * sign
    return out


def _pure_parts(M):
    if M.is_even():
        return [(0, M)]
    if M.is_odd():
        return [(1, M)]
    return [(0, matrix_parity_project(M, Parity.EVEN)),
            (1, matrix_parity_project(M, Parity.ODD))]


def _twist(z, eps):
    """Coefficient after moving z past a pure element of parity eps."""
    if eps == 0:
        return z
    return even_part(z) - odd_part(z)


class SuperLieAlgebra:
    """Graded dimension (p, q) plus structure constants f^K_MN.

    Constants are stored for both argument orders and validated on
    construction: grading consistency, graded skew symmetry and a graded
    Jacobi residual below ``jacobi_tol``.
    """

    def __init__(self, p, q, budget, field, constants, jacobi_tol=JACOBI_TOL):
        self.p = p
        self.q = q
        self.budget = budget
        self.field = field
        self.dim = p + q
        f = {}
        for (M, N, K), val in constants.items():
            if not (1 <= M <= self.dim and 1 <= N <= self.dim and 1 <= K <= self.dim):
                raise InvalidStructureConstants(f"index out of range in f^{K}_{M}{N}")
            if not val.is_zero():
                f[(M, N, K)] = val
        self.f = f
        self._validate_grading()
        self._validate_skew()
        rep = check_graded_jacobi(self, jacobi_tol)
        if not rep["pass"]:
            raise InvalidStructureConstants(
                f"graded Jacobi residual {rep['max_residual']:.3e} above {jacobi_tol} "
                f"at triple {rep['worst_triple']}"
            )

    def basis_parity(self, M):
        """Parity of basis element E_M (1-based)."""
        return 0 if M <= self.p else 1

    def constant(self, M, N, K):
        z = self.f.get((M, N, K))
        return z if z is not None else Supernumber.zero(self.budget, self.field)

    def bracket_basis(self, M, N):
        """[E_M, E_N] as {K: coefficient} with zeros omitted."""
        return {K: v for (m, n, K), v in self.f.items() if (m, n) == (M, N)}

    def _validate_grading(self):
        for (M, N, K), val in self.f.items():
            want = (self.basis_parity(M) + self.basis_parity(N) + self.basis_parity(K)) % 2
            ok = val.is_even() if want == 0 else val.is_odd()
            if not ok:
                raise InvalidStructureConstants(
                    f"f^{K}_{M}{N} has parity {val.parity.name}, grading requires "
                    f"{'even' if want == 0 else 'odd'}"
                )

    def _validate_skew(self):
        keys = set(self.f)
        for (M, N, K) in keys | {(N, M, K) for (M, N, K) in keys}:
            sign = -1 if (self.basis_parity(M) and self.basis_parity(N)) else 1
            lhs = self.constant(M, N, K)
            rhs = self.constant(N, M, K) * (-sign)
            if not lhs.approx_eq(rhs):
                raise InvalidStructureConstants(
                    f"graded skew fails at f^{K}_{M}{N}: {lhs!r} vs {rhs!r}"
                )


def bracket_coords(L, u, v):
    """Bracket of elements given by left coefficient vectors.

    [sum_M u^M E_M, sum_N v^N E_N]^K = sum u^M twist_M(v^N) f^K_MN where
    twist applies the sign (-1)^(eps(v^N) eps_M).
    """
    if len(u) != L.dim or len(v) != L.dim:
        raise IncompatibleOperands(f"coefficient vectors must have length {L.dim}")
    out = [Supernumber.zero(L.budget, L.field) for _ in range(L.dim)]
    for (M, N, K), fk in L.f.items():
        term = u[M - 1] * _twist(v[N - 1], L.basis_parity(M)) * fk
        out[K - 1] = out[K - 1] + term
    return out


def check_graded_jacobi(L, tol=JACOBI_TOL):
    """Max residual of the graded Jacobi identity over all basis triples.

    (-1)^(eps_a eps_c) [a,[b,c]] + cyclic = 0 evaluated through the
    structure constants; returns {max_residual, pass, worst_triple}.
    """
    worst = 0.0
    worst_triple = None
    dim = L.dim
    eps = [L.basis_parity(M) for M in range(1, dim + 1)]
    for M in range(1, dim + 1):
        for N in range(1, dim + 1):
            for K in range(1, dim + 1):
                res = [Supernumber.zero(L.budget, L.field) for _ in range(dim)]
                for (a, b, c) in ((M, N, K), (N, K, M), (K, M, N)):
                    outer_sign = -1 if (eps[a - 1] and eps[c - 1]) else 1
                    # [E_a, [E_b, E_c]] = sum_L (+-) f^L_bc f^R_aL E_R
                    for Lidx, f_bc in L.bracket_basis(b, c).items():
                        moved = _twist(f_bc, eps[a - 1])
                        for R, f_aL in L.bracket_basis(a, Lidx).items():
                            res[R - 1] = res[R - 1] + (moved * f_aL) * outer_sign
                r = sum(z.norm() for z in res)
                if r > worst:
                    worst = r
                    worst_triple = (M, N, K)
    return {"max_residual": worst, "pass": worst <= tol, "worst_triple": worst_triple}


def is_conventional(L, tol=1e-12):
    """True when every structure constant is soul-free in this basis."""
    return all(v.soul_norm() <= tol for v in L.f.values())


def bracket_bound_constant(L):
    """Banach bound M(p+q): norm([X,Y]) <= M(p+q) |X| |Y| with
    M = max constant norm."""
    if not L.f:
        return 0.0
    return max(v.norm() for v in L.f.values()) * L.dim


def ad_matrix(L, X):
    """Matrix of ad_X on left-coefficient columns, via right expansion.

    ad_X(E_a) = sum_c E_c (ad_X)^c_a; composition of such matrices is a
    plain supermatrix product, so ad over a bracket equals the matrix
    supercommutator exactly.  X is a length p+q coefficient list.
    """
    if len(X) != L.dim:
        raise IncompatibleOperands(f"coefficient vector must have length {L.dim}")
    zero = Supernumber.zero(L.budget, L.field)
    ents = [[zero for _ in range(L.dim)] for _ in range(L.dim)]
    for (b, a, c), fk in L.f.items():
        coef = X[b - 1] * fk
        ents[c - 1][a - 1] = ents[c - 1][a - 1] + _twist(coef, L.basis_parity(c))
    return SuperMatrix(L.p, L.q, ents)


class BasisSolver:
    """Expands supermatrices over a pure basis with left module coefficients.

    The expansion sum_K x^K . E_K uses the operator module action of
    linalg.module_scale (row-parity twist on odd coefficient blades).
    Solves body-first, then blade by blade in increasing grade, reusing
    the pseudo-inverse of the numeric body matrix.  A full re-expansion
    residual guards the sparse bookkeeping.
    """

    def __init__(self, basis):
        if not basis:
            raise DependentBasis("empty basis")
        self.basis = list(basis)
        first = basis[0]
        self.budget = first.budget
        self.field = first.field
        self.shape = (first.p, first.q)
        n = first.n
        m = len(basis)
        self.row_parity = [first.slot_parity(i) for i in range(n)]
        A = np.zeros((n * n, m), dtype=np.complex128)
        for k, E in enumerate(basis):
            A[:, k] = E.body().reshape(-1)
        if np.linalg.matrix_rank(A) < m:
            raise DependentBasis("basis bodies are linearly dependent")
        self.pinv = np.linalg.pinv(A)
        # blade masks appearing anywhere in the basis entries
        self.basis_masks = set()
        self.basis_vecs = []
        for E in basis:
            vec = {}
            for i, row in enumerate(E.entries):
                for j, e in enumerate(row):
                    for mask, c in e._terms.items():
                        vec[(i, j, mask)] = c
                        self.basis_masks.add(mask)
            self.basis_vecs.append(vec)

    def expand(self, T):
        """Coefficients x with sum_K x^K . E_K = T; returns (coeffs, residual)."""
        from .blades import grade, merge_sign
        from .linalg import module_scale

        n = T.n
        m = len(self.basis)
        t_vec = {}
        cand = {0}
        for i, row in enumerate(T.entries):
            for j, e in enumerate(row):
                for mask, c in e._terms.items():
                    t_vec[(i, j, mask)] = c
                    cand.add(mask)
        coeffs = [dict() for _ in range(m)]
        for g in range(self.budget + 1):
            eps_b = g % 2
            for b in sorted(b for b in cand if grade(b) == g):
                rhs = np.zeros(n * n, dtype=np.complex128)
                for i in range(n):
                    for j in range(n):
                        acc = t_vec.get((i, j, b), 0)
                        for K in range(m):
                            for mask, xc in coeffs[K].items():
                                rest = b & ~mask
                                if mask | rest != b or mask == b:
                                    continue
                                s = merge_sign(mask, rest)
                                if s == 0:
                                    continue
                                if grade(mask) % 2 and self.row_parity[i]:
                                    s = -s
                                ec = self.basis_vecs[K].get((i, j, rest))
                                if ec is not None:
                                    acc -= s * xc * ec
                        # divide out the module twist for this blade parity
                        if eps_b and self.row_parity[i]:
                            acc = -acc
                        rhs[i * n + j] = acc
                xi = self.pinv @ rhs
                for K in range(m):
                    if xi[K] != 0:
                        coeffs[K][b] = xi[K]
            # joins of freshly solved blades with basis blades become candidates
            new = set()
            for K in range(m):
                for mask in coeffs[K]:
                    for bm in self.basis_masks:
                        if mask & bm == 0:
                            new.add(mask | bm)
            cand |= new
        out = []
        for K in range(m):
            terms = dict(coeffs[K])
            if self.field == "R":
                terms = {mask: c.real for mask, c in terms.items()}
            out.append(Supernumber(self.field, self.budget, terms))
        recon = SuperMatrix.zeros(*self.shape, self.budget, self.field)
        for K in range(m):
            recon = recon + module_scale(out[K], self.basis[K])
        residual = (recon - T).norm()
        return out, residual


def structure_constants(basis, tol=1e-9, jacobi_tol=JACOBI_TOL):
    """Structure constants of a pure matrix basis, even elements first.

    Raises NotASubalgebra (with the offending pair attached) when some
    bracket leaves the span of the basis.
    """
    p = sum(1 for E in basis if E.is_even())
    q = len(basis) - p
    for idx, E in enumerate(basis):
        want_even = idx < p
        if want_even and not E.is_even():
            raise IncompatibleOperands("basis must list even elements first, then odd")
        if not want_even and not E.is_odd():
            raise IncompatibleOperands(f"basis element {idx + 1} is not pure")
    solver = BasisSolver(basis)
    constants = {}
    for M in range(1, len(basis) + 1):
        for N in range(1, len(basis) + 1):
            T = super_bracket(basis[M - 1], basis[N - 1])
            coeffs, residual = solver.expand(T)
            if residual > tol:
                raise NotASubalgebra(
                    f"[E_{M}, E_{N}] leaves the span (residual {residual:.3e})",
                    pair=(M, N),
                )
            for K, c in enumerate(coeffs, start=1):
                if not c.is_zero():
                    constants[(M, N, K)] = c
    return SuperLieAlgebra(p, q, basis[0].budget, basis[0].field, constants,
                           jacobi_tol=jacobi_tol)


def grassmann_shell(f0, p, q, budget, field="C", jacobi_tol=JACOBI_TOL):
    """Promote complex structure constants to a supernumber algebra.

    f0 maps (M, N, K) to field scalars and must already satisfy graded
    skew symmetry and the Jacobi identity over the field; the shell keeps
    the same constants as soul-free supernumbers, so Lambda-combinations
    bracket with the sign rule [a X, b Y] = a b (-1)^(eps(b) eps(X)) [X, Y].
    """
    constants = {
        key: Supernumber.scalar(val, budget, field) for key, val in f0.items() if val != 0
    }
    try:
        return SuperLieAlgebra(p, q, budget, field, constants, jacobi_tol=jacobi_tol)
    except InvalidStructureConstants as exc:
        raise InvalidStructureConstants(f"field-level constants invalid: {exc}") from exc
