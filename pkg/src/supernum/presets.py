"""Built-in matrix algebras used by the CLI and the verification sweeps."""

from __future__ import annotations

from .grassmann import Supernumber
from .linalg import SuperMatrix
from .superlie import SuperLieAlgebra, structure_constants


def gl_basis(p, q, budget, field="R"):
    """Matrix units of gl(p|q), even elements first."""
    even, odd = [], []
    n = p + q
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            E = SuperMatrix.unit(p, q, i, j, budget, field)
            ((even if E.is_even() else odd)).append(E)
    return even + odd


def gl11(budget=6, field="R"):
    """gl(1|1): basis (E11, E22 | E12, E21) and its structure constants."""
    basis = [
        SuperMatrix.unit(1, 1, 1, 1, budget, field),
        SuperMatrix.unit(1, 1, 2, 2, budget, field),
        SuperMatrix.unit(1, 1, 1, 2, budget, field),
        SuperMatrix.unit(1, 1, 2, 1, budget, field),
    ]
    return basis, structure_constants(basis)


def gl21(budget=6, field="R"):
    """gl(2|1): the nine matrix units, graded dimension (5, 4)."""
    basis = gl_basis(2, 1, budget, field)
    return basis, structure_constants(basis)


def heisenberg(budget=6, field="R"):
    """3x3 strictly upper-triangular P, Q, Z with [P, Q] = Z central."""
    P = SuperMatrix.unit(3, 0, 1, 2, budget, field)
    Q = SuperMatrix.unit(3, 0, 2, 3, budget, field)
    Z = SuperMatrix.unit(3, 0, 1, 3, budget, field)
    basis = [P, Q, Z]
    return basis, structure_constants(basis)


def abelian(p, q, budget=6, field="R"):
    """Algebra with all brackets zero (no matrix realization attached)."""
    return SuperLieAlgebra(p, q, budget, field, {})


def algebra_preset(name, budget=6, field="R"):
    """Resolve a preset name like 'gl11', 'gl21', 'heisenberg', 'abelian-p-q'."""
    if name == "gl11":
        return gl11(budget, field)
    if name == "gl21":
        return gl21(budget, field)
    if name == "heisenberg":
        return heisenberg(budget, field)
    if name.startswith("abelian"):
        parts = name.split("-")
        p, q = (int(parts[1]), int(parts[2])) if len(parts) == 3 else (1, 1)
        return None, abelian(p, q, budget, field)
    raise ValueError(f"unknown algebra preset {name!r}")


def matrix_shape(name):
    """Matrix shape (p, q) of a preset's defining representation."""
    return {"gl11": (1, 1), "gl21": (2, 1), "heisenberg": (3, 0)}[name]
