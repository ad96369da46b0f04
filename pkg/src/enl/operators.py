"""Endomorphisms of a single Lie algebra.

Operators are plain exact matrices in the column convention
(``M[i, j]`` = coefficient of ``e_i`` in ``M e_j``).  Every function takes
the carrier algebra explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import exact
from .errors import (NotEquivariant, NotNijenhuis, NotRotaBaxter, PrereqFailed,
                     ShapeMismatch)
from .lie import BilinearForm, LieAlgebra, check_invariant_form
from .verdict import Verdict, failed, passed, scan


def as_operator(g: LieAlgebra, M) -> np.ndarray:
    M = exact.matrix(M)
    if M.shape != (g.dim, g.dim):
        raise ShapeMismatch(f"operator of shape {M.shape} on a {g.dim}-dim algebra")
    return M


def _pairs(n):
    return product(range(n), repeat=2)


def left_composed(c, M):
    """``t[i,j,k]`` = component ``k`` of ``[M e_i, e_j]``."""
    return exact.contract("mi,mjk->ijk", M, c)


def right_composed(c, M):
    """``t[i,j,k]`` = component ``k`` of ``[e_i, M e_j]``."""
    return exact.contract("mj,imk->ijk", M, c)


def applied(c, M):
    """``t[i,j,k]`` = component ``k`` of ``M [e_i, e_j]``."""
    return exact.contract("ijm,km->ijk", c, M)


def deformed_tensor(c, N):
    return exact.exact(left_composed(c, N) + right_composed(c, N) - applied(c, N))


def nijenhuis_torsion(g: LieAlgebra, N) -> np.ndarray:
    """``T[i,j,:] = [N e_i, N e_j] - N [e_i, e_j]_N``."""
    N = as_operator(g, N)
    images = exact.contract("ai,bj,abk->ijk", N, N, g.c)
    return exact.exact(images - applied(deformed_tensor(g.c, N), N))


def is_nijenhuis(g, N) -> bool:
    return exact.is_zero(nijenhuis_torsion(g, N))


def check_equivariant(g: LieAlgebra, E) -> Verdict:
    """``E[x,y] = [x,Ey]`` and ``E[x,y] = [Ex,y]`` on every basis pair."""
    E = as_operator(g, E)
    lhs = applied(g.c, E)
    forms = (("E[x,y] = [x,Ey]", right_composed(g.c, E)),
             ("E[x,y] = [Ex,y]", left_composed(g.c, E)))
    for i, j in _pairs(g.dim):
        for clause, rhs in forms:
            if not exact.equal(lhs[i, j], rhs[i, j]):
                return failed("check_equivariant", clause, (i, j), g.label((i, j)),
                              lhs[i, j], rhs[i, j], g.names)
    return passed("check_equivariant")


def deformed_bracket(g: LieAlgebra, N, mode: str = "general") -> LieAlgebra:
    N = as_operator(g, N)
    if mode == "general":
        if not is_nijenhuis(g, N):
            raise NotNijenhuis("operator has nonzero Nijenhuis torsion")
        c = deformed_tensor(g.c, N)
    elif mode == "equivariant":
        v = check_equivariant(g, N)
        if not v:
            raise NotEquivariant(f"operator is not equivariant: {v.describe()}")
        c = left_composed(g.c, N)
    else:
        raise ValueError(f"unknown deformation mode {mode!r}")
    return LieAlgebra(c, g.names)


def hierarchy(g: LieAlgebra, E, depth: int):
    """``[(g_{E^k}, E^k) for k = 1..depth]`` with ``[x,y]_{E^k} = [E^k x, y]``."""
    E = as_operator(g, E)
    v = check_equivariant(g, E)
    if not v:
        raise NotEquivariant(f"operator is not equivariant: {v.describe()}")
    out = []
    power = exact.identity(g.dim)
    for _ in range(depth):
        power = exact.matmul(power, E)
        out.append((LieAlgebra(left_composed(g.c, power), g.names), power))
    return out


def averaging_product(g: LieAlgebra, P) -> np.ndarray:
    """Leibniz product ``[x,y]_P = [Px, y]``."""
    return left_composed(g.c, as_operator(g, P))


def check_averaging(g: LieAlgebra, P) -> Verdict:
    P = as_operator(g, P)
    images = exact.contract("ai,bj,abk->ijk", P, P, g.c)
    rhs = applied(left_composed(g.c, P), P)
    v = scan("check_averaging", "[Px,Py] = P[Px,y]", _pairs(g.dim),
             lambda t: (images[t], rhs[t]), g.label, g.names)
    return v if v is not None else passed("check_averaging")


def _rb_sides(g, B, lam):
    lhs = exact.contract("ai,bj,abk->ijk", B, B, g.c)
    inner = exact.exact(left_composed(g.c, B) + right_composed(g.c, B) + lam * g.c)
    return lhs, applied(inner, B), inner


def check_rota_baxter(g: LieAlgebra, B, lam) -> Verdict:
    B = as_operator(g, B)
    lam = exact.parse_rational(lam)
    lhs, rhs, _ = _rb_sides(g, B, lam)
    v = scan("check_rota_baxter", "[Bx,By] = B([Bx,y]+[x,By]+lambda[x,y])", _pairs(g.dim),
             lambda t: (lhs[t], rhs[t]), g.label, g.names)
    return v if v is not None else passed("check_rota_baxter")


def descendent_bracket(g: LieAlgebra, B, lam) -> LieAlgebra:
    B = as_operator(g, B)
    lam = exact.parse_rational(lam)
    v = check_rota_baxter(g, B, lam)
    if not v:
        raise NotRotaBaxter(f"not a Rota-Baxter operator of weight {lam}: {v.describe()}")
    return LieAlgebra(_rb_sides(g, B, lam)[2], g.names)


def _matrix_scan(check, clause, lhs, rhs, g):
    return scan(check, clause, _pairs(g.dim), lambda t: (lhs[t], rhs[t]), g.label)


def check_quadratic_enl(g: LieAlgebra, E, S: BilinearForm) -> Verdict:
    E = as_operator(g, E)
    v = check_invariant_form(S)
    if not v:
        raise PrereqFailed(f"form is not invariant: {v.describe()}", v)
    v = check_equivariant(g, E)
    if not v:
        raise PrereqFailed(f"operator is not equivariant: {v.describe()}", v)
    v = _quadratic_clauses(g, E, S.S)
    return v if v is not None else passed("check_quadratic_enl")


def _quadratic_clauses(g, E, S):
    check = "check_quadratic_enl"
    v = _matrix_scan(check, "S(Ex,y) = S(x,Ey)", exact.matmul(S, E),
                     exact.matmul(exact.transpose(E), S), g)
    if v is not None:
        return v
    # S# intertwines ad with ad* = -ad^T, and E with E* = E^T
    for i, A in enumerate(g.ad_basis):
        lhs = exact.matmul(S, A)
        rhs = exact.exact(-exact.matmul(exact.transpose(A), S))
        if not exact.equal(lhs, rhs):
            idx = exact.first_nonzero(exact.exact(lhs - rhs))
            return failed(check, "S# ad_x = ad*_x S#", (i,) + idx, g.label((i,) + idx),
                          lhs[idx], rhs[idx])
    return None


@dataclass(frozen=True, eq=False)
class QuadraticENLRB:
    g: LieAlgebra
    B: np.ndarray
    S: BilinearForm
    E: np.ndarray
    weight: object

    def __post_init__(self):
        object.__setattr__(self, "B", as_operator(self.g, self.B))
        object.__setattr__(self, "E", as_operator(self.g, self.E))
        if not isinstance(self.S, BilinearForm):
            object.__setattr__(self, "S", BilinearForm(self.g, self.S))
        object.__setattr__(self, "weight", exact.parse_rational(self.weight))


def check_enl_rb(t: QuadraticENLRB) -> Verdict:
    """Rota-Baxter, quadratic compatibility, quadratic ENL and ``EB = BE``, first failure wins."""
    g, B, E, S, lam = t.g, t.B, t.E, t.S.S, t.weight
    if lam == 0:
        raise PrereqFailed("quadratic Rota-Baxter data needs a nonzero weight")
    check = "check_enl_rb"
    v = check_rota_baxter(g, B, lam)
    if not v:
        return failed(check, "rota-baxter: " + v.clause, v.witness, v.labels, v.got, v.expected,
                      v.names)
    compat = exact.exact(exact.matmul(S, B) + exact.matmul(exact.transpose(B), S) + lam * S)
    v = _matrix_scan(check, "S(x,By)+S(Bx,y)+lambda S(x,y) = 0", compat, exact.zeros(g.dim, g.dim), g)
    if v is not None:
        return v
    for sub in (check_invariant_form(t.S), check_equivariant(g, E)):
        if not sub:
            return failed(check, f"{sub.check}: {sub.clause}", sub.witness, sub.labels,
                          sub.got, sub.expected, sub.names)
    v = _quadratic_clauses(g, E, S)
    if v is not None:
        return v
    v = _matrix_scan(check, "EB = BE", exact.matmul(E, B), exact.matmul(B, E), g)
    return v if v is not None else passed(check)


def commutant_system(mats, n):
    """Rows expressing ``X A = A X`` for each ``A`` in ``mats``; unknown ``X[a,b]`` at ``a*n+b``."""
    rows = []
    for A in mats:
        for p, q in _pairs(n):
            row = [exact.ZERO] * (n * n)
            for b in range(n):
                row[p * n + b] += A[b, q]
            for a in range(n):
                row[a * n + q] -= A[p, a]
            rows.append(row)
    if not rows:
        return exact.zeros(0, n * n)
    return exact.matrix(rows)


def centroid_basis(g: LieAlgebra) -> list:
    """Echelon basis of ``{E : E ad_x = ad_x E for all x}``."""
    n = g.dim
    if n == 0:
        return []
    kernel = exact.kernel_basis(commutant_system(g.ad_basis, n))
    return [exact.freeze(v.reshape(n, n).copy()) for v in kernel]


def operator_inverse(g: LieAlgebra, E) -> np.ndarray:
    E = as_operator(g, E)
    v = check_equivariant(g, E)
    if not v:
        raise NotEquivariant(f"operator is not equivariant: {v.describe()}")
    return exact.invert(E)


def power(M, k: int) -> np.ndarray:
    out = exact.identity(M.shape[0])
    for _ in range(k):
        out = exact.matmul(out, M)
    return out
