"""Left-symmetric (pre-Lie) algebras and their equivariant operators."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import exact
from .errors import PrereqFailed, ShapeMismatch, ValidationError
from .lie import LieAlgebra
from .operators import (applied, as_operator, deformed_tensor,
                        left_composed, right_composed)
from .representations import Representation
from .verdict import Verdict, failed, passed, scan
from .yang_baxter import RelativeRB, check_relative_rb, lift_r_from_relrb


@dataclass(frozen=True, eq=False)
class PreLieAlgebra:
    """Product ``{e_i, e_j} = sum_k m[i,j,k] e_k``."""

    m: np.ndarray
    names: tuple = None

    def __post_init__(self):
        m = exact.array(self.m)
        if m.ndim != 3 or not (m.shape[0] == m.shape[1] == m.shape[2]):
            raise ShapeMismatch(f"product must be a cubic rank-3 tensor, got shape {m.shape}")
        object.__setattr__(self, "m", m)
        n = m.shape[0]
        names = tuple(f"e{i + 1}" for i in range(n)) if self.names is None else tuple(self.names)
        if len(names) != n:
            raise ShapeMismatch(f"{len(names)} names for a {n}-dim algebra")
        object.__setattr__(self, "names", names)

    @classmethod
    def from_products(cls, names, entries):
        """Sparse ``[i, j, k, coef]`` entries with no ordering restriction."""
        names = tuple(names)
        n = len(names)
        m = np.full((n, n, n), exact.ZERO, dtype=object)
        seen = set()
        for entry in entries:
            if len(entry) != 4:
                raise ValidationError(f"product entry {entry!r} must have four fields")
            i, j, k, coef = entry
            for idx in (i, j, k):
                if not isinstance(idx, int) or isinstance(idx, bool) or not 0 <= idx < n:
                    raise ValidationError(f"product entry {entry!r} has index out of range")
            if (i, j, k) in seen:
                raise ValidationError(f"product entry {entry!r} duplicates an earlier entry")
            seen.add((i, j, k))
            try:
                m[i, j, k] = exact.parse_rational(coef)
            except ValueError as exc:
                raise ValidationError(f"product entry {entry!r}: {exc}") from None
        return cls(exact.freeze(m), names)

    @property
    def dim(self) -> int:
        return self.m.shape[0]

    def __eq__(self, other):
        if not isinstance(other, PreLieAlgebra):
            return NotImplemented
        return exact.equal(self.m, other.m)

    __hash__ = None

    def product(self, x, y):
        return exact.contract("i,j,ijk->k", x, y, self.m)

    def label(self, idx):
        return tuple(self.names[i] for i in idx)

    def entries(self):
        n = self.dim
        return [(i, j, k, self.m[i, j, k]) for i, j, k in product(range(n), repeat=3)
                if self.m[i, j, k] != 0]


def associator(m):
    """``A[i,j,k,:] = {{e_i,e_j},e_k} - {e_i,{e_j,e_k}}``."""
    return exact.exact(exact.contract("ijp,pkl->ijkl", m, m) - exact.contract("jkp,ipl->ijkl", m, m))


def check_prelie(p: PreLieAlgebra) -> Verdict:
    a = associator(p.m)
    v = scan("check_prelie", "(x,y,z) = (y,x,z)", product(range(p.dim), repeat=3),
             lambda t: (a[t], a[t[1], t[0], t[2]]), p.label, p.names)
    return v if v is not None else passed("check_prelie")


def _require_prelie(p):
    v = check_prelie(p)
    if not v:
        raise PrereqFailed(f"not a pre-Lie algebra: {v.describe()}", v)


def subadjacent(p: PreLieAlgebra) -> LieAlgebra:
    return LieAlgebra(exact.exact(p.m - np.transpose(p.m, (1, 0, 2))), p.names)


def left_multiplication(p: PreLieAlgebra, T=None) -> Representation:
    """``L(e_i) y = {e_i, y}`` as a representation of the subadjacent algebra."""
    return Representation(subadjacent(p), tuple(exact.transpose(p.m[i]) for i in range(p.dim)),
                          T, p.names)


def check_pre_enl(p: PreLieAlgebra, E, mode: str = "strong") -> Verdict:
    """``weak``: ``E[x,y] = [x,Ey]`` on the subadjacent bracket;
    ``strong``: ``E{x,y} = {Ex,y} = {x,Ey}``."""
    _require_prelie(p)
    g = subadjacent(p)
    E = as_operator(g, E)
    check = "check_pre_enl"
    if mode == "weak":
        lhs, rhs = applied(g.c, E), right_composed(g.c, E)
        v = scan(check, "E[x,y] = [x,Ey]", product(range(p.dim), repeat=2),
                 lambda t: (lhs[t], rhs[t]), p.label, p.names)
    elif mode == "strong":
        lhs = applied(p.m, E)
        v = None
        for i, j in product(range(p.dim), repeat=2):
            for clause, rhs in (("E{x,y} = {Ex,y}", left_composed(p.m, E)),
                                ("E{x,y} = {x,Ey}", right_composed(p.m, E))):
                if not exact.equal(lhs[i, j], rhs[i, j]):
                    v = failed(check, clause, (i, j), p.label((i, j)), lhs[i, j], rhs[i, j],
                               p.names)
                    break
            if v is not None:
                break
    else:
        raise ValueError(f"unknown pre-ENL mode {mode!r}")
    return v if v is not None else passed(check, mode=mode)


def _require_strong(p, E):
    v = check_pre_enl(p, E, "strong")
    if not v:
        raise PrereqFailed(f"operator is not strong for the product: {v.describe()}", v)


def subadjacent_enl(p: PreLieAlgebra, E):
    """``(subadjacent Lie algebra, L with T = E, verdict that Id is EN relative RB)``."""
    _require_prelie(p)
    _require_strong(p, E)
    g = subadjacent(p)
    E = as_operator(g, E)
    L = left_multiplication(p, E)
    verdict = check_relative_rb(RelativeRB(L, exact.identity(p.dim)), E, "en")
    return g, L, verdict


def prelie_nijenhuis(p: PreLieAlgebra, N):
    """``(torsion, deformed product or None)`` for ``{x,y}_N = {Nx,y} + {x,Ny} - N{x,y}``."""
    N = exact.matrix(N)
    if N.shape != (p.dim, p.dim):
        raise ShapeMismatch(f"operator of shape {N.shape} on a {p.dim}-dim algebra")
    deformed = deformed_tensor(p.m, N)
    images = exact.contract("ai,bj,abk->ijk", N, N, p.m)
    torsion = exact.exact(images - applied(deformed, N))
    if not exact.is_zero(torsion):
        return torsion, None
    return torsion, PreLieAlgebra(deformed, p.names)


def _require_en(rb, E):
    v = check_relative_rb(rb, E, "en")
    if not v:
        raise PrereqFailed(f"not an EN relative Rota-Baxter operator: {v.describe()}", v)


def prelie_from_relrb(rb: RelativeRB, E):
    """``({u,v}_K = rho(Ku)v, T)`` on the module."""
    _require_en(rb, E)
    R, K = rb.R, rb.K
    m = R.dimW
    t = np.full((m, m, m), exact.ZERO, dtype=object)
    for a in range(m):
        t[a] = exact.transpose(R(K[:, a]))
    return PreLieAlgebra(exact.exact(t), R.names), R.T


def prelie_transport(rb: RelativeRB, E) -> PreLieAlgebra:
    """``{x,y}_K = K(rho(x) K^{-1} y)`` on ``g`` for invertible ``K``."""
    _require_en(rb, E)
    R, K, g = rb.R, rb.K, rb.g
    Kinv = exact.invert(K)
    t = np.full((g.dim,) * 3, exact.ZERO, dtype=object)
    for i in range(g.dim):
        t[i] = exact.transpose(exact.matmul(K, R.rho[i], Kinv))
    return PreLieAlgebra(exact.exact(t), g.names)


def canonical_r_prelie(p: PreLieAlgebra, E):
    """``r = sum(e_i (x) e_i* - e_i* (x) e_i)`` on ``g semidirect_{L*} g*``."""
    _require_strong(p, E)
    g = subadjacent(p)
    E = as_operator(g, E)
    rb = RelativeRB(left_multiplication(p, E), exact.identity(p.dim))
    return lift_r_from_relrb(rb, E)


def prelie_strong_basis(p: PreLieAlgebra) -> list:
    """Echelon basis of ``{E : E{x,y} = {Ex,y} = {x,Ey}}``."""
    n = p.dim
    if n == 0:
        return []
    m = p.m
    rows = []
    for i, j, l in product(range(n), repeat=3):
        base = [exact.ZERO] * (n * n)
        for k in range(n):
            base[l * n + k] += m[i, j, k]
        left, right = list(base), list(base)
        for a in range(n):
            left[a * n + i] -= m[a, j, l]
        for b in range(n):
            right[b * n + j] -= m[i, b, l]
        rows += [left, right]
    kernel = exact.kernel_basis(exact.matrix(rows))
    return [exact.freeze(v.reshape(n, n).copy()) for v in kernel]

