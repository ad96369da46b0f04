"""Classical Yang-Baxter equation, EN r-matrices and relative Rota-Baxter operators.

An r-matrix is stored as its component matrix: ``r[i, j]`` is the
coefficient of ``e_i (x) e_j``.  As maps ``g* -> g`` this gives
``r_+ = r^T`` and ``r_- = -r``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exact
from .errors import (MissingT, PrereqFailed, ShapeMismatch, SymmetricPartNotInvariant)
from .lie import BilinearForm, Cobracket, LieAlgebra
from .operators import (QuadraticENLRB, as_operator, check_enl_rb, check_equivariant,
                        check_quadratic_enl, check_rota_baxter)
from .representations import (Representation, check_en_representation, check_representation,
                              dual_representation, semidirect_sum)
from .verdict import Verdict, failed, passed


@dataclass(frozen=True, eq=False)
class RMatrix:
    on: LieAlgebra
    r: np.ndarray

    def __post_init__(self):
        r = exact.matrix(self.r)
        if r.shape != (self.on.dim, self.on.dim):
            raise ShapeMismatch(f"r-matrix of shape {r.shape} on a {self.on.dim}-dim algebra")
        object.__setattr__(self, "r", r)

    @property
    def r_plus(self):
        return exact.transpose(self.r)

    @property
    def r_minus(self):
        return exact.exact(-self.r)

    @property
    def symmetric_part(self):
        """``I = r_+ - r_- = r + r^T``."""
        return exact.exact(self.r + self.r.T)

    def is_skew(self) -> bool:
        return exact.is_zero(self.symmetric_part)


def schouten(rm: RMatrix) -> np.ndarray:
    """``[[r,r]] = [r12,r13] + [r12,r23] + [r13,r23]`` as a ``g(x)g(x)g`` tensor."""
    r, c = rm.r, rm.on.c
    return exact.exact(exact.contract("ib,jc,ija->abc", r, r, c)
                       + exact.contract("ai,jc,ijb->abc", r, r, c)
                       + exact.contract("ai,bj,ijc->abc", r, r, c))


def _two_sided(A, P):
    """``(A (x) 1 + 1 (x) A) P`` for ``P`` in matrix form."""
    return exact.exact(exact.matmul(A, P) + exact.matmul(P, exact.transpose(A)))


def check_en_rmatrix(rm: RMatrix, E, en_weak: bool = False) -> Verdict:
    """CYBE and ``(Id (x) E - E (x) Id) r = 0``.

    With ``en_weak`` the second clause is replaced by the coboundary identity
    ``(ad_Ex (x) 1 + 1 (x) ad_Ex) r = (E (x) 1)(ad_x (x) 1 + 1 (x) ad_x) r``.
    """
    g = rm.on
    E = as_operator(g, E)
    v = check_equivariant(g, E)
    if not v:
        raise PrereqFailed(f"operator is not equivariant: {v.describe()}", v)
    check = "check_en_rmatrix"
    sch = schouten(rm)
    idx = exact.first_nonzero(sch)
    if idx is not None:
        return failed(check, "cybe", idx, g.label(idx), sch[idx], exact.ZERO)
    if en_weak:
        for i in range(g.dim):
            lhs = _two_sided(g.ad(E[:, i]), rm.r)
            rhs = exact.matmul(E, _two_sided(g.ad_basis[i], rm.r))
            if not exact.equal(lhs, rhs):
                return failed(check, "Delta_r(Ex) = (E(x)1)Delta_r(x)", (i,), g.label((i,)),
                              lhs, rhs)
        return passed(check, en_weak=True)
    lhs = exact.matmul(E, rm.r)
    rhs = exact.matmul(rm.r, exact.transpose(E))
    idx = exact.first_nonzero(exact.exact(lhs - rhs))
    if idx is not None:
        return failed(check, "(Id(x)E - E(x)Id)(r) = 0", idx, g.label(idx), lhs[idx], rhs[idx])
    return passed(check)


def symmetric_part_invariant(rm: RMatrix) -> bool:
    I = rm.symmetric_part
    return all(exact.is_zero(_two_sided(A, I)) for A in rm.on.ad_basis)


def cobracket_from_r(rm: RMatrix) -> Cobracket:
    """``Delta_r(x) = (ad_x (x) 1 + 1 (x) ad_x) r``."""
    if not symmetric_part_invariant(rm):
        raise SymmetricPartNotInvariant("r + r^T is not ad-invariant")
    d = np.stack([_two_sided(A, rm.r) for A in rm.on.ad_basis]) if rm.on.dim else \
        np.empty((0, 0, 0), dtype=object)
    return Cobracket(rm.on, exact.exact(d))


def dual_bracket_from_r(rm: RMatrix):
    """``(g*_r, factorizable verdict)`` with ``[xi,eta]_r = ad*_{r_+ xi} eta - ad*_{r_- eta} xi``."""
    g = rm.on
    n = g.dim
    if not exact.is_zero(schouten(rm)):
        raise PrereqFailed("r does not satisfy the classical Yang-Baxter equation")
    if not symmetric_part_invariant(rm):
        raise PrereqFailed("r + r^T is not ad-invariant")
    rp, rm_ = rm.r_plus, rm.r_minus
    c = np.full((n, n, n), exact.ZERO, dtype=object)
    for a in range(n):
        for b in range(n):
            c[a, b] = (-exact.transpose(g.ad(rp[:, a])) @ exact.unit(n, b)
                       + exact.transpose(g.ad(rm_[:, b])) @ exact.unit(n, a))
    gstar = LieAlgebra(exact.exact(c), tuple(f"{s}*" for s in g.names))
    I = rm.symmetric_part
    if exact.rank(I) < n:
        verdict = failed("factorizable", "I nondegenerate")
    else:
        verdict = passed("factorizable")
        for i, A in enumerate(g.ad_basis):
            lhs = exact.exact(-exact.matmul(I, exact.transpose(A)))
            rhs = exact.matmul(A, I)
            if not exact.equal(lhs, rhs):
                verdict = failed("factorizable", "I ad*_x = ad_x I", (i,), g.label((i,)), lhs, rhs)
                break
    return gstar, verdict


def rb_to_rmatrix(t: QuadraticENLRB) -> RMatrix:
    """``r_+ = (1/lambda)(B + lambda Id) S#^{-1}``, returned as ``r = r_+^T``."""
    v = check_enl_rb(t)
    if not v:
        raise PrereqFailed(f"not a quadratic ENL Rota-Baxter algebra: {v.describe()}", v)
    lam = t.weight
    n = t.g.dim
    rplus = exact.exact(exact.matmul(exact.exact(t.B + lam * exact.identity(n)),
                                     exact.invert(t.S.S)) / lam)
    return RMatrix(t.g, exact.transpose(rplus))


# -- relative Rota-Baxter operators ----------------------------------------

@dataclass(frozen=True, eq=False)
class RelativeRB:
    R: Representation
    K: np.ndarray

    def __post_init__(self):
        K = exact.matrix(self.K)
        if K.shape != (self.R.algebra.dim, self.R.dimW):
            raise ShapeMismatch(f"K of shape {K.shape}, expected "
                                f"{(self.R.algebra.dim, self.R.dimW)}")
        object.__setattr__(self, "K", K)

    @property
    def g(self):
        return self.R.algebra


def coadjoint_with(g: LieAlgebra, E) -> Representation:
    """Coadjoint representation ``ad*_x = -ad_x^T`` with ``T = E^T``."""
    return Representation(g, tuple(exact.exact(-A.T) for A in g.ad_basis),
                          exact.transpose(as_operator(g, E)), tuple(f"{s}*" for s in g.names))


def descendent_tensor(rb: RelativeRB):
    """``[u,v]_K = rho(Ku)v - rho(Kv)u`` on the module."""
    R, K = rb.R, rb.K
    m = R.dimW
    c = np.full((m, m, m), exact.ZERO, dtype=object)
    for a in range(m):
        for b in range(m):
            c[a, b] = R(K[:, a])[:, b] - R(K[:, b])[:, a]
    return exact.exact(c)


def check_relative_rb(rb: RelativeRB, E=None, level: str = "plain") -> Verdict:
    R, K, g = rb.R, rb.K, rb.g
    check = "check_relative_rb"
    if level == "en":
        if R.T is None:
            raise MissingT("EN relative Rota-Baxter check needs T on the module")
        E = as_operator(g, E)
        v = check_equivariant(g, E)
        if not v:
            raise PrereqFailed(f"operator is not equivariant: {v.describe()}", v)
        v = check_en_representation(R, E, "equivariant")
        if not v:
            raise PrereqFailed(f"not an equivariant representation: {v.describe()}", v)
    elif level == "plain":
        v = check_representation(R)
        if not v:
            raise PrereqFailed(f"not a representation: {v.describe()}", v)
    else:
        raise ValueError(f"unknown relative Rota-Baxter level {level!r}")
    cK = descendent_tensor(rb)
    m = R.dimW
    for a in range(m):
        for b in range(m):
            lhs = g.bracket(K[:, a], K[:, b])
            rhs = exact.matmul(K, cK[a, b].reshape(-1, 1)).reshape(-1)
            if not exact.equal(lhs, rhs):
                return failed(check, "[Ku,Kv] = K(rho(Ku)v - rho(Kv)u)", (a, b),
                              (R.names[a], R.names[b]), lhs, rhs, g.names)
    if level == "en":
        lhs, rhs = exact.matmul(E, K), exact.matmul(K, R.T)
        idx = exact.first_nonzero(exact.exact(lhs - rhs))
        if idx is not None:
            return failed(check, "EK = KT", idx, (g.names[idx[0]], R.names[idx[1]]),
                          lhs[idx], rhs[idx])
    return passed(check, level=level)


def _require_en(rb, E):
    v = check_relative_rb(rb, E, "en")
    if not v:
        raise PrereqFailed(f"not an EN relative Rota-Baxter operator: {v.describe()}", v)


def descendent_enl(rb: RelativeRB, E):
    """``(W with [u,v]_K, T, homomorphism verdict)``."""
    _require_en(rb, E)
    R, K, g = rb.R, rb.K, rb.g
    E = as_operator(g, E)
    w = LieAlgebra(descendent_tensor(rb), R.names)
    hom = passed("descendent_homomorphism")
    for a in range(R.dimW):
        for b in range(R.dimW):
            lhs = exact.matmul(K, w.c[a, b].reshape(-1, 1)).reshape(-1)
            rhs = g.bracket(K[:, a], K[:, b])
            if not exact.equal(lhs, rhs):
                hom = failed("descendent_homomorphism", "K[u,v]_K = [Ku,Kv]", (a, b),
                             (R.names[a], R.names[b]), lhs, rhs, g.names)
                break
        if not hom:
            break
    if hom and not exact.equal(exact.matmul(E, K), exact.matmul(K, R.T)):
        hom = failed("descendent_homomorphism", "EK = KT")
    return w, R.T, hom


def matched_pair_from_relrb(rb: RelativeRB, E):
    """``(g, W_K; rho, mu)`` with ``mu(u)x = K(rho(x)u) - [x, Ku]``."""
    from .doubles import MatchedPair

    _require_en(rb, E)
    R, K, g = rb.R, rb.K, rb.g
    E = as_operator(g, E)
    w = LieAlgebra(descendent_tensor(rb), R.names)
    mus = []
    for a in range(R.dimW):
        cols = [exact.matmul(K, R.rho[i][:, a].reshape(-1, 1)).reshape(-1)
                - g.bracket(g.basis(i), K[:, a]) for i in range(g.dim)]
        mus.append(exact.exact(np.array(cols, dtype=object).T) if g.dim else exact.zeros(0, 0))
    mu = Representation(w, tuple(mus), E, g.names)
    rho = Representation(g, R.rho, R.T, R.names)
    return MatchedPair(g, w, rho, mu, E, R.T)


def lift_r_from_relrb(rb: RelativeRB, E):
    """``(g semidirect W*, E (+) T^T, r_K, verdict)`` with ``r_K = K - sigma(K)``."""
    _require_en(rb, E)
    R, K, g = rb.R, rb.K, rb.g
    E = as_operator(g, E)
    dual = dual_representation(R)
    double, Ehat = semidirect_sum(g, E, dual)
    n, m = g.dim, R.dimW
    r = np.full((n + m, n + m), exact.ZERO, dtype=object)
    r[:n, n:] = K
    r[n:, :n] = -K.T
    rK = RMatrix(double, exact.exact(r))
    return double, Ehat, rK, check_en_rmatrix(rK, Ehat)


def coadjoint_correspondence(g: LieAlgebra, E, S: BilinearForm, M, direction: str = "K_to_B"):
    """``B = K S#`` (or ``K = B S#^{-1}``) and whether the two characterizations agree.

    The verdict passes iff ``K`` being an EN relative Rota-Baxter operator on the
    coadjoint representation (``T = E^T``) is equivalent to ``B`` being a
    weight-0 Rota-Baxter operator commuting with ``E``.  Both outcomes are in
    ``verdict.data``.
    """
    E = as_operator(g, E)
    v = check_quadratic_enl(g, E, S)
    if not v:
        raise PrereqFailed(f"not a quadratic ENL algebra: {v.describe()}", v)
    M = as_operator(g, M)
    if direction == "K_to_B":
        K, out = M, exact.matmul(M, S.S)
        B = out
    elif direction == "B_to_K":
        B, out = M, exact.matmul(M, exact.invert(S.S))
        K = out
    else:
        raise ValueError(f"unknown direction {direction!r}")
    relrb = bool(check_relative_rb(RelativeRB(coadjoint_with(g, E), K), E, "en"))
    rb = bool(check_rota_baxter(g, B, 0)) and exact.equal(exact.matmul(E, B), exact.matmul(B, E))
    if relrb == rb:
        verdict = passed("coadjoint_correspondence", relative_rb=relrb, rota_baxter=rb)
    else:
        verdict = failed("coadjoint_correspondence", "relative RB <=> weight-0 RB",
                         relative_rb=relrb, rota_baxter=rb)
    return out, verdict

