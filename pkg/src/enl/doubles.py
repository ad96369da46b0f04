"""Matched pairs, bicrossed products, Manin triples, bialgebras and doubles.

Direct sums ``g + h`` put ``g`` at indices ``0..n-1`` and ``h`` after it;
for doubles the dual of ``e_i`` sits at slot ``n + i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import exact
from .errors import (MissingOperator, NotBialgebra, NotComplementary, NotENLBialgebra,
                     NotMatchedPair, PrereqFailed, ShapeMismatch)
from .lie import (BilinearForm, Cobracket, LieAlgebra, check_cobracket, check_invariant_form,
                  check_lie)
from .operators import (as_operator, check_equivariant, check_quadratic_enl,
                        deformed_bracket, deformed_tensor, is_nijenhuis, power)
from .representations import Representation, check_representation, joined_names
from .verdict import Verdict, failed, passed


def _relabel(v: Verdict, check: str, prefix: str) -> Verdict:
    clause = f"{prefix}: {v.clause}" if v.clause else prefix
    return failed(check, clause, v.witness, v.labels, v.got, v.expected, v.names, **v.data)


# -- matched pairs ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MatchedPair:
    g: LieAlgebra
    h: LieAlgebra
    rho: Representation
    mu: Representation
    Eg: np.ndarray | None = None
    Eh: np.ndarray | None = None

    def __post_init__(self):
        if self.rho.algebra.dim != self.g.dim or self.rho.dimW != self.h.dim:
            raise ShapeMismatch("rho must act by g on the space of h")
        if self.mu.algebra.dim != self.h.dim or self.mu.dimW != self.g.dim:
            raise ShapeMismatch("mu must act by h on the space of g")
        if self.Eg is not None:
            object.__setattr__(self, "Eg", as_operator(self.g, self.Eg))
        if self.Eh is not None:
            object.__setattr__(self, "Eh", as_operator(self.h, self.Eh))


def bicrossed_tensor(mp: MatchedPair) -> np.ndarray:
    """Structure constants of ``g + h`` with ``[x, xi] = rho(x)xi - mu(xi)x``."""
    n, m = mp.g.dim, mp.h.dim
    c = np.full((n + m,) * 3, exact.ZERO, dtype=object)
    c[:n, :n, :n] = mp.g.c
    c[n:, n:, n:] = mp.h.c
    for i in range(n):
        for a in range(m):
            mixed = np.full(n + m, exact.ZERO, dtype=object)
            mixed[n:] = mp.rho.rho[i][:, a]
            mixed[:n] = -mp.mu.rho[a][:, i]
            c[i, n + a] = mixed
            c[n + a, i] = -mixed
    return exact.exact(c)


def _pair_names(g, h):
    return joined_names(g.names, h.names)


def _stack(R: Representation, n):
    if R.rho:
        return np.stack(R.rho)
    return np.empty((0, n, n), dtype=object)


def _action_defect(hc, R, M):
    """Both sides of ``rho(x)[a,b] = [rho(x)a,b] + [a,rho(x)b] + rho(mu(b)x)a - rho(mu(a)x)b``
    as ``[i,a,b,p]`` tensors, with ``R[i]`` the action on the bracketed side and ``M[a]`` the
    action back."""
    lhs = exact.contract("abk,ipk->iabp", hc, R)
    rhs = exact.exact(exact.contract("ika,kbp->iabp", R, hc) + exact.contract("ikb,akp->iabp", R, hc)
                      + exact.contract("bqi,qpa->iabp", M, R) - exact.contract("aqi,qpb->iabp", M, R))
    return lhs, rhs


def _check_mp_lie(mp: MatchedPair, check: str):
    g, h, rho, mu = mp.g, mp.h, mp.rho, mp.mu
    for which, R in (("rho", rho), ("mu", mu)):
        v = check_representation(R)
        if not v:
            return _relabel(v, check, f"{which} representation")
    R, M = _stack(rho, h.dim), _stack(mu, g.dim)
    for clause, src, dst, A, B in (("mp1", g, h, R, M), ("mp2", h, g, M, R)):
        lhs, rhs = _action_defect(dst.c, A, B)
        for i, a, b in product(range(src.dim), range(dst.dim), range(dst.dim)):
            if not exact.equal(lhs[i, a, b], rhs[i, a, b]):
                return failed(check, clause, (i, a, b), (src.names[i], dst.names[a], dst.names[b]),
                              lhs[i, a, b], rhs[i, a, b], dst.names)
    return None


def _check_mp_enl(mp: MatchedPair, check: str):
    if mp.Eg is None or mp.Eh is None:
        raise MissingOperator("ENL matched pair needs operators on both algebras")
    g, h, rho, mu, E, F = mp.g, mp.h, mp.rho, mp.mu, mp.Eg, mp.Eh
    for which, alg, op in (("Eg equivariant on g", g, E), ("Eh equivariant on h", h, F)):
        v = check_equivariant(alg, op)
        if not v:
            return _relabel(v, check, which)
    for clause, src, dst, R, Esrc, Edst in (("Equ-1", g, h, rho, E, F),
                                            ("Equ-2", h, g, mu, F, E)):
        for i in range(src.dim):
            act = R.rho[i]
            sides = (exact.matmul(Edst, act), R(Esrc[:, i]), exact.matmul(act, Edst))
            for k in (1, 2):
                if not exact.equal(sides[0], sides[k]):
                    return failed(check, clause, (i,), (src.names[i],), sides[0], sides[k])
    return None


def check_matched_pair(mp: MatchedPair, level: str = "lie") -> Verdict:
    check = "check_matched_pair"
    if level not in ("lie", "enl"):
        raise ValueError(f"unknown matched-pair level {level!r}")
    if level == "enl" and (mp.Eg is None or mp.Eh is None):
        raise MissingOperator("ENL matched pair needs operators on both algebras")
    for alg in (mp.g, mp.h):
        v = check_lie(alg)
        if not v:
            raise PrereqFailed(f"not a Lie algebra: {v.describe()}", v)
    v = _check_mp_lie(mp, check)
    if v is None and level == "enl":
        v = _check_mp_enl(mp, check)
    return v if v is not None else passed(check, level=level)


def bicrossed_product(mp: MatchedPair):
    """``(g bowtie h, Eg (+) Eh or None)``; the operator only when the ENL level passes."""
    v = check_matched_pair(mp, "lie")
    if not v:
        raise NotMatchedPair(f"not a matched pair: {v.describe()}")
    d = LieAlgebra(bicrossed_tensor(mp), _pair_names(mp.g, mp.h))
    op = None
    if mp.Eg is not None and mp.Eh is not None and check_matched_pair(mp, "enl"):
        op = exact.block_diag(mp.Eg, mp.Eh)
    return d, op


def deform_matched_pair(mp: MatchedPair):
    """Deform both sides by their operators and compare with the deformed bicrossed product."""
    v = check_matched_pair(mp, "enl")
    if not v:
        raise NotMatchedPair(f"not an ENL matched pair: {v.describe()}")
    E, F = mp.Eg, mp.Eh
    gE = deformed_bracket(mp.g, E, "equivariant")
    hF = deformed_bracket(mp.h, F, "equivariant")
    rho = Representation(gE, tuple(mp.rho(E[:, i]) for i in range(mp.g.dim)), mp.rho.T,
                         mp.rho.names)
    mu = Representation(hF, tuple(mp.mu(F[:, a]) for a in range(mp.h.dim)), mp.mu.T,
                        mp.mu.names)
    deformed = MatchedPair(gE, hF, rho, mu, E, F)
    lhs = bicrossed_tensor(deformed)
    d = LieAlgebra(bicrossed_tensor(mp), _pair_names(mp.g, mp.h))
    rhs = deformed_bracket(d, exact.block_diag(E, F), "equivariant").c
    idx = exact.first_nonzero(exact.exact(lhs - rhs))
    if idx is None:
        verdict = passed("deform_matched_pair")
    else:
        verdict = failed("deform_matched_pair", "bicrossed(deformed) = deformed(bicrossed)",
                         idx, d.label(idx), lhs[idx], rhs[idx])
    return deformed, verdict


# -- Manin triples ----------------------------------------------------------

def standard_pairing(n: int, on: LieAlgebra | None = None) -> BilinearForm:
    S = np.full((2 * n, 2 * n), exact.ZERO, dtype=object)
    for i in range(n):
        S[i, n + i] = S[n + i, i] = exact.ONE
    on = on if on is not None else LieAlgebra.abelian(2 * n)
    return BilinearForm(on, exact.freeze(S))


@dataclass(frozen=True, eq=False)
class ManinTripleInput:
    d: LieAlgebra
    Ed: np.ndarray
    S: BilinearForm
    gBasis: tuple
    hBasis: tuple

    def __post_init__(self):
        object.__setattr__(self, "Ed", as_operator(self.d, self.Ed))
        if not isinstance(self.S, BilinearForm):
            object.__setattr__(self, "S", BilinearForm(self.d, self.S))
        for attr in ("gBasis", "hBasis"):
            vecs = tuple(exact.vector(v) for v in getattr(self, attr))
            if any(v.shape != (self.d.dim,) for v in vecs):
                raise ShapeMismatch(f"{attr} vectors must have length {self.d.dim}")
            object.__setattr__(self, attr, vecs)


def _coords(basis, v):
    """Coordinates of ``v`` in ``basis`` (columns), or None when outside the span."""
    if not basis:
        return exact.vector([]) if exact.is_zero(v) else None
    return exact.solve(exact.matrix([list(col) for col in zip(*basis)]), v)


def check_manin_triple(mt: ManinTripleInput) -> Verdict:
    d, S, Ed = mt.d, mt.S, mt.Ed
    check = "check_manin_triple"
    v = check_invariant_form(S)
    if not v:
        raise PrereqFailed(f"form is not invariant: {v.describe()}", v)
    v = check_quadratic_enl(d, Ed, S)
    if not v:
        raise PrereqFailed(f"operator is not quadratic ENL: {v.describe()}", v)
    sides = (("g", mt.gBasis), ("h", mt.hBasis))
    together = list(mt.gBasis) + list(mt.hBasis)
    if len(together) != d.dim or exact.rank(exact.matrix([list(v) for v in together])) < d.dim:
        raise NotComplementary("the two subspaces do not form a direct-sum decomposition")

    def lab(side, a, b):
        return (f"{side}[{a}]", f"{side}[{b}]")

    for side, basis in sides:
        for a, b in product(range(len(basis)), repeat=2):
            val = S(basis[a], basis[b])
            if val != 0:
                return failed(check, f"isotropy of {side}", (a, b), lab(side, a, b), val,
                              exact.ZERO)
    restrictions = {}
    for side, basis in sides:
        for a, b in product(range(len(basis)), repeat=2):
            br = d.bracket(basis[a], basis[b])
            if _coords(basis, br) is None:
                return failed(check, f"{side} closed under bracket", (a, b), lab(side, a, b),
                              br, None, d.names)
        cols = []
        for a, v in enumerate(basis):
            image = exact.matmul(Ed, v.reshape(-1, 1)).reshape(-1)
            coords = _coords(basis, image)
            if coords is None:
                return failed(check, f"{side} stable under Ed", (a,), (f"{side}[{a}]",),
                              image, None, d.names)
            cols.append(list(coords))
        k = len(basis)
        restrictions[side] = exact.matrix([[cols[j][i] for j in range(k)] for i in range(k)]) \
            if k else exact.zeros(0, 0)
    return passed(check, E_g=restrictions["g"], E_h=restrictions["h"])


# -- bialgebras -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Bialgebra:
    g: LieAlgebra
    delta: Cobracket
    E: np.ndarray | None = None

    def __post_init__(self):
        if self.delta.d.shape[0] != self.g.dim:
            raise ShapeMismatch("cobracket and algebra dimensions differ")
        if self.E is not None:
            object.__setattr__(self, "E", as_operator(self.g, self.E))

    @property
    def dual(self) -> LieAlgebra:
        return LieAlgebra(np.transpose(self.delta.d, (1, 2, 0)).copy(), self.delta.dual_names)

    def with_bracket(self, g: LieAlgebra) -> "Bialgebra":
        return Bialgebra(g, Cobracket(g, self.delta.d), self.E)


def cocycle_defect(c, d):
    """``D[i,j,p,q]``: component ``(p,q)`` of
    ``Delta([x,y]) - (ad_x(x)1 + 1(x)ad_x)Delta(y) + (ad_y(x)1 + 1(x)ad_y)Delta(x)``
    at ``x = e_i, y = e_j``.
    """
    lhs = exact.contract("ijk,kpq->ijpq", c, d)
    # (ad_{e_i} (x) 1) Delta(e_j): sum_a c[i,a,p] d[j,a,q]
    act = exact.exact(exact.contract("iap,jaq->ijpq", c, d) + exact.contract("iaq,jpa->ijpq", c, d))
    return exact.exact(lhs - act + np.transpose(act, (1, 0, 2, 3)))


def check_cocycle(g: LieAlgebra, d, check="check_bialgebra", clause="cocycle"):
    defect = cocycle_defect(g.c, d)
    for i, j in product(range(g.dim), repeat=2):
        if not exact.is_zero(defect[i, j]):
            lhs = exact.contract("k,kpq->pq", g.c[i, j], d)
            return failed(check, clause, (i, j), g.label((i, j)), lhs,
                          exact.exact(lhs - defect[i, j]))
    return None


def _iota(phi, P):
    """``(iota_phi P)(xi, eta) = P(phi xi, eta) + P(xi, phi eta)`` as a matrix."""
    return exact.exact(exact.matmul(exact.transpose(phi), P) + exact.matmul(P, phi))


def concomitant(b: Bialgebra, N) -> np.ndarray:
    """Rank-4 ``C[i,j,a,b]`` over basis pairs ``(e_i,e_j)`` and dual pairs ``(e_a*,e_b*)``."""
    g = b.g
    N = as_operator(g, N)
    n = g.dim
    Nt = exact.transpose(N)
    coad = [exact.exact(-exact.transpose(A)) for A in g.ad_basis]
    D = [b.delta(g.basis(i)) for i in range(n)]
    DN = [b.delta(N[:, i]) for i in range(n)]
    out = np.full((n, n, n, n), exact.ZERO, dtype=object)
    for i, j in product(range(n), repeat=2):
        out[i, j] = (_iota(exact.matmul(Nt, coad[i]), D[j])
                     - _iota(exact.matmul(Nt, coad[j]), D[i])
                     - _iota(coad[i], DN[j]) + _iota(coad[j], DN[i]))
    return exact.exact(out)


def concomitant_report(b: Bialgebra, N):
    """``(strong_ok, weak_only)``: all-pairs vanishing, and whether only the bracket-pair
    reading passes (vanishing wherever ``[e_i, e_j] != 0`` but not everywhere)."""
    C = concomitant(b, N)
    n = b.g.dim
    bad = [(i, j) for i, j in product(range(n), repeat=2) if not exact.is_zero(C[i, j])]
    weak = all(exact.is_zero(b.g.c[i, j]) for i, j in bad)
    return not bad, bool(bad) and weak, C, bad


def _lie_level(b: Bialgebra, check):
    v = check_cobracket(b.delta)
    if not v:
        return _relabel(v, check, "cobracket")
    return check_cocycle(b.g, b.delta.d, check)


def check_bialgebra(b: Bialgebra, level: str = "lie") -> Verdict:
    check = "check_bialgebra"
    if level not in ("lie", "nl", "enl"):
        raise ValueError(f"unknown bialgebra level {level!r}")
    v = check_lie(b.g)
    if not v:
        raise PrereqFailed(f"not a Lie algebra: {v.describe()}", v)
    v = _lie_level(b, check)
    if v is not None:
        return v
    if level == "lie":
        return passed(check, level=level)
    if b.E is None:
        raise MissingOperator(f"level {level} needs an operator")
    return _nl_level(b, check) if level == "nl" else _enl_level(b, check)


def _nl_level(b: Bialgebra, check):
    g, N = b.g, b.E
    if not is_nijenhuis(g, N):
        raise PrereqFailed("operator has nonzero Nijenhuis torsion")
    gstar = b.dual
    Nt = exact.transpose(N)
    if not is_nijenhuis(gstar, Nt):
        return failed(check, "N* Nijenhuis on g*")
    v = check_cocycle(LieAlgebra(deformed_tensor(g.c, N), g.names), b.delta.d, check,
                      "cocycle for the N-deformed bracket")
    if v is not None:
        return v
    strong, weak_only, C, bad = concomitant_report(b, N)
    if not strong:
        i, j = bad[0]
        idx = exact.first_nonzero(C[i, j])
        return failed(check, "concomitant", (i, j) + idx, g.label((i, j)) + gstar.label(idx),
                      C[(i, j) + idx], exact.ZERO, weak_reading_passes=weak_only)
    return passed(check, level="nl")


def _enl_level(b: Bialgebra, check):
    g, E = b.g, b.E
    v = check_equivariant(g, E)
    if not v:
        return _relabel(v, check, "E equivariant on g")
    v = check_equivariant(b.dual, exact.transpose(E))
    if not v:
        return _relabel(v, check, "E* equivariant on g*")
    nl = _nl_level(b, check)
    if not nl:
        return _relabel(nl, check, "nl level implied by enl")
    return passed(check, level="enl")


def matched_pair_from_bialgebra(b: Bialgebra) -> MatchedPair:
    """``(g, g*; ad*, ad*_{g*})`` with ``Eg = E`` and ``Eh = E^T`` when an operator is given."""
    g, h = b.g, b.dual
    rho = Representation(g, tuple(exact.exact(-A.T) for A in g.ad_basis),
                         None if b.E is None else exact.transpose(b.E), h.names)
    mu = Representation(h, tuple(exact.exact(-A.T) for A in h.ad_basis), b.E, g.names)
    Eh = None if b.E is None else exact.transpose(b.E)
    return MatchedPair(g, h, rho, mu, b.E, Eh)


def drinfeld_double(b: Bialgebra):
    """``(g bowtie g*, E (+) E^T or None, standard pairing)``."""
    v = check_bialgebra(b, "lie")
    if not v:
        raise NotBialgebra(f"not a Lie bialgebra: {v.describe()}")
    mp = matched_pair_from_bialgebra(b)
    d = LieAlgebra(bicrossed_tensor(mp), b.g.names + b.delta.dual_names)
    op = None
    if b.E is not None and check_bialgebra(b, "enl"):
        op = exact.block_diag(b.E, exact.transpose(b.E))
    return d, op, standard_pairing(b.g.dim, d)


def double_quasitriangular(b: Bialgebra):
    """Canonical ``r = sum e_i (x) e_i*`` on the double, the split bracket on its dual,
    and whether ``(E (+) E^T)^T`` is equivariant there."""
    d, op, _ = drinfeld_double(b)
    if op is None:
        raise NotENLBialgebra("the double carries no ENL operator")
    n = b.g.dim
    r = np.full((2 * n, 2 * n), exact.ZERO, dtype=object)
    for i in range(n):
        r[i, n + i] = exact.ONE
    c = np.full((2 * n,) * 3, exact.ZERO, dtype=object)
    c[:n, :n, :n] = -b.dual.c
    c[n:, n:, n:] = b.g.c
    dstar = LieAlgebra(exact.exact(c), b.delta.dual_names + b.g.names)
    verdict = check_equivariant(dstar, exact.transpose(op))
    return exact.freeze(r), dstar, verdict


def bialgebra_hierarchy(b: Bialgebra, depth: int, level: str = "enl"):
    """Lie-bialgebra verdicts for the deformed brackets of ``E^k``, ``k = 1..depth``.

    ``level="enl"`` needs an ENL bialgebra and uses ``[x,y]_{E^k} = [E^k x, y]``;
    ``level="nl"`` needs an NL bialgebra and uses the general deformation by ``N^k``.
    """
    if b.E is None:
        raise MissingOperator("hierarchy needs an operator")
    if level not in ("enl", "nl"):
        raise ValueError(f"unknown hierarchy level {level!r}")
    v = check_bialgebra(b, level)
    if not v:
        raise NotENLBialgebra(f"input fails the {level} level: {v.describe()}")
    out = []
    for k in range(1, depth + 1):
        Ek = power(b.E, k)
        mode = "equivariant" if level == "enl" else "general"
        gk = deformed_bracket(b.g, Ek, mode)
        out.append(check_bialgebra(Bialgebra(gk, Cobracket(gk, b.delta.d)), "lie"))
    return out
