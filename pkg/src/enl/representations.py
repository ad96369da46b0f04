"""Representations ``rho: g -> gl(W)`` stored as one matrix per basis vector of ``g``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exact
from .errors import InvalidAlgebra, MissingT, PrereqFailed, ShapeMismatch
from .lie import LieAlgebra, check_lie
from .operators import as_operator, check_equivariant
from .verdict import Verdict, failed, passed


@dataclass(frozen=True, eq=False)
class Representation:
    algebra: LieAlgebra
    rho: tuple
    T: np.ndarray | None = None
    names: tuple | None = None

    def __post_init__(self):
        g = self.algebra
        rho = tuple(exact.matrix(m) for m in self.rho)
        if len(rho) != g.dim:
            raise ShapeMismatch(f"{len(rho)} action matrices for a {g.dim}-dim algebra")
        shapes = {m.shape for m in rho}
        if len(shapes) > 1 or any(a != b for a, b in shapes):
            raise ShapeMismatch(f"action matrices must be square and equal-sized, got {shapes}")
        object.__setattr__(self, "rho", rho)
        m = self.dimW
        if self.T is not None:
            T = exact.matrix(self.T)
            if T.shape != (m, m):
                raise ShapeMismatch(f"T of shape {T.shape} on a {m}-dim module")
            object.__setattr__(self, "T", T)
        names = tuple(f"w{a + 1}" for a in range(m)) if self.names is None else tuple(self.names)
        if len(names) != m:
            raise ShapeMismatch(f"{len(names)} names for a {m}-dim module")
        object.__setattr__(self, "names", names)

    @property
    def dimW(self) -> int:
        if self.rho:
            return self.rho[0].shape[0]
        return 0 if self.T is None else np.shape(self.T)[0]

    def __call__(self, x):
        if self.algebra.dim == 0:
            return exact.zeros(self.dimW, self.dimW)
        return exact.lin_comb(x, self.rho)

    def with_T(self, T):
        return Representation(self.algebra, self.rho, T, self.names)

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        same_T = (self.T is None and other.T is None) or (
            self.T is not None and other.T is not None and exact.equal(self.T, other.T))
        return (self.algebra == other.algebra and len(self.rho) == len(other.rho)
                and all(exact.equal(a, b) for a, b in zip(self.rho, other.rho)) and same_T)

    __hash__ = None

    def action_tensor(self):
        """``t[i, a, b]`` = component ``b`` of ``rho(e_i) w_a``."""
        n, m = self.algebra.dim, self.dimW
        t = np.full((n, m, m), exact.ZERO, dtype=object)
        for i, r in enumerate(self.rho):
            t[i] = r.T
        return exact.freeze(t)


def _commutator(a, b):
    return exact.exact(exact.matmul(a, b) - exact.matmul(b, a))


def check_representation(R: Representation) -> Verdict:
    g = R.algebra
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = R(g.c[i, j])
            rhs = _commutator(R.rho[i], R.rho[j])
            if not exact.equal(lhs, rhs):
                return failed("check_representation", "rho([x,y]) = [rho(x),rho(y)]", (i, j),
                              g.label((i, j)), lhs, rhs)
    return passed("check_representation")


def _require_T(R):
    if R.T is None:
        raise MissingT("representation carries no compatibility operator T")
    return R.T


def check_en_representation(R: Representation, E, mode: str = "equivariant") -> Verdict:
    """Compatibility of ``(W; T, rho)`` with ``E`` on ``g``.

    Modes: ``equivariant`` (``T rho(x) = rho(Ex) = rho(x) T``), ``n_compatible``
    (``T^2 rho(x) + rho(Ex) T - T rho(Ex) - T rho(x) T = 0``) and
    ``averaging_compatible`` (``T rho(Ex) = rho(Ex) T``).
    """
    g = R.algebra
    T = _require_T(R)
    E = as_operator(g, E)
    v = check_representation(R)
    if not v:
        raise PrereqFailed(f"not a representation: {v.describe()}", v)
    check = "check_en_representation"
    m = R.dimW
    for i in range(g.dim):
        rx = R.rho[i]
        rEx = R(E[:, i])
        if mode == "equivariant":
            sides = [("T rho(x) = rho(Ex)", exact.matmul(T, rx), rEx),
                     ("rho(Ex) = rho(x) T", rEx, exact.matmul(rx, T))]
        elif mode == "n_compatible":
            lhs = exact.exact(exact.matmul(T, T, rx) + exact.matmul(rEx, T)
                              - exact.matmul(T, rEx) - exact.matmul(T, rx, T))
            sides = [("T^2 rho(x) + rho(Ex) T - T rho(Ex) - T rho(x) T = 0", lhs,
                      exact.zeros(m, m))]
        elif mode == "averaging_compatible":
            sides = [("T rho(Ex) = rho(Ex) T", exact.matmul(T, rEx), exact.matmul(rEx, T))]
        else:
            raise ValueError(f"unknown compatibility mode {mode!r}")
        for clause, lhs, rhs in sides:
            if not exact.equal(lhs, rhs):
                return failed(check, clause, (i,), g.label((i,)), lhs, rhs)
    return passed(check, mode=mode)


def dual_representation(R: Representation) -> Representation:
    v = check_representation(R)
    if not v:
        raise PrereqFailed(f"not a representation: {v.describe()}", v)
    rho = tuple(exact.exact(-m.T) for m in R.rho)
    T = None if R.T is None else exact.transpose(R.T)
    names = tuple(s[:-1] if s.endswith("*") else s + "*" for s in R.names)
    return Representation(R.algebra, rho, T, names)


def adjoint_representation(g: LieAlgebra, T=None) -> Representation:
    return Representation(g, g.ad_basis, T, g.names)


def canonical_representations(g: LieAlgebra):
    v = check_lie(g)
    if not v:
        raise InvalidAlgebra(f"not a Lie algebra: {v.describe()}")
    ad = adjoint_representation(g)
    return ad, dual_representation(ad)


def semidirect_tensor(g: LieAlgebra, R: Representation):
    n, m = g.dim, R.dimW
    c = np.full((n + m,) * 3, exact.ZERO, dtype=object)
    c[:n, :n, :n] = g.c
    for i, r in enumerate(R.rho):
        for a in range(m):
            for b in range(m):
                c[i, n + a, n + b] = r[b, a]
                c[n + a, i, n + b] = -r[b, a]
    return exact.freeze(c)


def joined_names(left, right) -> tuple:
    """Concatenate basis names, priming the right block when the two overlap."""
    left, right = tuple(left), tuple(right)
    if set(left) & set(right):
        return left + tuple(f"{s}'" for s in right)
    return left + right


def semidirect_sum(g: LieAlgebra, E, R: Representation):
    """``g + W`` with ``[x+u, y+v] = [x,y] + rho(x)v - rho(y)u`` and ``E (+) T``."""
    E = as_operator(g, E)
    T = _require_T(R)
    v = check_equivariant(g, E)
    if not v:
        raise PrereqFailed(f"operator is not equivariant: {v.describe()}", v)
    v = check_en_representation(R, E, "equivariant")
    if not v:
        raise PrereqFailed(f"not an equivariant representation: {v.describe()}", v)
    d = LieAlgebra(semidirect_tensor(g, R), joined_names(g.names, R.names))
    return d, exact.block_diag(E, T)
