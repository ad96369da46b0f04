"""Lie algebras, Lie coalgebras and invariant forms as structure-constant tensors.

Conventions: ``c[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``;
``d[k, i, j]`` is the coefficient of ``e_i (x) e_j`` in ``Delta(e_k)``.  The
dual space always uses the dual basis, index for index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from . import exact
from .errors import InvalidCobracket, ShapeMismatch, ValidationError
from .verdict import Verdict, failed, passed, scan


def _default_names(n, stem="e"):
    return tuple(f"{stem}{i + 1}" for i in range(n))


def _cubic(t, what):
    t = exact.array(t)
    if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]):
        raise ShapeMismatch(f"{what} must be a cubic rank-3 tensor, got shape {t.shape}")
    return t


def _antisymmetric_from_entries(n, entries, what, first_axis=False):
    """Fill a tensor from sparse ``(i, j, k, c)`` entries with ``i < j``.

    With ``first_axis`` the entries are ``(k, i, j, c)`` (cobracket order).
    """
    t = np.full((n, n, n), exact.ZERO, dtype=object)
    seen = set()
    for entry in entries:
        if len(entry) != 4:
            raise ValidationError(f"{what} entry {entry!r} must have four fields")
        a, b, c, coef = entry
        if first_axis:
            k, i, j = a, b, c
        else:
            i, j, k = a, b, c
        for idx in (i, j, k):
            if not isinstance(idx, int) or isinstance(idx, bool) or not 0 <= idx < n:
                raise ValidationError(f"{what} entry {entry!r} has index out of range 0..{n - 1}")
        if i >= j:
            raise ValidationError(f"{what} entry {entry!r} must have i < j")
        if (i, j, k) in seen:
            raise ValidationError(f"{what} entry {entry!r} duplicates an earlier entry")
        seen.add((i, j, k))
        try:
            q = exact.parse_rational(coef)
        except ValueError as exc:
            raise ValidationError(f"{what} entry {entry!r}: {exc}") from None
        if first_axis:
            t[k, i, j], t[k, j, i] = q, -q
        else:
            t[i, j, k], t[j, i, k] = q, -q
    return exact.freeze(t)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Finite-dimensional algebra with an (intended) Lie bracket.

    Construction only validates shapes; use :func:`check_lie` for the
    identities.  Names are labels and do not take part in equality.
    """

    c: np.ndarray
    names: tuple = None

    def __post_init__(self):
        c = _cubic(self.c, "structure constants")
        object.__setattr__(self, "c", c)
        names = _default_names(c.shape[0]) if self.names is None else tuple(self.names)
        if len(names) != c.shape[0]:
            raise ShapeMismatch(f"{len(names)} basis names for a {c.shape[0]}-dim algebra")
        object.__setattr__(self, "names", names)

    @classmethod
    def from_brackets(cls, names, entries):
        """Build from sparse ``[i, j, k, coef]`` entries (0-based, ``i < j``)."""
        names = tuple(names)
        return cls(_antisymmetric_from_entries(len(names), entries, "bracket"), names)

    @classmethod
    def abelian(cls, n, names=None):
        return cls(exact.zeros(n, n, n), names)

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return exact.equal(self.c, other.c)

    __hash__ = None

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, brackets={self.entries()})"

    def basis(self, i):
        return exact.unit(self.dim, i)

    def bracket(self, x, y):
        return exact.contract("i,j,ijk->k", x, y, self.c)

    def ad(self, x):
        """Matrix of ``ad_x``: ``(ad_x)[k, j] = sum_i x^i c_ij^k``."""
        return exact.contract("i,ijk->kj", x, self.c)

    @cached_property
    def ad_basis(self):
        return tuple(exact.freeze(self.c[i].T.copy()) for i in range(self.dim))

    def entries(self):
        """Sparse ``(i, j, k, coef)`` with ``i < j`` and nonzero coef."""
        n = self.dim
        return [(i, j, k, self.c[i, j, k])
                for i in range(n) for j in range(i + 1, n) for k in range(n)
                if self.c[i, j, k] != 0]

    def label(self, idx):
        return tuple(self.names[i] for i in idx)


def jacobiator(c):
    """``J[i,j,k,l]``: coefficient of ``e_l`` in the cyclic sum ``[[e_i,e_j],e_k] + ...``."""
    return exact.exact(
        exact.contract("ijm,mkl->ijkl", c, c)
        + exact.contract("jkm,mil->ijkl", c, c)
        + exact.contract("kim,mjl->ijkl", c, c)
    )


def check_lie(g: LieAlgebra) -> Verdict:
    c = g.c
    n = g.dim
    v = scan("check_lie", "antisymmetry", product(range(n), repeat=3),
             lambda t: (c[t], -c[t[1], t[0], t[2]]), g.label)
    if v is not None:
        return v
    jac = jacobiator(c)
    idx = exact.first_nonzero(jac)
    if idx is not None:
        return failed("check_lie", "jacobi", idx, g.label(idx), jac[idx[:3]], exact.zeros(n),
                      names=g.names)
    return passed("check_lie")


@dataclass(frozen=True, eq=False)
class BilinearForm:
    on: LieAlgebra
    S: np.ndarray

    def __post_init__(self):
        S = exact.matrix(self.S)
        if S.shape != (self.on.dim, self.on.dim):
            raise ShapeMismatch(f"form of shape {S.shape} on a {self.on.dim}-dim algebra")
        object.__setattr__(self, "S", S)

    def __call__(self, x, y):
        return exact.contract("i,ij,j->", x, self.S, y)


def check_invariant_form(form: BilinearForm) -> Verdict:
    """Symmetric, nondegenerate and ``S([x,y],z) + S(y,[x,z]) = 0``, in that order."""
    g, S = form.on, form.S
    n = g.dim
    v = scan("check_invariant_form", "symmetry", product(range(n), repeat=2),
             lambda t: (S[t], S[t[1], t[0]]), g.label)
    if v is not None:
        return v
    if exact.rank(S) < n:
        return failed("check_invariant_form", "nondegeneracy")

    # defect[i,j,k] = S([e_i,e_j],e_k) + S(e_j,[e_i,e_k])
    defect = exact.exact(exact.contract("ijm,mk->ijk", g.c, S) + exact.contract("jm,ikm->ijk", S, g.c))
    v = scan("check_invariant_form", "invariance", product(range(n), repeat=3),
             lambda t: (defect[t], exact.ZERO), g.label)
    return v if v is not None else passed("check_invariant_form")


def check_leibniz(m, names=None) -> Verdict:
    """Left Leibniz identity ``[x,[y,z]] = [[x,y],z] + [y,[x,z]]`` on basis triples."""
    m = _cubic(m, "product")
    n = m.shape[0]
    names = names or _default_names(n)
    lhs = exact.contract("jkm,iml->ijkl", m, m)
    rhs = exact.exact(exact.contract("ijm,mkl->ijkl", m, m) + exact.contract("ikm,jml->ijkl", m, m))
    v = scan("check_leibniz", "left leibniz", product(range(n), repeat=3),
             lambda t: (lhs[t], rhs[t]), lambda t: tuple(names[i] for i in t), names)
    return v if v is not None else passed("check_leibniz")


def direct_sum(g: LieAlgebra, h: LieAlgebra) -> LieAlgebra:
    n, m = g.dim, h.dim
    c = np.full((n + m,) * 3, exact.ZERO, dtype=object)
    c[:n, :n, :n] = g.c
    c[n:, n:, n:] = h.c
    gn, hn = g.names, h.names
    if set(gn) & set(hn):
        gn = tuple(f"{s}_1" for s in gn)
        hn = tuple(f"{s}_2" for s in hn)
    return LieAlgebra(exact.freeze(c), gn + hn)


@dataclass(frozen=True, eq=False)
class Cobracket:
    """``Delta(e_k) = sum_ij d[k,i,j] e_i (x) e_j`` on the underlying space of ``on``."""

    on: LieAlgebra
    d: np.ndarray

    def __post_init__(self):
        d = _cubic(self.d, "cobracket")
        if d.shape[0] != self.on.dim:
            raise ShapeMismatch(f"cobracket of dim {d.shape[0]} on a {self.on.dim}-dim algebra")
        object.__setattr__(self, "d", d)

    @classmethod
    def from_entries(cls, on, entries):
        """Sparse ``[k, i, j, coef]`` entries with ``i < j`` meaning ``coef * e_i ^ e_j``."""
        return cls(on, _antisymmetric_from_entries(on.dim, entries, "cobracket", first_axis=True))

    @classmethod
    def zero(cls, on):
        return cls(on, exact.zeros(on.dim, on.dim, on.dim))

    def __call__(self, x):
        """``Delta(x)`` as an n x n component matrix."""
        return exact.contract("k,kij->ij", x, self.d)

    def entries(self):
        n = self.on.dim
        return [(k, i, j, self.d[k, i, j])
                for k in range(n) for i in range(n) for j in range(i + 1, n)
                if self.d[k, i, j] != 0]

    @property
    def dual_names(self):
        return tuple(f"{s}*" for s in self.on.names)


def cojacobi_defect(d):
    """``C[k,p,q,r]``: component of ``(Id + eps + eps^2)(Id (x) Delta) Delta (e_k)``."""
    t = exact.contract("kij,jab->kiab", d, d)
    return exact.exact(t + np.transpose(t, (0, 2, 3, 1)) + np.transpose(t, (0, 3, 1, 2)))


def check_cobracket(delta: Cobracket) -> Verdict:
    d = delta.d
    n = d.shape[0]
    names = delta.on.names
    v = scan("check_cobracket", "coantisymmetry", product(range(n), repeat=3),
             lambda t: (d[t], -d[t[0], t[2], t[1]]), lambda t: tuple(names[i] for i in t))
    if v is not None:
        return v
    defect = cojacobi_defect(d)
    idx = exact.first_nonzero(defect)
    if idx is not None:
        return failed("check_cobracket", "co-jacobi", idx, tuple(names[i] for i in idx),
                      defect[idx], exact.ZERO)
    return passed("check_cobracket")


def dualize(delta: Cobracket) -> LieAlgebra:
    """The Lie algebra ``g*`` with ``<[a, b], x> = <a (x) b, Delta(x)>``."""
    v = check_cobracket(delta)
    if not v:
        raise InvalidCobracket(f"cobracket fails {v.describe()}")
    return LieAlgebra(exact.freeze(np.transpose(delta.d, (1, 2, 0)).copy()), delta.dual_names)


def as_cobracket(g: LieAlgebra, on: LieAlgebra) -> Cobracket:
    """Re-encode the bracket of ``g`` as a cobracket on ``on`` (``g`` read as ``on*``)."""
    return Cobracket(on, exact.freeze(np.transpose(g.c, (2, 0, 1)).copy()))
