"""Exact rational linear algebra on numpy object arrays.

Every array produced here holds :class:`fractions.Fraction` entries and is
marked read-only, so values can be shared freely.  Matrices follow the
column-action convention: ``M[i, j]`` is the coefficient of basis vector
``i`` in the image of basis vector ``j``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import ShapeMismatch, SingularMatrix

Q = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (q > 0, input may be unreduced)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string 'p/q' or 'p', got {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _coerce(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {x!r} ({type(x).__name__}) as an exact rational")


def freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def array(data, ndim: int | None = None) -> np.ndarray:
    """Exact read-only copy of ``data`` (nested lists, ints, strings, Fractions)."""
    raw = np.array(data, dtype=object)
    if ndim is not None and raw.ndim != ndim:
        raise ShapeMismatch(f"expected a {ndim}-dimensional array, got shape {raw.shape}")
    out = np.empty(raw.shape, dtype=object)
    for idx in np.ndindex(raw.shape):
        out[idx] = _coerce(raw[idx])
    return freeze(out)


def matrix(rows) -> np.ndarray:
    if isinstance(rows, np.ndarray) and rows.ndim == 2 and rows.size == 0:
        return zeros(*rows.shape)
    return array(rows, ndim=2)


def vector(entries) -> np.ndarray:
    return array(entries, ndim=1)


def zeros(*shape: int) -> np.ndarray:
    return freeze(np.full(shape, ZERO, dtype=object))


def identity(n: int) -> np.ndarray:
    out = np.full((n, n), ZERO, dtype=object)
    for i in range(n):
        out[i, i] = ONE
    return freeze(out)


def unit(n: int, i: int) -> np.ndarray:
    out = np.full(n, ZERO, dtype=object)
    out[i] = ONE
    return freeze(out)


def scalar_matrix(n: int, c) -> np.ndarray:
    return exact(identity(n) * _coerce(c))


def block_diag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.full((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), ZERO, dtype=object)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return freeze(out)


def exact(a) -> np.ndarray:
    """Normalize the result of numpy arithmetic back to a frozen Fraction array.

    Object-dtype reductions over empty axes yield plain ``int`` zeros; this
    puts them back into the field.
    """
    if not isinstance(a, np.ndarray):
        return _coerce(a)
    out = np.empty(a.shape, dtype=object)
    for idx in np.ndindex(a.shape):
        out[idx] = _coerce(a[idx])
    return freeze(out)


def is_zero(a) -> bool:
    if isinstance(a, np.ndarray):
        return all(x == 0 for x in a.flat)
    return a == 0


def equal(a, b) -> bool:
    a, b = np.asarray(a, dtype=object), np.asarray(b, dtype=object)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def first_nonzero(a: np.ndarray):
    """Lexicographically first index with a nonzero entry, or ``None``."""
    for idx in np.ndindex(a.shape):
        if a[idx] != 0:
            return idx
    return None


def _integerize(a: np.ndarray):
    """``(A, L)`` with ``A`` an object array of Python ints and ``a = A / L``.

    Contracting integers and dividing once is far cheaper than summing
    Fractions term by term.
    """
    flat = [_coerce(x) for x in a.flat]
    L = math.lcm(*(x.denominator for x in flat)) if flat else 1
    ints = np.empty(a.shape, dtype=object)
    ints.flat[:] = [x.numerator * (L // x.denominator) for x in flat]
    return ints, L


def contract(subscripts: str, *operands) -> np.ndarray | Fraction:
    """Exact Einstein-summation contraction.

    ``subscripts`` uses :func:`numpy.einsum` notation with an explicit
    output (``"ij,jk->ik"``).  Index extents must agree across operands;
    the result is an exact frozen array (or a Fraction for scalar output).
    """
    if "->" not in subscripts:
        raise ValueError("contraction plan needs an explicit '->' output")
    inputs, output = subscripts.replace(" ", "").split("->")
    terms = inputs.split(",")
    if len(terms) != len(operands):
        raise ShapeMismatch(f"plan names {len(terms)} operands, got {len(operands)}")
    extents: dict[str, int] = {}
    arrays = []
    denom = 1
    for term, op in zip(terms, operands):
        op = np.asarray(op, dtype=object)
        if op.ndim != len(term):
            raise ShapeMismatch(f"operand of shape {op.shape} does not match '{term}'")
        for label, size in zip(term, op.shape):
            if extents.setdefault(label, size) != size:
                raise ShapeMismatch(
                    f"index '{label}' has extent {extents[label]} and {size}"
                )
        ints, L = _integerize(op)
        arrays.append(ints)
        denom *= L
    for label in output:
        if label not in extents:
            raise ShapeMismatch(f"output index '{label}' not bound by any operand")
    if any(size == 0 for size in extents.values()):
        return zeros(*(extents[label] for label in output)) if output else ZERO
    result = np.einsum(subscripts, *arrays, optimize=len(arrays) > 2)
    if not output:
        return Fraction(int(result.item() if isinstance(result, np.ndarray) else result), denom)
    out = np.empty(result.shape, dtype=object)
    out.flat[:] = [Fraction(int(x), denom) for x in result.flat]
    return freeze(out)


def matmul(*mats) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        if out.shape[-1] != m.shape[0]:
            raise ShapeMismatch(f"cannot multiply {out.shape} by {m.shape}")
        if out.shape[-1] == 0:
            out = zeros(*(out.shape[:-1] + m.shape[1:]))
        else:
            lhs = "ij" if out.ndim == 2 else "j"
            rhs = "jk" if m.ndim == 2 else "j"
            res = lhs.replace("j", "") + rhs.replace("j", "")
            out = contract(f"{lhs},{rhs}->{res}", out, m)
    return out


def transpose(a: np.ndarray) -> np.ndarray:
    return freeze(a.T.copy())


# -- row reduction ---------------------------------------------------------

def rref(a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = np.array(matrix(a), dtype=object)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if m[i, col] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        m[r] = m[r] / m[r, col]
        for i in range(rows):
            if i != r and m[i, col] != 0:
                m[i] = m[i] - m[i, col] * m[r]
        pivots.append(col)
        r += 1
    return exact(m), pivots


def rank(a) -> int:
    return len(rref(a)[1])


def kernel_basis(a) -> list[np.ndarray]:
    """Echelon basis of ``{v : A v = 0}``, one vector per pivot-free column."""
    reduced, pivots = rref(a)
    cols = reduced.shape[1]
    basis = []
    for free in (c for c in range(cols) if c not in pivots):
        v = np.full(cols, ZERO, dtype=object)
        v[free] = ONE
        for row, p in enumerate(pivots):
            v[p] = -reduced[row, free]
        basis.append(freeze(v))
    return basis


def invert(a) -> np.ndarray:
    a = matrix(a)
    n, m = a.shape
    if n != m:
        raise ShapeMismatch(f"cannot invert a non-square {a.shape} matrix")
    reduced, pivots = rref(np.hstack([a, identity(n)]))
    if pivots[:n] != list(range(n)):
        raise SingularMatrix(f"matrix has rank {sum(p < n for p in pivots)} < {n}")
    return exact(reduced[:, n:])


def solve(a, b) -> np.ndarray | None:
    """One exact solution of ``A x = b`` (free variables set to 0), or ``None``."""
    a = matrix(a)
    b = vector(b)
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise ShapeMismatch(f"right-hand side of length {b.shape[0]} for {a.shape} system")
    reduced, pivots = rref(np.hstack([a, b.reshape(rows, 1)]))
    if cols in pivots:
        return None
    x = np.full(cols, ZERO, dtype=object)
    for row, p in enumerate(pivots):
        x[p] = reduced[row, cols]
    return freeze(x)


def lin_comb(coeffs, items):
    """``sum(c * item)`` computed exactly; ``items`` share one shape."""
    items = list(items)
    out = np.full(np.shape(items[0]), ZERO, dtype=object)
    for c, item in zip(coeffs, items):
        if c != 0:
            out = out + c * item
    return exact(out)


def integer_grid(n: int, values=(-1, 0, 1)):
    """All length-``n`` tuples over ``values`` (for exhaustive small searches)."""
    return product(values, repeat=n)
