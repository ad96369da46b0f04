"""Small named algebras, operators and worked bialgebra examples."""

from __future__ import annotations

from . import exact
from .lie import Cobracket, LieAlgebra, direct_sum
from .prelie import PreLieAlgebra


def aff1() -> LieAlgebra:
    return LieAlgebra.from_brackets(["X1", "X2"], [[0, 1, 1, "1"]])


def g4() -> LieAlgebra:
    return LieAlgebra.from_brackets(["X1", "X2", "X3", "X4"], [[0, 1, 1, "1"], [2, 3, 3, "1"]])


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_brackets(["X1", "X2", "X3"], [[0, 1, 2, "1"]])


def sl2() -> LieAlgebra:
    """Basis ``(h, e, f)``."""
    return LieAlgebra.from_brackets(["h", "e", "f"],
                                    [[0, 1, 1, "2"], [0, 2, 2, "-2"], [1, 2, 0, "1"]])


def sl2_form():
    return exact.matrix([[2, 0, 0], [0, 0, 1], [0, 1, 0]])


def sl2_rb():
    """Weight-1 Rota-Baxter operator ``e -> 0, f -> -f, h -> -h/2``."""
    return exact.matrix([["-1/2", 0, 0], [0, 0, 0], [0, 0, -1]])


def so3() -> LieAlgebra:
    return LieAlgebra.from_brackets(["L1", "L2", "L3"],
                                    [[0, 1, 2, "1"], [1, 2, 0, "1"], [0, 2, 1, "-1"]])


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.abelian(n, tuple(f"X{i + 1}" for i in range(n)))


def solvable3() -> LieAlgebra:
    """``[e1,e2] = e2, [e1,e3] = e3``."""
    return LieAlgebra.from_brackets(["e1", "e2", "e3"], [[0, 1, 1, "1"], [0, 2, 2, "1"]])


def filiform4() -> LieAlgebra:
    """``[e1,e2] = e3, [e1,e3] = e4``."""
    return LieAlgebra.from_brackets(["e1", "e2", "e3", "e4"], [[0, 1, 2, "1"], [0, 2, 3, "1"]])


def gl2() -> LieAlgebra:
    """``sl2 (+) Q``."""
    return direct_sum(sl2(), LieAlgebra.abelian(1, ("z",)))


def sl2_sl2() -> LieAlgebra:
    return direct_sum(sl2(), sl2())


def lie_catalogue() -> dict:
    return {"aff1": aff1(), "g4": g4(), "heisenberg": heisenberg(), "sl2": sl2(),
            "so3": so3(), "abelian2": abelian(2), "abelian3": abelian(3),
            "solvable3": solvable3(), "filiform4": filiform4(), "gl2": gl2(),
            "sl2_sl2": sl2_sl2()}


def ex1():
    """``(g4, Delta, N)`` with ``Delta(X3) = Delta(X4) = X3^X4`` and ``N: X3 -> X4``."""
    g = g4()
    delta = Cobracket.from_entries(g, [[2, 2, 3, "1"], [3, 2, 3, "1"]])
    N = exact.matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]])
    return g, delta, N


def ex2():
    """``(g4, Delta, E)`` with ``Delta(X2) = 2 X1^X2, Delta(X3) = X3^X4``, ``E = diag(1,1,0,0)``."""
    g = g4()
    delta = Cobracket.from_entries(g, [[1, 0, 1, "2"], [2, 2, 3, "1"]])
    E = exact.matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    return g, delta, E


def n0():
    """Nilpotent ``X1 -> X2, X2 -> 0``."""
    return exact.matrix([[0, 0], [1, 0]])


def prelie2() -> PreLieAlgebra:
    """``{X1, X2} = X2`` and all other products zero."""
    return PreLieAlgebra.from_products(["X1", "X2"], [[0, 1, 1, "1"]])
