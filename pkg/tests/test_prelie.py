from itertools import product

import pytest
from hypothesis import given, strategies as st

import oracles
from enl import exact
from enl.catalogue import aff1, n0, prelie2
from enl.errors import PrereqFailed, ShapeMismatch, ValidationError
from enl.lie import check_lie
from enl.operators import check_equivariant
from enl.prelie import (PreLieAlgebra, associator, canonical_r_prelie, check_pre_enl, check_prelie,
                        left_multiplication, prelie_from_relrb, prelie_nijenhuis,
                        prelie_strong_basis, prelie_transport, subadjacent, subadjacent_enl)
from enl.representations import check_representation
from enl.yang_baxter import RMatrix, RelativeRB, coadjoint_with
from strategies import en_rmatrices, small_ints, tensors

I = exact.identity
ABELIAN = PreLieAlgebra(exact.zeros(2, 2, 2), ("X1", "X2"))
BAD = PreLieAlgebra.from_products(["X1", "X2"], [[0, 0, 1, "1"], [1, 0, 0, "1"]])

# small pre-Lie algebras: prelie2, a 2-dim Novikov algebra and {e1,e1} = e1
ALGEBRAS = {
    "prelie2": prelie2(),
    "novikov": PreLieAlgebra.from_products(["X1", "X2"], [[0, 0, 0, "1"], [0, 1, 1, "1"]]),
    "idempotent": PreLieAlgebra.from_products(["e1", "e2"], [[0, 0, 0, "1"]]),
    "abelian": ABELIAN,
}


@st.composite
def strong_operator(draw):
    name = draw(st.sampled_from(sorted(ALGEBRAS)))
    p = ALGEBRAS[name]
    basis = prelie_strong_basis(p)
    E = exact.lin_comb([draw(small_ints) for _ in basis], basis) if basis else exact.zeros(p.dim, p.dim)
    return p, E


class TestPreLie:
    @pytest.mark.parametrize("name", sorted(ALGEBRAS))
    def test_examples_are_prelie(self, name):
        assert check_prelie(ALGEBRAS[name])

    def test_failure(self):
        v = check_prelie(BAD)
        assert v.describe() == "(x,y,z) = (y,x,z) witness=[X1,X2,X1] got=-X2 expected=X2"

    def test_subadjacent(self):
        g = subadjacent(prelie2())
        assert g == aff1() and g.names == ("X1", "X2")

    def test_left_multiplication_is_representation(self):
        for p in ALGEBRAS.values():
            L = left_multiplication(p)
            assert check_representation(L)
            assert L.algebra == subadjacent(p)

    def test_bad_entries(self):
        with pytest.raises(ValidationError):
            PreLieAlgebra.from_products(["a"], [[0, 0, 0, "1/0"]])
        with pytest.raises(ValidationError):
            PreLieAlgebra.from_products(["a"], [[0, 0, 1, "1"]])
        with pytest.raises(ValidationError):
            PreLieAlgebra.from_products(["a"], [[0, 0, 0, "1"], [0, 0, 0, "2"]])
        with pytest.raises(ShapeMismatch):
            PreLieAlgebra(exact.zeros(2, 2, 3))

    @given(st.integers(1, 3).flatmap(tensors))
    def test_associator_against_brute_force(self, m):
        n = m.shape[0]
        a = associator(m)
        for i, j, k in product(range(n), repeat=3):
            e = [oracles.basis(n, t) for t in (i, j, k)]
            want = oracles.add(oracles.bracket(m, oracles.bracket(m, e[0], e[1]), e[2]),
                               oracles.scale(-1, oracles.bracket(m, e[0], oracles.bracket(m, e[1], e[2]))))
            assert list(a[i, j, k]) == want

    @given(st.integers(1, 3).flatmap(tensors))
    def test_prelie_implies_subadjacent_lie(self, m):
        p = PreLieAlgebra(m)
        if check_prelie(p):
            assert check_lie(subadjacent(p))


class TestPreENL:
    def test_identity(self):
        for mode in ("weak", "strong"):
            assert check_pre_enl(prelie2(), I(2), mode)

    def test_nilpotent_weak(self):
        v = check_pre_enl(prelie2(), n0(), "weak")
        assert v.describe() == "E[x,y] = [x,Ey] witness=[X1,X1] got=0 expected=X2"

    def test_nilpotent_strong(self):
        v = check_pre_enl(prelie2(), n0(), "strong")
        assert v.describe() == "E{x,y} = {x,Ey} witness=[X1,X1] got=0 expected=X2"

    def test_zero_operator(self):
        assert check_pre_enl(prelie2(), exact.zeros(2, 2), "strong")

    def test_requirements(self):
        with pytest.raises(PrereqFailed):
            check_pre_enl(BAD, I(2))
        with pytest.raises(ValueError):
            check_pre_enl(prelie2(), I(2), "medium")

    def test_strong_basis(self):
        (E,) = prelie_strong_basis(prelie2())
        assert exact.equal(E, I(2))
        assert len(prelie_strong_basis(ABELIAN)) == 4
        assert prelie_strong_basis(PreLieAlgebra(exact.zeros(0, 0, 0))) == []

    @given(strong_operator())
    def test_strong_implies_weak_and_equivariant(self, data):
        p, E = data
        assert check_pre_enl(p, E, "strong")
        assert check_pre_enl(p, E, "weak")
        assert check_equivariant(subadjacent(p), E)


class TestSubadjacentENL:
    def test_scalar(self):
        g, L, v = subadjacent_enl(prelie2(), exact.scalar_matrix(2, 2))
        assert g == aff1() and exact.equal(L.T, exact.scalar_matrix(2, 2)) and v

    def test_abelian_any_operator(self):
        assert subadjacent_enl(ABELIAN, [[1, 2], [3, 4]])[2]

    def test_rejects_weak_only(self):
        with pytest.raises(PrereqFailed):
            subadjacent_enl(prelie2(), n0())

    @given(strong_operator())
    def test_identity_is_en_relative_rb(self, data):
        p, E = data
        assert subadjacent_enl(p, E)[2]

    @given(strong_operator())
    def test_canonical_r(self, data):
        p, E = data
        d, Ehat, rK, v = canonical_r_prelie(p, E)
        assert v and rK.is_skew()
        assert check_lie(d) and check_equivariant(d, Ehat)


class TestNijenhuis:
    def test_nilpotent(self):
        torsion, deformed = prelie_nijenhuis(prelie2(), n0())
        assert exact.is_zero(torsion)
        assert deformed.entries() == [(0, 0, 1, 1)]
        assert check_prelie(deformed)

    def test_identity(self):
        _, deformed = prelie_nijenhuis(prelie2(), I(2))
        assert deformed == prelie2()

    def test_torsion(self):
        # N e2 = e1: {Ne2,Ne2} = e1 while the deformed square of e2 vanishes
        torsion, deformed = prelie_nijenhuis(ALGEBRAS["idempotent"], [[0, 1], [0, 0]])
        assert deformed is None
        assert list(torsion[1, 1]) == [1, 0] and exact.is_zero(torsion[0])

    def test_shape(self):
        with pytest.raises(ShapeMismatch):
            prelie_nijenhuis(prelie2(), I(3))


class TestFromRelativeRB:
    SKEW_RB = RelativeRB(coadjoint_with(aff1(), I(2)), RMatrix(aff1(), [[0, 1], [-1, 0]]).r_plus)

    def test_aff1(self):
        p, T = prelie_from_relrb(self.SKEW_RB, I(2))
        assert p.entries() == [(0, 1, 0, 1), (1, 1, 1, 1)]
        assert p.names == ("X1*", "X2*")
        assert check_prelie(p) and exact.equal(T, I(2))

    def test_transport(self):
        p = prelie_transport(self.SKEW_RB, I(2))
        assert p.entries() == [(0, 0, 0, -1), (1, 0, 1, -1)]
        assert check_prelie(p)
        assert subadjacent(p) == aff1()

    def test_rejects(self):
        with pytest.raises(PrereqFailed):
            prelie_from_relrb(RelativeRB(coadjoint_with(aff1(), I(2)), I(2)), I(2))

    def test_r_matrix_cases(self):
        for g, rm, E in en_rmatrices():
            p, T = prelie_from_relrb(RelativeRB(coadjoint_with(g, E), rm.r_plus), E)
            assert check_prelie(p)
            assert check_pre_enl(p, T, "strong")
