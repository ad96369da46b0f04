import pytest
from hypothesis import given, strategies as st

from enl import exact
from enl.catalogue import aff1, ex1, ex2, g4, heisenberg, sl2
from enl.errors import InvalidAlgebra, MissingT, PrereqFailed, ShapeMismatch
from enl.lie import LieAlgebra, check_lie
from enl.operators import centroid_basis, check_equivariant
from enl.representations import (Representation, adjoint_representation, canonical_representations,
                                  check_en_representation, check_representation,
                                  dual_representation, semidirect_sum)
from strategies import CATALOGUE, SMALL, catalogue_names, centroid_element

I = exact.identity


def centroid_pairs():
    return catalogue_names.flatmap(
        lambda k: centroid_element(SMALL[k], centroid_basis(SMALL[k])).map(lambda E: (SMALL[k], E)))


class TestRepresentation:
    @pytest.mark.parametrize("name", sorted(CATALOGUE))
    def test_canonical_pair_are_representations(self, name):
        ad, coad = canonical_representations(CATALOGUE[name])
        assert check_representation(ad) and check_representation(coad)

    def test_aff1_adjoint(self):
        ad, coad = canonical_representations(aff1())
        assert ad.rho[0].tolist() == [[0, 0], [0, 1]]
        assert ad.rho[1].tolist() == [[0, 0], [-1, 0]]
        assert coad.rho[0].tolist() == [[0, 0], [0, -1]]
        assert coad.names == ("X1*", "X2*")

    def test_constant_identity_fails(self):
        v = check_representation(Representation(aff1(), (I(1), I(1))))
        assert not v and v.labels == ("X1", "X2")
        assert v.got.tolist() == [[1]] and v.expected.tolist() == [[0]]

    def test_trivial_module(self):
        R = Representation(sl2(), (exact.zeros(2, 2),) * 3)
        assert check_representation(R)

    def test_shapes(self):
        with pytest.raises(ShapeMismatch):
            Representation(aff1(), (I(2),))
        with pytest.raises(ShapeMismatch):
            Representation(aff1(), (I(2), I(3)))
        with pytest.raises(ShapeMismatch):
            Representation(aff1(), (I(2), I(2)), T=I(3))

    def test_invalid_algebra(self):
        bad = LieAlgebra.from_brackets(["e1", "e2", "e3"], [[0, 1, 0, "1"], [0, 2, 2, "1"], [1, 2, 2, "1"]])
        with pytest.raises(InvalidAlgebra):
            canonical_representations(bad)


class TestCompatibility:
    def test_missing_T(self):
        with pytest.raises(MissingT):
            check_en_representation(adjoint_representation(aff1()), I(2))

    def test_not_a_representation(self):
        with pytest.raises(PrereqFailed):
            check_en_representation(Representation(aff1(), (I(1), I(1)), T=I(1)), I(2))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            check_en_representation(adjoint_representation(aff1(), I(2)), I(2), "loose")

    def test_first_example_adjoint(self):
        g, _, N = ex1()
        v = check_en_representation(adjoint_representation(g, N), N)
        assert not v and v.labels == ("X3",)
        assert v.clause == "T rho(x) = rho(Ex)"
        assert v.expected[3, 2] == -1 and exact.is_zero(v.got)

    def test_first_example_coadjoint(self):
        g, _, N = ex1()
        _, coad = canonical_representations(g)
        v = check_en_representation(coad.with_T(exact.transpose(N)), N)
        assert not v and v.labels == ("X3",)
        assert v.got[2, 3] == -1 and v.expected[2, 3] == 1

    def test_first_example_dual_of_adjoint(self):
        g, _, N = ex1()
        v = check_en_representation(dual_representation(adjoint_representation(g, N)), N)
        assert not v and v.labels == ("X3",)

    def test_second_example(self):
        g, _, E = ex2()
        ad, coad = canonical_representations(g)
        for mode in ("equivariant", "n_compatible", "averaging_compatible"):
            assert check_en_representation(ad.with_T(E), E, mode)
            assert check_en_representation(coad.with_T(exact.transpose(E)), E, mode)

    def test_n_compatible_without_equivariance(self):
        # T = 0 kills every term except rho(Ex) T
        g = heisenberg()
        E = exact.matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        R = adjoint_representation(g, exact.zeros(3, 3))
        assert check_en_representation(R, E, "n_compatible")
        assert not check_en_representation(R, E, "equivariant")

    @given(centroid_pairs())
    def test_equivariant_implies_n_compatible(self, data):
        g, E = data
        ad, coad = canonical_representations(g)
        for R in (ad.with_T(E), coad.with_T(exact.transpose(E))):
            assert check_en_representation(R, E, "equivariant")
            assert check_en_representation(R, E, "n_compatible")
            assert check_en_representation(R, E, "averaging_compatible")


class TestDual:
    @pytest.mark.parametrize("name", sorted(CATALOGUE))
    def test_involution(self, name):
        ad = adjoint_representation(CATALOGUE[name], I(CATALOGUE[name].dim))
        dd = dual_representation(dual_representation(ad))
        assert dd == ad and dd.names == ad.names

    def test_rejects_non_representation(self):
        with pytest.raises(PrereqFailed):
            dual_representation(Representation(aff1(), (I(1), I(1))))

    @given(centroid_pairs())
    def test_dual_keeps_equivariance(self, data):
        g, E = data
        R = dual_representation(adjoint_representation(g, E))
        assert exact.equal(R.T, exact.transpose(E))
        assert check_en_representation(R, E)


class TestSemidirect:
    def test_aff1_coadjoint(self):
        _, coad = canonical_representations(aff1())
        d, ET = semidirect_sum(aff1(), I(2), coad.with_T(I(2)))
        assert d.entries() == [(0, 1, 1, 1), (0, 3, 3, -1), (1, 3, 2, 1)]
        assert d.names == ("X1", "X2", "X1*", "X2*")
        assert exact.equal(ET, I(4))

    def test_adjoint_names_are_primed(self):
        d, _ = semidirect_sum(aff1(), I(2), adjoint_representation(aff1(), I(2)))
        assert d.names == ("X1", "X2", "X1'", "X2'")

    def test_rejections(self):
        g, _, N = ex1()
        with pytest.raises(PrereqFailed):
            semidirect_sum(g, N, adjoint_representation(g, N))
        with pytest.raises(MissingT):
            semidirect_sum(g, I(4), adjoint_representation(g))
        _, _, E = ex2()
        with pytest.raises(PrereqFailed):
            semidirect_sum(g, E, adjoint_representation(g, I(4)))

    def test_second_example_blocks(self):
        g, _, E = ex2()
        _, coad = canonical_representations(g)
        d, ET = semidirect_sum(g, E, coad.with_T(exact.transpose(E)))
        assert d.dim == 8
        assert exact.equal(d.c[:4, :4, :4], g.c)
        assert exact.is_zero(d.c[4:, 4:, :])
        assert exact.is_zero(d.c[:4, 4:, :4])

    @given(centroid_pairs())
    def test_result_is_lie_with_equivariant_sum(self, data):
        g, E = data
        _, coad = canonical_representations(g)
        d, ET = semidirect_sum(g, E, coad.with_T(exact.transpose(E)))
        assert check_lie(d)
        assert check_equivariant(d, ET)

    @given(st.sampled_from(sorted(SMALL)))
    def test_adjoint_semidirect_is_lie(self, name):
        g = SMALL[name]
        d, _ = semidirect_sum(g, I(g.dim), adjoint_representation(g, I(g.dim)))
        assert check_lie(d)


def test_g4_centroid_acts():
    g = g4()
    for E in centroid_basis(g):
        assert check_en_representation(adjoint_representation(g, E), E)
