import pytest
from hypothesis import given, strategies as st

import oracles
from enl import exact
from enl.catalogue import aff1, ex1, ex2, g4, sl2
from enl.errors import (MissingOperator, NotBialgebra, NotComplementary, NotENLBialgebra,
                        NotMatchedPair, PrereqFailed, ShapeMismatch)
from enl.lie import Cobracket, LieAlgebra, check_invariant_form, check_lie
from enl.doubles import (Bialgebra, ManinTripleInput, MatchedPair, bialgebra_hierarchy,
                         bicrossed_product, check_bialgebra, check_manin_triple,
                         check_matched_pair, cocycle_defect, concomitant, concomitant_report,
                         deform_matched_pair, double_quasitriangular, drinfeld_double,
                         matched_pair_from_bialgebra, standard_pairing)
from enl.operators import check_equivariant, check_quadratic_enl, deformed_bracket
from enl.representations import Representation, canonical_representations
from enl.yang_baxter import RMatrix, schouten
from strategies import antisymmetric, cobracket_tensor, enl_bialgebra_pool, matrices

I = exact.identity
POOL = enl_bialgebra_pool()


def first_example():
    g, d, N = ex1()
    return Bialgebra(g, d, N)


def second_example():
    g, d, E = ex2()
    return Bialgebra(g, d, E)


def canonical_blocks(n):
    cols = [I(2 * n)[:, i] for i in range(2 * n)]
    return cols[:n], cols[n:]


pool_items = st.sampled_from(POOL)


class TestBialgebraLevels:
    def test_first_example(self):
        b = first_example()
        assert check_bialgebra(b, "lie")
        assert check_bialgebra(b, "nl")
        v = check_bialgebra(b, "enl")
        assert v.describe() == ("E equivariant on g: E[x,y] = [x,Ey] witness=[X3,X3] "
                                "got=0 expected=X4")

    def test_second_example(self):
        b = second_example()
        for level in ("lie", "nl", "enl"):
            assert check_bialgebra(b, level)

    def test_cocycle_failure(self):
        s = sl2()
        v = check_bialgebra(Bialgebra(s, Cobracket.from_entries(s, [[0, 1, 2, "1"]])))
        assert v.clause == "cocycle" and v.labels == ("h", "e")
        assert exact.is_zero(v.got)
        assert v.expected.tolist() == [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]

    def test_missing_operator(self):
        g, d, _ = ex2()
        with pytest.raises(MissingOperator):
            check_bialgebra(Bialgebra(g, d), "nl")

    def test_unknown_level(self):
        with pytest.raises(ValueError):
            check_bialgebra(second_example(), "strong")

    def test_torsion_is_prerequisite(self):
        g = LieAlgebra.from_brackets(["X1", "X2", "X3"], [[0, 1, 2, "1"]])
        N = [[1, 0, 0], [0, 0, 1], [0, 0, 0]]
        with pytest.raises(PrereqFailed):
            check_bialgebra(Bialgebra(g, Cobracket.zero(g), N), "nl")

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeMismatch):
            Bialgebra(aff1(), Cobracket.zero(sl2()))

    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(antisymmetric(n), antisymmetric(n))))
    def test_cocycle_against_oracle(self, data):
        c, t = data
        d = cobracket_tensor(t)
        assert cocycle_defect(c, d).tolist() == oracles.cocycle_defect(c, d)


class TestConcomitant:
    def test_first_example_vanishes(self):
        b = first_example()
        assert exact.is_zero(concomitant(b, b.E))

    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(antisymmetric(n), antisymmetric(n),
                                                          matrices(n))))
    def test_against_oracle(self, data):
        c, t, N = data
        g = LieAlgebra(c)
        d = cobracket_tensor(t)
        assert concomitant(Bialgebra(g, Cobracket(g, d)), N).tolist() == oracles.concomitant(c, d, N)

    @given(pool_items)
    def test_enl_forces_zero(self, item):
        _, b = item
        strong, weak_only, _, bad = concomitant_report(b, b.E)
        assert strong and not weak_only and bad == []


class TestMatchedPairs:
    def test_first_example(self):
        mp = matched_pair_from_bialgebra(first_example())
        assert check_matched_pair(mp, "lie")
        v = check_matched_pair(mp, "enl")
        assert not v and v.clause.startswith("Eg equivariant on g")
        d, op = bicrossed_product(mp)
        assert check_lie(d) and op is None

    def test_second_example(self):
        mp = matched_pair_from_bialgebra(second_example())
        assert check_matched_pair(mp, "enl")
        d, op = bicrossed_product(mp)
        assert exact.equal(op, exact.block_diag(mp.Eg, mp.Eh))
        assert check_equivariant(d, op)

    def test_missing_operators(self):
        g, d, _ = ex2()
        mp = matched_pair_from_bialgebra(Bialgebra(g, d))
        assert check_matched_pair(mp)
        with pytest.raises(MissingOperator):
            check_matched_pair(mp, "enl")

    def test_trivial_actions(self):
        g, h = aff1(), sl2()
        rho = Representation(g, (exact.zeros(3, 3),) * 2)
        mu = Representation(h, (exact.zeros(2, 2),) * 3)
        mp = MatchedPair(g, h, rho, mu, I(2), I(3))
        assert check_matched_pair(mp, "enl")
        d, _ = bicrossed_product(mp)
        assert d.names == ("X1", "X2", "h", "e", "f")
        assert d.entries()[:1] == [(0, 1, 1, 1)]

    def test_bad_action_rejected(self):
        g = aff1()
        ad, _ = canonical_representations(g)
        wrong = Representation(g, (I(2), I(2)))
        mp = MatchedPair(g, g, wrong, ad)
        v = check_matched_pair(mp)
        assert v.clause.startswith("rho representation")
        with pytest.raises(NotMatchedPair):
            bicrossed_product(mp)

    def test_shape_checks(self):
        g = aff1()
        ad, _ = canonical_representations(g)
        with pytest.raises(ShapeMismatch):
            MatchedPair(g, sl2(), ad, ad)

    def test_deform_second_example(self):
        deformed, v = deform_matched_pair(matched_pair_from_bialgebra(second_example()))
        assert v
        assert deformed.g == deformed_bracket(g4(), ex2()[2], "equivariant")

    def test_deform_rejects_first_example(self):
        with pytest.raises(NotMatchedPair):
            deform_matched_pair(matched_pair_from_bialgebra(first_example()))

    @given(pool_items)
    def test_pool_round_trip(self, item):
        _, b = item
        mp = matched_pair_from_bialgebra(b)
        assert check_matched_pair(mp, "enl")
        d, op = bicrossed_product(mp)
        dd, dop, _ = drinfeld_double(b)
        assert exact.equal(d.c, dd.c) and exact.equal(op, dop)
        _, v = deform_matched_pair(mp)
        assert v


class TestManin:
    def test_second_example_canonical_blocks(self):
        d, op, S = drinfeld_double(second_example())
        gb, hb = canonical_blocks(4)
        v = check_manin_triple(ManinTripleInput(d, op, S, gb, hb))
        assert v
        assert exact.equal(v.data["E_g"], ex2()[2])
        assert exact.equal(v.data["E_h"], exact.transpose(ex2()[2]))

    def test_same_subspace(self):
        d, op, S = drinfeld_double(second_example())
        gb, _ = canonical_blocks(4)
        with pytest.raises(NotComplementary):
            check_manin_triple(ManinTripleInput(d, op, S, gb, gb))

    def test_mixed_blocks_not_isotropic(self):
        d, op, S = drinfeld_double(second_example())
        cols = [I(8)[:, i] for i in range(8)]
        v = check_manin_triple(ManinTripleInput(d, op, S, [cols[i] for i in (0, 4, 2, 3)],
                                                [cols[i] for i in (1, 5, 6, 7)]))
        assert v.clause == "isotropy of g"
        assert v.labels == ("g[0]", "g[1]") and v.got == 1

    def test_non_invariant_form(self):
        d, op, _ = drinfeld_double(second_example())
        gb, hb = canonical_blocks(4)
        with pytest.raises(PrereqFailed):
            check_manin_triple(ManinTripleInput(d, op, I(8), gb, hb))

    def test_standard_pairing(self):
        S = standard_pairing(2)
        assert S.S.tolist() == [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]

    @given(pool_items)
    def test_pool_doubles_are_quadratic_enl(self, item):
        _, b = item
        d, op, S = drinfeld_double(b)
        assert check_lie(d) and check_invariant_form(S)
        assert check_quadratic_enl(d, op, S)
        gb, hb = canonical_blocks(b.g.dim)
        assert check_manin_triple(ManinTripleInput(d, op, S, gb, hb))


class TestDouble:
    def test_second_example_shape(self):
        d, op, S = drinfeld_double(second_example())
        assert d.names == ("X1", "X2", "X3", "X4", "X1*", "X2*", "X3*", "X4*")
        assert d.entries()[:4] == [(0, 1, 1, 1), (0, 5, 5, -1), (1, 4, 1, 2), (1, 5, 0, -2)]
        assert exact.equal(op, exact.block_diag(ex2()[2], ex2()[2]))

    def test_first_example_has_no_operator(self):
        _, op, _ = drinfeld_double(first_example())
        assert op is None
        with pytest.raises(NotENLBialgebra):
            double_quasitriangular(first_example())

    def test_rejects_non_bialgebra(self):
        s = sl2()
        with pytest.raises(NotBialgebra):
            drinfeld_double(Bialgebra(s, Cobracket.from_entries(s, [[0, 1, 2, "1"]])))

    @pytest.mark.parametrize("g,E", [(sl2(), I(3)), (aff1(), exact.zeros(2, 2))])
    def test_zero_cobracket(self, g, E):
        b = Bialgebra(g, Cobracket.zero(g), E)
        d, _, _ = drinfeld_double(b)
        assert check_lie(d)
        assert double_quasitriangular(b)[2]

    def test_second_example_quasitriangular(self):
        r, dstar, v = double_quasitriangular(second_example())
        assert v
        assert dstar.entries() == [(0, 1, 1, -2), (2, 3, 2, -1), (4, 5, 5, 1), (6, 7, 7, 1)]
        d, _, _ = drinfeld_double(second_example())
        assert exact.is_zero(schouten(RMatrix(d, r)))

    @given(pool_items)
    def test_canonical_r_solves_cybe(self, item):
        _, b = item
        r, dstar, v = double_quasitriangular(b)
        d, _, _ = drinfeld_double(b)
        assert exact.is_zero(schouten(RMatrix(d, r)))
        assert check_lie(dstar) and v


class TestHierarchy:
    def test_second_example(self):
        assert all(bialgebra_hierarchy(second_example(), 3))

    def test_first_example_needs_nl_level(self):
        with pytest.raises(NotENLBialgebra):
            bialgebra_hierarchy(first_example(), 2)
        assert all(bialgebra_hierarchy(first_example(), 2, "nl"))

    def test_zero_cobracket(self):
        b = Bialgebra(sl2(), Cobracket.zero(sl2()), I(3))
        assert [bool(v) for v in bialgebra_hierarchy(b, 5)] == [True] * 5

    def test_missing_operator(self):
        g, d, _ = ex2()
        with pytest.raises(MissingOperator):
            bialgebra_hierarchy(Bialgebra(g, d), 2)

    @given(pool_items)
    def test_pool(self, item):
        _, b = item
        assert all(bialgebra_hierarchy(b, 3))
