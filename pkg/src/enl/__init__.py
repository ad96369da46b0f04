"""Exact computations for Lie algebras with equivariant Nijenhuis operators.

All arithmetic is over the rationals; structures are dense numpy object
arrays of ``fractions.Fraction``.  Checks return a :class:`Verdict` that is
truthy iff the identity holds, and otherwise carries the first witness.
"""

from .errors import *  # noqa: F401,F403
from .verdict import Verdict
from .lie import (BilinearForm, Cobracket, LieAlgebra, check_cobracket, check_invariant_form,
                  check_leibniz, check_lie, direct_sum, dualize)
from .operators import (QuadraticENLRB, averaging_product, centroid_basis, check_averaging,
                        check_enl_rb, check_equivariant, check_quadratic_enl, check_rota_baxter,
                        deformed_bracket, descendent_bracket, hierarchy, is_nijenhuis,
                        nijenhuis_torsion, operator_inverse)
from .representations import (Representation, adjoint_representation, canonical_representations,
                              check_en_representation, check_representation,
                              dual_representation, semidirect_sum)
from .doubles import (Bialgebra, ManinTripleInput, MatchedPair, bialgebra_hierarchy,
                      bicrossed_product, check_bialgebra, check_manin_triple, check_matched_pair,
                      concomitant, deform_matched_pair, double_quasitriangular, drinfeld_double,
                      matched_pair_from_bialgebra, standard_pairing)
from .yang_baxter import (RMatrix, RelativeRB, check_en_rmatrix, check_relative_rb,
                          cobracket_from_r, coadjoint_correspondence, descendent_enl,
                          dual_bracket_from_r, lift_r_from_relrb, matched_pair_from_relrb,
                          rb_to_rmatrix, schouten)
from .prelie import (PreLieAlgebra, canonical_r_prelie, check_pre_enl, check_prelie,
                     left_multiplication, prelie_from_relrb, prelie_nijenhuis,
                     prelie_strong_basis, prelie_transport, subadjacent, subadjacent_enl)
from .bundle import Bundle, parse_bundle
from .tasks import Report, emit_report, run_all, run_task

__version__ = "0.1.0"
