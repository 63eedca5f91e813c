"""Exact characteristic-class algebra and lower-bound calculators for
spaces of flat connections on principal bundles over closed manifolds."""

__version__ = "0.1.0"

from .graded import (Coefficients, CohClass, GradedRing, RingError, betti, cup, kunneth,
                     make_ring, parse_ring_description, smash_with_sphere)
from .charclass import (MixedCohClass, StiefelWhitneyData, TotalChernData, chern_character,
                        chern_classes_from_character, conjugate, newton_polynomial,
                        pontryagin_components, realize_single_class, tensor_product,
                        whitney_sum, whitney_sum_sw)
from .ktheory import (KClassRational, KOClassRational, ReductionReport, complexify,
                      conj_action, realify_invariant, so_spin_reducible, su_reducible)
from .catalog import SpaceModel, betti_vector, get_space
from .flatbounds import (BoundQuery, BoundReport, GroupFamily, coker_rank_bound, dispatch,
                         flat_rank_bound, pi0_verdict, vanishing_degrees)
from .holonomy import (GroupPresentation, MatrixRep, conjugate_rep, holonomy,
                       presentation_from_2complex, verify_representation)
