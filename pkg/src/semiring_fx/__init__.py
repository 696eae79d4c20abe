"""Exact semantics for effectful programs via semiring-weighted outcomes.

Carriers with canonical forms (naturals, nonnegative rationals, Bernstein
polynomials in one or two coin variables, I/O word algebras, state matrices)
decide program equality; convexity classes carve out the normalized
subtheories; a small DSL ties it together.
"""

from .convexity import (Choice, ConvexityClass, In, Leaf, Out,
                        convexity_axiom_test, function_matrix, io_tree_class,
                        io_tree_paths, lambda_member, member,
                        prob_io_certificate, prob_io_class, prob_io_denote,
                        row_stochastic_class, singleton_one,
                        stochastic_decompose, unit_interval, whole_semiring)
from .errors import (DataDependence, DegreeTooSmall, MembershipUnknown,
                     NormalizationError, NotRowStochastic, OutOfRange,
                     ParseError, ScopeError, SemiringFxError,
                     SignatureMismatch, TagMismatch, UnknownGenerator,
                     UnknownIndex, UnknownOutcome, UnsupportedCombination,
                     UnsupportedTensor)
from .lang import (denote_program, equiv, infer_effects, parse, select_theory,
                   swap_adjacent)
from .laws import run_suites
from .semirings import (BERN_NAT, BERN_RAT, BIBERN_NAT, BIBERN_RAT, NAT,
                        NAT_HALF, NAT_SIXTH, NAT_THIRD, RAT, Presentation,
                        Semiring, SemiringValue, bernstein_presentation,
                        half_third_tensor_presentation, io_weights, io_words,
                        mat_nat, mat_rat, presentation_from_json,
                        presentation_to_json, presented_eq_oracle,
                        semiring_from_tag, sr_add, sr_eq, sr_mul,
                        state_presentation, state_to_matrix, tensor_embed,
                        value_from_json, word_semiring)
from .theories import (C, Dist, TheoryTag, Var, coin_denote, coin_eq,
                       coin_render, coin_rewrite_eq, coin_term_parse,
                       commute_check, dist_bind, dist_to_json, dist_unit,
                       in_subtheory, phi_map, tensor_target, total_weight)

__version__ = "0.1.0"
