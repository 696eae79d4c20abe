"""Exact semiring carriers with canonical forms and decidable equality."""

from .base import (NAT, NAT_HALF, NAT_SIXTH, NAT_THIRD, RAT, Semiring,
                   SemiringValue, semiring_from_tag, sr_add, sr_eq, sr_mul,
                   sr_scale_nat, sr_sum, value_from_json)
from .bernstein import (BERN_NAT, BERN_RAT, BIBERN_NAT, BIBERN_RAT,
                        BernsteinSemiring, BiBernsteinSemiring, bern_x,
                        bern_xb, bernstein_homogenize, bernstein_reduce,
                        bibern_eval, bibern_from_x, bibern_from_y,
                        bibern_homogenize, bibern_reduce, eval_numeric)
from .matrices import (MatrixSemiring, mat_nat, mat_rat, matrix_semiring,
                       rd_payload, state_to_matrix, wr_payload)
from .presentations import (OracleResult, Presentation, bernstein_presentation,
                            half_third_tensor_presentation, nf_add, nf_mul,
                            presentation_from_json, presentation_from_terms,
                            presentation_to_json, presented_eq_oracle,
                            reachable_closure, render_nf, state_presentation)
from .tensor import tensor_embed
from .words import (EMPTY_WORD, WordSemiring, in_letter, io_weights, io_words,
                    out_letter, parse_word, render_word, single_word,
                    word_key, word_semiring)

__all__ = [
    "NAT", "NAT_HALF", "NAT_SIXTH", "NAT_THIRD", "RAT", "Semiring",
    "SemiringValue", "semiring_from_tag", "sr_add", "sr_eq", "sr_mul",
    "sr_scale_nat", "sr_sum", "value_from_json",
    "BERN_NAT", "BERN_RAT", "BIBERN_NAT", "BIBERN_RAT", "BernsteinSemiring",
    "BiBernsteinSemiring", "bern_x", "bern_xb", "bernstein_homogenize",
    "bernstein_reduce", "bibern_eval", "bibern_from_x", "bibern_from_y",
    "bibern_homogenize", "bibern_reduce", "eval_numeric",
    "MatrixSemiring", "mat_nat", "mat_rat", "matrix_semiring", "rd_payload",
    "state_to_matrix", "wr_payload",
    "OracleResult", "Presentation", "bernstein_presentation",
    "half_third_tensor_presentation", "nf_add", "nf_mul",
    "presentation_from_json", "presentation_from_terms", "presentation_to_json",
    "presented_eq_oracle", "reachable_closure", "render_nf",
    "state_presentation",
    "tensor_embed",
    "EMPTY_WORD", "WordSemiring", "in_letter", "io_weights", "io_words",
    "out_letter", "parse_word", "render_word", "single_word", "word_key",
    "word_semiring",
]
