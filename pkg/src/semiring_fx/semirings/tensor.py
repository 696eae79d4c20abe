"""Embeddings of semiring pairs into their canonical tensor carriers.

Only the combinations with a known concrete representation are supported:
scalar-weighted Bernstein polynomials, the bivariate X/Y polynomials, word
functions with scalar weights, rational matrices, and the arithmetic tensor
of the subsemirings generated by 1/2 and 1/3 (which lands in the one
generated by 1/6). Images of the two factors always commute.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import TagMismatch, UnsupportedTensor
from .base import Semiring, SemiringValue, semiring_from_tag
from .bernstein import (BERN_NAT, BERN_RAT, BIBERN_NAT, BIBERN_RAT,
                        BiBernsteinSemiring, BernsteinSemiring)
from .matrices import MatrixSemiring, mat_nat
from .words import WordSemiring, word_semiring


def _expect(v: SemiringValue, tag: str):
    if v.semiring.tag != tag:
        raise TagMismatch(v.semiring.tag, tag)


def _scalar_into_bern(v: SemiringValue, target: BernsteinSemiring) -> SemiringValue:
    return target.value((target.coeff.validate(v.payload),))


def _bern_into_bern(v: SemiringValue, target: BernsteinSemiring) -> SemiringValue:
    return target.value(tuple(target.coeff.validate(c) for c in v.payload))


def tensor_embed(which: str, v: SemiringValue, target) -> SemiringValue:
    """Embed `v` as the left or right factor of the tensor carrier `target`."""
    if which not in ("left", "right"):
        raise UnsupportedTensor(f"factor must be 'left' or 'right', got {which!r}")
    sr = semiring_from_tag(target) if isinstance(target, str) else target

    if isinstance(sr, BernsteinSemiring) and sr.tag == BERN_RAT.tag:
        # rationals (left) with natural-coefficient polynomials (right)
        if which == "left":
            _expect(v, "rat")
            return _scalar_into_bern(v, sr)
        _expect(v, BERN_NAT.tag)
        return _bern_into_bern(v, sr)

    if isinstance(sr, BiBernsteinSemiring):
        coeff_bern = BERN_NAT if sr.tag == BIBERN_NAT.tag else BERN_RAT
        _expect(v, coeff_bern.tag)
        if which == "left":
            return sr.value(tuple((c,) for c in v.payload))
        return sr.value((tuple(v.payload),))

    if isinstance(sr, WordSemiring):
        # scalar weights (left) with word multisets (right)
        if which == "left":
            _expect(v, sr.coeff.tag)
            return sr.value({(): v.payload})
        words = word_semiring(semiring_from_tag("nat"), sr.names)
        _expect(v, words.tag)
        return sr.value({w: sr.coeff.validate(c) for w, c in v.payload})

    if isinstance(sr, MatrixSemiring) and sr.coeff.tag == "rat":
        if which == "left":
            _expect(v, "rat")
            scaled = [
                [v.payload if r == c else Fraction(0) for c in range(sr.n)]
                for r in range(sr.n)
            ]
            return sr.value(scaled)
        _expect(v, mat_nat(sr.names).tag)
        return sr.value([[Fraction(c) for c in row] for row in v.payload])

    if sr.tag == "nat_sixth":
        _expect(v, "nat_half" if which == "left" else "nat_third")
        return sr.value(v.payload)

    raise UnsupportedTensor(f"no tensor embedding into {sr.tag}")
