"""Finitely supported distribution theories over a semiring.

A Dist assigns a weight from one semiring to finitely many outcome labels;
it is a term of the free module theory on its support. Substitution
(dist_bind) multiplies weights in temporal order, the earlier stage on the
left, which matters for the noncommutative word and matrix carriers.
Restricting the total weight to a convexity class carves out the subtheory
in_subtheory checks.

Also here: the binary-choice theory whose terms denote X/Xb polynomials
(giving decidable equality), an interchange checker for tensors, and the
comparison map that flattens a two-level term into a tensor carrier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, NamedTuple

from .convexity import ConvexityClass, member
from .errors import (MissingContinuation, OutOfRange, TagMismatch,
                     UnknownOutcome, UnsupportedTensor)
from .semirings import (BERN_NAT, BERN_RAT, BIBERN_NAT, NAT_SIXTH,
                        MatrixSemiring, Semiring, SemiringValue, WordSemiring,
                        bern_x, bern_xb, matrix_semiring, semiring_from_tag,
                        sr_eq, tensor_embed, word_semiring)

Outcome = Any  # an atom (str) or a finite tuple of outcomes


def outcome_key(o: Outcome):
    if isinstance(o, str):
        return (0, o)
    return (1, len(o), tuple(outcome_key(x) for x in o))


def render_outcome(o: Outcome) -> str:
    if isinstance(o, str):
        return o
    return "(" + ",".join(render_outcome(x) for x in o) + ")"


def check_outcome(o: Outcome) -> Outcome:
    if isinstance(o, str):
        return o
    if isinstance(o, tuple):
        return tuple(check_outcome(x) for x in o)
    raise OutOfRange(f"outcome must be an atom or tuple, got {o!r}")


@dataclass(frozen=True, eq=False)
class Dist:
    """Finitely supported outcome weighting; zero weights are not stored."""

    semiring: Semiring
    weights: tuple[tuple[Outcome, Any], ...]  # canonical order, payloads

    @staticmethod
    def make(sr: Semiring, pairs) -> "Dist":
        if isinstance(pairs, dict):
            pairs = pairs.items()
        acc: dict[Outcome, Any] = {}
        for outcome, w in pairs:
            outcome = check_outcome(outcome)
            if isinstance(w, SemiringValue):
                if w.semiring.tag != sr.tag:
                    raise TagMismatch(w.semiring.tag, sr.tag)
                w = w.payload
            else:
                w = sr.validate(w)
            acc[outcome] = sr.add_payload(acc[outcome], w) if outcome in acc else w
        frozen = tuple(
            (o, acc[o]) for o in sorted(acc, key=outcome_key)
            if not sr.is_zero(acc[o])
        )
        return Dist(sr, frozen)

    def support(self) -> tuple[Outcome, ...]:
        return tuple(o for o, _ in self.weights)

    def weight(self, outcome: Outcome) -> SemiringValue:
        for o, w in self.weights:
            if o == outcome:
                return SemiringValue(self.semiring, w)
        return self.semiring.zero

    def items(self):
        return tuple((o, SemiringValue(self.semiring, w)) for o, w in self.weights)

    def scale(self, factor: SemiringValue) -> "Dist":
        """Left-multiply every weight by `factor` (earlier stage on the left)."""
        if factor.semiring.tag != self.semiring.tag:
            raise TagMismatch(factor.semiring.tag, self.semiring.tag)
        sr = self.semiring
        return Dist.make(
            sr, [(o, sr.mul_payload(factor.payload, w)) for o, w in self.weights])

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Dist):
            return NotImplemented
        if other.semiring.tag != self.semiring.tag:
            return False
        if len(self.weights) != len(other.weights):
            return False
        return all(
            oa == ob and self.semiring.eq_payload(wa, wb)
            for (oa, wa), (ob, wb) in zip(self.weights, other.weights)
        )

    def __hash__(self) -> int:
        return hash((self.semiring.tag,
                     tuple((o, self.semiring.hash_payload(w))
                           for o, w in self.weights)))

    def render(self) -> str:
        if not self.weights:
            return "{}"
        parts = (f"{render_outcome(o)}: {self.semiring.render_payload(w)}"
                 for o, w in self.weights)
        return "{" + ", ".join(parts) + "}"


@dataclass(frozen=True)
class TheoryTag:
    semiring: Semiring
    convexity: ConvexityClass

    def __post_init__(self):
        if self.convexity.semiring.tag != self.semiring.tag:
            raise TagMismatch(self.convexity.semiring.tag, self.semiring.tag)

    def render(self) -> str:
        return f"T({self.semiring.tag}, {self.convexity.kind})"


def dist_unit(x: Outcome, outcomes, theory) -> Dist:
    sr = theory.semiring if isinstance(theory, TheoryTag) else theory
    x = check_outcome(x)
    if outcomes is not None and x not in outcomes:
        raise UnknownOutcome(f"{render_outcome(x)} not among declared outcomes")
    return Dist.make(sr, [(x, sr.one_payload())])


def dist_bind(d: Dist, k) -> Dist:
    """Substitute a continuation Dist for every supported outcome of d."""
    sr = d.semiring
    lookup: Callable[[Outcome], Dist]
    if isinstance(k, dict):
        def lookup(o):
            if o not in k:
                raise MissingContinuation(f"no continuation for {render_outcome(o)}")
            return k[o]
    else:
        lookup = k
    acc: dict[Outcome, Any] = {}
    for o, w in d.weights:
        cont = lookup(o)
        if cont.semiring.tag != sr.tag:
            raise TagMismatch(cont.semiring.tag, sr.tag)
        for o2, w2 in cont.weights:
            prod = sr.mul_payload(w, w2)
            acc[o2] = sr.add_payload(acc[o2], prod) if o2 in acc else prod
    return Dist.make(sr, acc)


def total_weight(d: Dist) -> SemiringValue:
    sr = d.semiring
    acc = sr.zero_payload()
    for _, w in d.weights:
        acc = sr.add_payload(acc, w)
    return SemiringValue(sr, acc)


def in_subtheory(d: Dist, theory: TheoryTag):
    if d.semiring.tag != theory.semiring.tag:
        raise TagMismatch(d.semiring.tag, theory.semiring.tag)
    return member(theory.convexity, total_weight(d))


def dist_to_json(d: Dist, theory: TheoryTag | None = None) -> dict:
    out: dict[str, Any] = {}
    if theory is not None:
        out["theory"] = theory.render()
    out["weights"] = {render_outcome(o): d.semiring.render_payload(w)
                      for o, w in d.weights}
    return out


# -- the binary choice theory -------------------------------------------------


class Var(NamedTuple):
    name: str


class C(NamedTuple):
    left: Any
    right: Any


CoinTerm = Var | C


def coin_size(t: CoinTerm) -> int:
    match t:
        case Var(_):
            return 1
        case C(l, r):
            return 1 + coin_size(l) + coin_size(r)
    raise OutOfRange(f"bad coin term {t!r}")


def coin_term_parse(text: str) -> CoinTerm:
    """Parse the compact syntax, e.g. c(c(w,x),c(y,z))."""
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def ident() -> str:
        nonlocal pos
        start = pos
        while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
            pos += 1
        if start == pos:
            raise OutOfRange(f"expected a name at offset {pos} in {text!r}")
        return text[start:pos]

    def term() -> CoinTerm:
        nonlocal pos
        skip()
        name = ident()
        skip()
        if name == "c" and pos < len(text) and text[pos] == "(":
            pos += 1
            left = term()
            skip()
            if pos >= len(text) or text[pos] != ",":
                raise OutOfRange(f"expected ',' at offset {pos} in {text!r}")
            pos += 1
            right = term()
            skip()
            if pos >= len(text) or text[pos] != ")":
                raise OutOfRange(f"expected ')' at offset {pos} in {text!r}")
            pos += 1
            return C(left, right)
        return Var(name)

    out = term()
    skip()
    if pos != len(text):
        raise OutOfRange(f"trailing input in coin term: {text[pos:]!r}")
    return out


def coin_render(t: CoinTerm) -> str:
    match t:
        case Var(name):
            return name
        case C(l, r):
            return f"c({coin_render(l)},{coin_render(r)})"
    raise OutOfRange(f"bad coin term {t!r}")


def coin_denote(t: CoinTerm) -> Dist:
    """Leftmost argument carries X, the other the complement."""
    match t:
        case Var(name):
            return Dist.make(BERN_NAT, [(name, BERN_NAT.one_payload())])
        case C(l, r):
            dl = coin_denote(l).scale(bern_x(BERN_NAT))
            dr = coin_denote(r).scale(bern_xb(BERN_NAT))
            return Dist.make(BERN_NAT, dl.weights + dr.weights)
    raise OutOfRange(f"bad coin term {t!r}")


def coin_eq(t1: CoinTerm, t2: CoinTerm) -> bool:
    return coin_denote(t1) == coin_denote(t2)


def _coin_rewrites(t: CoinTerm):
    """One-step rewrites by idempotence (both ways) and the interchange of
    the choice with itself, applied at every position."""
    out = []
    match t:
        case C(l, r):
            if l == r:
                out.append(l)
            match t:
                case C(C(w, x), C(y, z)):
                    out.append(C(C(w, y), C(x, z)))
            for sub in _coin_rewrites(l):
                out.append(C(sub, r))
            for sub in _coin_rewrites(r):
                out.append(C(l, sub))
    out.append(C(t, t))
    return out


def coin_rewrite_eq(t1: CoinTerm, t2: CoinTerm, bound: int = 4000,
                    slack: int = 6) -> str:
    """Bounded search for a rewrite chain; returns "equal" or "unknown"."""
    cap = max(coin_size(t1), coin_size(t2)) + slack
    if t1 == t2:
        return "equal"
    seen = {t1}
    frontier = [t1]
    while frontier and len(seen) < bound:
        nxt = []
        for t in frontier:
            for r in _coin_rewrites(t):
                if coin_size(r) > cap or r in seen:
                    continue
                if r == t2:
                    return "equal"
                seen.add(r)
                nxt.append(r)
                if len(seen) >= bound:
                    break
            if len(seen) >= bound:
                break
        frontier = nxt
    return "unknown"


# -- tensors -----------------------------------------------------------------


def commute_check(t: Dist, u: Dist) -> bool:
    """Does the interchange law hold for these two one-level terms?"""
    if t.semiring.tag != u.semiring.tag:
        raise TagMismatch(t.semiring.tag, u.semiring.tag)
    sr = t.semiring
    first = Dist.make(sr, [((i, j), sr.mul_payload(wi, wj))
                           for i, wi in t.weights for j, wj in u.weights])
    second = Dist.make(sr, [((i, j), sr.mul_payload(wj, wi))
                            for i, wi in t.weights for j, wj in u.weights])
    return first == second


def tensor_target(left: Semiring, right: Semiring) -> Semiring:
    """The canonical carrier for a supported pair of factor semirings."""
    lt, rt = left.tag, right.tag
    if (lt, rt) == ("rat", "bern_nat"):
        return BERN_RAT
    if (lt, rt) == ("bern_nat", "bern_nat"):
        return BIBERN_NAT
    if (lt, rt) == ("nat_half", "nat_third"):
        return NAT_SIXTH
    if lt == "rat" and isinstance(right, WordSemiring) and right.coeff.tag == "nat":
        return word_semiring(semiring_from_tag("rat"), right.names)
    if lt == "rat" and isinstance(right, MatrixSemiring) and right.coeff.tag == "nat":
        return matrix_semiring(semiring_from_tag("rat"), right.names)
    raise UnsupportedTensor(f"no canonical tensor carrier for {lt} with {rt}")


def phi_map(outer: Dist, inner, target: Semiring | None = None) -> Dist:
    """Flatten an outer term over inner terms into the tensor carrier."""
    if isinstance(inner, dict):
        inner_map = inner
    else:
        inner_map = {o: inner(o) for o in outer.support()}
    if target is None:
        if not inner_map:
            raise UnsupportedTensor("cannot infer a tensor carrier without inners")
        some_inner = next(iter(inner_map.values()))
        target = tensor_target(outer.semiring, some_inner.semiring)
    embedded_outer = Dist.make(
        target,
        [(o, tensor_embed("left", SemiringValue(outer.semiring, w), target))
         for o, w in outer.weights])

    def embed_inner(o):
        if o not in inner_map:
            raise MissingContinuation(f"no inner term for {render_outcome(o)}")
        d = inner_map[o]
        return Dist.make(
            target,
            [(o2, tensor_embed("right", SemiringValue(d.semiring, w), target))
             for o2, w in d.weights])

    return dist_bind(embedded_outer, embed_inner)
