"""Finitely presented semirings and a bounded equational oracle.

Terms over a presentation's generators are kept in sum-of-words normal form:
a finite map from generator words to positive natural coefficients. The
oracle explores the graph whose edges apply one relation, in either
direction, under an arbitrary word context u·_·v, by breadth-first search up
to a visited-node budget. It can also refute equality through a registered
interpretation: a map of generators into one of the canonical semirings that
is checked against every relation when the presentation is built, so a
disagreement of interpreted values is a sound separation.

This is a testing oracle, not a decision procedure: no completion is done,
and exhausting the budget yields Unknown.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..errors import OutOfRange, UnknownGenerator
from .base import (RAT, Semiring, SemiringValue, semiring_from_tag, sr_add,
                   sr_eq, sr_mul, sr_scale_nat)
from .bernstein import BERN_NAT, bern_x, bern_xb
from .matrices import mat_nat, rd_payload, wr_payload

Word = tuple[str, ...]
NormalForm = tuple[tuple[Word, int], ...]


def _freeze(acc: dict[Word, int]) -> NormalForm:
    return tuple(sorted(((w, c) for w, c in acc.items() if c > 0),
                        key=lambda e: (len(e[0]), e[0])))


def nf_add(a: NormalForm, b: NormalForm) -> NormalForm:
    acc = dict(a)
    for w, c in b:
        acc[w] = acc.get(w, 0) + c
    return _freeze(acc)


def nf_mul(a: NormalForm, b: NormalForm) -> NormalForm:
    acc: dict[Word, int] = {}
    for u, cu in a:
        for v, cv in b:
            w = u + v
            acc[w] = acc.get(w, 0) + cu * cv
    return _freeze(acc)


NF_ZERO: NormalForm = ()
NF_ONE: NormalForm = (((), 1),)


def render_nf(nf: NormalForm) -> str:
    if not nf:
        return "0"
    parts = []
    for w, c in nf:
        body = "*".join(w) if w else "1"
        parts.append(body if c == 1 else f"{c}*{body}")
    return " + ".join(parts)


class _TermParser:
    """sum ::= prod ('+' prod)* ; prod ::= pow ('*' pow)* ;
    pow ::= atom ('^' nat)? ; atom ::= nat | generator | '(' sum ')'"""

    def __init__(self, text: str, generators: frozenset[str]):
        self.text = text
        self.pos = 0
        self.generators = generators

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _nat(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def _ident(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def parse(self) -> NormalForm:
        nf = self._sum()
        self._skip()
        if self.pos != len(self.text):
            raise OutOfRange(f"trailing input in term: {self.text[self.pos:]!r}")
        return nf

    def _sum(self) -> NormalForm:
        nf = self._prod()
        while self._peek() == "+":
            self.pos += 1
            nf = nf_add(nf, self._prod())
        return nf

    def _prod(self) -> NormalForm:
        nf = self._pow()
        while self._peek() == "*":
            self.pos += 1
            nf = nf_mul(nf, self._pow())
        return nf

    def _pow(self) -> NormalForm:
        nf = self._atom()
        if self._peek() == "^":
            self.pos += 1
            self._skip()
            if not self._peek().isdigit():
                raise OutOfRange("exponent must be a natural number")
            n = self._nat()
            out = NF_ONE
            for _ in range(n):
                out = nf_mul(out, nf)
            nf = out
        return nf

    def _atom(self) -> NormalForm:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            nf = self._sum()
            if self._peek() != ")":
                raise OutOfRange("unbalanced parenthesis in term")
            self.pos += 1
            return nf
        if ch.isdigit():
            n = self._nat()
            return _freeze({(): n})
        if ch.isalpha() or ch == "_":
            name = self._ident()
            if name not in self.generators:
                raise UnknownGenerator(f"generator {name!r} not declared")
            return (((name,), 1),)
        raise OutOfRange(f"unexpected character {ch!r} in term")


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[NormalForm, NormalForm], ...]
    interpretation: dict[str, SemiringValue] | None = None

    def __post_init__(self):
        if self.interpretation is not None:
            missing = set(self.generators) - set(self.interpretation)
            if missing:
                raise UnknownGenerator(
                    f"interpretation misses generators {sorted(missing)}")
            for lhs, rhs in self.relations:
                if not sr_eq(self.evaluate(lhs), self.evaluate(rhs)):
                    raise OutOfRange(
                        "interpretation violates relation "
                        f"{render_nf(lhs)} = {render_nf(rhs)}")

    def parse_term(self, text: str) -> NormalForm:
        return _TermParser(text, frozenset(self.generators)).parse()

    def evaluate(self, nf: NormalForm) -> SemiringValue:
        assert self.interpretation is not None
        sr = next(iter(self.interpretation.values())).semiring
        acc = sr.zero
        for word, c in nf:
            prod = sr.one
            for g in word:
                prod = sr_mul(prod, self.interpretation[g])
            acc = sr_add(acc, sr_scale_nat(prod, c))
        return acc


def presentation_from_terms(generators, relation_texts,
                            interpretation=None) -> Presentation:
    gens = tuple(generators)
    parser_gens = frozenset(gens)
    rels = tuple(
        (_TermParser(l, parser_gens).parse(), _TermParser(r, parser_gens).parse())
        for l, r in relation_texts
    )
    return Presentation(gens, rels, interpretation)


@dataclass(frozen=True)
class OracleResult:
    verdict: str  # "equal" | "distinct" | "unknown"
    chain: tuple[str, ...] | None = None
    left_value: SemiringValue | None = None
    right_value: SemiringValue | None = None
    visited: int = 0


def _neighbors(nf: NormalForm, relations):
    """All single relation applications u·L·v -> u·R·v inside nf."""
    out = set()
    items = dict(nf)
    for lhs, rhs in relations:
        for match, repl in ((lhs, rhs), (rhs, lhs)):
            if not match:
                # a zero side matches only trivially; add the other side once
                out.add(nf_add(nf, repl))
                continue
            anchor = match[0][0]
            contexts = set()
            for w, _ in nf:
                if len(w) < len(anchor):
                    continue
                for i in range(len(w) - len(anchor) + 1):
                    if w[i:i + len(anchor)] == anchor:
                        contexts.add((w[:i], w[i + len(anchor):]))
            for u, v in contexts:
                takes = {u + mw + v: mc for mw, mc in match}
                if all(items.get(w, 0) >= c for w, c in takes.items()):
                    acc = dict(items)
                    for w, c in takes.items():
                        acc[w] -= c
                    for rw, rc in repl:
                        w = u + rw + v
                        acc[w] = acc.get(w, 0) + rc
                    out.add(_freeze(acc))
    out.discard(nf)
    return out


def presented_eq_oracle(pres: Presentation, t1, t2,
                        bound: int = 10_000) -> OracleResult:
    """Semi-decide equality of two terms modulo the presentation."""
    nf1 = pres.parse_term(t1) if isinstance(t1, str) else t1
    nf2 = pres.parse_term(t2) if isinstance(t2, str) else t2

    if pres.interpretation is not None:
        v1, v2 = pres.evaluate(nf1), pres.evaluate(nf2)
        if not sr_eq(v1, v2):
            return OracleResult("distinct", left_value=v1, right_value=v2)

    parent: dict[NormalForm, NormalForm | None] = {nf1: None}
    queue = deque([nf1])
    visited = 1

    def chain_to(node):
        steps = []
        cur: NormalForm | None = node
        while cur is not None:
            steps.append(render_nf(cur))
            cur = parent[cur]
        return tuple(reversed(steps))

    if nf1 == nf2:
        return OracleResult("equal", chain=chain_to(nf1), visited=visited)
    while queue and visited < bound:
        nf = queue.popleft()
        for nxt in _neighbors(nf, pres.relations):
            if nxt in parent:
                continue
            parent[nxt] = nf
            visited += 1
            if nxt == nf2:
                return OracleResult("equal", chain=chain_to(nxt), visited=visited)
            queue.append(nxt)
            if visited >= bound:
                break
    return OracleResult("unknown", visited=visited)


def reachable_closure(pres: Presentation, start, bound: int):
    """BFS edge list from one term, for validating models edge by edge."""
    nf = pres.parse_term(start) if isinstance(start, str) else start
    seen = {nf}
    queue = deque([nf])
    edges = []
    while queue and len(seen) < bound:
        cur = queue.popleft()
        for nxt in _neighbors(cur, pres.relations):
            edges.append((cur, nxt))
            if nxt not in seen and len(seen) < bound:
                seen.add(nxt)
                queue.append(nxt)
    return seen, edges


# -- stock presentations -----------------------------------------------------


def state_presentation(names: tuple[str, ...] = ("1", "2")) -> Presentation:
    """Read/write actions with the state relations, interpreted as matrices."""
    gens = [f"rd_{i}" for i in names] + [f"wr_{i}" for i in names]
    rels = []
    for i in names:
        for j in names:
            rels.append((f"wr_{i}*wr_{j}", f"wr_{j}"))
            if i == j:
                rels.append((f"wr_{i}*rd_{i}", f"wr_{i}"))
            else:
                rels.append((f"wr_{i}*rd_{j}", "0"))
    rels.append((" + ".join(f"rd_{i}*wr_{i}" for i in names), "1"))
    sr = mat_nat(tuple(names))
    interp: dict[str, SemiringValue] = {}
    for i in names:
        interp[f"rd_{i}"] = SemiringValue(sr, rd_payload(sr, i))
        interp[f"wr_{i}"] = SemiringValue(sr, wr_payload(sr, i))
    return presentation_from_terms(gens, rels, interp)


def bernstein_presentation() -> Presentation:
    """X and its complement, separated by evaluation at 1/3."""
    interp = {
        "X": SemiringValue(RAT, Fraction(1, 3)),
        "Xb": SemiringValue(RAT, Fraction(2, 3)),
    }
    return presentation_from_terms(
        ("X", "Xb"), [("X + Xb", "1"), ("X*Xb", "Xb*X")], interp)


def half_third_tensor_presentation() -> Presentation:
    """Generators for 1/2 and 1/3 with the cross-commutation relation."""
    interp = {
        "h": SemiringValue(semiring_from_tag("nat_sixth"), Fraction(1, 2)),
        "t": SemiringValue(semiring_from_tag("nat_sixth"), Fraction(1, 3)),
    }
    return presentation_from_terms(
        ("h", "t"), [("h + h", "1"), ("t + t + t", "1"), ("h*t", "t*h")], interp)


def presentation_from_json(obj: Any) -> Presentation:
    if isinstance(obj, str):
        obj = json.loads(obj)
    gens = tuple(obj["generators"])
    interp = None
    if obj.get("interpretation"):
        sr = semiring_from_tag(obj["interpretation"]["semiring"])
        interp = {
            g: SemiringValue(sr, sr.validate(sr.payload_from_json(v)))
            for g, v in obj["interpretation"]["map"].items()
        }
    return presentation_from_terms(gens, [tuple(r) for r in obj["relations"]], interp)


def presentation_to_json(pres: Presentation) -> dict:
    out: dict[str, Any] = {
        "generators": list(pres.generators),
        "relations": [[render_nf(l), render_nf(r)] for l, r in pres.relations],
    }
    if pres.interpretation is not None:
        sr = next(iter(pres.interpretation.values())).semiring
        out["interpretation"] = {
            "semiring": sr.tag,
            "map": {g: sr.payload_to_json(v.payload)
                    for g, v in pres.interpretation.items()},
        }
    return out
