"""Convexity classes: distinguished subsets closed under convex substitution.

A convexity class S of a semiring contains 1 and, whenever a_1 + ... + a_n
lands in S and every b_i is in S, also contains sum(a_i * b_i). The classes
here are the ones arising from the implemented theories: {1}, the unit
interval, the whole semiring, path multisets of I/O trees, function
matrices, row-stochastic matrices, and the probabilistic I/O class whose
members are certified by trees with an added weighted-choice node.

Membership is decided outright everywhere except the probabilistic I/O
class, where the checker either constructs a certificate or reports
MembershipUnknown; it never claims non-membership there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple

from .errors import (MembershipUnknown, NotRowStochastic, OutOfRange,
                     TagMismatch)
from .semirings import (NAT, RAT, MatrixSemiring, Semiring, SemiringValue,
                        WordSemiring, in_letter, io_words, matrix_semiring,
                        out_letter, sr_eq, word_semiring)

# -- trees -------------------------------------------------------------------


class Leaf(NamedTuple):
    pass


class Out(NamedTuple):
    index: str
    child: Any


class In(NamedTuple):
    children: tuple


class Choice(NamedTuple):
    branches: tuple  # of (Fraction weight, subtree), weights > 0 summing to 1


IOTree = Leaf | Out | In
ProbIOTree = Leaf | Out | In | Choice


def check_io_tree(t, names: tuple[str, ...], allow_choice: bool = False):
    match t:
        case Leaf():
            pass
        case Out(i, child):
            if i not in names:
                raise OutOfRange(f"output index {i!r} not in {list(names)}")
            check_io_tree(child, names, allow_choice)
        case In(children):
            if len(children) != len(names):
                raise OutOfRange(
                    f"input node needs {len(names)} children, got {len(children)}")
            for child in children:
                check_io_tree(child, names, allow_choice)
        case Choice(branches) if allow_choice:
            total = Fraction(0)
            for w, sub in branches:
                w = Fraction(w)
                if w <= 0:
                    raise OutOfRange("choice weights must be positive")
                total += w
                check_io_tree(sub, names, allow_choice)
            if total != 1:
                raise OutOfRange(f"choice weights sum to {total}, not 1")
        case _:
            raise OutOfRange(f"bad tree node {t!r}")


def io_tree_paths(t: IOTree, names: tuple[str, ...]) -> SemiringValue:
    """The multiset of root-to-leaf action words of a tree."""
    sr = io_words(tuple(names))
    check_io_tree(t, tuple(names))

    def walk(node) -> dict:
        match node:
            case Leaf():
                return {(): 1}
            case Out(i, child):
                return {(out_letter(i),) + w: c for w, c in walk(child).items()}
            case In(children):
                acc: dict = {}
                for i, child in zip(names, children):
                    for w, c in walk(child).items():
                        acc[(in_letter(i),) + w] = c
                return acc
    return sr.value(walk(t))


def lambda_member(v: SemiringValue) -> IOTree | None:
    """Rebuild the unique tree with the given path multiset, if any."""
    sr = v.semiring
    if not isinstance(sr, WordSemiring) or sr.coeff.tag != NAT.tag:
        raise TagMismatch(sr.tag, "io_words(...)")
    names = sr.names

    def rebuild(entries: dict) -> IOTree | None:
        if not entries:
            return None
        if entries == {(): 1}:
            return Leaf()
        if () in entries:
            return None  # a leaf path next to longer ones, or duplicated
        firsts = {w[0] for w in entries}
        if len(firsts) == 1:
            letter = next(iter(firsts))
            if letter.startswith("out_"):
                child = rebuild({w[1:]: c for w, c in entries.items()})
                return None if child is None else Out(letter[4:], child)
        if firsts == {in_letter(i) for i in names}:
            children = []
            for i in names:
                part = {w[1:]: c for w, c in entries.items()
                        if w[0] == in_letter(i)}
                child = rebuild(part)
                if child is None:
                    return None
                children.append(child)
            return In(tuple(children))
        return None

    return rebuild(dict(v.payload))


# -- probabilistic I/O certificates -----------------------------------------


def prob_io_denote(t: ProbIOTree, names: tuple[str, ...]) -> SemiringValue:
    """Weight function of a certificate tree, in the rational word algebra."""
    sr = word_semiring(RAT, tuple(names))
    check_io_tree(t, tuple(names), allow_choice=True)

    def walk(node) -> dict:
        match node:
            case Leaf():
                return {(): Fraction(1)}
            case Out(i, child):
                return {(out_letter(i),) + w: c for w, c in walk(child).items()}
            case In(children):
                acc: dict = {}
                for i, child in zip(names, children):
                    for w, c in walk(child).items():
                        acc[(in_letter(i),) + w] = c
                return acc
            case Choice(branches):
                acc = {}
                for weight, sub in branches:
                    for w, c in walk(sub).items():
                        acc[w] = acc.get(w, Fraction(0)) + Fraction(weight) * c
                return acc
    return sr.value(walk(t))


def input_share(entries: dict, k: int) -> Fraction:
    """Sum of weights discounted by 1/k per input letter; the functional that
    every member of the probabilistic I/O class maps to exactly 1."""
    total = Fraction(0)
    for w, c in entries.items():
        ins = sum(1 for letter in w if letter.startswith("in_"))
        total += Fraction(c) / k**ins
    return total


def prob_io_certificate(v: SemiringValue) -> ProbIOTree | None:
    """Deterministic certificate search; None means no verdict."""
    sr = v.semiring
    if not isinstance(sr, WordSemiring) or sr.coeff.tag != RAT.tag:
        raise TagMismatch(sr.tag, "io_weights(...)")
    names = sr.names
    k = len(names)
    entries = {w: Fraction(c) for w, c in v.payload}
    if input_share(entries, k) != 1:
        return None

    def build(entries: dict) -> ProbIOTree | None:
        # entries is nonzero with input_share exactly 1
        if entries == {(): Fraction(1)}:
            return Leaf()
        branches = []
        p_eps = entries.get((), Fraction(0))
        if p_eps > 0:
            branches.append((p_eps, Leaf()))
        outs: dict[str, dict] = {}
        ins: dict[str, dict] = {}
        for w, c in entries.items():
            if not w:
                continue
            if w[0].startswith("out_"):
                outs.setdefault(w[0][4:], {})[w[1:]] = c
            else:
                ins.setdefault(w[0][3:], {})[w[1:]] = c
        for i in names:
            if i not in outs:
                continue
            part = outs[i]
            share = input_share(part, k)
            sub = build({w: c / share for w, c in part.items()})
            if sub is None:
                return None
            branches.append((share, Out(i, sub)))
        if ins:
            if set(ins) != set(names):
                return None
            shares = {i: input_share(ins[i], k) for i in names}
            p_in = shares[names[0]]
            if any(shares[i] != p_in for i in names):
                return None
            children = []
            for i in names:
                sub = build({w: c / p_in for w, c in ins[i].items()})
                if sub is None:
                    return None
                children.append(sub)
            branches.append((p_in, In(tuple(children))))
        if sum(w for w, _ in branches) != 1:
            return None
        if len(branches) == 1 and branches[0][0] == 1:
            return branches[0][1]
        return Choice(tuple(branches))

    return build(entries)


# -- state transformers ------------------------------------------------------


def function_matrix(f, mat_sr: MatrixSemiring) -> SemiringValue:
    """0/1 matrix of a total state transformer given as an index vector."""
    targets = tuple(f)
    if len(targets) != mat_sr.n or any(not 0 <= i < mat_sr.n for i in targets):
        raise OutOfRange(f"transformer {targets} is not total on {mat_sr.names}")
    z, o = mat_sr.coeff.zero_payload(), mat_sr.coeff.one_payload()
    rows = tuple(
        tuple(o if c == targets[r] else z for c in range(mat_sr.n))
        for r in range(mat_sr.n)
    )
    return SemiringValue(mat_sr, rows)


def is_function_matrix(v: SemiringValue) -> bool:
    sr = v.semiring
    if not isinstance(sr, MatrixSemiring):
        raise TagMismatch(sr.tag, "mat_nat(...)")
    for row in v.payload:
        if sorted(row) != [sr.coeff.zero_payload()] * (sr.n - 1) + [sr.coeff.one_payload()]:
            return False
    return True


def stochastic_decompose(v: SemiringValue) -> list[tuple[Fraction, tuple[int, ...]]]:
    """Peel a row-stochastic matrix into a convex sum of function matrices.

    Greedy: pick the largest remaining entry in each row (lowest column on
    ties), peel off the minimum of the picks, repeat. Terminates because each
    round zeroes at least one entry.
    """
    sr = v.semiring
    if not isinstance(sr, MatrixSemiring):
        raise TagMismatch(sr.tag, "mat_rat(...)")
    rows = [list(map(Fraction, row)) for row in v.payload]
    for row in rows:
        if sum(row) != 1:
            raise NotRowStochastic(f"row sums are {[str(sum(r)) for r in rows]}")
    out: list[tuple[Fraction, tuple[int, ...]]] = []
    while any(any(c != 0 for c in row) for row in rows):
        picks = []
        for row in rows:
            best = max(range(sr.n), key=lambda c: (row[c], -c))
            picks.append(best)
        weight = min(rows[r][picks[r]] for r in range(sr.n))
        out.append((weight, tuple(picks)))
        for r in range(sr.n):
            rows[r][picks[r]] -= weight
    return out


def is_row_stochastic(v: SemiringValue) -> bool:
    return all(sum(map(Fraction, row)) == 1 for row in v.payload)


# -- the class objects --------------------------------------------------------

KINDS = ("one", "unit_interval", "whole", "io_trees", "function_matrices",
         "row_stochastic", "prob_io_trees")


@dataclass(frozen=True)
class ConvexityClass:
    semiring: Semiring
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise OutOfRange(f"unknown convexity class kind {self.kind!r}")

    def render(self) -> str:
        return self.kind

    def __repr__(self) -> str:
        return f"<class {self.kind} over {self.semiring.tag}>"


def singleton_one(sr: Semiring) -> ConvexityClass:
    return ConvexityClass(sr, "one")


def unit_interval() -> ConvexityClass:
    return ConvexityClass(RAT, "unit_interval")


def whole_semiring(sr: Semiring) -> ConvexityClass:
    return ConvexityClass(sr, "whole")


def io_tree_class(names: tuple[str, ...]) -> ConvexityClass:
    return ConvexityClass(io_words(tuple(names)), "io_trees")


def function_matrices_class(names: tuple[str, ...]) -> ConvexityClass:
    return ConvexityClass(matrix_semiring(NAT, tuple(names)), "function_matrices")


def row_stochastic_class(names: tuple[str, ...]) -> ConvexityClass:
    return ConvexityClass(matrix_semiring(RAT, tuple(names)), "row_stochastic")


def prob_io_class(names: tuple[str, ...]) -> ConvexityClass:
    return ConvexityClass(word_semiring(RAT, tuple(names)), "prob_io_trees")


def member(c: ConvexityClass, v: SemiringValue):
    """True, False, or the MembershipUnknown marker class."""
    if v.semiring.tag != c.semiring.tag:
        raise TagMismatch(v.semiring.tag, c.semiring.tag)
    match c.kind:
        case "one":
            return v.is_one()
        case "unit_interval":
            return 0 <= v.payload <= 1
        case "whole":
            return True
        case "io_trees":
            return lambda_member(v) is not None
        case "function_matrices":
            return is_function_matrix(v)
        case "row_stochastic":
            return is_row_stochastic(v)
        case "prob_io_trees":
            if isinstance(v.semiring, WordSemiring) and v.semiring.coeff.tag == RAT.tag:
                if prob_io_certificate(v) is not None:
                    return True
            return MembershipUnknown
    raise OutOfRange(c.kind)


# -- certificate serialization -----------------------------------------------


def tree_to_json(t) -> dict:
    match t:
        case Leaf():
            return {"node": "leaf"}
        case Out(i, child):
            return {"node": "out", "index": i, "child": tree_to_json(child)}
        case In(children):
            return {"node": "in", "children": [tree_to_json(c) for c in children]}
        case Choice(branches):
            return {"node": "choice",
                    "branches": [{"weight": str(Fraction(w)),
                                  "tree": tree_to_json(sub)}
                                 for w, sub in branches]}
    raise OutOfRange(f"bad tree node {t!r}")


def tree_from_json(obj: Any):
    if not isinstance(obj, dict) or "node" not in obj:
        raise OutOfRange("tree JSON needs a 'node' tag")
    match obj["node"]:
        case "leaf":
            return Leaf()
        case "out":
            return Out(obj["index"], tree_from_json(obj["child"]))
        case "in":
            return In(tuple(tree_from_json(c) for c in obj["children"]))
        case "choice":
            return Choice(tuple(
                (Fraction(b["weight"]), tree_from_json(b["tree"]))
                for b in obj["branches"]))
    raise OutOfRange(f"unknown tree node tag {obj['node']!r}")


def transformer_to_json(f: tuple[int, ...], names: tuple[str, ...]) -> dict:
    return {"kind": "transformer", "map": {names[i]: names[f[i]]
                                           for i in range(len(names))}}


# -- the closure axiom, by sampling -------------------------------------------


@dataclass
class AxiomReport:
    kind: str
    trials: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def convexity_axiom_test(c: ConvexityClass, sampler, trials: int) -> AxiomReport:
    """Check 1 in S and closure under sampled convex substitutions.

    `sampler(i)` must yield a pair (a_list, b_list) of SemiringValues with
    sum(a_list) a member and every b in b_list a member.
    """
    report = AxiomReport(c.kind, trials)
    if member(c, c.semiring.one) is not True:
        report.failures.append("1 is not a member")
        return report
    for i in range(trials):
        a_list, b_list = sampler(i)
        combo = c.semiring.zero
        for a, b in zip(a_list, b_list):
            combo = combo + a * b
        verdict = member(c, combo)
        if verdict is not True:
            report.failures.append(
                f"trial {i}: {combo.render()} not recognized ({verdict})")
    return report
