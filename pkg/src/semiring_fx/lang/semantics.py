"""Effect inference, theory selection, and the denotational evaluator.

Each program denotes a finitely supported weighting of its result values in
the semiring picked by its effect signature: coins contribute X/Xb (and Y/Yb
for the second coin) polynomial weights, sampling and scoring contribute
rationals, input/output builds action words, and state builds transition
matrices. Sequencing multiplies weights left to right in program order, so
the noncommutative carriers see actions in temporal order.
"""

from __future__ import annotations

from fractions import Fraction

from ..convexity import (io_tree_class, function_matrices_class, prob_io_class,
                         row_stochastic_class, singleton_one, whole_semiring,
                         ConvexityClass)
from ..errors import (DataDependence, OutOfRange, SignatureMismatch,
                      UnsupportedCombination)
from ..semirings import (BERN_NAT, BERN_RAT, BIBERN_NAT, BIBERN_RAT, NAT, RAT,
                         BernsteinSemiring, BiBernsteinSemiring,
                         MatrixSemiring, Semiring, SemiringValue, WordSemiring,
                         bern_x, bern_xb, bibern_from_y, in_letter,
                         matrix_semiring, out_letter, rd_payload, single_word,
                         word_semiring, wr_payload)
from ..theories import Dist, TheoryTag, dist_bind
from .ast import (Bind, Case, Do, Effect, Flip, FlipY, Input, Output, Program,
                  Read, Sample, Score, Stmt, Write)
from .parser import UNIT

EFFECT_FAMILIES = ("prob", "coin", "coinY", "io", "state", "score")


def _effect_family(eff: Effect) -> str:
    match eff:
        case Flip():
            return "coin"
        case FlipY():
            return "coinY"
        case Sample(_):
            return "prob"
        case Input() | Output(_):
            return "io"
        case Read() | Write(_):
            return "state"
        case Score(_):
            return "score"
    raise OutOfRange(f"unknown effect {eff!r}")


def _walk_effects(stmts, out: set[str]):
    for stmt in stmts:
        match stmt:
            case Bind(_, eff) | Do(eff):
                out.add(_effect_family(eff))
            case Case(_, branches):
                for _, body in branches:
                    _walk_effects(body, out)


def infer_effects(prog: Program) -> frozenset[str]:
    out: set[str] = set()
    _walk_effects(prog.stmts, out)
    return frozenset(out)


def select_theory(sig: frozenset[str],
                  io: tuple[str, ...] | None = None,
                  state: tuple[str, ...] | None = None) -> TheoryTag:
    """Map an effect signature to its carrier semiring and convexity class."""
    unknown = set(sig) - set(EFFECT_FAMILIES)
    if unknown:
        raise UnsupportedCombination(sig)
    if "io" in sig and "state" in sig:
        raise UnsupportedCombination(sig)
    if "state" in sig and ("coin" in sig or "coinY" in sig):
        raise UnsupportedCombination(sig)

    rational = "prob" in sig or "score" in sig
    if "coinY" in sig:
        scalar: Semiring = BIBERN_RAT if rational else BIBERN_NAT
    elif "coin" in sig:
        scalar = BERN_RAT if rational else BERN_NAT
    else:
        scalar = RAT if rational else NAT

    unnormalized = "score" in sig
    if "io" in sig:
        if io is None:
            raise UnsupportedCombination(sig)
        sr: Semiring = word_semiring(scalar, tuple(io))
        if unnormalized:
            cls = whole_semiring(sr)
        elif scalar.tag == NAT.tag:
            cls = io_tree_class(tuple(io))
        else:
            cls = prob_io_class_like(sr)
        return TheoryTag(sr, cls)
    if "state" in sig:
        if state is None:
            raise UnsupportedCombination(sig)
        sr = matrix_semiring(scalar, tuple(state))
        if unnormalized:
            cls = whole_semiring(sr)
        elif scalar.tag == NAT.tag:
            cls = function_matrices_class(tuple(state))
        else:
            cls = row_stochastic_class(tuple(state))
        return TheoryTag(sr, cls)
    cls = whole_semiring(scalar) if unnormalized else singleton_one(scalar)
    return TheoryTag(scalar, cls)


def prob_io_class_like(sr: WordSemiring) -> ConvexityClass:
    # rational weights get the certificate-backed tensor class; polynomial
    # weights reuse the marker, where membership stays a semi-decision
    return ConvexityClass(sr, "prob_io_trees")


# -- value injection into the selected carrier --------------------------------


def _scalar_inject(target: Semiring, v: SemiringValue) -> SemiringValue:
    src = v.semiring
    if src.tag == target.tag:
        return v
    if isinstance(target, BernsteinSemiring):
        if src.tag in (NAT.tag, RAT.tag):
            return target.value((v.payload,))
        if isinstance(src, BernsteinSemiring):
            return target.value(v.payload)
    if isinstance(target, BiBernsteinSemiring):
        if src.tag in (NAT.tag, RAT.tag):
            return target.value(((v.payload,),))
        if isinstance(src, BernsteinSemiring):
            return target.value(tuple((c,) for c in v.payload))
        if isinstance(src, BiBernsteinSemiring):
            return target.value(v.payload)
    if target.tag == RAT.tag and src.tag == NAT.tag:
        return target.value(Fraction(v.payload))
    raise UnsupportedCombination({src.tag, target.tag})


def inject(target: Semiring, v: SemiringValue) -> SemiringValue:
    """Embed a native effect weight into the program's carrier semiring."""
    src = v.semiring
    if src.tag == target.tag:
        return v
    if isinstance(target, WordSemiring):
        if isinstance(src, WordSemiring):
            return target.value(
                {w: _scalar_inject(target.coeff, SemiringValue(src.coeff, c)).payload
                 for w, c in v.payload})
        scalar = _scalar_inject(target.coeff, v)
        return target.value({(): scalar.payload})
    if isinstance(target, MatrixSemiring):
        if isinstance(src, MatrixSemiring):
            return target.value(
                [[_scalar_inject(target.coeff, SemiringValue(src.coeff, c)).payload
                  for c in row] for row in v.payload])
        scalar = _scalar_inject(target.coeff, v)
        z = target.coeff.zero_payload()
        return target.value(
            [[scalar.payload if r == c else z for c in range(target.n)]
             for r in range(target.n)])
    return _scalar_inject(target, v)


def _effect_dist(eff: Effect, prog: Program) -> Dist:
    """The denotation of one effect in its native semiring."""
    match eff:
        case Flip():
            return Dist.make(BERN_NAT, [("H", bern_x()), ("T", bern_xb())])
        case FlipY():
            return Dist.make(BIBERN_NAT, [("H", bibern_from_y((0, 1))),
                                          ("T", bibern_from_y((1, 0)))])
        case Sample(choices):
            return Dist.make(RAT, [(atom, w) for w, atom in choices])
        case Input():
            sr = word_semiring(NAT, prog.io)
            return Dist.make(sr, [(i, single_word(sr, in_letter(i)))
                                  for i in prog.io])
        case Output(i):
            sr = word_semiring(NAT, prog.io)
            return Dist.make(sr, [(UNIT, single_word(sr, out_letter(i)))])
        case Read():
            sr = matrix_semiring(NAT, prog.state)
            return Dist.make(sr, [(i, SemiringValue(sr, rd_payload(sr, i)))
                                  for i in prog.state])
        case Write(i):
            sr = matrix_semiring(NAT, prog.state)
            return Dist.make(sr, [(UNIT, SemiringValue(sr, wr_payload(sr, i)))])
        case Score(r):
            return Dist.make(RAT, [(UNIT, r)])
    raise OutOfRange(f"unknown effect {eff!r}")


def _eval_expr(expr, env: dict):
    if isinstance(expr, tuple):
        return tuple(_eval_expr(e, env) for e in expr)
    return env.get(expr, expr)


def denote_program(prog: Program, theory: TheoryTag | None = None) -> Dist:
    if theory is None:
        theory = select_theory(infer_effects(prog), prog.io, prog.state)
    sr = theory.semiring

    def go(stmts: tuple[Stmt, ...], env: dict) -> Dist:
        if not stmts:
            outcome = _eval_expr(prog.result, env)
            return Dist.make(sr, [(outcome, sr.one_payload())])
        head, rest = stmts[0], stmts[1:]
        match head:
            case Bind(var, eff):
                d = _inject_dist(_effect_dist(eff, prog))
                return dist_bind(d, lambda atom: go(rest, {**env, var: atom}))
            case Do(eff):
                d = _inject_dist(_effect_dist(eff, prog))
                return dist_bind(d, lambda _atom: go(rest, env))
            case Case(var, branches):
                chosen = dict(branches)[env[var]]
                return go(chosen + rest, env)
        raise OutOfRange(f"unknown statement {head!r}")

    def _inject_dist(d: Dist) -> Dist:
        return Dist.make(sr, [(o, inject(sr, SemiringValue(d.semiring, w)))
                              for o, w in d.weights])

    return go(prog.stmts, {})


# -- reordering --------------------------------------------------------------


def _binds(stmt: Stmt) -> frozenset[str]:
    match stmt:
        case Bind(var, _):
            return frozenset({var})
        case Do(_):
            return frozenset()
        case Case(_, branches):
            out: frozenset[str] = frozenset()
            for _, body in branches:
                for s in body:
                    out |= _binds(s)
            return out
    raise OutOfRange(f"unknown statement {stmt!r}")


def _uses(stmt: Stmt) -> frozenset[str]:
    match stmt:
        case Bind(_, _) | Do(_):
            return frozenset()
        case Case(var, branches):
            out = frozenset({var})
            for _, body in branches:
                for s in body:
                    out |= _uses(s)
            return out
    raise OutOfRange(f"unknown statement {stmt!r}")


def swap_adjacent(prog: Program, k: int) -> Program:
    """Exchange statements k and k+1 when they are data-independent."""
    stmts = prog.stmts
    if not 0 <= k < len(stmts) - 1:
        raise OutOfRange(f"no adjacent pair at position {k}")
    a, b = stmts[k], stmts[k + 1]
    if _binds(a) & _uses(b) or _binds(b) & _uses(a) or _binds(a) & _binds(b):
        raise DataDependence(f"statements {k} and {k + 1} share variables")
    return prog.with_stmts(stmts[:k] + (b, a) + stmts[k + 2:])


# -- equivalence --------------------------------------------------------------


def _result_shape(expr):
    if isinstance(expr, tuple):
        return tuple(_result_shape(e) for e in expr)
    return "*"


def equiv(p1: Program, p2: Program) -> bool:
    """Denotational equality of two programs of the same signature."""
    sig1, sig2 = infer_effects(p1), infer_effects(p2)
    if sig1 != sig2:
        raise SignatureMismatch(
            f"effect signatures differ: {sorted(sig1)} vs {sorted(sig2)}")
    t1 = select_theory(sig1, p1.io, p1.state)
    t2 = select_theory(sig2, p2.io, p2.state)
    if t1 != t2:
        raise SignatureMismatch(
            f"theories differ: {t1.render()} vs {t2.render()}")
    if _result_shape(p1.result) != _result_shape(p2.result):
        raise SignatureMismatch("result shapes differ")
    return denote_program(p1, t1) == denote_program(p2, t2)
