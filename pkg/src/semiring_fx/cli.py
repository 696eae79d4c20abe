"""Command-line front end.

Subcommands: denote (evaluate a program file), equiv (compare two programs),
member (convexity-class membership of a serialized value), laws (randomized
law suites), oracle (presented-equality search). Exit codes: 0 success or a
positive verdict, 1 negative verdict, 2 usage or input error, 3 unknown.
All machine output is JSON on stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .convexity import (KINDS, ConvexityClass, io_tree_paths, lambda_member,
                        member, prob_io_certificate, prob_io_denote,
                        stochastic_decompose, transformer_to_json,
                        tree_from_json, tree_to_json)
from .errors import OutOfRange, SemiringFxError
from .lang import denote_program, equiv, infer_effects, parse, select_theory
from .laws import MUTATIONS, SUITES, run_suites
from .semirings import (MatrixSemiring, Semiring, SemiringValue, WordSemiring,
                        presentation_from_json, presented_eq_oracle,
                        value_from_json)
from .theories import dist_to_json, outcome_key, render_outcome


def _dump(payload) -> str:
    return json.dumps(payload, separators=(", ", ": "), ensure_ascii=False)


def _emit(payload) -> None:
    print(_dump(payload))


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _load_json(path: str):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("SEMIRING_FX_SEED")
    return int(env) if env else 0


# -- denote -------------------------------------------------------------------


def _cmd_denote(args) -> int:
    prog = parse(_read(args.file))
    theory = select_theory(infer_effects(prog), prog.io, prog.state)
    d = denote_program(prog, theory)
    if args.text:
        print(theory.render())
        print(d.render())
    else:
        _emit(dist_to_json(d, theory))
    return 0


# -- equiv --------------------------------------------------------------------


def _first_difference(d1, d2):
    outcomes = sorted({o for o, _ in d1.weights} | {o for o, _ in d2.weights},
                      key=outcome_key)
    for o in outcomes:
        w1, w2 = d1.weight(o), d2.weight(o)
        if w1 != w2:
            return o, w1, w2
    return None


def _cmd_equiv(args) -> int:
    p1, p2 = parse(_read(args.file1)), parse(_read(args.file2))
    if equiv(p1, p2):
        _emit({"equivalent": True})
        return 0
    diff = _first_difference(denote_program(p1), denote_program(p2))
    payload: dict = {"equivalent": False}
    if diff is not None:
        o, w1, w2 = diff
        payload.update({"outcome": render_outcome(o),
                        "left": w1.render(), "right": w2.render()})
    _emit(payload)
    return 1


# -- member -------------------------------------------------------------------


def _class_for(kind: str, sr: Semiring) -> ConvexityClass:
    if kind not in KINDS:
        raise OutOfRange(f"unknown convexity class {kind!r}; known: {KINDS}")
    ok = True
    if kind == "unit_interval":
        ok = sr.tag == "rat"
    elif kind == "io_trees":
        ok = isinstance(sr, WordSemiring) and sr.coeff.tag == "nat"
    elif kind == "prob_io_trees":
        ok = isinstance(sr, WordSemiring)
    elif kind == "function_matrices":
        ok = isinstance(sr, MatrixSemiring) and sr.coeff.tag == "nat"
    elif kind == "row_stochastic":
        ok = isinstance(sr, MatrixSemiring) and sr.coeff.tag == "rat"
    if not ok:
        raise OutOfRange(f"class {kind!r} is not defined over semiring {sr.tag}")
    return ConvexityClass(sr, kind)


def _matrix_transformer(v: SemiringValue) -> tuple[int, ...]:
    one = v.semiring.coeff.one_payload()
    return tuple(row.index(one) for row in v.payload)


def _member_extras(cls: ConvexityClass, v: SemiringValue) -> dict:
    if cls.kind == "io_trees":
        return {"tree": tree_to_json(lambda_member(v))}
    if cls.kind == "prob_io_trees":
        cert = prob_io_certificate(v)
        return {"tree": tree_to_json(cert)} if cert is not None else {}
    if cls.kind == "function_matrices":
        return {"certificate": transformer_to_json(_matrix_transformer(v),
                                                   v.semiring.names)}
    if cls.kind == "row_stochastic":
        return {"decomposition": [
            {"weight": str(w), "transformer": transformer_to_json(
                f, v.semiring.names)["map"]}
            for w, f in stochastic_decompose(v)]}
    return {}


def _cmd_member(args) -> int:
    v = value_from_json(_load_json(args.value))
    cls = _class_for(args.cls, v.semiring)
    if args.certificate is not None:
        tree = tree_from_json(_load_json(args.certificate))
        names = v.semiring.names
        if cls.kind == "prob_io_trees":
            denoted = prob_io_denote(tree, names)
        elif cls.kind == "io_trees":
            denoted = io_tree_paths(tree, names)
        else:
            raise OutOfRange(f"class {cls.kind!r} takes no tree certificate")
        if denoted != v:
            print("error: certificate does not denote the given value",
                  file=sys.stderr)
            return 2
        _emit({"member": True, "certificate": "verified"})
        return 0
    verdict = member(cls, v)
    if verdict is True:
        _emit({"member": True, **_member_extras(cls, v)})
        return 0
    if verdict is False:
        _emit({"member": False})
        return 1
    _emit({"member": "unknown"})
    return 3


# -- laws ---------------------------------------------------------------------


def _cmd_laws(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    seed = _resolve_seed(args.seed)
    results = run_suites(names, trials=args.trials, seed=seed,
                         mutate=args.mutate)
    checks = []
    for r in results:
        entry = {"suite": r.suite, "name": r.name, "trials": r.trials,
                 "passed": r.passed}
        if r.failures:
            entry["failures"] = r.failures
        checks.append(entry)
    ok = all(r.passed for r in results)
    _emit({"suites": list(names), "trials": args.trials, "seed": seed,
           "passed": ok, "checks": checks})
    return 0 if ok else 1


# -- oracle -------------------------------------------------------------------


def _cmd_oracle(args) -> int:
    pres = presentation_from_json(_load_json(args.presentation))
    res = presented_eq_oracle(pres, args.left, args.right, bound=args.bound)
    if res.verdict == "equal":
        _emit({"verdict": "equal", "chain": list(res.chain),
               "visited": res.visited})
        return 0
    if res.verdict == "distinct":
        _emit({"verdict": "distinct", "left": res.left_value.render(),
               "right": res.right_value.render()})
        return 1
    _emit({"verdict": "unknown", "visited": res.visited})
    return 3


# -- wiring -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="semiring-fx",
        description="Exact effect semantics over semirings: denotation, "
                    "equivalence, convexity membership, law suites, and a "
                    "presented-equality oracle.")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("denote", help="evaluate a .sfx program file")
    d.add_argument("file")
    fmt = d.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="text", action="store_false",
                     help="JSON output (default)")
    fmt.add_argument("--text", dest="text", action="store_true",
                     help="human-readable output, no stability guarantee")
    d.set_defaults(fn=_cmd_denote, text=False)

    e = sub.add_parser("equiv", help="compare the denotations of two programs")
    e.add_argument("file1")
    e.add_argument("file2")
    e.set_defaults(fn=_cmd_equiv)

    m = sub.add_parser("member", help="convexity-class membership of a value")
    m.add_argument("value", help="JSON file: {\"semiring\": tag, \"value\": ...}")
    m.add_argument("cls", metavar="class", choices=KINDS,
                   help=f"one of {', '.join(KINDS)}")
    m.add_argument("--certificate", metavar="FILE",
                   help="tree certificate JSON to verify instead of searching")
    m.set_defaults(fn=_cmd_member)

    l = sub.add_parser("laws", help="run the randomized law suites")
    l.add_argument("suite", choices=SUITES + ("all",))
    l.add_argument("--trials", type=int, default=200)
    l.add_argument("--seed", type=int, default=None,
                   help="defaults to $SEMIRING_FX_SEED, then 0")
    l.add_argument("--mutate", choices=MUTATIONS, default=None,
                   help="corrupt an internal routine to exercise the suites")
    l.set_defaults(fn=_cmd_laws)

    o = sub.add_parser("oracle",
                       help="search for an equational proof in a presentation")
    o.add_argument("presentation", help="presentation JSON file")
    o.add_argument("left", help="term over the presentation's generators")
    o.add_argument("right")
    o.add_argument("--bound", type=int, default=10_000,
                   help="visited-term budget for the search")
    o.set_defaults(fn=_cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SemiringFxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, TypeError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
