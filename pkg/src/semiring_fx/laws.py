"""Randomized law suites: semiring axioms, convexity closure, monad laws,
and cross-factor commutation.

These back the `laws` CLI subcommand and double as the regression gate for
the canonical-form machinery. Every sampler draws from an explicit Random
seeded per suite and instance, so any reported failure replays from the
seed in the report. The mutation hook deliberately corrupts the Bernstein
reduction step to prove the suites can catch a broken canonical form.
"""

from __future__ import annotations

import random
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

from .convexity import (Choice, ConvexityClass, In, Leaf, Out,
                        convexity_axiom_test, function_matrix,
                        function_matrices_class, io_tree_class, io_tree_paths,
                        prob_io_class, prob_io_denote, row_stochastic_class,
                        singleton_one, unit_interval, whole_semiring)
from .errors import OutOfRange
from .semirings import (BERN_NAT, BERN_RAT, BIBERN_NAT, NAT, NAT_HALF,
                        NAT_SIXTH, NAT_THIRD, RAT, Semiring, SemiringValue,
                        io_weights, io_words, mat_nat, mat_rat, single_word,
                        tensor_embed)
from .semirings import bernstein as bernstein_mod
from .semirings.bernstein import bernstein_homogenize, eval_numeric
from .theories import (C, Dist, TheoryTag, Var, coin_denote, coin_eq,
                       commute_check, dist_bind, dist_unit, total_weight)

SUITES = ("semiring", "convexity", "theory", "commute")

MUTATIONS = ("bernstein-reduce",)


@dataclass
class CheckResult:
    suite: str
    name: str
    trials: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@contextmanager
def mutation(name: str | None):
    """Temporarily corrupt an internal routine for mutation testing."""
    if name is None:
        yield
        return
    if name not in MUTATIONS:
        raise OutOfRange(f"unknown mutation {name!r}; known: {MUTATIONS}")
    real = bernstein_mod.bernstein_reduce
    bernstein_mod.bernstein_reduce = lambda coeffs: tuple(coeffs)
    try:
        yield
    finally:
        bernstein_mod.bernstein_reduce = real


# -- value samplers ------------------------------------------------------------


def _frac(rng: random.Random, num_max: int = 12, den_max: int = 8) -> Fraction:
    return Fraction(rng.randrange(0, num_max + 1), rng.randrange(1, den_max + 1))


def _sample_nat(rng: random.Random) -> SemiringValue:
    return NAT.value(rng.randrange(0, 12))


def _sample_rat(rng: random.Random) -> SemiringValue:
    return RAT.value(_frac(rng))


def _sample_restricted(sr: Semiring, primes: tuple[int, ...]):
    def sample(rng: random.Random) -> SemiringValue:
        den = 1
        for p in primes:
            den *= p ** rng.randrange(0, 4)
        return sr.value(Fraction(rng.randrange(0, 16), den))
    return sample


def _sample_bern(sr: Semiring):
    rational = sr is BERN_RAT

    def sample(rng: random.Random) -> SemiringValue:
        d = rng.randrange(0, 4)
        if rational:
            coeffs = tuple(_frac(rng, 8, 6) for _ in range(d + 1))
        else:
            coeffs = tuple(rng.randrange(0, 5) for _ in range(d + 1))
        return sr.value(coeffs)
    return sample


def _sample_bibern(rng: random.Random) -> SemiringValue:
    dx, dy = rng.randrange(0, 3), rng.randrange(0, 3)
    rows = tuple(tuple(rng.randrange(0, 4) for _ in range(dy + 1))
                 for _ in range(dx + 1))
    return BIBERN_NAT.value(rows)


def _sample_word_value(sr):
    letters = sorted(sr.letters)
    rational = sr.coeff is RAT

    def sample(rng: random.Random) -> SemiringValue:
        entries = {}
        for _ in range(rng.randrange(0, 4)):
            w = tuple(rng.choice(letters) for _ in range(rng.randrange(0, 4)))
            c = _frac(rng, 6, 4) if rational else rng.randrange(0, 4)
            if c:
                entries[w] = sr.coeff.add_payload(entries.get(
                    w, sr.coeff.zero_payload()), c)
        return sr.value(entries)
    return sample


def _sample_matrix(sr):
    rational = sr.coeff is RAT

    def sample(rng: random.Random) -> SemiringValue:
        rows = tuple(
            tuple(_frac(rng, 6, 4) if rational else rng.randrange(0, 4)
                  for _ in range(sr.n))
            for _ in range(sr.n))
        return sr.value(rows)
    return sample


def _instances():
    return (
        (NAT, _sample_nat),
        (RAT, _sample_rat),
        (BERN_NAT, _sample_bern(BERN_NAT)),
        (BERN_RAT, _sample_bern(BERN_RAT)),
        (BIBERN_NAT, _sample_bibern),
        (io_words(("a", "b")), _sample_word_value(io_words(("a", "b")))),
        (io_weights(("a", "b")), _sample_word_value(io_weights(("a", "b")))),
        (mat_nat(("s1", "s2")), _sample_matrix(mat_nat(("s1", "s2")))),
        (mat_rat(("s1", "s2")), _sample_matrix(mat_rat(("s1", "s2")))),
    )


# -- suite 1: semiring axioms --------------------------------------------------

_AXIOMS = (
    ("add_assoc", lambda a, b, c: (a + b) + c == a + (b + c)),
    ("add_comm", lambda a, b, c: a + b == b + a),
    ("add_unit", lambda a, b, c: a + a.semiring.zero == a),
    ("mul_assoc", lambda a, b, c: (a * b) * c == a * (b * c)),
    ("mul_unit_left", lambda a, b, c: a.semiring.one * a == a),
    ("mul_unit_right", lambda a, b, c: a * a.semiring.one == a),
    ("distrib_left", lambda a, b, c: a * (b + c) == a * b + a * c),
    ("distrib_right", lambda a, b, c: (a + b) * c == a * c + b * c),
    ("annihilate", lambda a, b, c: (a * a.semiring.zero).is_zero()
                                   and (a.semiring.zero * a).is_zero()),
)


def _bernstein_extras(sr, sampler, rng: random.Random) -> str | None:
    v = sampler(rng)
    reduced = v.payload
    raised = bernstein_homogenize(reduced, len(reduced) - 1 + rng.randrange(1, 4))
    back = bernstein_mod.bernstein_reduce(raised)
    if tuple(back) != tuple(reduced):
        return (f"reduce(homogenize({reduced})) gave {tuple(back)}")
    a, b = sampler(rng), sampler(rng)
    deg = max(len(a.payload), len(b.payload))
    points = [Fraction(j, deg) for j in range(deg + 1)] if deg else [Fraction(0)]
    numeric = all(eval_numeric(a.payload, p) == eval_numeric(b.payload, p)
                  for p in points)
    if (a == b) != numeric:
        return (f"sr_eq={a == b} but numeric oracle says {numeric} for"
                f" {a.render()} vs {b.render()}")
    return None


def _semiring_suite(trials: int, seed) -> list[CheckResult]:
    out = []
    for sr, sampler in _instances():
        rng = random.Random(f"{seed}:semiring:{sr.tag}")
        res = CheckResult("semiring", sr.tag, trials)
        for i in range(trials):
            a, b, c = sampler(rng), sampler(rng), sampler(rng)
            for law, check in _AXIOMS:
                if not check(a, b, c):
                    res.failures.append(
                        f"{law} failed at trial {i}: a={a.render()}"
                        f" b={b.render()} c={c.render()}")
            if sr in (BERN_NAT, BERN_RAT):
                msg = _bernstein_extras(sr, sampler, rng)
                if msg:
                    res.failures.append(f"trial {i}: {msg}")
            if len(res.failures) > 8:
                break
        out.append(res)
    return out


# -- suite 2: convexity closure -------------------------------------------------


def _random_tree(rng: random.Random, names, depth: int, allow_choice=False):
    roll = rng.random()
    if depth == 0 or roll < 0.3:
        return Leaf()
    if allow_choice and roll < 0.5:
        w = Fraction(rng.randrange(1, 4), 4)
        return Choice(((w, _random_tree(rng, names, depth - 1, True)),
                       (1 - w, _random_tree(rng, names, depth - 1, True))))
    if roll < 0.75:
        return Out(rng.choice(names), _random_tree(rng, names, depth - 1,
                                                   allow_choice))
    return In(tuple(_random_tree(rng, names, depth - 1, allow_choice)
                    for _ in names))


def _one_sampler(rng: random.Random):
    def sampler(_i):
        m = rng.randrange(1, 4)
        raw = [Fraction(rng.randrange(1, 6), rng.randrange(1, 6))
               for _ in range(m)]
        total = sum(raw)
        return [RAT.value(w / total) for w in raw], [RAT.one] * m
    return sampler


def _interval_sampler(rng: random.Random):
    def sampler(_i):
        m = rng.randrange(1, 4)
        raw = [Fraction(rng.randrange(1, 6), rng.randrange(1, 6))
               for _ in range(m)]
        target = Fraction(rng.randrange(0, 5), 4)
        scale = target / sum(raw)
        a_list = [RAT.value(w * scale) for w in raw]
        b_list = [RAT.value(Fraction(rng.randrange(0, 5), 4)) for _ in range(m)]
        return a_list, b_list
    return sampler


def _whole_sampler(rng: random.Random):
    def sampler(_i):
        m = rng.randrange(1, 4)
        return ([_sample_nat(rng) for _ in range(m)],
                [_sample_nat(rng) for _ in range(m)])
    return sampler


def _lambda_sampler(rng: random.Random, names):
    sr = io_words(names)

    def sampler(_i):
        t = _random_tree(rng, names, 2)
        paths = io_tree_paths(t, names)
        a_list = [single_word(sr, *w) for w, _ in paths.payload]
        b_list = [io_tree_paths(_random_tree(rng, names, 2), names)
                  for _ in a_list]
        return a_list, b_list
    return sampler


def _prob_io_sampler(rng: random.Random, names):
    sr = io_weights(names)

    def sampler(_i):
        t = _random_tree(rng, names, 2, allow_choice=True)
        d = prob_io_denote(t, names)
        a_list = [SemiringValue(sr, ((w, c),)) for w, c in d.payload]
        b_list = [prob_io_denote(_random_tree(rng, names, 2, True), names)
                  for _ in a_list]
        return a_list, b_list
    return sampler


def _function_sampler(rng: random.Random, names):
    sr = mat_nat(names)
    n = sr.n
    z, o = sr.coeff.zero_payload(), sr.coeff.one_payload()

    def sampler(_i):
        f = tuple(rng.randrange(n) for _ in range(n))
        owner = tuple(rng.randrange(2) for _ in range(n))
        a_list = []
        for k in (0, 1):
            rows = tuple(
                tuple(o if owner[r] == k and c == f[r] else z
                      for c in range(n))
                for r in range(n))
            a_list.append(SemiringValue(sr, rows))
        b_list = [function_matrix(tuple(rng.randrange(n) for _ in range(n)), sr)
                  for _ in (0, 1)]
        return a_list, b_list
    return sampler


def _stochastic_sampler(rng: random.Random, names):
    sr = mat_rat(names)
    n = sr.n

    def scaled_function(w: Fraction) -> SemiringValue:
        f = function_matrix(tuple(rng.randrange(n) for _ in range(n)), sr)
        return SemiringValue(sr, tuple(tuple(w * c for c in row)
                                       for row in f.payload))

    def random_stochastic() -> SemiringValue:
        w = Fraction(rng.randrange(0, 5), 4)
        return scaled_function(w) + scaled_function(1 - w)

    def sampler(_i):
        m = rng.randrange(1, 4)
        raw = [Fraction(rng.randrange(1, 6), rng.randrange(1, 6))
               for _ in range(m)]
        total = sum(raw)
        a_list = [scaled_function(w / total) for w in raw]
        b_list = [random_stochastic() for _ in range(m)]
        return a_list, b_list
    return sampler


def _convexity_suite(trials: int, seed) -> list[CheckResult]:
    names = ("a", "b")
    states = ("s1", "s2")
    cases: list[tuple[ConvexityClass, object]] = []
    rng = random.Random(f"{seed}:convexity")
    cases.append((singleton_one(RAT), _one_sampler(rng)))
    cases.append((unit_interval(), _interval_sampler(rng)))
    cases.append((whole_semiring(NAT), _whole_sampler(rng)))
    cases.append((io_tree_class(names), _lambda_sampler(rng, names)))
    cases.append((function_matrices_class(states), _function_sampler(rng, states)))
    cases.append((row_stochastic_class(states), _stochastic_sampler(rng, states)))
    cases.append((prob_io_class(names), _prob_io_sampler(rng, names)))
    out = []
    for cls, sampler in cases:
        report = convexity_axiom_test(cls, sampler, trials)
        out.append(CheckResult("convexity", cls.kind, trials,
                               report.failures[:8]))
    return out


# -- suite 3: monad laws, coin closure, congruence -------------------------------


def _random_dist(rng: random.Random, sr, sampler, outcomes) -> Dist:
    return Dist.make(sr, [(o, sampler(rng)) for o in outcomes
                          if rng.random() < 0.8])


def _monad_law_failures(rng: random.Random, sr, sampler, trials: int):
    outcomes = ("a", "b", "c")
    inner = ("p", "q")
    theory = TheoryTag(sr, whole_semiring(sr))
    for i in range(trials):
        d = _random_dist(rng, sr, sampler, outcomes)
        k = {o: _random_dist(rng, sr, sampler, inner) for o in outcomes}
        h = {o: _random_dist(rng, sr, sampler, ("u", "v")) for o in inner}
        left = dist_bind(dist_bind(d, k), h)
        right = dist_bind(d, {o: dist_bind(k[o], h) for o in outcomes})
        if left != right:
            yield f"bind associativity failed at trial {i} over {sr.tag}"
        x = rng.choice(outcomes)
        if dist_bind(dist_unit(x, outcomes, theory), k) != k[x]:
            yield f"left unit failed at trial {i} over {sr.tag}"
        if dist_bind(d, {o: dist_unit(o, outcomes, theory)
                         for o in outcomes}) != d:
            yield f"right unit failed at trial {i} over {sr.tag}"


def _random_coin(rng: random.Random, size: int):
    if size <= 1:
        return Var(rng.choice("wxyz"))
    left = rng.randrange(1, size)
    return C(_random_coin(rng, left), _random_coin(rng, size - left))


def _theory_suite(trials: int, seed) -> list[CheckResult]:
    out = []
    monad_instances = (
        (NAT, _sample_nat),
        (RAT, _sample_rat),
        (BERN_NAT, _sample_bern(BERN_NAT)),
        (io_words(("a", "b")), _sample_word_value(io_words(("a", "b")))),
        (mat_nat(("s1", "s2")), _sample_matrix(mat_nat(("s1", "s2")))),
    )
    per = max(1, trials // len(monad_instances))
    res = CheckResult("theory", "monad_laws", per * len(monad_instances))
    for sr, sampler in monad_instances:
        rng = random.Random(f"{seed}:monad:{sr.tag}")
        res.failures.extend(list(_monad_law_failures(rng, sr, sampler, per))[:8])
    out.append(res)

    rng = random.Random(f"{seed}:coin")
    res = CheckResult("theory", "coin_total_weight", trials)
    for i in range(trials):
        t = _random_coin(rng, rng.randrange(1, 9))
        if not total_weight(coin_denote(t)).is_one():
            res.failures.append(f"trial {i}: {t} total weight is not 1")
    out.append(res)

    res = CheckResult("theory", "coin_congruence", trials)
    for i in range(trials):
        a = _random_coin(rng, rng.randrange(1, 6))
        b = C(a, a)
        u = _random_coin(rng, rng.randrange(1, 6))
        if not (coin_eq(a, b) and coin_eq(C(a, u), C(b, u))
                and coin_eq(C(u, a), C(u, b))):
            res.failures.append(f"trial {i}: congruence broke on {a}")
    out.append(res)
    return out


# -- suite 4: cross-factor commutation -------------------------------------------


def _commute_cases():
    half = _sample_restricted(NAT_HALF, (2,))
    third = _sample_restricted(NAT_THIRD, (3,))
    return (
        ("prob_coin", BERN_RAT, RAT, _sample_rat, BERN_NAT,
         _sample_bern(BERN_NAT)),
        ("coin_coinY", BIBERN_NAT, BERN_NAT, _sample_bern(BERN_NAT), BERN_NAT,
         _sample_bern(BERN_NAT)),
        ("half_third", NAT_SIXTH, NAT_HALF, half, NAT_THIRD, third),
        ("prob_io", io_weights(("a", "b")), RAT, _sample_rat,
         io_words(("a", "b")), _sample_word_value(io_words(("a", "b")))),
        ("prob_state", mat_rat(("s1", "s2")), RAT, _sample_rat,
         mat_nat(("s1", "s2")), _sample_matrix(mat_nat(("s1", "s2")))),
    )


def _commute_suite(trials: int, seed) -> list[CheckResult]:
    out = []
    for name, target, left_sr, left_sample, right_sr, right_sample in _commute_cases():
        rng = random.Random(f"{seed}:commute:{name}")
        res = CheckResult("commute", name, trials)
        for i in range(trials):
            t = Dist.make(target, [
                (o, tensor_embed("left", left_sample(rng), target))
                for o in ("a", "b") if rng.random() < 0.9])
            u = Dist.make(target, [
                (o, tensor_embed("right", right_sample(rng), target))
                for o in ("h", "k") if rng.random() < 0.9])
            if not commute_check(t, u):
                res.failures.append(
                    f"trial {i}: {t.render()} does not commute with {u.render()}")
            if len(res.failures) > 8:
                break
        out.append(res)

    rng = random.Random(f"{seed}:commute:prob_self")
    res = CheckResult("commute", "prob_self", trials)
    for i in range(trials):
        t = _random_dist(rng, RAT, _sample_rat, ("a", "b", "c"))
        u = _random_dist(rng, RAT, _sample_rat, ("h", "k"))
        if not commute_check(t, u):
            res.failures.append(f"trial {i}: prob pair failed interchange")
    out.append(res)
    return out


_SUITE_FNS = {
    "semiring": _semiring_suite,
    "convexity": _convexity_suite,
    "theory": _theory_suite,
    "commute": _commute_suite,
}


def run_suites(names, trials: int = 200, seed=0,
               mutate: str | None = None) -> list[CheckResult]:
    unknown = set(names) - set(SUITES)
    if unknown:
        raise OutOfRange(f"unknown suites {sorted(unknown)}; known: {SUITES}")
    results: list[CheckResult] = []
    with mutation(mutate):
        for name in names:
            results.extend(_SUITE_FNS[name](trials, seed))
    return results
