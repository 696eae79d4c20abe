"""Distribution theories: Dist algebra, the binary-choice theory, tensors."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiring_fx import (BERN_NAT, BERN_RAT, MembershipUnknown, NAT, RAT, C,
                         Dist, TheoryTag, Var, coin_denote, coin_eq,
                         coin_render, coin_rewrite_eq, coin_term_parse,
                         commute_check, dist_bind, dist_to_json, dist_unit,
                         in_subtheory, io_weights, io_words, mat_nat, phi_map,
                         singleton_one, total_weight, unit_interval)
from semiring_fx.theories import coin_size
from semiring_fx.convexity import io_tree_class
from semiring_fx.errors import (MissingContinuation, OutOfRange, TagMismatch,
                                UnknownOutcome, UnsupportedTensor)
from semiring_fx.semirings import (bern_x, bern_xb, single_word,
                                   state_to_matrix)

AB = ("a", "b")
HALF = Fraction(1, 2)


def flip() -> Dist:
    return Dist.make(BERN_NAT, [("h", bern_x()), ("t", bern_xb())])


# -- the Dist algebra -----------------------------------------------------------


def test_make_merges_sorts_and_drops_zeros():
    d = Dist.make(NAT, [("b", 2), ("a", 1), ("b", 3), ("c", 0)])
    assert d.weights == (("a", 1), ("b", 5))
    assert d.support() == ("a", "b")
    assert d.weight("b") == NAT.value(5)
    assert d.weight("zzz") == NAT.zero


def test_tuple_outcomes_order_after_atoms():
    d = Dist.make(NAT, [(("b", "a"), 1), ("z", 1), (("a",), 1)])
    assert d.support() == ("z", ("a",), ("b", "a"))
    assert d.render() == "{z: 1, (a): 1, (b,a): 1}"


def test_unit_and_unknown_outcome():
    t = TheoryTag(RAT, singleton_one(RAT))
    u = dist_unit("a", ("a", "b"), t)
    assert u.weights == (("a", Fraction(1)),)
    assert total_weight(u) == RAT.one
    with pytest.raises(UnknownOutcome):
        dist_unit("c", ("a", "b"), t)
    # no declared outcome set means no check
    assert dist_unit("c", None, RAT).weights == (("c", Fraction(1)),)


def test_bind_unit_laws():
    d = Dist.make(RAT, [("a", HALF), ("b", HALF)])
    assert dist_bind(d, lambda o: dist_unit(o, None, RAT)) == d
    k = {"a": Dist.make(RAT, [("x", Fraction(1, 3))]),
         "b": Dist.make(RAT, [("x", Fraction(2, 3))])}
    assert dist_bind(dist_unit("a", None, RAT), k) == k["a"]


def test_bind_expands_coin_terms():
    k = {"h": flip(), "t": dist_unit("t", None, BERN_NAT)}
    out = dist_bind(flip(), k)
    # h picks up X*X, t picks up X*Xb + Xb; reduced forms below
    assert out.weight("h") == BERN_NAT.value((0, 0, 1))
    assert out.weight("t") == BERN_NAT.value((1, 2, 0))
    assert out.weight("t").render() == "2*X*Xb + Xb^2"
    assert total_weight(out) == BERN_NAT.one


def test_bind_multiplies_in_temporal_order():
    sr = mat_nat(("s1", "s2"))
    wr1 = state_to_matrix(("wr_s1",), ("s1", "s2"))
    rd2 = state_to_matrix(("rd_s2",), ("s1", "s2"))
    d = Dist.make(sr, [("s", wr1)])
    out = dist_bind(d, {"s": Dist.make(sr, [("s", rd2)])})
    assert out.weights == ()  # wr_1 then rd_2 reads the overwritten cell
    assert total_weight(out) == sr.zero
    other = dist_bind(Dist.make(sr, [("s", rd2)]), {"s": d})
    assert other.weights != ()


def test_bind_requires_total_continuation():
    d = Dist.make(RAT, [("a", HALF), ("b", HALF)])
    with pytest.raises(MissingContinuation):
        dist_bind(d, {"a": dist_unit("a", None, RAT)})
    with pytest.raises(TagMismatch):
        dist_bind(d, {"a": dist_unit("a", None, NAT),
                      "b": dist_unit("b", None, NAT)})


def test_total_weight_examples():
    assert total_weight(flip()) == BERN_NAT.one
    d = Dist.make(RAT, [("a", HALF), ("b", Fraction(1, 3))])
    assert total_weight(d) == RAT.value(Fraction(5, 6))
    assert total_weight(Dist.make(RAT, [])) == RAT.zero


def test_in_subtheory_scalar():
    probs = TheoryTag(RAT, singleton_one(RAT))
    subprobs = TheoryTag(RAT, unit_interval())
    d = Dist.make(RAT, [("a", HALF), ("b", HALF)])
    assert in_subtheory(d, probs) is True
    half = Dist.make(RAT, [("a", HALF)])
    assert in_subtheory(half, subprobs) is True
    assert in_subtheory(half, probs) is False
    with pytest.raises(TagMismatch):
        in_subtheory(Dist.make(NAT, [("a", 1)]), probs)


def test_in_subtheory_io_words():
    sr = io_words(AB)
    theory = TheoryTag(sr, io_tree_class(AB))
    d = Dist.make(sr, [("u", single_word(sr, "in_a")),
                       ("v", single_word(sr, "in_b"))])
    assert in_subtheory(d, theory) is True
    assert in_subtheory(Dist.make(sr, [("u", sr.one)]), theory) is True
    assert in_subtheory(Dist.make(sr, [("u", single_word(sr, "in_a"))]),
                        theory) is False


def test_dist_to_json_shape():
    d = Dist.make(RAT, [("b", Fraction(1, 3)), ("a", HALF)])
    theory = TheoryTag(RAT, unit_interval())
    assert dist_to_json(d, theory) == {
        "theory": "T(rat, unit_interval)",
        "weights": {"a": "1/2", "b": "1/3"},
    }
    assert dist_to_json(d) == {"weights": {"a": "1/2", "b": "1/3"}}


# -- the binary-choice theory ----------------------------------------------------


def test_coin_parse_render_round_trip():
    for text in ("x", "c(x,y)", "c(c(w,x),c(y,z))", "c(x,c(x,y))"):
        assert coin_render(coin_term_parse(text)) == text
    assert coin_term_parse(" c( x , y ) ") == C(Var("x"), Var("y"))
    assert coin_size(coin_term_parse("c(c(w,x),c(y,z))")) == 7


def test_coin_parse_errors():
    for bad in ("", "c(x", "c(x,)", "c(x,y))", "x y"):
        with pytest.raises(OutOfRange):
            coin_term_parse(bad)


def test_coin_denote_examples():
    assert coin_denote(C(Var("x"), Var("x"))) == coin_denote(Var("x"))
    medial_l = coin_term_parse("c(c(w,x),c(y,z))")
    medial_r = coin_term_parse("c(c(w,y),c(x,z))")
    d = coin_denote(medial_l)
    assert d.weight("w") == BERN_NAT.value((0, 0, 1))
    assert d.weight("x") == BERN_NAT.value((0, 1, 0))
    assert d == coin_denote(medial_r)
    assert total_weight(d) == BERN_NAT.one


def test_coin_eq_verdicts():
    assert coin_eq(coin_term_parse("c(x,x)"), Var("x"))
    assert coin_eq(coin_term_parse("c(c(w,x),c(y,z))"),
                   coin_term_parse("c(c(w,y),c(x,z))"))
    assert not coin_eq(coin_term_parse("c(x,y)"), coin_term_parse("c(y,x)"))
    assert not coin_eq(coin_term_parse("c(x,y)"), Var("x"))


def test_coin_rewrite_cross_check():
    assert coin_rewrite_eq(coin_term_parse("c(x,x)"), Var("x")) == "equal"
    assert coin_rewrite_eq(coin_term_parse("c(c(w,x),c(y,z))"),
                           coin_term_parse("c(c(w,y),c(x,z))")) == "equal"
    assert coin_rewrite_eq(coin_term_parse("c(x,y)"),
                           coin_term_parse("c(y,x)"),
                           bound=600) == "unknown"


@given(st.integers(0, 10 ** 6))
def test_coin_eq_is_a_congruence(seed):
    import random
    rng = random.Random(seed)

    def build(depth):
        if depth == 0 or rng.random() < 0.4:
            return Var(rng.choice("wxyz"))
        return C(build(depth - 1), build(depth - 1))

    t = build(3)
    a = build(2)
    assert coin_eq(C(a, t), C(a, t))
    b = C(a, a)  # idempotence: b ~ a
    assert coin_eq(a, b)
    assert coin_eq(C(a, t), C(b, t))
    assert coin_eq(C(t, a), C(t, b))


# -- interchange and the comparison map -------------------------------------------


def test_commute_check_examples():
    lift = BERN_RAT.value
    t = Dist.make(BERN_RAT, [("a", lift((HALF,))), ("b", lift((HALF,)))])
    u = Dist.make(BERN_RAT, [("h", bern_x(BERN_RAT)), ("t", bern_xb(BERN_RAT))])
    assert commute_check(t, u) is True

    weights = io_weights(AB)
    scalar = Dist.make(weights, [("x", weights.value({(): Fraction(2)}))])
    word = Dist.make(weights, [("y", single_word(weights, "out_a"))])
    assert commute_check(scalar, word) is True

    words = io_words(AB)
    va = Dist.make(words, [("x", single_word(words, "out_a"))])
    vb = Dist.make(words, [("y", single_word(words, "out_b"))])
    assert commute_check(va, vb) is False
    with pytest.raises(TagMismatch):
        commute_check(t, va)


def test_phi_map_prob_coin():
    outer = Dist.make(RAT, [("L", HALF), ("R", HALF)])
    inner = {"L": flip(), "R": dist_unit("t", None, BERN_NAT)}
    out = phi_map(outer, inner)
    assert out.semiring is BERN_RAT
    assert out.weight("h").render() == "1/2*X"
    assert out.weight("t").render() == "1/2*X + Xb"
    assert total_weight(out) == BERN_RAT.one


def test_phi_map_pure_outer():
    outer = Dist.make(RAT, [("L", HALF), ("R", HALF)])
    out = phi_map(outer, lambda o: dist_unit(o, None, BERN_NAT),
                  target=BERN_RAT)
    assert out.weight("L") == BERN_RAT.value((HALF,))
    assert out.weight("R") == BERN_RAT.value((HALF,))


def test_phi_map_prob_io():
    words = io_words(AB)
    outer = Dist.make(RAT, [("L", HALF), ("R", HALF)])
    inner = {"L": Dist.make(words, [("x", single_word(words, "out_a"))]),
             "R": Dist.make(words, [("x", single_word(words, "out_b"))])}
    out = phi_map(outer, inner)
    assert out.support() == ("x",)
    assert out.weight("x").render() == "{out_a: 1/2, out_b: 1/2}"


def test_phi_map_unsupported():
    outer = Dist.make(io_words(AB), [("L", io_words(AB).one)])
    inner = {"L": Dist.make(mat_nat(("s1", "s2")),
                            [("x", mat_nat(("s1", "s2")).one)])}
    with pytest.raises(UnsupportedTensor):
        phi_map(outer, inner)


def test_in_subtheory_unknown_for_prob_io():
    from semiring_fx.convexity import prob_io_class
    sr = io_weights(AB)
    theory = TheoryTag(sr, prob_io_class(AB))
    bad = Dist.make(sr, [("u", sr.value({("in_a",): Fraction(2, 3),
                                         ("in_b",): Fraction(2, 3)}))])
    assert in_subtheory(bad, theory) is MembershipUnknown
