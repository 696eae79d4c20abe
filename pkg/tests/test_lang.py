"""Source language: parsing, static checks, theory selection, evaluation."""

from fractions import Fraction

import pytest

from semiring_fx import (BERN_NAT, BERN_RAT, BIBERN_NAT, BIBERN_RAT, NAT, RAT,
                         Dist, dist_bind, in_subtheory, io_words, mat_nat,
                         mat_rat, total_weight, word_semiring)
from semiring_fx.semirings import bern_x, bern_xb
from semiring_fx.errors import (DataDependence, NormalizationError, OutOfRange,
                                ParseError, ScopeError, SignatureMismatch,
                                UnsupportedCombination)
from semiring_fx.lang import (UNIT, Bind, Case, Do, Flip, Output, Program,
                              Sample, Write, denote_program, equiv,
                              infer_effects, parse, select_theory,
                              swap_adjacent)

COIN = frozenset({"coin"})


# -- parsing ---------------------------------------------------------------------


def test_parse_flip_program():
    p = parse("x <- flip; return x")
    assert p == Program(None, None, (Bind("x", Flip()),), "x")


def test_parse_headers_and_do():
    p = parse("#io {m}  output m; return ()")
    assert p.io == ("m",)
    assert p.stmts == (Do(Output("m")),)
    assert p.result == UNIT


def test_parse_sample_case_and_comments():
    p = parse("""
        -- choose a side, then act on it
        x <- sample [1/2: a, 1/2: b];
        case x of { a -> { y <- flip; }; b -> { y <- flip; } }
        return (x, y)
    """)
    assert p.stmts[0] == Bind("x", Sample(((Fraction(1, 2), "a"),
                                           (Fraction(1, 2), "b"))))
    assert isinstance(p.stmts[1], Case)
    assert p.result == ("x", "y")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse("x <- flip return x")
    assert (exc.value.line, exc.value.col) == (1, 11)
    assert "expected ';'" in str(exc.value)

    with pytest.raises(ParseError) as exc:
        parse("x <- flip;\ny <- flop;\nreturn x")
    assert (exc.value.line, exc.value.col) == (2, 6)


def test_parse_rejects_bad_headers():
    with pytest.raises(ParseError, match="duplicate names"):
        parse("#io {m, m} return ()")
    with pytest.raises(ParseError, match="second #io"):
        parse("#io {m} #io {k} return ()")
    with pytest.raises(ParseError, match="unknown header"):
        parse("#mem {m} return ()")


def test_parse_rejects_undeclared_indices():
    with pytest.raises(ParseError, match="not declared in #io"):
        parse("#io {m} output k; return ()")
    with pytest.raises(ParseError, match="needs an #io header"):
        parse("x <- input; return x")
    with pytest.raises(ParseError, match="not declared in #state"):
        parse("#state {s1} write s2; return ()")


def test_parse_rejects_unnormalized_sample():
    with pytest.raises(NormalizationError, match="5/6"):
        parse("x <- sample [1/2: a, 1/3: b]; return x")
    with pytest.raises(NormalizationError, match="positive"):
        parse("x <- sample [0: a, 1: b]; return x")


def test_parse_rejects_bad_case():
    with pytest.raises(ScopeError, match="unbound"):
        parse("case x of { H -> { } } return ()")
    with pytest.raises(ScopeError, match="cover exactly"):
        parse("x <- flip; case x of { H -> { } } return x")
    with pytest.raises(ParseError, match="duplicate case branch"):
        parse("x <- flip; case x of { H -> { }; H -> { }; T -> { } } return x")


def test_variable_must_be_bound_on_every_path():
    src = """
        x <- flip;
        case x of { H -> { y <- flip; }; T -> { } }
        return y
    """
    with pytest.raises(ScopeError, match="every path"):
        parse(src)
    # the same shape is fine when every branch binds y
    ok = parse("""
        x <- flip;
        case x of { H -> { y <- flip; }; T -> { y <- flip; } }
        return y
    """)
    assert infer_effects(ok) == COIN


# -- effect inference and theory selection ----------------------------------------


def test_infer_effects():
    assert infer_effects(parse("return ()")) == frozenset()
    assert infer_effects(parse("x <- flip; return x")) == COIN
    assert infer_effects(parse("x <- flipY; return x")) == frozenset({"coinY"})
    assert infer_effects(parse("x <- sample [1: a]; return x")) == \
        frozenset({"prob"})
    assert infer_effects(parse("#io {m} output m; return ()")) == \
        frozenset({"io"})
    assert infer_effects(parse("#state {s} v <- read; return v")) == \
        frozenset({"state"})
    assert infer_effects(parse("score 2; return ()")) == frozenset({"score"})
    p = parse("#io {m} x <- flip; case x of "
              "{ H -> { output m; }; T -> { } } return x")
    assert infer_effects(p) == frozenset({"coin", "io"})


def test_select_theory_scalar_rows():
    assert select_theory(frozenset()).semiring is NAT
    assert select_theory(frozenset()).convexity.kind == "one"
    assert select_theory(frozenset({"prob"})).semiring is RAT
    assert select_theory(COIN).semiring is BERN_NAT
    assert select_theory(frozenset({"prob", "coin"})).semiring is BERN_RAT
    assert select_theory(frozenset({"coinY"})).semiring is BIBERN_NAT
    assert select_theory(frozenset({"coin", "coinY"})).semiring is BIBERN_NAT
    assert select_theory(frozenset({"prob", "coinY"})).semiring is BIBERN_RAT


def test_select_theory_io_and_state_rows():
    t = select_theory(frozenset({"io"}), io=("m",))
    assert t.semiring is io_words(("m",))
    assert t.convexity.kind == "io_trees"
    t = select_theory(frozenset({"prob", "io"}), io=("m",))
    assert t.semiring is word_semiring(RAT, ("m",))
    assert t.convexity.kind == "prob_io_trees"
    t = select_theory(frozenset({"coin", "io"}), io=("m",))
    assert t.semiring is word_semiring(BERN_NAT, ("m",))
    assert t.convexity.kind == "prob_io_trees"
    t = select_theory(frozenset({"state"}), state=("s1", "s2"))
    assert t.semiring is mat_nat(("s1", "s2"))
    assert t.convexity.kind == "function_matrices"
    t = select_theory(frozenset({"prob", "state"}), state=("s1", "s2"))
    assert t.semiring is mat_rat(("s1", "s2"))
    assert t.convexity.kind == "row_stochastic"


def test_select_theory_score_unnormalizes():
    assert select_theory(frozenset({"score"})).convexity.kind == "whole"
    assert select_theory(frozenset({"score"})).semiring is RAT
    assert select_theory(frozenset({"prob", "score"})).convexity.kind == "whole"
    t = select_theory(frozenset({"io", "score"}), io=("m",))
    assert t.semiring is word_semiring(RAT, ("m",))
    assert t.convexity.kind == "whole"


def test_select_theory_unsupported():
    with pytest.raises(UnsupportedCombination):
        select_theory(frozenset({"io", "state"}), io=("m",), state=("s",))
    with pytest.raises(UnsupportedCombination):
        select_theory(frozenset({"coin", "state"}), state=("s",))
    with pytest.raises(UnsupportedCombination):
        select_theory(frozenset({"coinY", "state"}), state=("s",))
    with pytest.raises(UnsupportedCombination):
        select_theory(frozenset({"nondet"}))


# -- denotation --------------------------------------------------------------------


def test_denote_flip():
    d = denote_program(parse("x <- flip; return x"))
    assert d == Dist.make(BERN_NAT, [("H", bern_x()), ("T", bern_xb())])


def test_denote_write_then_read():
    d = denote_program(parse("#state {s1, s2} write s1; v <- read; return v"))
    assert d.support() == ("s1",)
    assert d.weight("s1").payload == ((1, 0), (1, 0))


def test_denote_sample_then_output():
    d = denote_program(
        parse("#io {m} x <- sample [1/2: a, 1/2: b]; output m; return x"))
    sr = word_semiring(RAT, ("m",))
    assert d.semiring is sr
    assert d.weight("a") == sr.value({("out_m",): Fraction(1, 2)})
    assert d.weight("b") == sr.value({("out_m",): Fraction(1, 2)})


def test_denote_empty_program():
    d = denote_program(parse("return ()"))
    assert d == Dist.make(NAT, [(UNIT, 1)])


def test_denote_score_zero_kills_branch():
    d = denote_program(parse(
        "x <- sample [1/2: a, 1/2: b]; "
        "case x of { a -> { score 0; }; b -> { } } return x"))
    assert d.support() == ("b",)
    assert total_weight(d) == RAT.value(Fraction(1, 2))


def test_denote_is_compositional():
    p = parse("x <- flip; y <- flip; return (x, y)")
    flip_d = Dist.make(BERN_NAT, [("H", bern_x()), ("T", bern_xb())])
    expected = dist_bind(flip_d, lambda a: dist_bind(
        flip_d, lambda b: Dist.make(BERN_NAT, [((a, b), BERN_NAT.one)])))
    assert denote_program(p) == expected


def test_denote_case_after_deterministic_sample():
    p1 = parse("x <- sample [1: a]; case x of "
               "{ a -> { y <- sample [1/2: u, 1/2: v]; } } return y")
    p2 = parse("x <- sample [1: a]; y <- sample [1/2: u, 1/2: v]; return y")
    assert equiv(p1, p2) is True


def test_denotations_stay_in_their_convexity_class():
    programs = (
        "x <- flip; return x",
        "#io {m} x <- input; output m; return x",
        "#state {s1, s2} write s2; v <- read; return v",
        "#state {s1, s2} x <- sample [1/3: a, 2/3: b]; case x of "
        "{ a -> { write s1; }; b -> { write s2; } } v <- read; return v",
        "#io {m} x <- sample [1/2: a, 1/2: b]; output m; return x",
        "score 1/2; return ()",
    )
    for src in programs:
        p = parse(src)
        theory = select_theory(infer_effects(p), p.io, p.state)
        assert in_subtheory(denote_program(p, theory), theory) is True


# -- reordering and equivalence ----------------------------------------------------


def test_swap_adjacent_legal():
    p = parse("#io {m} x <- flip; output m; return x")
    q = swap_adjacent(p, 0)
    assert q.stmts == (p.stmts[1], p.stmts[0])
    assert q.result == p.result


def test_swap_adjacent_errors():
    p = parse("#io {m} x <- flip; output m; return x")
    with pytest.raises(OutOfRange):
        swap_adjacent(p, 1)
    with pytest.raises(OutOfRange):
        swap_adjacent(p, -1)
    dep = parse("#io {m} x <- flip; case x of "
                "{ H -> { output m; }; T -> { } } return x")
    with pytest.raises(DataDependence):
        swap_adjacent(dep, 0)
    rebind = parse("x <- flip; x <- flip; return x")
    with pytest.raises(DataDependence):
        swap_adjacent(rebind, 0)


def test_equiv_cross_family_swap():
    p = parse("#io {m} x <- flip; output m; return x")
    assert equiv(p, swap_adjacent(p, 0)) is True


def test_equiv_output_order_matters():
    p1 = parse("#io {a, b} output a; output b; return ()")
    p2 = parse("#io {a, b} output b; output a; return ()")
    assert equiv(p1, p2) is False


def test_equiv_two_flips_commute():
    p1 = parse("x <- flip; y <- flip; return (x, y)")
    p2 = parse("y <- flip; x <- flip; return (x, y)")
    assert equiv(p1, p2) is True


def test_equiv_signature_mismatch():
    with pytest.raises(SignatureMismatch, match="effect signatures"):
        equiv(parse("x <- flip; return x"),
              parse("x <- sample [1: a]; return x"))
    with pytest.raises(SignatureMismatch, match="theories differ"):
        equiv(parse("#io {a} output a; return ()"),
              parse("#io {b} output b; return ()"))
    with pytest.raises(SignatureMismatch, match="result shapes"):
        equiv(parse("x <- flip; return ()"),
              parse("x <- flip; return (x, x)"))
