"""Tokenizer, recursive-descent parser, and static checks for .sfx sources.

The grammar is a flat statement sequence ending in `return`:

    program  ::= header* stmt* "return" expr
    header   ::= "#io" "{" ident ("," ident)* "}"
               | "#state" "{" ident ("," ident)* "}"
    stmt     ::= ident "<-" eff ";" | eff ";"
               | "case" ident "of" "{" branch (";" branch)* "}"
    branch   ::= ident "->" "{" stmt* "}"
    eff      ::= "flip" | "flipY"
               | "sample" "[" rat ":" ident ("," rat ":" ident)* "]"
               | "input" | "output" ident | "read" | "write" ident
               | "score" rat
    rat      ::= nat ("/" nat)?
    expr     ::= ident | "(" expr ("," expr)* ")" | "()"

`--` comments run to end of line. After parsing, a forward walk checks that
variables are bound on every path before use and that each case covers
exactly the atoms that can flow into its scrutinee.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from ..errors import NormalizationError, ParseError, ScopeError
from .ast import (Bind, Case, Do, Effect, Flip, FlipY, Input, Output, Program,
                  Read, Sample, Score, Stmt, Write)


class Token(NamedTuple):
    kind: str  # ident | nat | punct | header | eof
    value: str
    line: int
    col: int


_PUNCT2 = ("<-", "->")
_PUNCT1 = ";,:/{}[]()"

KEYWORDS = frozenset({
    "return", "case", "of", "flip", "flipY", "sample", "input", "output",
    "read", "write", "score",
})


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith(_PUNCT2[0], i) or text.startswith(_PUNCT2[1], i):
            out.append(Token("punct", text[i:i + 2], line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT1:
            out.append(Token("punct", ch, line, col))
            i += 1
            col += 1
            continue
        if ch == "#":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i + 1:j]
            if name not in ("io", "state"):
                raise ParseError(f"unknown header #{name}", line, col)
            out.append(Token("header", name, line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("nat", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    out.append(Token("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.io: tuple[str, ...] | None = None
        self.state: tuple[str, ...] | None = None

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect_punct(self, value: str) -> Token:
        tok = self.peek()
        if tok.kind != "punct" or tok.value != value:
            self.fail(f"expected {value!r}, found {tok.value or 'end of input'!r}")
        return self.next()

    def expect_ident(self, what: str = "a name") -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            self.fail(f"expected {what}, found {tok.value or 'end of input'!r}")
        return self.next()

    # -- grammar -------------------------------------------------------------

    def program(self) -> Program:
        while self.peek().kind == "header":
            self.header()
        stmts = []
        while not (self.peek().kind == "ident" and self.peek().value == "return"):
            if self.peek().kind == "eof":
                self.fail("expected a statement or 'return'")
            stmts.append(self.stmt())
        self.next()  # return
        result = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            self.fail(f"unexpected input after return: {tok.value!r}", tok)
        return Program(self.io, self.state, tuple(stmts), result)

    def header(self):
        tok = self.next()
        self.expect_punct("{")
        names = [self.expect_ident("a name").value]
        while self.peek().kind == "punct" and self.peek().value == ",":
            self.next()
            names.append(self.expect_ident("a name").value)
        self.expect_punct("}")
        if len(set(names)) != len(names):
            self.fail(f"duplicate names in #{tok.value} header", tok)
        if tok.value == "io":
            if self.io is not None:
                self.fail("second #io header", tok)
            self.io = tuple(names)
        else:
            if self.state is not None:
                self.fail("second #state header", tok)
            self.state = tuple(names)

    def expr(self):
        tok = self.peek()
        if tok.kind == "ident":
            return self.next().value
        if tok.kind == "punct" and tok.value == "(":
            self.next()
            if self.peek().kind == "punct" and self.peek().value == ")":
                self.next()
                return ()
            items = [self.expr()]
            while self.peek().kind == "punct" and self.peek().value == ",":
                self.next()
                items.append(self.expr())
            self.expect_punct(")")
            return items[0] if len(items) == 1 else tuple(items)
        self.fail("expected a result expression")

    def stmt(self) -> Stmt:
        tok = self.peek()
        if tok.kind == "ident" and tok.value == "case":
            return self.case_stmt()
        if (tok.kind == "ident" and tok.value not in KEYWORDS
                and self.tokens[self.pos + 1].kind == "punct"
                and self.tokens[self.pos + 1].value == "<-"):
            var = self.next().value
            self.next()  # <-
            eff = self.effect()
            self.expect_punct(";")
            return Bind(var, eff)
        eff = self.effect()
        self.expect_punct(";")
        return Do(eff)

    def case_stmt(self) -> Case:
        self.next()  # case
        var_tok = self.expect_ident("a variable to inspect")
        of = self.expect_ident("'of'")
        if of.value != "of":
            self.fail("expected 'of'", of)
        self.expect_punct("{")
        branches = [self.branch()]
        while self.peek().kind == "punct" and self.peek().value == ";":
            self.next()
            branches.append(self.branch())
        self.expect_punct("}")
        labels = [label for label, _ in branches]
        for label in labels:
            if labels.count(label) > 1:
                self.fail(f"duplicate case branch {label!r}", var_tok)
        return Case(var_tok.value, tuple(branches))

    def branch(self):
        label = self.expect_ident("a branch atom").value
        self.expect_punct("->")
        self.expect_punct("{")
        stmts = []
        while not (self.peek().kind == "punct" and self.peek().value == "}"):
            stmts.append(self.stmt())
        self.expect_punct("}")
        return label, tuple(stmts)

    def effect(self) -> Effect:
        tok = self.expect_ident("an effect")
        name = tok.value
        if name == "flip":
            return Flip()
        if name == "flipY":
            return FlipY()
        if name == "sample":
            return self.sample_body()
        if name == "input":
            if self.io is None:
                self.fail("input needs an #io header", tok)
            return Input()
        if name == "output":
            idx = self.expect_ident("a message name")
            if self.io is None or idx.value not in self.io:
                self.fail(f"message {idx.value!r} is not declared in #io", idx)
            return Output(idx.value)
        if name == "read":
            if self.state is None:
                self.fail("read needs a #state header", tok)
            return Read()
        if name == "write":
            idx = self.expect_ident("a state value")
            if self.state is None or idx.value not in self.state:
                self.fail(f"state value {idx.value!r} is not declared in #state", idx)
            return Write(idx.value)
        if name == "score":
            return Score(self.rat())
        self.fail(f"unknown effect {name!r}", tok)

    def sample_body(self) -> Sample:
        self.expect_punct("[")
        choices = []
        while True:
            weight = self.rat()
            self.expect_punct(":")
            atom = self.expect_ident("an atom").value
            choices.append((weight, atom))
            if self.peek().kind == "punct" and self.peek().value == ",":
                self.next()
                continue
            break
        self.expect_punct("]")
        total = sum(w for w, _ in choices)
        if any(w <= 0 for w, _ in choices):
            raise NormalizationError("sample weights must be positive")
        if total != 1:
            raise NormalizationError(f"sample weights sum to {total}, not 1")
        return Sample(tuple(choices))

    def rat(self) -> Fraction:
        tok = self.peek()
        if tok.kind != "nat":
            self.fail("expected a number")
        num = int(self.next().value)
        if self.peek().kind == "punct" and self.peek().value == "/":
            self.next()
            den_tok = self.peek()
            if den_tok.kind != "nat":
                self.fail("expected a denominator")
            den = int(self.next().value)
            if den == 0:
                self.fail("zero denominator", den_tok)
            return Fraction(num, den)
        return Fraction(num)


UNIT = ()  # what output/write/score-style effects bind


def effect_atoms(eff: Effect, prog: Program) -> frozenset:
    match eff:
        case Flip() | FlipY():
            return frozenset({"H", "T"})
        case Sample(choices):
            return frozenset(a for _, a in choices)
        case Input():
            return frozenset(prog.io or ())
        case Read():
            return frozenset(prog.state or ())
        case Output(_) | Write(_) | Score(_):
            return frozenset({UNIT})
    raise ScopeError(f"unknown effect {eff!r}")


def _flow(stmts, env: dict[str, frozenset], partial: set[str], prog: Program):
    """Forward atom-flow walk; env maps always-bound vars to possible atoms."""
    env = dict(env)
    partial = set(partial)
    for stmt in stmts:
        match stmt:
            case Bind(var, eff):
                env[var] = effect_atoms(eff, prog)
                partial.discard(var)
            case Do(_):
                pass
            case Case(var, branches):
                if var in partial:
                    raise ScopeError(
                        f"variable {var!r} is not bound on every path")
                if var not in env:
                    raise ScopeError(f"case on unbound variable {var!r}")
                atoms = env[var]
                labels = frozenset(label for label, _ in branches)
                if labels != atoms:
                    shown = sorted("()" if a == UNIT else a for a in atoms)
                    raise ScopeError(
                        f"case on {var!r} must cover exactly {shown}, "
                        f"got {sorted(labels)}")
                results = []
                for label, body in branches:
                    env2 = dict(env)
                    env2[var] = frozenset({label})
                    results.append(_flow(body, env2, partial, prog))
                always = set.intersection(*(set(e) for e, _ in results))
                merged: dict[str, frozenset] = {}
                for name in always:
                    merged[name] = frozenset().union(
                        *(e[name] for e, _ in results))
                new_partial = set().union(*(p for _, p in results))
                for e, _ in results:
                    new_partial |= set(e) - always
                env = merged
                partial = new_partial - always
    return env, partial


def _check_result(expr, env: dict[str, frozenset], partial: set[str]):
    if isinstance(expr, tuple):
        for item in expr:
            _check_result(item, env, partial)
        return
    if expr in partial:
        raise ScopeError(f"variable {expr!r} is not bound on every path")


def check_program(prog: Program):
    env, partial = _flow(prog.stmts, {}, set(), prog)
    _check_result(prog.result, env, partial)
    return env


def parse(text: str) -> Program:
    """Parse and statically check one source program."""
    prog = _Parser(tokenize(text)).program()
    check_program(prog)
    return prog
