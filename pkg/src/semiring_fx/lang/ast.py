"""Syntax trees for the effectful source language."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NamedTuple


class Flip(NamedTuple):
    pass


class FlipY(NamedTuple):
    pass


class Sample(NamedTuple):
    choices: tuple[tuple[Fraction, str], ...]  # positive weights summing to 1


class Input(NamedTuple):
    pass


class Output(NamedTuple):
    index: str


class Read(NamedTuple):
    pass


class Write(NamedTuple):
    index: str


class Score(NamedTuple):
    weight: Fraction


Effect = Flip | FlipY | Sample | Input | Output | Read | Write | Score


class Bind(NamedTuple):
    var: str
    eff: Effect


class Do(NamedTuple):
    eff: Effect


class Case(NamedTuple):
    var: str
    branches: tuple[tuple[str, tuple], ...]  # (atom, statement block)


Stmt = Bind | Do | Case

# a result expression is an atom-or-variable name (str) or a tuple of results
Expr = Any


@dataclass(frozen=True)
class Program:
    io: tuple[str, ...] | None
    state: tuple[str, ...] | None
    stmts: tuple[Stmt, ...]
    result: Expr

    def with_stmts(self, stmts: tuple[Stmt, ...]) -> "Program":
        return Program(self.io, self.state, stmts, self.result)
