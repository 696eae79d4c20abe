"""A small effectful DSL: parser, effect inference, and evaluator."""

from .ast import (Bind, Case, Do, Effect, Flip, FlipY, Input, Output, Program,
                  Read, Sample, Score, Stmt, Write)
from .parser import UNIT, check_program, parse
from .semantics import (denote_program, equiv, infer_effects, inject,
                        select_theory, swap_adjacent)

__all__ = [
    "Bind", "Case", "Do", "Effect", "Flip", "FlipY", "Input", "Output",
    "Program", "Read", "Sample", "Score", "Stmt", "Write",
    "UNIT", "check_program", "parse",
    "denote_program", "equiv", "infer_effects", "inject", "select_theory",
    "swap_adjacent",
]
