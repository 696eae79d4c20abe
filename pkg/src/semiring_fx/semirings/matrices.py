"""Square matrix semirings over a declared state-value set.

These are the canonical carriers for read/write effects: a matrix records,
per current state (row), the weighted successor states (columns). The word
homomorphism sends rd_i to the single-entry matrix E_ii and wr_i to the
matrix whose column i is all ones, and left-to-right temporal composition
of actions is then ordinary matrix multiplication in the same order.
"""

from __future__ import annotations

from typing import Any, Sequence

from ..errors import OutOfRange, UnknownIndex
from .base import NAT, RAT, Semiring, SemiringValue, register_parametric


class MatrixSemiring(Semiring):
    def __init__(self, coeff: Semiring, names: tuple[str, ...]):
        head = "mat_nat" if coeff.tag == NAT.tag else "mat_rat"
        super().__init__(f"{head}({','.join(names)})")
        self.coeff = coeff
        self.names = names
        self.n = len(names)

    def validate(self, payload: Any) -> tuple:
        if not isinstance(payload, (tuple, list)) or len(payload) != self.n:
            raise OutOfRange(f"{self.n}x{self.n} matrix expected")
        rows = []
        for row in payload:
            if not isinstance(row, (tuple, list)) or len(row) != self.n:
                raise OutOfRange(f"{self.n}x{self.n} matrix expected")
            rows.append(tuple(self.coeff.validate(c) for c in row))
        return tuple(rows)

    def zero_payload(self) -> tuple:
        z = self.coeff.zero_payload()
        return tuple((z,) * self.n for _ in range(self.n))

    def one_payload(self) -> tuple:
        z = self.coeff.zero_payload()
        o = self.coeff.one_payload()
        return tuple(
            tuple(o if r == c else z for c in range(self.n)) for r in range(self.n)
        )

    def add_payload(self, a: tuple, b: tuple) -> tuple:
        return tuple(
            tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
        )

    def mul_payload(self, a: tuple, b: tuple) -> tuple:
        return tuple(
            tuple(
                sum((a[r][k] * b[k][c] for k in range(self.n)),
                    self.coeff.zero_payload())
                for c in range(self.n)
            )
            for r in range(self.n)
        )

    def render_payload(self, a: tuple) -> str:
        rows = ("[" + ",".join(self.coeff.render_payload(c) for c in row) + "]"
                for row in a)
        return "[" + ",".join(rows) + "]"

    def payload_to_json(self, a: tuple) -> list:
        return [[self.coeff.payload_to_json(c) for c in row] for row in a]

    def payload_from_json(self, obj: Any) -> tuple:
        if not isinstance(obj, list):
            raise OutOfRange("matrix JSON must be a list of rows")
        return tuple(
            tuple(self.coeff.payload_from_json(c) for c in row) for row in obj
        )


_CACHE: dict[tuple[str, tuple[str, ...]], MatrixSemiring] = {}


def matrix_semiring(coeff: Semiring, names: tuple[str, ...]) -> MatrixSemiring:
    key = (coeff.tag, tuple(names))
    if key not in _CACHE:
        _CACHE[key] = MatrixSemiring(coeff, tuple(names))
    return _CACHE[key]


def mat_nat(names: tuple[str, ...]) -> MatrixSemiring:
    return matrix_semiring(NAT, names)


def mat_rat(names: tuple[str, ...]) -> MatrixSemiring:
    return matrix_semiring(RAT, names)


register_parametric("mat_nat", lambda names: matrix_semiring(NAT, names))
register_parametric("mat_rat", lambda names: matrix_semiring(RAT, names))


def _index_of(names: tuple[str, ...], name: str) -> int:
    try:
        return names.index(name)
    except ValueError:
        raise UnknownIndex(f"state value {name!r} not among {list(names)}") from None


def rd_payload(sr: MatrixSemiring, name: str) -> tuple:
    """E_ii: keep only the runs currently in state i."""
    i = _index_of(sr.names, name)
    z, o = sr.coeff.zero_payload(), sr.coeff.one_payload()
    return tuple(
        tuple(o if r == i and c == i else z for c in range(sr.n))
        for r in range(sr.n)
    )


def wr_payload(sr: MatrixSemiring, name: str) -> tuple:
    """Column i of ones: every state moves to i."""
    i = _index_of(sr.names, name)
    z, o = sr.coeff.zero_payload(), sr.coeff.one_payload()
    return tuple(
        tuple(o if c == i else z for c in range(sr.n)) for r in range(sr.n)
    )


def state_to_matrix(word: Sequence[str], names: tuple[str, ...],
                    coeff: Semiring = NAT) -> SemiringValue:
    """Image of a word over {rd_i, wr_i} under the matrix homomorphism,
    multiplying left to right in temporal order."""
    sr = matrix_semiring(coeff, tuple(names))
    acc = sr.one_payload()
    for letter in word:
        if letter.startswith("rd_"):
            step = rd_payload(sr, letter[3:])
        elif letter.startswith("wr_"):
            step = wr_payload(sr, letter[3:])
        else:
            raise UnknownIndex(f"state action {letter!r} is not rd_* or wr_*")
        acc = sr.mul_payload(acc, step)
    return SemiringValue(sr, acc)
