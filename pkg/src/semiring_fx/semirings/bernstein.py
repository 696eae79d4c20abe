"""Polynomial semirings in X and 1-X, stored in homogeneous Bernstein form.

An element of the X-semiring is a vector (c_0, ..., c_d) of nonnegative
coefficients, c_a being the weight of X^a * Xb^(d-a) where Xb stands for the
complement 1-X. Two vectors denote the same element exactly when they agree
after homogenizing to a common degree (the degree-d Bernstein monomials are
linearly independent), so equality there is decidable. Stored vectors are
kept fully reduced: no factor of (X + Xb) can be divided out, which makes
the representative unique and structural comparison sound.

The bivariate variant adds an independent pair Y, Yb with a coefficient
matrix indexed by the X- and Y-exponents.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from ..errors import DegreeTooSmall, OutOfRange
from .base import NAT, RAT, Semiring, register_fixed


def _raise_once(coeffs: tuple) -> tuple:
    # multiply by (X + Xb): c'_a = c_{a-1} + c_a
    d = len(coeffs)
    return tuple(
        (coeffs[a - 1] if a > 0 else 0) + (coeffs[a] if a < d else 0)
        for a in range(d + 1)
    )


def _divide_once(coeffs: tuple):
    """Quotient by (X + Xb) via forward substitution, or None if it fails."""
    if len(coeffs) < 2:
        return None
    q = [coeffs[0]]
    for a in range(1, len(coeffs) - 1):
        qa = coeffs[a] - q[-1]
        if qa < 0:
            return None
        q.append(qa)
    if q[-1] != coeffs[-1]:
        return None
    return tuple(q)


def bernstein_homogenize(coeffs: tuple, d: int) -> tuple:
    """Rewrite `coeffs` as an equal homogeneous vector of degree `d`."""
    cur = tuple(coeffs)
    if d < len(cur) - 1:
        raise DegreeTooSmall(f"cannot lower degree {len(cur) - 1} to {d}")
    while len(cur) - 1 < d:
        cur = _raise_once(cur)
    return cur


def bernstein_reduce(coeffs: tuple) -> tuple:
    """Divide out every possible factor of (X + Xb)."""
    cur = tuple(coeffs)
    while True:
        q = _divide_once(cur)
        if q is None:
            return cur
        cur = q


def eval_numeric(coeffs: tuple, p: Fraction) -> Fraction:
    """Exact value under X -> p, Xb -> 1-p, for rational p in [0, 1]."""
    p = Fraction(p)
    if p < 0 or p > 1:
        raise OutOfRange(f"evaluation point {p} outside [0, 1]")
    d = len(coeffs) - 1
    q = 1 - p
    return sum(
        (Fraction(c) * p**a * q ** (d - a) for a, c in enumerate(coeffs)),
        Fraction(0),
    )


class BernsteinSemiring(Semiring):
    def __init__(self, tag: str, coeff: Semiring):
        super().__init__(tag)
        self.coeff = coeff

    def validate(self, payload: Any) -> tuple:
        if not isinstance(payload, (tuple, list)) or not payload:
            raise OutOfRange("Bernstein payload must be a nonempty coefficient vector")
        coeffs = tuple(self.coeff.validate(c) for c in payload)
        return bernstein_reduce(coeffs)

    def zero_payload(self) -> tuple:
        return (self.coeff.zero_payload(),)

    def one_payload(self) -> tuple:
        return (self.coeff.one_payload(),)

    def add_payload(self, a: tuple, b: tuple) -> tuple:
        d = max(len(a), len(b)) - 1
        ah = bernstein_homogenize(a, d)
        bh = bernstein_homogenize(b, d)
        return bernstein_reduce(tuple(x + y for x, y in zip(ah, bh)))

    def mul_payload(self, a: tuple, b: tuple) -> tuple:
        out = [self.coeff.zero_payload()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return bernstein_reduce(tuple(out))

    def eq_payload(self, a: tuple, b: tuple) -> bool:
        # reduced representatives are unique, but comparing homogenizations
        # to a common degree stays sound even for unreduced inputs
        if len(a) == len(b):
            return a == b
        d = max(len(a), len(b)) - 1
        return bernstein_homogenize(a, d) == bernstein_homogenize(b, d)

    def render_payload(self, a: tuple) -> str:
        d = len(a) - 1
        terms = []
        for i in range(d, -1, -1):
            c = a[i]
            if c == 0:
                continue
            factors = []
            if i > 0:
                factors.append("X" if i == 1 else f"X^{i}")
            if d - i > 0:
                factors.append("Xb" if d - i == 1 else f"Xb^{d - i}")
            if not factors:
                terms.append(self.coeff.render_payload(c))
            elif c == 1:
                terms.append("*".join(factors))
            else:
                terms.append(self.coeff.render_payload(c) + "*" + "*".join(factors))
        return " + ".join(terms) if terms else "0"

    def payload_to_json(self, a: tuple) -> dict:
        return {
            "degree": len(a) - 1,
            "coeffs": [self.coeff.payload_to_json(c) for c in a],
        }

    def payload_from_json(self, obj: Any) -> tuple:
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise OutOfRange("Bernstein JSON payload needs a 'coeffs' list")
        return tuple(self.coeff.payload_from_json(c) for c in obj["coeffs"])


BERN_NAT = register_fixed(BernsteinSemiring("bern_nat", NAT))
BERN_RAT = register_fixed(BernsteinSemiring("bern_rat", RAT))


def bern_x(sr: BernsteinSemiring = BERN_NAT):
    return sr.value((sr.coeff.zero_payload(), sr.coeff.one_payload()))


def bern_xb(sr: BernsteinSemiring = BERN_NAT):
    return sr.value((sr.coeff.one_payload(), sr.coeff.zero_payload()))


# -- bivariate ---------------------------------------------------------------


def _columns(m: tuple) -> list[tuple]:
    return [tuple(row[b] for row in m) for b in range(len(m[0]))]


def _from_columns(cols: list[tuple]) -> tuple:
    return tuple(tuple(col[a] for col in cols) for a in range(len(cols[0])))


def bibern_homogenize(m: tuple, dx: int, dy: int) -> tuple:
    if dx < len(m) - 1 or dy < len(m[0]) - 1:
        raise DegreeTooSmall(
            f"cannot lower bidegree ({len(m) - 1},{len(m[0]) - 1}) to ({dx},{dy})"
        )
    # raise the X-degree column by column, then the Y-degree row by row
    cols = [bernstein_homogenize(c, dx) for c in _columns(m)]
    m = _from_columns(cols)
    return tuple(bernstein_homogenize(row, dy) for row in m)


def bibern_reduce(m: tuple) -> tuple:
    changed = True
    while changed:
        changed = False
        cols = [_divide_once(c) for c in _columns(m)]
        if all(c is not None for c in cols):
            m = _from_columns(cols)
            changed = True
        rows = [_divide_once(r) for r in m]
        if all(r is not None for r in rows):
            m = tuple(rows)
            changed = True
    return m


def bibern_eval(m: tuple, p: Fraction, q: Fraction) -> Fraction:
    return sum(
        (eval_numeric(row, q) * Fraction(p) ** a * (1 - Fraction(p)) ** (len(m) - 1 - a)
         for a, row in enumerate(m)),
        Fraction(0),
    )


class BiBernsteinSemiring(Semiring):
    def __init__(self, tag: str, coeff: Semiring):
        super().__init__(tag)
        self.coeff = coeff

    def validate(self, payload: Any) -> tuple:
        if not isinstance(payload, (tuple, list)) or not payload:
            raise OutOfRange("biBernstein payload must be a coefficient matrix")
        rows = tuple(tuple(self.coeff.validate(c) for c in row) for row in payload)
        widths = {len(r) for r in rows}
        if len(widths) != 1 or 0 in widths:
            raise OutOfRange("biBernstein coefficient rows must share one length")
        return bibern_reduce(rows)

    def zero_payload(self) -> tuple:
        return ((self.coeff.zero_payload(),),)

    def one_payload(self) -> tuple:
        return ((self.coeff.one_payload(),),)

    def _common(self, a: tuple, b: tuple):
        dx = max(len(a), len(b)) - 1
        dy = max(len(a[0]), len(b[0])) - 1
        return bibern_homogenize(a, dx, dy), bibern_homogenize(b, dx, dy)

    def add_payload(self, a: tuple, b: tuple) -> tuple:
        ah, bh = self._common(a, b)
        return bibern_reduce(
            tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(ah, bh))
        )

    def mul_payload(self, a: tuple, b: tuple) -> tuple:
        nx = len(a) + len(b) - 1
        ny = len(a[0]) + len(b[0]) - 1
        out = [[self.coeff.zero_payload()] * ny for _ in range(nx)]
        for i, ra in enumerate(a):
            for j, x in enumerate(ra):
                if x == 0:
                    continue
                for k, rb in enumerate(b):
                    for l, y in enumerate(rb):
                        out[i + k][j + l] += x * y
        return bibern_reduce(tuple(tuple(r) for r in out))

    def eq_payload(self, a: tuple, b: tuple) -> bool:
        ah, bh = self._common(a, b)
        return ah == bh

    def hash_payload(self, a: tuple) -> int:
        # evaluation is invariant under homogenization, hence equality-safe
        return hash(bibern_eval(a, Fraction(1, 3), Fraction(1, 5)))

    def render_payload(self, a: tuple) -> str:
        dx, dy = len(a) - 1, len(a[0]) - 1
        terms = []
        for i in range(dx, -1, -1):
            for j in range(dy, -1, -1):
                c = a[i][j]
                if c == 0:
                    continue
                factors = []
                if i > 0:
                    factors.append("X" if i == 1 else f"X^{i}")
                if dx - i > 0:
                    factors.append("Xb" if dx - i == 1 else f"Xb^{dx - i}")
                if j > 0:
                    factors.append("Y" if j == 1 else f"Y^{j}")
                if dy - j > 0:
                    factors.append("Yb" if dy - j == 1 else f"Yb^{dy - j}")
                if not factors:
                    terms.append(self.coeff.render_payload(c))
                elif c == 1:
                    terms.append("*".join(factors))
                else:
                    terms.append(self.coeff.render_payload(c) + "*" + "*".join(factors))
        return " + ".join(terms) if terms else "0"

    def payload_to_json(self, a: tuple) -> dict:
        return {
            "degrees": [len(a) - 1, len(a[0]) - 1],
            "coeffs": [[self.coeff.payload_to_json(c) for c in row] for row in a],
        }

    def payload_from_json(self, obj: Any) -> tuple:
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise OutOfRange("biBernstein JSON payload needs a 'coeffs' matrix")
        return tuple(
            tuple(self.coeff.payload_from_json(c) for c in row)
            for row in obj["coeffs"]
        )


BIBERN_NAT = register_fixed(BiBernsteinSemiring("bibern_nat", NAT))
BIBERN_RAT = register_fixed(BiBernsteinSemiring("bibern_rat", RAT))


def bibern_from_x(coeffs: tuple, sr: BiBernsteinSemiring = BIBERN_NAT):
    """Embed a univariate X-polynomial as a bivariate one."""
    return sr.value(tuple((c,) for c in coeffs))


def bibern_from_y(coeffs: tuple, sr: BiBernsteinSemiring = BIBERN_NAT):
    """Embed a univariate polynomial with its variable read as Y."""
    return sr.value((tuple(coeffs),))
