"""Semiring descriptors and the tagged value wrapper.

Each semiring is a descriptor object that validates, canonicalizes, combines,
compares, renders, and serializes payloads for its elements. Values are
immutable `SemiringValue` wrappers pairing a descriptor with a payload, so
arithmetic can refuse to mix elements of different semirings.

Scalar payload conventions:
  nat                              -> int >= 0
  rat, nat_half, nat_third, ...    -> fractions.Fraction >= 0, reduced
The denominator-restricted instances model the subsemirings generated by a
single fraction: nat_half is {n / 2^k}, nat_sixth is {n / 6^k} and so on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from ..errors import OutOfRange, TagMismatch


class Semiring:
    """Descriptor for one semiring instance. Subclasses fill in the payload
    protocol; descriptors with equal tags are interchangeable."""

    tag: str

    def __init__(self, tag: str):
        self.tag = tag
        self._zero: SemiringValue | None = None
        self._one: SemiringValue | None = None

    # -- payload protocol -------------------------------------------------

    def validate(self, payload: Any) -> Any:
        """Return the canonical form of `payload`, or raise."""
        raise NotImplementedError

    def zero_payload(self) -> Any:
        raise NotImplementedError

    def one_payload(self) -> Any:
        raise NotImplementedError

    def add_payload(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def mul_payload(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def eq_payload(self, a: Any, b: Any) -> bool:
        return a == b

    def hash_payload(self, a: Any) -> int:
        return hash(a)

    def render_payload(self, a: Any) -> str:
        raise NotImplementedError

    def payload_to_json(self, a: Any) -> Any:
        raise NotImplementedError

    def payload_from_json(self, obj: Any) -> Any:
        raise NotImplementedError

    # -- value helpers -----------------------------------------------------

    @property
    def zero(self) -> "SemiringValue":
        if self._zero is None:
            self._zero = SemiringValue(self, self.zero_payload())
        return self._zero

    @property
    def one(self) -> "SemiringValue":
        if self._one is None:
            self._one = SemiringValue(self, self.one_payload())
        return self._one

    def value(self, payload: Any) -> "SemiringValue":
        return SemiringValue(self, self.validate(payload))

    def is_zero(self, payload: Any) -> bool:
        return self.eq_payload(payload, self.zero_payload())

    def __repr__(self) -> str:
        return f"<semiring {self.tag}>"

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Semiring) and other.tag == self.tag

    def __hash__(self) -> int:
        return hash(self.tag)


@dataclass(frozen=True, eq=False)
class SemiringValue:
    """An element of one specific semiring, stored in canonical form."""

    semiring: Semiring
    payload: Any

    def __add__(self, other: "SemiringValue") -> "SemiringValue":
        return sr_add(self, other)

    def __mul__(self, other: "SemiringValue") -> "SemiringValue":
        return sr_mul(self, other)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, SemiringValue):
            return NotImplemented
        if other.semiring.tag != self.semiring.tag:
            return False
        return self.semiring.eq_payload(self.payload, other.payload)

    def __hash__(self) -> int:
        return hash((self.semiring.tag, self.semiring.hash_payload(self.payload)))

    def is_zero(self) -> bool:
        return self.semiring.is_zero(self.payload)

    def is_one(self) -> bool:
        return self.semiring.eq_payload(self.payload, self.semiring.one_payload())

    def render(self) -> str:
        return self.semiring.render_payload(self.payload)

    def to_json(self) -> dict:
        return {
            "semiring": self.semiring.tag,
            "value": self.semiring.payload_to_json(self.payload),
        }

    def __repr__(self) -> str:
        return f"{self.semiring.tag}:{self.render()}"


def _require_same_tag(a: SemiringValue, b: SemiringValue) -> Semiring:
    if a.semiring.tag != b.semiring.tag:
        raise TagMismatch(a.semiring.tag, b.semiring.tag)
    return a.semiring


def sr_add(a: SemiringValue, b: SemiringValue) -> SemiringValue:
    sr = _require_same_tag(a, b)
    return SemiringValue(sr, sr.add_payload(a.payload, b.payload))


def sr_mul(a: SemiringValue, b: SemiringValue) -> SemiringValue:
    sr = _require_same_tag(a, b)
    return SemiringValue(sr, sr.mul_payload(a.payload, b.payload))


def sr_eq(a: SemiringValue, b: SemiringValue) -> bool:
    sr = _require_same_tag(a, b)
    return sr.eq_payload(a.payload, b.payload)


def sr_sum(sr: Semiring, values) -> SemiringValue:
    acc = sr.zero
    for v in values:
        acc = sr_add(acc, v)
    return acc


def sr_scale_nat(v: SemiringValue, n: int) -> SemiringValue:
    """n-fold sum of v; the only scalar action every semiring supports."""
    if n < 0:
        raise OutOfRange(f"natural scale expected, got {n}")
    acc = v.semiring.zero
    for _ in range(n):
        acc = sr_add(acc, v)
    return acc


# -- scalar instances -------------------------------------------------------


class Naturals(Semiring):
    def validate(self, payload: Any) -> int:
        if isinstance(payload, bool) or not isinstance(payload, int):
            raise OutOfRange(f"natural number expected, got {payload!r}")
        if payload < 0:
            raise OutOfRange(f"natural number expected, got {payload}")
        return payload

    def zero_payload(self) -> int:
        return 0

    def one_payload(self) -> int:
        return 1

    def add_payload(self, a: int, b: int) -> int:
        return a + b

    def mul_payload(self, a: int, b: int) -> int:
        return a * b

    def render_payload(self, a: int) -> str:
        return str(a)

    def payload_to_json(self, a: int) -> int:
        return a

    def payload_from_json(self, obj: Any) -> int:
        return self.validate(obj)


def _prime_factors(n: int) -> set[int]:
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


class NonNegRationals(Semiring):
    """Nonnegative rationals, optionally restricted to denominators whose
    prime factors lie in a fixed set (the subsemirings generated by 1/p)."""

    def __init__(self, tag: str, denominator_primes: frozenset[int] | None = None):
        super().__init__(tag)
        self.denominator_primes = denominator_primes

    def validate(self, payload: Any) -> Fraction:
        if isinstance(payload, bool):
            raise OutOfRange(f"rational expected, got {payload!r}")
        if isinstance(payload, int):
            payload = Fraction(payload)
        if not isinstance(payload, Fraction):
            raise OutOfRange(f"rational expected, got {payload!r}")
        if payload < 0:
            raise OutOfRange(f"nonnegative rational expected, got {payload}")
        if self.denominator_primes is not None:
            extra = _prime_factors(payload.denominator) - self.denominator_primes
            if extra:
                raise OutOfRange(
                    f"{payload} is outside {self.tag}: denominator has prime "
                    f"factors {sorted(extra)}"
                )
        return payload

    def zero_payload(self) -> Fraction:
        return Fraction(0)

    def one_payload(self) -> Fraction:
        return Fraction(1)

    def add_payload(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def mul_payload(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def render_payload(self, a: Fraction) -> str:
        return str(a)

    def payload_to_json(self, a: Fraction) -> str:
        return str(a)

    def payload_from_json(self, obj: Any) -> Fraction:
        if isinstance(obj, str):
            return self.validate(Fraction(obj))
        return self.validate(obj)


NAT = Naturals("nat")
RAT = NonNegRationals("rat")
NAT_HALF = NonNegRationals("nat_half", frozenset({2}))
NAT_THIRD = NonNegRationals("nat_third", frozenset({3}))
NAT_SIXTH = NonNegRationals("nat_sixth", frozenset({2, 3}))


# -- tag registry ------------------------------------------------------------

_FIXED: dict[str, Semiring] = {
    sr.tag: sr for sr in (NAT, RAT, NAT_HALF, NAT_THIRD, NAT_SIXTH)
}

_PARAMETRIC: dict[str, Callable[[tuple[str, ...]], Semiring]] = {}


def register_fixed(sr: Semiring) -> Semiring:
    _FIXED[sr.tag] = sr
    return sr


def register_parametric(head: str, factory: Callable[[tuple[str, ...]], Semiring]):
    _PARAMETRIC[head] = factory


def semiring_from_tag(tag: str) -> Semiring:
    """Resolve a tag string like `nat`, `bern_rat` or `mat_nat(s1,s2)`."""
    if tag in _FIXED:
        return _FIXED[tag]
    if tag.endswith(")") and "(" in tag:
        head, inner = tag[:-1].split("(", 1)
        names = tuple(part.strip() for part in inner.split(",") if part.strip())
        if head in _PARAMETRIC and names:
            return _PARAMETRIC[head](names)
    raise OutOfRange(f"unknown semiring tag {tag!r}")


def value_from_json(obj: Any) -> SemiringValue:
    if not isinstance(obj, dict) or "semiring" not in obj or "value" not in obj:
        raise OutOfRange("expected an object with 'semiring' and 'value' fields")
    sr = semiring_from_tag(obj["semiring"])
    return SemiringValue(sr, sr.validate(sr.payload_from_json(obj["value"])))
