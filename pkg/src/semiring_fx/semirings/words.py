"""Free input/output word algebras over a declared finite message set.

A value is a finitely supported map from action words to coefficients drawn
from a scalar semiring: natural multiplicities give the free I/O semiring of
word multisets, rational ones give scalar-weighted word functions, and
Bernstein coefficients cover programs mixing coins with I/O. Addition merges
supports, multiplication concatenates words pairwise, and words are kept in
length-lexicographic order so equality and rendering are deterministic.
"""

from __future__ import annotations

from typing import Any, Iterable

from ..errors import OutOfRange, UnknownIndex
from .base import NAT, RAT, Semiring, register_parametric
from . import bernstein

EMPTY_WORD: tuple[str, ...] = ()


def in_letter(index: str) -> str:
    return f"in_{index}"


def out_letter(index: str) -> str:
    return f"out_{index}"


def word_key(word: tuple[str, ...]):
    return (len(word), word)


def render_word(word: tuple[str, ...]) -> str:
    return ".".join(word) if word else "ε"


def parse_word(text: str) -> tuple[str, ...]:
    return EMPTY_WORD if text in ("ε", "") else tuple(text.split("."))


class WordSemiring(Semiring):
    def __init__(self, coeff: Semiring, names: tuple[str, ...]):
        if coeff.tag == NAT.tag:
            head = "io_words"
        elif coeff.tag == RAT.tag:
            head = "io_weights"
        else:
            head = f"io_{coeff.tag}"
        super().__init__(f"{head}({','.join(names)})")
        self.coeff = coeff
        self.names = names
        self.letters = frozenset(
            in_letter(i) for i in names) | frozenset(out_letter(i) for i in names)

    def _check_word(self, word: Any) -> tuple[str, ...]:
        if not isinstance(word, tuple):
            raise OutOfRange(f"action word expected, got {word!r}")
        for letter in word:
            if letter not in self.letters:
                raise UnknownIndex(f"letter {letter!r} not in alphabet of {self.tag}")
        return word

    def validate(self, payload: Any) -> tuple:
        if isinstance(payload, dict):
            pairs: Iterable = payload.items()
        elif isinstance(payload, (tuple, list)):
            pairs = payload
        else:
            raise OutOfRange(f"word map expected, got {payload!r}")
        acc: dict[tuple[str, ...], Any] = {}
        for word, c in pairs:
            word = self._check_word(word)
            c = self.coeff.validate(c)
            if word in acc:
                c = self.coeff.add_payload(acc[word], c)
            acc[word] = c
        return self._freeze(acc)

    def _freeze(self, acc: dict) -> tuple:
        return tuple(
            (w, acc[w])
            for w in sorted(acc, key=word_key)
            if not self.coeff.is_zero(acc[w])
        )

    def zero_payload(self) -> tuple:
        return ()

    def one_payload(self) -> tuple:
        return ((EMPTY_WORD, self.coeff.one_payload()),)

    def add_payload(self, a: tuple, b: tuple) -> tuple:
        acc = dict(a)
        for w, c in b:
            acc[w] = self.coeff.add_payload(acc[w], c) if w in acc else c
        return self._freeze(acc)

    def mul_payload(self, a: tuple, b: tuple) -> tuple:
        acc: dict[tuple[str, ...], Any] = {}
        for u, cu in a:
            for v, cv in b:
                w = u + v
                c = self.coeff.mul_payload(cu, cv)
                acc[w] = self.coeff.add_payload(acc[w], c) if w in acc else c
        return self._freeze(acc)

    def render_payload(self, a: tuple) -> str:
        if not a:
            return "{}"
        parts = []
        show_unit = self.coeff.tag != NAT.tag
        for w, c in a:
            text = render_word(w)
            if show_unit or c != 1:
                text += ": " + self.coeff.render_payload(c)
            parts.append(text)
        return "{" + ", ".join(parts) + "}"

    def payload_to_json(self, a: tuple) -> dict:
        return {render_word(w): self.coeff.payload_to_json(c) for w, c in a}

    def payload_from_json(self, obj: Any) -> tuple:
        if not isinstance(obj, dict):
            raise OutOfRange("word map JSON must be an object")
        return tuple(
            (parse_word(k), self.coeff.payload_from_json(v)) for k, v in obj.items()
        )


_CACHE: dict[tuple[str, tuple[str, ...]], WordSemiring] = {}


def word_semiring(coeff: Semiring, names: tuple[str, ...]) -> WordSemiring:
    key = (coeff.tag, tuple(names))
    if key not in _CACHE:
        _CACHE[key] = WordSemiring(coeff, tuple(names))
    return _CACHE[key]


def io_words(names: tuple[str, ...]) -> WordSemiring:
    return word_semiring(NAT, names)


def io_weights(names: tuple[str, ...]) -> WordSemiring:
    return word_semiring(RAT, names)


def single_word(sr: WordSemiring, *letters: str):
    return sr.value({tuple(letters): sr.coeff.one_payload()})


register_parametric("io_words", lambda names: word_semiring(NAT, names))
register_parametric("io_weights", lambda names: word_semiring(RAT, names))
for _coeff in (bernstein.BERN_NAT, bernstein.BERN_RAT,
               bernstein.BIBERN_NAT, bernstein.BIBERN_RAT):
    register_parametric(
        f"io_{_coeff.tag}",
        lambda names, _c=_coeff: word_semiring(_c, names),
    )
