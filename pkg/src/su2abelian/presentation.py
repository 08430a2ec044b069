"""Finitely presented groups: words, presentations and the text grammar.

A word is a tuple of ``(generator_index, exponent)`` pairs with nonzero
exponents, read left to right.  Presentations are written as::

    <a, b | (a^3 b)^2 b^-3, (a^-1 b^3)^2 a^3>

Identifiers are a lowercase letter followed by digits; whitespace separates
factors; a parenthesised subword may carry an exponent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParseError
from .smith import AbelianGroup, abelian_group_from_relations

Word = tuple  # tuple[tuple[int, int], ...]


def reduce_word(letters: Iterable[tuple[int, int]]) -> Word:
    """Merge adjacent powers of the same generator and drop zero exponents."""
    out: list[list[int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    return tuple((g, e) for g, e in out)


def word_power(word: Word, k: int) -> Word:
    if k >= 0:
        return reduce_word(list(word) * k)
    return reduce_word(list(inverse_word(word)) * (-k))


def inverse_word(word: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def concat(*words: Word) -> Word:
    letters = []
    for w in words:
        letters.extend(w)
    return reduce_word(letters)


def commutator_word(u: Word, v: Word) -> Word:
    """The word u v u^-1 v^-1."""
    return concat(u, v, inverse_word(u), inverse_word(v))


def letters(word: Word) -> list[tuple[int, int]]:
    """Expand a word into a list of ``(generator, +1 or -1)`` letters."""
    out = []
    for g, e in word:
        s = 1 if e > 0 else -1
        out.extend([(g, s)] * abs(e))
    return out


def word_length(word: Word) -> int:
    return sum(abs(e) for _, e in word)


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator names")
        rels = tuple(tuple((int(g), int(e)) for g, e in r) for r in self.relators)
        for r in rels:
            for g, e in r:
                if not 0 <= g < len(gens):
                    raise ValueError(f"relator references generator index {g}")
                if e == 0:
                    raise ValueError("zero exponent in relator")
        object.__setattr__(self, "relators", rels)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def word(self, *pairs) -> Word:
        """Build a word from ``(name, exponent)`` pairs."""
        return reduce_word((self.index(n), e) for n, e in pairs)

    def format_word(self, word: Word) -> str:
        parts = []
        for g, e in word:
            name = self.generators[g]
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts) if parts else "1"

    def __str__(self):
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


def exponent_matrix(pres: GroupPresentation) -> list[list[int]]:
    """Rows are relators, columns generators, entries exponent sums."""
    rows = []
    for r in pres.relators:
        row = [0] * pres.ngens
        for g, e in r:
            row[g] += e
        rows.append(row)
    return rows


def abelianization(pres: GroupPresentation) -> AbelianGroup:
    """Smith normal form of the relator exponent-sum matrix."""
    return abelian_group_from_relations(exponent_matrix(pres), pres.ngens)


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"([a-z][0-9]*)|(-?[0-9]+)|(\S)")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if m.group(1):
                self.toks.append(("ident", m.group(1), pos))
            elif m.group(2):
                self.toks.append(("int", m.group(2), pos))
            else:
                self.toks.append(("sym", m.group(3), pos))
            pos = m.end()
        self.i = 0

    def error(self, msg):
        pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ParseError(msg, self.text, pos)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def expect(self, sym):
        kind, val, _ = self.peek()
        if kind != "sym" or val != sym:
            self.error(f"expected {sym!r}")
        self.i += 1

    def ident(self):
        kind, val, _ = self.peek()
        if kind != "ident":
            self.error("expected generator name")
        self.i += 1
        return val

    def presentation(self) -> GroupPresentation:
        self.expect("<")
        gens = [self.ident()]
        while self.peek()[:2] == ("sym", ","):
            self.i += 1
            gens.append(self.ident())
        if len(set(gens)) != len(gens):
            self.error("duplicate generator")
        self.gens = {g: k for k, g in enumerate(gens)}
        self.expect("|")
        rels = []
        if self.peek()[:2] != ("sym", ">"):
            rels.append(self.word())
            while self.peek()[:2] == ("sym", ","):
                self.i += 1
                rels.append(self.word())
        self.expect(">")
        if self.i != len(self.toks):
            self.error("trailing input")
        return GroupPresentation(tuple(gens), tuple(r for r in rels if r))

    def word(self) -> Word:
        parts = [self.factor()]
        while True:
            kind, val, _ = self.peek()
            if kind == "ident" or (kind == "sym" and val == "("):
                parts.append(self.factor())
            else:
                break
        return concat(*parts)

    def factor(self) -> Word:
        kind, val, _ = self.peek()
        if kind == "ident":
            if val not in self.gens:
                self.error(f"unknown generator {val!r}")
            self.i += 1
            base = ((self.gens[val], 1),)
        elif kind == "sym" and val == "(":
            self.i += 1
            base = self.word()
            self.expect(")")
        else:
            self.error("expected generator or '('")
        if self.peek()[:2] == ("sym", "^"):
            self.i += 1
            kind, val, _ = self.peek()
            if kind != "int":
                self.error("expected integer exponent")
            self.i += 1
            return word_power(base, int(val))
        return base


def parse_presentation(text: str) -> GroupPresentation:
    """Parse ``<gens | relators>`` into a :class:`GroupPresentation`.

    >>> parse_presentation("<a | a^5>").relators
    (((0, 5),),)
    """
    return _Parser(text).presentation()


def parse_word(text: str, generators: Sequence[str]) -> Word:
    p = _Parser(text)
    p.gens = {g: k for k, g in enumerate(generators)}
    w = p.word()
    if p.i != len(p.toks):
        p.error("trailing input")
    return w


def fibonacci_presentation(n: int = 8) -> GroupPresentation:
    """F(2, n) = <x0..x{n-1} | x_i x_{i+1} x_{i+2}^-1>."""
    gens = tuple(f"x{i}" for i in range(n))
    rels = tuple(reduce_word([(i, 1), ((i + 1) % n, 1), ((i + 2) % n, -1)]) for i in range(n))
    return GroupPresentation(gens, rels)
