"""Freely reduced words over an indexed generating set.

A word is stored as a tuple of syllables (generator id, nonzero exponent)
with adjacent syllables carrying distinct generator ids.  Construction
reduces eagerly, so every Word in the system is in free normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Syllable = tuple[int, int]


def _merge(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[Syllable] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            if merged == 0:
                out.pop()
            else:
                out[-1] = (gen, merged)
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    syllables: tuple[Syllable, ...] = ()

    @staticmethod
    def of(syllables: Iterable[Syllable]) -> "Word":
        return Word(_merge(syllables))

    @staticmethod
    def gen(gen_id: int, exp: int = 1) -> "Word":
        if exp == 0:
            return Word()
        return Word(((gen_id, exp),))

    @staticmethod
    def from_letters(letters: Iterable[int]) -> "Word":
        """Letters use the convention +-(gen_id + 1); 0 is not a letter."""
        return Word.of((abs(v) - 1, 1 if v > 0 else -1) for v in letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(_merge(self.syllables + other.syllables))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else self.inverse()
        return Word(_merge(base.syllables * abs(n)))

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def conjugate_by(self, u: "Word") -> "Word":
        """u * self * u^-1."""
        return u * self * u.inverse()

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def letters(self) -> tuple[int, ...]:
        out: list[int] = []
        for g, e in self.syllables:
            letter = g + 1 if e > 0 else -(g + 1)
            out.extend([letter] * abs(e))
        return tuple(out)

    def generator_ids(self) -> set[int]:
        return {g for g, _ in self.syllables}

    def exponent_sums(self, n_gens: int) -> list[int]:
        sums = [0] * n_gens
        for g, e in self.syllables:
            sums[g] += e
        return sums

    def cyclic_reduce(self) -> "Word":
        syl = list(self.syllables)
        while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
            merged = syl[0][1] + syl[-1][1]
            core = syl[1:-1]
            if merged == 0:
                syl = list(_merge(core))
            else:
                syl = list(_merge([(syl[0][0], merged)] + core))
                break
        return Word(tuple(syl))

    def rotations(self) -> Iterator["Word"]:
        letters = self.letters()
        n = len(letters)
        for i in range(n):
            yield Word.from_letters(letters[i:] + letters[:i])
        if n == 0:
            yield Word()

    def commutator_split(self) -> tuple["Word", "Word"] | None:
        """(u, v) when the word is literally u v u^-1 v^-1, else None."""
        letters = self.letters()
        n = len(letters)
        if n < 4 or n % 2:
            return None
        half = n // 2
        for a in range(1, half):
            u, v = letters[:a], letters[a:half]
            inv_u = tuple(-x for x in reversed(u))
            inv_v = tuple(-x for x in reversed(v))
            if letters[half:] == inv_u + inv_v:
                return Word.from_letters(u), Word.from_letters(v)
        return None

    def format(self, symbols: Sequence[str]) -> str:
        """Product form with ^ exponents; commutators render as [u,v]."""
        if not self.syllables:
            return "1"
        split = self.commutator_split()
        if split is not None:
            u, v = split
            return f"[{u.format(symbols)},{v.format(symbols)}]"
        parts = []
        for g, e in self.syllables:
            parts.append(symbols[g] if e == 1 else f"{symbols[g]}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:  # ids only; symbol-aware printing via format()
        return f"Word({self.format([f'g{i}' for i in range(1 + max((g for g, _ in self.syllables), default=0))])})"


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


def remap(w: Word, mapping: Sequence[int]) -> Word:
    """Rewrite generator ids through mapping (old id -> new id)."""
    return Word.of((mapping[g], e) for g, e in w.syllables)


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """Apply the homomorphism sending generator i to images[i]."""
    out = Word()
    for g, e in w.syllables:
        out = out * (images[g] ** e)
    return out


_TOKEN = re.compile(r"\s*(\[|\]|\(|\)|,|\*|\^-?\d+|[A-Za-z][A-Za-z0-9_']*|1)")


class WordSyntaxError(ValueError):
    pass


def parse_word(text: str, symbols: Sequence[str]) -> Word:
    """Parse a word in the generator symbols.

    Grammar: product of factors separated by ``*`` or whitespace; a factor
    is a symbol, ``1``, a commutator ``[u,v]``, or a parenthesised word,
    optionally followed by ``^n``.
    """
    index = {s: i for i, s in enumerate(symbols)}
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise WordSyntaxError(f"bad token at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()

    def parse_product(i: int, stop: set[str]) -> tuple[Word, int]:
        acc = Word()
        while i < len(tokens) and tokens[i] not in stop:
            factor, i = parse_factor(i)
            acc = acc * factor
        return acc, i

    def parse_factor(i: int) -> tuple[Word, int]:
        tok = tokens[i]
        if tok == "*":
            return parse_factor(i + 1)
        if tok == "1":
            base, i = Word(), i + 1
        elif tok == "[":
            u, i = parse_product(i + 1, {","})
            if i >= len(tokens) or tokens[i] != ",":
                raise WordSyntaxError("expected ',' in commutator")
            v, i = parse_product(i + 1, {"]"})
            if i >= len(tokens) or tokens[i] != "]":
                raise WordSyntaxError("expected ']' closing commutator")
            base, i = commutator(u, v), i + 1
        elif tok == "(":
            u, i = parse_product(i + 1, {")"})
            if i >= len(tokens) or tokens[i] != ")":
                raise WordSyntaxError("expected ')'")
            base, i = u, i + 1
        elif tok in index:
            base, i = Word.gen(index[tok]), i + 1
        else:
            raise WordSyntaxError(f"unknown generator {tok!r}")
        if i < len(tokens) and tokens[i].startswith("^"):
            base, i = base ** int(tokens[i][1:]), i + 1
        return base, i

    word, i = parse_product(0, set())
    if i != len(tokens):
        raise WordSyntaxError(f"trailing tokens {tokens[i:]}")
    return word
