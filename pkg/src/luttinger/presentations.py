"""Finitely presented groups: generators plus cyclically reduced relators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import Word, parse_word


def normalize_relator(w: Word) -> Word:
    """Cyclic reduction, then the lexicographically minimal rotation among
    rotations of the word and of its inverse.  Deterministic dedup key."""
    w = w.cyclic_reduce()
    if w.is_identity():
        return w
    best = None
    for cand in (w, w.inverse()):
        for rot in cand.rotations():
            key = rot.letters()
            if best is None or key < best[0]:
                best = (key, rot)
    assert best is not None
    return best[1]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator symbols must be unique")
        n = len(self.generators)
        for r in self.relators:
            for g in r.generator_ids():
                if not 0 <= g < n:
                    raise ValueError(f"relator mentions unknown generator id {g}")

    @staticmethod
    def parse(generators: str | Sequence[str], relators: Iterable[str]) -> "Presentation":
        gens = tuple(generators.split()) if isinstance(generators, str) else tuple(generators)
        rels = tuple(parse_word(r, gens) for r in relators)
        return Presentation.make(gens, rels)

    @staticmethod
    def make(generators: Sequence[str], relators: Iterable[Word]) -> "Presentation":
        """Normalize, drop trivial relators, dedup preserving first occurrence."""
        seen: dict[tuple, Word] = {}
        for r in relators:
            n = normalize_relator(r)
            if n.is_identity():
                continue
            seen.setdefault(n.letters(), n)
        return Presentation(tuple(generators), tuple(seen.values()))

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format_word(self, w: Word) -> str:
        return w.format(self.generators)

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation.make(self.generators, self.relators + tuple(extra))

    def exponent_matrix(self) -> list[list[int]]:
        """Rows indexed by relators, columns by generators."""
        return [r.exponent_sums(self.n_generators) for r in self.relators]

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def describe(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(self.format_word(r) for r in self.relators) or "-"
        return f"<{gens} | {rels}>"
