"""Tracked 4-manifold data: complement presentations, surfaces, tori,
characteristic numbers, and provenance.

A model presents the complement of its still-tracked pieces.  The
exactness level records whether that presentation is known to be
isomorphic to the fundamental group (exact) or only to surject onto it
(upper bound); no operation ever restores exactness once lost.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable

from .abelian import abelianize
from .presentations import Presentation
from .words import Word


class Exactness(enum.Enum):
    EXACT = "exact"
    UPPER_BOUND = "upper_bound"

    def combine(self, other: "Exactness") -> "Exactness":
        if self is Exactness.UPPER_BOUND or other is Exactness.UPPER_BOUND:
            return Exactness.UPPER_BOUND
        return Exactness.EXACT


class PieceStatus(enum.Enum):
    AVAILABLE = "available"
    SURGERED = "surgered"
    FILLED = "filled"
    SUMMED = "summed"


@dataclass(frozen=True)
class TrackedTorus:
    name: str
    mu: Word
    m: Word
    ell: Word
    lagrangian: bool = True
    homology_essential: bool = True
    status: PieceStatus = PieceStatus.AVAILABLE
    complement_exact: bool = False  # exact complement data (sum_torus R side)

    @property
    def available(self) -> bool:
        return self.status is PieceStatus.AVAILABLE


@dataclass(frozen=True)
class TrackedSurface:
    name: str
    genus: int
    square: int
    loop_words: tuple[Word, ...]
    mu: Word
    kernel_words: tuple[Word, ...] = ()  # over the surface slot alphabet
    dual_sphere: bool = False  # meets an embedded sphere transversally once
    surjects: bool = False  # pi1(surface) -> pi1(complement) onto
    complement_simply_connected: bool = False
    status: PieceStatus = PieceStatus.AVAILABLE

    def __post_init__(self) -> None:
        if len(self.loop_words) != 2 * self.genus:
            raise ValueError("surface needs 2*genus loop words")

    @property
    def available(self) -> bool:
        return self.status is PieceStatus.AVAILABLE


@dataclass(frozen=True)
class H1Torus:
    """Homology-level tracked torus: a pair of H1 classes on the torus."""

    name: str
    class_a: tuple[int, ...]
    class_b: tuple[int, ...]
    status: PieceStatus = PieceStatus.AVAILABLE


@dataclass(frozen=True)
class GluingMap:
    """Images of the glued piece's standard generators.

    kind "slot": images are words over the target surface's slot indices
    (resolved against its loop words at sum time), reusable across blocks.
    kind "direct": images are words over the target model's generators.
    The matrix is the induced map on the glued piece's H1 basis; it must
    be invertible over the integers.
    """

    name: str
    images: tuple[Word, ...]
    matrix: tuple[tuple[int, ...], ...]
    kind: str = "slot"

    def __post_init__(self) -> None:
        n = len(self.images)
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError("gluing matrix must be square of the image count")
        if abs(_int_det(self.matrix)) != 1:
            raise ValueError("gluing map must abelianize to a unimodular matrix")


def _int_det(matrix: tuple[tuple[int, ...], ...]) -> int:
    n = len(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    total = 0
    for j in range(n):
        sub = tuple(row[:j] + row[j + 1 :] for row in matrix[1:])
        term = matrix[0][j] * _int_det(sub)
        total += term if j % 2 == 0 else -term
    return total


@dataclass(frozen=True)
class IntersectionFormRecord:
    hyperbolic_pairs: int
    odd_block: tuple[tuple[int, ...], ...]
    basis: tuple[str, ...]

    def __post_init__(self) -> None:
        n = len(self.odd_block)
        for i in range(n):
            for j in range(n):
                if self.odd_block[i][j] != self.odd_block[j][i]:
                    raise ValueError("intersection form must be symmetric")


@dataclass(frozen=True)
class LogEntry:
    op: str
    details: str
    relators_added: tuple[str, ...] = ()
    e_delta: int = 0
    sigma_delta: int = 0
    b1_before: int | None = None
    b1_after: int | None = None


@dataclass(frozen=True)
class ManifoldModel:
    name: str
    presentation: Presentation | None
    tori: tuple[TrackedTorus, ...] = ()
    surfaces: tuple[TrackedSurface, ...] = ()
    e: int = 0
    sigma: int = 0
    exactness: Exactness = Exactness.EXACT
    form: IntersectionFormRecord | None = None
    odd_form: bool = False
    log: tuple[LogEntry, ...] = ()
    h1_rank: int | None = None  # abelian-level models only
    h1_relations: tuple[tuple[int, ...], ...] = ()
    h1_tori: tuple[H1Torus, ...] = ()
    core_tori: tuple[tuple[str, str], ...] = ()  # (torus name, beta word)

    def __post_init__(self) -> None:
        if self.presentation is not None:
            n = self.presentation.n_generators
            for t in self.tori:
                for word in (t.mu, t.m, t.ell):
                    if any(g >= n for g in word.generator_ids()):
                        raise ValueError(f"torus {t.name} word outside generators")
            for s in self.surfaces:
                for word in s.loop_words + (s.mu,):
                    if any(g >= n for g in word.generator_ids()):
                        raise ValueError(f"surface {s.name} word outside generators")

    @property
    def abelian_level(self) -> bool:
        return self.presentation is None

    def torus(self, name: str) -> TrackedTorus:
        for t in self.tori:
            if t.name == name:
                return t
        raise KeyError(f"no torus named {name!r} in {self.name}")

    def surface(self, name: str) -> TrackedSurface:
        for s in self.surfaces:
            if s.name == name:
                return s
        raise KeyError(f"no surface named {name!r} in {self.name}")

    def replace_torus(self, torus: TrackedTorus) -> "ManifoldModel":
        tori = tuple(torus if t.name == torus.name else t for t in self.tori)
        return replace(self, tori=tori)

    def replace_surface(self, surface: TrackedSurface) -> "ManifoldModel":
        surfaces = tuple(
            surface if s.name == surface.name else s for s in self.surfaces
        )
        return replace(self, surfaces=surfaces)

    def is_closed(self) -> bool:
        """All tracked pieces consumed (surgered, filled, or summed)."""
        pieces: Iterable = list(self.tori) + list(self.surfaces) + list(self.h1_tori)
        return all(p.status is not PieceStatus.AVAILABLE for p in pieces)

    def b1(self) -> int | None:
        group = self.h1()
        return None if group is None else group.free_rank

    def h1(self):
        """H1 of the model, or None for purely arithmetic bookkeeping."""
        if self.presentation is not None:
            return abelianize(self.presentation)
        if self.h1_rank is None:
            return None
        from .abelian import cokernel

        return cokernel([list(r) for r in self.h1_relations], self.h1_rank)

    def logged(self, entry: LogEntry) -> "ManifoldModel":
        return replace(self, log=self.log + (entry,))

    def word(self, text: str) -> Word:
        if self.presentation is None:
            raise ValueError("abelian-level model has no word alphabet")
        return self.presentation.word(text)

    def format_word(self, w: Word) -> str:
        assert self.presentation is not None
        return self.presentation.format_word(w)
