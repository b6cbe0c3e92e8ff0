"""Tietze simplification of finite presentations.

The basic pass eliminates generators that occur exactly once (with
exponent +-1) in some relator, substituting their definition everywhere,
deleting trivial relators, and iterating to a fixpoint or budget.
Elimination order: shortest defining relator first, then lowest
generator id, so simplification traces are reproducible.

The assisted mode additionally kills generators whose triviality can be
certified by the derivation prover: adding a derived relator is a valid
Tietze move, and it unlocks cascades that pure occurrence counting
cannot reach.  Kills are proved against the input presentation extended
by the previously derived relators (where defining relators are still
intact), and each kill carries its Derivation: the i-th derivation is
valid against the input presentation extended by the first i-1 derived
generator relators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import abelianize
from .derive import Derivation, prove_word_trivial
from .presentations import Presentation
from .words import Word, remap, substitute

_GROWTH_LIMIT = 20_000


@dataclass(frozen=True)
class SimplifyResult:
    presentation: Presentation
    original_generators: tuple[str, ...]
    images: tuple[Word, ...]  # original generator -> word over the new generators
    derived_kills: tuple[tuple[str, Derivation], ...] = ()
    passes: int = 0

    @property
    def generator_map(self) -> dict[str, Word]:
        return dict(zip(self.original_generators, self.images))


def _find_definition(
    pres: Presentation, alive: list[bool]
) -> tuple[int, int, Word] | None:
    """(relator index, generator id, definition word) for the best
    single-occurrence elimination, or None."""
    best: tuple[int, int, int, Word] | None = None  # (len, gen, rel_idx, def)
    for ridx, rel in enumerate(pres.relators):
        counts: dict[int, int] = {}
        for g, e in rel.syllables:
            counts[g] = counts.get(g, 0) + abs(e)
        for g, e in rel.syllables:
            if counts[g] == 1 and abs(e) == 1 and alive[g]:
                letters = rel.letters()
                sign = 1 if e > 0 else -1
                i = letters.index((g + 1) * sign)
                before = Word.from_letters(letters[:i])
                after = Word.from_letters(letters[i + 1 :])
                definition = (before.inverse() * after.inverse()) ** sign
                key = (len(rel), g, ridx, definition)
                if best is None or key[:2] < best[:2]:
                    best = key
    if best is None:
        return None
    return best[2], best[1], best[3]


def _eliminate(pres: Presentation, ridx: int, gen: int, definition: Word) -> Presentation:
    images = [Word.gen(i) for i in range(pres.n_generators)]
    images[gen] = definition
    new_relators = [
        substitute(r, images) for i, r in enumerate(pres.relators) if i != ridx
    ]
    return Presentation.make(pres.generators, new_relators)


def _h1_trivial_generators(pres: Presentation) -> list[int]:
    """Generators whose class dies in the abelianization (the only
    candidates for a derivation-certified kill)."""
    base = abelianize(pres)
    out = []
    for g in range(pres.n_generators):
        extended = pres.with_relators([Word.gen(g)])
        if abelianize(extended) == base:
            out.append(g)
    return out


class _Run:
    """One elimination fixpoint over a fixed generator symbol set."""

    def __init__(self, pres: Presentation, max_passes: int):
        self.current = pres
        self.alive = [True] * pres.n_generators
        self.eliminations: list[tuple[int, Word]] = []
        self.passes = 0
        self.max_passes = max_passes

    def eliminate_to_fixpoint(self) -> None:
        while self.passes < self.max_passes:
            found = _find_definition(self.current, self.alive)
            if found is None:
                return
            ridx, gen, definition = found
            candidate = _eliminate(self.current, ridx, gen, definition)
            if (
                len(definition) > 1
                and candidate.total_length() > max(4 * self.current.total_length(), 200)
                and candidate.total_length() > _GROWTH_LIMIT
            ):
                return
            self.alive[gen] = False
            self.eliminations.append((gen, definition))
            self.current = candidate
            self.passes += 1


def tietze_simplify(
    pres: Presentation,
    max_passes: int = 100,
    assisted: bool = False,
    prover_depth: int = 8,
    prover_nodes: int = 400_000,
) -> SimplifyResult:
    """Simplify, returning an isomorphic presentation plus the generator map.

    Budget exhaustion returns the best presentation reached so far.
    """
    original = pres.generators
    base = Presentation.make(pres.generators, pres.relators)
    derived: list[tuple[str, Derivation]] = []
    total_passes = 0

    run = _Run(base, max_passes)
    run.eliminate_to_fixpoint()
    total_passes += run.passes

    if assisted:
        existing = {r.letters() for r in base.relators}
        while total_passes < max_passes:
            trivial_alive = [
                g for g in _h1_trivial_generators(run.current) if run.alive[g]
            ]
            if not trivial_alive:
                break
            killed = False
            derived_syms = {sym for sym, _ in derived}
            for g in _h1_trivial_generators(base):
                sym = base.generators[g]
                if sym in derived_syms or Word.gen(g).letters() in existing:
                    continue
                derivation = prove_word_trivial(
                    base, Word.gen(g), max_depth=prover_depth, max_nodes=prover_nodes
                )
                if derivation is None:
                    continue
                derived.append((sym, derivation))
                base = base.with_relators([Word.gen(g)])
                existing.add(Word.gen(g).letters())
                run = _Run(base, max_passes - total_passes)
                run.eliminate_to_fixpoint()
                total_passes += run.passes + 1
                killed = True
                break
            if not killed:
                break

    # resolve original generators as words over the surviving generators
    resolved = [Word.gen(i) for i in range(len(original))]
    for gen, definition in reversed(run.eliminations):
        resolved[gen] = substitute(definition, resolved)
    # reindex onto the alive generators
    new_ids: dict[int, int] = {}
    symbols: list[str] = []
    for i, a in enumerate(run.alive):
        if a:
            new_ids[i] = len(symbols)
            symbols.append(original[i])
    mapping = [new_ids.get(i, -1) for i in range(len(original))]
    final = Presentation.make(symbols, [remap(r, mapping) for r in run.current.relators])
    images = tuple(remap(w, mapping) for w in resolved)
    return SimplifyResult(final, tuple(original), images, tuple(derived), total_passes)
