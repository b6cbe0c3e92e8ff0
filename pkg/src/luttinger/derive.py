"""Bounded search for explicit derivations of trivial words.

A derivation expresses the queried word as a product of conjugated
relators; expanding the product and freely reducing recovers the word
exactly, so a derivation is checkable with reduce alone.

Search, in two stages:

1. definition expansion: when a relator mentions a generator exactly
   once, it defines that generator, and substituting the definition into
   the query is itself a (rotation-conjugated) relator application.  The
   expansion stage enumerates bounded chains of such substitutions.
2. core search: breadth-first over single-relator insertions at any
   position, freely reducing after each insertion.  Only insertions that
   cancel at a junction are expanded, layers are beam-limited by word
   length, and words beyond a length cap are dropped.

Exhausting depth, nodes, or beam yields "unknown", never a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentations import Presentation
from .words import Word

Letters = tuple[int, ...]


@dataclass(frozen=True)
class DerivationStep:
    conjugator: Word
    relator_index: int
    exponent: int  # +1 or -1


@dataclass(frozen=True)
class Derivation:
    steps: tuple[DerivationStep, ...]

    @property
    def depth(self) -> int:
        return len(self.steps)

    def expand(self, pres: Presentation) -> Word:
        out = Word()
        for step in self.steps:
            rel = pres.relators[step.relator_index] ** step.exponent
            out = out * rel.conjugate_by(step.conjugator)
        return out

    def verify(self, pres: Presentation, w: Word) -> bool:
        return self.expand(pres) == w  # words are always freely reduced


@dataclass
class SearchStats:
    nodes: int = 0
    depth_reached: int = 0
    truncated: bool = False


def _reduce(letters) -> Letters:
    out: list[int] = []
    for v in letters:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    return tuple(out)


def _splice(u: Letters, pos: int, rel: Letters) -> Letters:
    out = list(u[:pos])
    for v in rel:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    for v in u[pos:]:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    return tuple(out)


class _Prover:
    def __init__(
        self,
        pres: Presentation,
        max_depth: int,
        beam_width: int,
        max_nodes: int,
        stats: SearchStats,
    ):
        self.pres = pres
        self.max_depth = max_depth
        self.beam_width = beam_width
        self.max_nodes = max_nodes
        self.stats = stats
        self.signed: list[tuple[int, int, Letters]] = []
        for idx, rel in enumerate(pres.relators):
            letters = rel.letters()
            self.signed.append((idx, 1, letters))
            self.signed.append((idx, -1, tuple(-v for v in reversed(letters))))
        self.max_rel = max((len(r.letters()) for r in pres.relators), default=0)
        # gen -> (relator index, relator letters, occurrence position)
        self.definitions: dict[int, tuple[int, Letters, int]] = {}
        for idx, rel in enumerate(pres.relators):
            letters = rel.letters()
            counts: dict[int, int] = {}
            for v in letters:
                counts[abs(v)] = counts.get(abs(v), 0) + 1
            for k, v in enumerate(letters):
                g = abs(v)
                if counts[g] == 1 and g - 1 not in self.definitions:
                    self.definitions[g - 1] = (idx, letters, k)

    def substitute_once(
        self, u: Letters, gen: int
    ) -> tuple[Letters, list[DerivationStep]] | None:
        """Replace every occurrence of gen in u via its defining relator.

        Each single-occurrence replacement is one conjugated application
        of the defining relator: for r = A g^s B, the factor is
        (u1 * A^-1) r (u1 * A^-1)^-1 and it rewrites g^s into A^-1 B^-1.
        """
        if gen not in self.definitions:
            return None
        idx, rel_letters, k = self.definitions[gen]
        steps: list[DerivationStep] = []
        current = u
        for _ in range(len(u)):
            pos = next(
                (i for i, v in enumerate(current) if abs(v) - 1 == gen), None
            )
            if pos is None:
                break
            occurrence = current[pos]
            if occurrence == rel_letters[k]:
                exp, L, j = 1, rel_letters, k
            else:
                L = tuple(-v for v in reversed(rel_letters))
                j = len(L) - 1 - k
                exp = -1
            alpha, beta = L[:j], L[j + 1 :]
            replacement = tuple(-v for v in reversed(alpha)) + tuple(
                -v for v in reversed(beta)
            )
            conj = Word.from_letters(
                _reduce(current[:pos] + tuple(-v for v in reversed(alpha)))
            )
            steps.append(DerivationStep(conj, idx, exp))
            current = _reduce(current[:pos] + replacement + current[pos + 1 :])
        return current, steps

    def core_search(
        self, start: Letters, depth_budget: int, parents_hint: int = 0
    ) -> list[tuple[Letters, int, int, int]] | None:
        """BFS over cancelling insertions; returns the move chain or None."""
        if not start:
            return []
        if depth_budget <= 0 or not self.signed:
            return None
        length_cap = max(len(start) + 3 * self.max_rel, 20)
        parent: dict[Letters, tuple[Letters, int, int, int] | None] = {start: None}
        frontier = [start]
        for _ in range(depth_budget):
            nxt: list[Letters] = []
            for u in frontier:
                n = len(u)
                for idx, sign, rel in self.signed:
                    first, last = rel[0], rel[-1]
                    positions = set()
                    for i, v in enumerate(u):
                        if v == -last:
                            positions.add(i)
                        if v == -first:
                            positions.add(i + 1)
                    for pos in positions:
                        v2 = _splice(u, pos, rel)
                        if len(v2) >= n + len(rel) or len(v2) > length_cap:
                            continue
                        if v2 in parent:
                            continue
                        parent[v2] = (u, pos, idx, sign)
                        self.stats.nodes += 1
                        if not v2:
                            chain: list[tuple[Letters, int, int, int]] = []
                            cur: Letters = v2
                            while parent[cur] is not None:
                                prev, p, i2, s2 = parent[cur]  # type: ignore[misc]
                                chain.append((prev, p, i2, s2))
                                cur = prev
                            chain.reverse()
                            return chain
                        nxt.append(v2)
                if self.stats.nodes > self.max_nodes:
                    self.stats.truncated = True
                    return None
            if not nxt:
                return None
            if len(nxt) > self.beam_width:
                nxt.sort(key=len)
                del nxt[self.beam_width :]
                self.stats.truncated = True
            frontier = nxt
        return None


def prove_word_trivial(
    pres: Presentation,
    w: Word,
    max_depth: int = 8,
    beam_width: int = 8192,
    max_nodes: int = 400_000,
    stats: SearchStats | None = None,
) -> Derivation | None:
    """Derivation of w as a product of conjugated relators, or None.

    None means unknown (budget exhausted or depth bound hit), never that
    w is nontrivial.
    """
    target = w.letters()
    if not target:
        return Derivation(())
    if not pres.relators:
        return None
    local = stats if stats is not None else SearchStats()
    prover = _Prover(pres, max_depth, beam_width, max_nodes, local)

    # expansion states: (cost, word, substituted-gens, accumulated steps)
    states: list[tuple[int, Letters, frozenset[int], list[DerivationStep]]] = [
        (0, target, frozenset(), [])
    ]
    seen = {target}
    cursor = 0
    while cursor < len(states) and len(states) < 48:
        cost, word, used, steps = states[cursor]
        cursor += 1
        for gen in sorted({abs(v) - 1 for v in word}):
            if gen in used or gen not in prover.definitions:
                continue
            occurrences = sum(1 for v in word if abs(v) - 1 == gen)
            if cost + occurrences >= max_depth:
                continue
            result = prover.substitute_once(word, gen)
            if result is None:
                continue
            expanded, sub_steps = result
            if expanded in seen or len(expanded) > len(target) + 4 * prover.max_rel:
                continue
            seen.add(expanded)
            if not expanded:
                return Derivation(tuple(steps + sub_steps))
            states.append((cost + occurrences, expanded, used | {gen}, steps + sub_steps))

    states.sort(key=lambda s: (s[0], len(s[1])))
    remaining = max_nodes
    allowance = max(max_nodes // max(len(states), 1), min(20_000, max_nodes))
    for cost, word, _, steps in states:
        if remaining <= 0:
            local.truncated = True
            break
        before = local.nodes
        prover.max_nodes = before + min(allowance, remaining)
        chain = prover.core_search(word, max_depth - cost)
        remaining -= local.nodes - before
        if chain is None:
            continue
        core_steps = tuple(
            DerivationStep(Word.from_letters(prev[:pos]), idx, -sign)
            for prev, pos, idx, sign in chain
        )
        local.depth_reached = max(local.depth_reached, cost + len(core_steps))
        return Derivation(tuple(steps) + core_steps)
    return None
