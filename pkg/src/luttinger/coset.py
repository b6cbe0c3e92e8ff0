"""HLT-style Todd-Coxeter coset enumeration with lookahead compaction.

Certifies finite index exactly: a returned index is the true index of the
subgroup (the group order for the empty subgroup).  Budget exhaustion is
reported as Exceeded and never as a wrong answer.

The table layout and the scan/coincidence routines follow the classical
presentation of the algorithm: one row per coset, two columns per
generator (generator, inverse).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .presentations import Presentation
from .words import Word


@dataclass(frozen=True)
class CosetResult:
    index: int | None  # None means Exceeded (no conclusion)
    total_defined: int
    peak_table: int

    @property
    def exceeded(self) -> bool:
        return self.index is None


class _Budget(Exception):
    pass


class _Enumerator:
    def __init__(self, n_gens: int, max_cosets: int):
        self.ncols = 2 * n_gens
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.p: list[int] = [0]
        self.total_defined = 1
        self.peak = 1
        self.scan_cursor = 0
        self.relators: list[tuple[int, ...]] = []

    # letters use +-(gen_id+1); columns 2g for the generator, 2g+1 inverse
    @staticmethod
    def col(letter: int) -> int:
        g = abs(letter) - 1
        return 2 * g if letter > 0 else 2 * g + 1

    def rep(self, k: int) -> int:
        root = k
        p = self.p
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def _merge(self, a: int, b: int, queue: deque) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = (a, b) if a < b else (b, a)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: deque[int] = deque()
        self._merge(a, b, queue)
        table = self.table
        while queue:
            gamma = queue.popleft()
            row = table[gamma]
            for c in range(self.ncols):
                delta = row[c]
                if delta is None:
                    continue
                table[delta][c ^ 1] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                if table[mu][c] is not None:
                    self._merge(nu, table[mu][c], queue)
                elif table[nu][c ^ 1] is not None:
                    self._merge(mu, table[nu][c ^ 1], queue)
                else:
                    table[mu][c] = nu
                    table[nu][c ^ 1] = mu

    def define(self, alpha: int, c: int) -> int:
        if len(self.table) >= self.max_cosets:
            raise _Budget
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(beta)
        self.table[alpha][c] = beta
        self.table[beta][c ^ 1] = alpha
        self.total_defined += 1
        self.peak = max(self.peak, len(self.table))
        return beta

    def scan(self, alpha: int, letters: Sequence[int], fill: bool) -> None:
        if not letters:
            return
        f, i = alpha, 0
        b, j = alpha, len(letters) - 1
        table = self.table
        while True:
            while i <= j:
                nxt = table[f][self.col(letters[i])]
                if nxt is None:
                    break
                f, i = nxt, i + 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                prev = table[b][self.col(letters[j]) ^ 1]
                if prev is None:
                    break
                b, j = prev, j - 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                c = self.col(letters[i])
                table[f][c] = b
                table[b][c ^ 1] = f
                return
            if not fill:
                return
            self.define(f, self.col(letters[i]))

    def lookahead_compact(self) -> bool:
        """Deduction-only pass over all live cosets, then renumber.

        Returns True when the pass freed enough rows to keep going.
        """
        before = len(self.table)
        for alpha in range(before):
            if self.p[alpha] != alpha:
                continue
            for rel in self.relators:
                self.scan(alpha, rel, fill=False)
                if self.p[alpha] != alpha:
                    break
        # compact: renumber live cosets, dropping dead rows
        live = [a for a in range(len(self.table)) if self.p[a] == a]
        remap = {old: new for new, old in enumerate(live)}
        new_table = []
        for a in live:
            row = self.table[a]
            new_table.append(
                [remap[self.rep(v)] if v is not None else None for v in row]
            )
        cursor_live = sum(1 for a in range(self.scan_cursor) if self.p[a] == a)
        self.table = new_table
        self.p = list(range(len(new_table)))
        self.scan_cursor = cursor_live
        return len(new_table) < before * 0.9

    def run(
        self,
        relators: list[tuple[int, ...]],
        subgroup: list[tuple[int, ...]],
    ) -> CosetResult:
        self.relators = relators
        while True:
            try:
                for w in subgroup:
                    self.scan(0, w, fill=True)
                subgroup = []
                while self.scan_cursor < len(self.table):
                    alpha = self.scan_cursor
                    if self.p[alpha] == alpha:
                        for rel in relators:
                            self.scan(alpha, rel, fill=True)
                            if self.p[alpha] != alpha:
                                break
                        if self.p[alpha] == alpha:
                            row = self.table[alpha]
                            for c in range(self.ncols):
                                if row[c] is None:
                                    self.define(alpha, c)
                    self.scan_cursor = alpha + 1
                break
            except _Budget:
                if not self.lookahead_compact():
                    return CosetResult(None, self.total_defined, self.peak)
        index = sum(1 for a in range(len(self.table)) if self.p[a] == a)
        return CosetResult(index, self.total_defined, self.peak)


def todd_coxeter(
    pres: Presentation,
    subgroup_gens: Iterable[Word] = (),
    max_cosets: int = 1_000_000,
) -> CosetResult:
    """Index of the subgroup generated by subgroup_gens, or Exceeded.

    With no subgroup generators the index is the group order (enumeration
    terminates exactly when the group is finite).
    """
    sub = list(subgroup_gens)
    n = pres.n_generators
    for w in sub:
        for g in w.generator_ids():
            if g >= n:
                raise ValueError("subgroup word over unknown generators")
    if n == 0:
        return CosetResult(1, 1, 1)
    enum = _Enumerator(n, max_cosets)
    return enum.run(
        [r.letters() for r in pres.relators],
        [w.letters() for w in sub],
    )
