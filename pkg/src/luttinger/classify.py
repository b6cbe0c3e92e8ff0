"""Decision ladder turning a presentation into a replayable Certificate.

Ladder: (a) trivial and (b) finite order by coset enumeration (only
attempted when the abelianization is finite, since the enumeration can
terminate only for finite groups); (c) infinite cyclic when simplification
reaches one generator with abelianization Z; (d) free of rank n when
simplification reaches n generators and no relators; (e) free abelian or
finite abelian when every pairwise commutator of the simplified
generators carries a derivation and the abelianization matches.
Anything else is unknown.

A certificate is never inconsistent with the abelianization, and budget
exhaustion yields unknown rather than a guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import AbelianGroup, abelianize
from .coset import todd_coxeter
from .derive import prove_word_trivial
from .presentations import Presentation
from .simplify import SimplifyResult, tietze_simplify
from .words import Word, commutator


@dataclass(frozen=True)
class Budget:
    max_cosets: int = 1_000_000
    max_depth: int = 8
    max_tietze_passes: int = 100

    def __post_init__(self) -> None:
        if min(self.max_cosets, self.max_depth, self.max_tietze_passes) <= 0:
            raise ValueError("budget fields must be positive")

    @property
    def search_nodes(self) -> int:
        # derivation-search node cap scales with the depth allowance
        return min(400_000, 800 * 4 ** min(self.max_depth, 8))


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class Certificate:
    claim: str  # trivial | finite | infinite-cyclic | free-abelian | finite-abelian | free | unknown
    order: int | None = None
    rank: int | None = None
    group: AbelianGroup | None = None
    method: str | None = None  # enumeration | simplification | derivation
    budget_used: dict = field(default_factory=dict)

    def describe(self) -> str:
        if self.claim == "trivial":
            return "trivial"
        if self.claim == "finite":
            return f"finite-of-order-{self.order}"
        if self.claim == "infinite-cyclic":
            return "infinite-cyclic (Z)"
        if self.claim == "free-abelian":
            return f"free-abelian-rank-{self.rank}"
        if self.claim == "finite-abelian":
            return f"finite-abelian {self.group}"
        if self.claim == "free":
            return f"free-rank-{self.rank}"
        return "unknown"

    def matches(self, kind: str, **expected) -> bool:
        """Assertion matching; rank-1 free / free-abelian / Z coincide."""
        rank = expected.get("rank")
        if kind == "infinite-cyclic" or (
            kind in ("free", "free-abelian") and rank == 1
        ):
            return self.claim == "infinite-cyclic" or (
                self.claim in ("free", "free-abelian") and self.rank == 1
            )
        if kind == "trivial":
            return self.claim == "trivial"
        if kind == "finite":
            return self.claim in ("finite", "finite-abelian") and (
                self.order == expected.get("order")
            )
        if kind == "free":
            return self.claim == "free" and self.rank == rank
        if kind == "free-abelian":
            return self.claim == "free-abelian" and self.rank == rank
        if kind == "finite-abelian":
            return self.claim == "finite-abelian" and self.group == expected.get(
                "group"
            )
        raise ValueError(f"unknown certificate kind {kind!r}")


@dataclass(frozen=True)
class Classification:
    certificate: Certificate
    abelianization: AbelianGroup
    simplified: SimplifyResult | None

    @property
    def claim(self) -> str:
        return self.certificate.claim


def classify(pres: Presentation, budget: Budget = DEFAULT_BUDGET) -> Classification:
    ab = abelianize(pres)
    used: dict = {}

    if ab.is_finite():
        result = todd_coxeter(pres, (), max_cosets=budget.max_cosets)
        used["cosets_defined"] = result.total_defined
        used["cosets_peak"] = result.peak_table
        if result.index is not None:
            order = result.index
            ab_order = ab.order()
            assert ab_order is not None and order % ab_order == 0
            if order == 1:
                cert = Certificate("trivial", order=1, method="enumeration", budget_used=used)
                return Classification(cert, ab, None)
            if order == ab_order:
                # equal orders force the abelianization map to be injective
                cert = Certificate(
                    "finite-abelian", order=order, group=ab,
                    method="enumeration", budget_used=used,
                )
                return Classification(cert, ab, None)
            cert = Certificate("finite", order=order, method="enumeration", budget_used=used)
            return Classification(cert, ab, None)

    simp = tietze_simplify(
        pres,
        max_passes=budget.max_tietze_passes,
        assisted=True,
        prover_depth=budget.max_depth,
        prover_nodes=budget.search_nodes,
    )
    used["tietze_passes"] = simp.passes
    p = simp.presentation

    if p.n_generators == 0:
        assert ab.is_trivial()
        cert = Certificate("trivial", order=1, method="simplification", budget_used=used)
        return Classification(cert, ab, simp)
    if p.n_generators == 1 and ab == AbelianGroup(1):
        cert = Certificate(
            "infinite-cyclic", rank=1, method="simplification", budget_used=used
        )
        return Classification(cert, ab, simp)
    if not p.relators:
        cert = Certificate(
            "free", rank=p.n_generators, method="simplification", budget_used=used
        )
        return Classification(cert, ab, simp)

    commutators_proved = 0
    all_proved = True
    for i in range(p.n_generators):
        for j in range(i + 1, p.n_generators):
            w = commutator(Word.gen(i), Word.gen(j))
            derivation = prove_word_trivial(
                p, w, max_depth=budget.max_depth, max_nodes=budget.search_nodes
            )
            if derivation is None:
                all_proved = False
                break
            commutators_proved += 1
        if not all_proved:
            break
    used["commutators_proved"] = commutators_proved
    if all_proved:
        # every pair of generators commutes, so the group is its abelianization
        if not ab.torsion:
            cert = Certificate(
                "free-abelian", rank=ab.free_rank, group=ab,
                method="derivation", budget_used=used,
            )
            return Classification(cert, ab, simp)
        if ab.is_finite():
            cert = Certificate(
                "finite-abelian", order=ab.order(), group=ab,
                method="derivation", budget_used=used,
            )
            return Classification(cert, ab, simp)
        # mixed free/torsion abelian groups fall outside the claim set

    cert = Certificate("unknown", budget_used=used)
    return Classification(cert, ab, simp)
