"""Declarative, replayable constructions with certified assertions.

A recipe expands its parameters into a step list, the runner executes
the steps through the calculus operations, and every assertion is
evaluated to pass, fail, or unknown; unknown is never reported as pass.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

from .abelian import AbelianGroup, cokernel
from .blocks import (
    BLOCK_IDS,
    make_block,
    mapping_torus_block,
    standard_gluings,
    sym2_block,
    twist_monodromy,
)
from .calculus import (
    CharacteristicReport,
    SurgerySpec,
    blow_up,
    certify_trivial_complement,
    characteristic_report,
    fill_all,
    fill_surface,
    fill_torus,
    sum_genus2_amalgam,
    sum_genus2_quotient,
    sum_torus,
    torus_surgery,
)
from .classify import Budget, Classification, DEFAULT_BUDGET, classify
from .derive import prove_word_trivial
from .models import (
    Exactness,
    GluingMap,
    LogEntry,
    ManifoldModel,
    PieceStatus,
)
from .presentations import Presentation
from .words import Word, parse_word

TORUS_SLOTS = ("m", "l")


def torus_slot_map(name: str, image_m: str, image_l: str) -> GluingMap:
    images = (parse_word(image_m, TORUS_SLOTS), parse_word(image_l, TORUS_SLOTS))
    matrix = tuple(tuple(img.exponent_sums(2)) for img in images)
    return GluingMap(name, images, matrix, kind="slot")


# ---------------------------------------------------------------------------
# steps


@dataclass(frozen=True)
class BlockStep:
    block: str
    var: str


@dataclass(frozen=True)
class MappingTorusStep:
    var: str
    genus: int | str
    monodromy: str = "twist"


@dataclass(frozen=True)
class Sym2Step:
    var: str
    genus: int | str


@dataclass(frozen=True)
class Sum2Step:
    avar: str
    asurf: str
    bvar: str
    bsurf: str
    gluing: str | GluingMap
    quotient: bool = False
    parallel: bool = False


@dataclass(frozen=True)
class SumTStep:
    lvar: str
    ltorus: str
    rvar: str
    rtorus: str
    gluing: GluingMap


@dataclass(frozen=True)
class SurgeryStep:
    var: str
    torus: str
    p: int | str
    q: int | str
    a: int | str = 1
    b: int | str = 0


@dataclass(frozen=True)
class FillStep:
    var: str
    piece: str  # surface or torus name, or "*" for everything available


@dataclass(frozen=True)
class BlowupStep:
    var: str
    on: str | None = None


@dataclass(frozen=True)
class CertifyStep:
    var: str
    surface: str


@dataclass(frozen=True)
class ArithStep:
    label: str
    e_delta: Callable[[dict], int]
    sigma_delta: Callable[[dict], int]


@dataclass(frozen=True)
class H1SumStep:
    var: str
    torus: str
    rows: Callable[[dict, ManifoldModel], list[tuple[int, ...]]]
    e_delta: int
    sigma_delta: int
    label: str


Step = (
    BlockStep | MappingTorusStep | Sym2Step | Sum2Step | SumTStep
    | SurgeryStep | FillStep | BlowupStep | CertifyStep | ArithStep | H1SumStep
)


# ---------------------------------------------------------------------------
# assertions


@dataclass(frozen=True)
class Assertion:
    kind: str  # pi1_certificate | h1_equals | e_sigma_equals | freedman_equals
    #           | word_trivial | arithmetic_identity
    payload: object
    label: str = ""
    required_exactness: str = "upper_bound_ok"  # or "exact"


@dataclass(frozen=True)
class AssertionOutcome:
    kind: str
    label: str
    expected: str
    outcome: str  # pass | fail | unknown
    method: str = ""
    details: str = ""
    budget_used: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class Recipe:
    name: str
    params: dict
    expand: Callable[[dict], list[Step]]
    assertions: Callable[[dict], list[Assertion]]
    validate: Callable[[dict], None] | None = None
    doc: str = ""


@dataclass(frozen=True)
class RunReport:
    recipe: str
    params: dict
    model: ManifoldModel
    report: CharacteristicReport
    certificate_summary: str
    assertions: tuple[AssertionOutcome, ...]
    budget_counters: dict
    wall_time: float

    @property
    def passed(self) -> bool:
        return all(a.outcome == "pass" for a in self.assertions)

    @property
    def has_unknown(self) -> bool:
        return any(a.outcome == "unknown" for a in self.assertions)

    @property
    def has_failure(self) -> bool:
        return any(a.outcome == "fail" for a in self.assertions)


class RecipeError(ValueError):
    pass


def _resolve(value: int | str, params: dict) -> int:
    if isinstance(value, int):
        return value
    text = value.strip()
    negate = text.startswith("-")
    if negate:
        text = text[1:]
    if text not in params:
        raise RecipeError(f"unknown parameter {text!r}")
    out = int(params[text])
    return -out if negate else out


def _apply_step(step: Step, env: dict, params: dict, budget: Budget) -> str:
    """Apply one step to the environment; returns the bound variable."""
    gluings = standard_gluings()
    if isinstance(step, BlockStep):
        env[step.var] = named_block(step.block, budget)
        return step.var
    if isinstance(step, MappingTorusStep):
        genus = _resolve(step.genus, params)
        if step.monodromy != "twist":
            raise RecipeError(f"unknown monodromy {step.monodromy!r}")
        env[step.var] = mapping_torus_block(genus, twist_monodromy(genus))
        return step.var
    if isinstance(step, Sym2Step):
        env[step.var] = sym2_block(_resolve(step.genus, params))
        return step.var
    if isinstance(step, Sum2Step):
        a, b = env[step.avar], env[step.bvar]
        if isinstance(step.gluing, GluingMap):
            phi = step.gluing
        elif isinstance(step.gluing, tuple):  # ("inline", word texts)
            phi = _inline_gluing(step.gluing[1], b, step.bsurf)
        else:
            phi = gluings[step.gluing]
        if step.quotient:
            env[step.bvar] = sum_genus2_quotient(
                a, step.asurf, b, step.bsurf, phi, parallel=step.parallel
            )
        else:
            env[step.bvar] = sum_genus2_amalgam(a, step.asurf, b, step.bsurf, phi)
        return step.bvar
    if isinstance(step, SumTStep):
        left, right = env[step.lvar], env[step.rvar]
        env[step.lvar] = sum_torus(left, step.ltorus, right, step.rtorus, step.gluing)
        return step.lvar
    if isinstance(step, SurgeryStep):
        spec = SurgerySpec(
            step.torus,
            _resolve(step.p, params),
            _resolve(step.q, params),
            _resolve(step.a, params),
            _resolve(step.b, params),
        )
        env[step.var] = torus_surgery(env[step.var], spec)
        return step.var
    if isinstance(step, FillStep):
        model = env[step.var]
        if step.piece == "*":
            env[step.var] = fill_all(model)
        else:
            try:
                model.surface(step.piece)
                env[step.var] = fill_surface(model, step.piece)
            except KeyError:
                env[step.var] = fill_torus(model, step.piece)
        return step.var
    if isinstance(step, BlowupStep):
        env[step.var] = blow_up(env[step.var], step.on)
        return step.var
    if isinstance(step, CertifyStep):
        env[step.var] = certify_trivial_complement(env[step.var], step.surface, budget)
        return step.var
    if isinstance(step, ArithStep):
        model = env.get("@arith") or ManifoldModel("arithmetic", presentation=None)
        out = replace(
            model,
            e=model.e + step.e_delta(params),
            sigma=model.sigma + step.sigma_delta(params),
        )
        env["@arith"] = out.logged(
            LogEntry(
                "arith",
                step.label,
                e_delta=step.e_delta(params),
                sigma_delta=step.sigma_delta(params),
            )
        )
        return "@arith"
    if isinstance(step, H1SumStep):
        model = env[step.var]
        torus = next(t for t in model.h1_tori if t.name == step.torus)
        if torus.status is not PieceStatus.AVAILABLE:
            raise RecipeError(f"homology torus {step.torus} already consumed")
        rows = step.rows(params, model)
        tori = tuple(
            replace(t, status=PieceStatus.SUMMED) if t.name == step.torus else t
            for t in model.h1_tori
        )
        out = replace(
            model,
            h1_relations=model.h1_relations + tuple(tuple(r) for r in rows),
            h1_tori=tori,
            e=model.e + step.e_delta,
            sigma=model.sigma + step.sigma_delta,
        )
        env[step.var] = out.logged(
            LogEntry(
                "h1_sum",
                step.label,
                e_delta=step.e_delta,
                sigma_delta=step.sigma_delta,
                b1_before=model.b1(),
                b1_after=out.b1(),
            )
        )
        return step.var
    raise RecipeError(f"unknown step {step!r}")


def _inline_gluing(texts: tuple[str, ...], target: ManifoldModel, surf: str) -> GluingMap:
    """Direct gluing map from user-supplied words over the target's
    generators.  The unimodularity check runs when the target surface
    loops are distinct single generators; otherwise the map is trusted."""
    assert target.presentation is not None
    images = tuple(target.word(t) for t in texts)
    loops = target.surface(surf).loop_words
    columns = []
    single = True
    for loop in loops:
        if len(loop) == 1 and loop.syllables[0][1] in (1, -1):
            columns.append(loop.syllables[0])
        else:
            single = False
            break
    if single and len({g for g, _ in columns}) == len(columns):
        n = target.presentation.n_generators
        matrix = []
        for img in images:
            sums = img.exponent_sums(n)
            matrix.append(tuple(sums[g] * e for g, e in columns))
        return GluingMap("inline", images, tuple(matrix), kind="direct")
    identity = tuple(
        tuple(1 if i == j else 0 for j in range(len(images)))
        for i in range(len(images))
    )
    return GluingMap("inline", images, identity, kind="direct")


def refined_presentation(model: ManifoldModel, classification: Classification) -> Presentation:
    """Model presentation extended by the classifier's certified kills."""
    pres = model.presentation
    assert pres is not None
    if classification.simplified is None:
        return pres
    extra = []
    for sym, _ in classification.simplified.derived_kills:
        extra.append(Word.gen(pres.generators.index(sym)))
    return pres.with_relators(extra)


def run_recipe(
    recipe: Recipe, budget: Budget = DEFAULT_BUDGET, params: dict | None = None
) -> RunReport:
    started = time.perf_counter()
    values = dict(recipe.params)
    for key, value in (params or {}).items():
        if key not in values:
            raise RecipeError(f"recipe {recipe.name} has no parameter {key!r}")
        values[key] = int(value)
    if recipe.validate is not None:
        recipe.validate(values)

    env: dict[str, ManifoldModel] = {}
    last = ""
    for step in recipe.expand(values):
        last = _apply_step(step, env, values, budget)
    model = env[last]

    classification: Classification | None = None
    counters: dict = {}

    def classified() -> Classification:
        nonlocal classification
        if classification is None:
            assert model.presentation is not None
            classification = classify(model.presentation, budget)
            counters.update(classification.certificate.budget_used)
        return classification

    outcomes = []
    needs_cert = any(
        a.kind in ("pi1_certificate", "freedman_equals")
        for a in recipe.assertions(values)
    ) and model.presentation is not None
    cert = classified().certificate if needs_cert else None
    report = characteristic_report(
        model, budget, certificate=cert, compute_certificate=needs_cert
    )

    for assertion in recipe.assertions(values):
        outcomes.append(_evaluate(assertion, model, report, values, budget, classified))

    summary = cert.describe() if cert is not None else "not computed"
    wall = time.perf_counter() - started
    return RunReport(
        recipe=recipe.name,
        params=values,
        model=model,
        report=report,
        certificate_summary=summary,
        assertions=tuple(outcomes),
        budget_counters=counters,
        wall_time=wall,
    )


def _evaluate(
    assertion: Assertion,
    model: ManifoldModel,
    report: CharacteristicReport,
    params: dict,
    budget: Budget,
    classified: Callable[[], Classification],
) -> AssertionOutcome:
    kind = assertion.kind
    if kind == "pi1_certificate":
        expected_kind, expected_args = assertion.payload(params)
        cert = classified().certificate
        expected_text = expected_kind + (
            f" {expected_args}" if expected_args else ""
        )
        if assertion.required_exactness == "exact" and model.exactness is not Exactness.EXACT:
            return AssertionOutcome(
                kind, assertion.label, expected_text, "unknown",
                details="model is an upper bound; exact certification unavailable",
            )
        used = tuple(sorted(cert.budget_used.items()))
        if cert.claim == "unknown":
            return AssertionOutcome(
                kind, assertion.label, expected_text, "unknown",
                cert.method or "", budget_used=used,
            )
        ok = cert.matches(expected_kind, **expected_args)
        return AssertionOutcome(
            kind, assertion.label, expected_text,
            "pass" if ok else "fail", cert.method or "", cert.describe(),
            budget_used=used,
        )
    if kind == "h1_equals":
        expected = assertion.payload(params)
        actual = model.h1()
        ok = actual == expected
        return AssertionOutcome(
            kind, assertion.label, str(expected),
            "pass" if ok else "fail", "abelianization", str(actual),
        )
    if kind == "e_sigma_equals":
        e, sigma = assertion.payload(params)
        ok = (model.e, model.sigma) == (e, sigma)
        return AssertionOutcome(
            kind, assertion.label, f"e={e}, sigma={sigma}",
            "pass" if ok else "fail", "bookkeeping", f"e={model.e}, sigma={model.sigma}",
        )
    if kind == "freedman_equals":
        expected = assertion.payload(params)
        if report.freedman is None:
            return AssertionOutcome(
                kind, assertion.label, str(expected), "unknown",
                details="no trivial certificate with odd form",
            )
        ok = report.freedman == expected
        return AssertionOutcome(
            kind, assertion.label, str(expected),
            "pass" if ok else "fail", "freedman", str(report.freedman),
        )
    if kind == "word_trivial":
        from .derive import SearchStats
        from .words import substitute

        word = assertion.payload(model)
        classification = classified()
        cert = classification.certificate
        if cert.claim == "trivial":
            return AssertionOutcome(
                kind, assertion.label, "1", "pass", cert.method or "",
                "group certified trivial",
            )
        stats = SearchStats()
        if classification.simplified is not None:
            # push through the certified generator map; an identity image
            # is a proof, a short image is an easier derivation target
            simp = classification.simplified
            image = substitute(word, simp.images)
            if image.is_identity():
                return AssertionOutcome(
                    kind, assertion.label, "1", "pass", "simplification",
                    "image under the generator map is the identity",
                )
            derivation = prove_word_trivial(
                simp.presentation, image, max_depth=budget.max_depth,
                max_nodes=budget.search_nodes, stats=stats,
            )
            if derivation is not None and derivation.verify(simp.presentation, image):
                return AssertionOutcome(
                    kind, assertion.label, "1", "pass", "derivation",
                    f"depth {derivation.depth} after simplification",
                    budget_used=(("search_nodes", stats.nodes),),
                )
        pres = refined_presentation(model, classification)
        derivation = prove_word_trivial(
            pres, word, max_depth=budget.max_depth,
            max_nodes=budget.search_nodes, stats=stats,
        )
        used = (("search_nodes", stats.nodes),)
        if derivation is None:
            return AssertionOutcome(
                kind, assertion.label, "1", "unknown", "derivation", budget_used=used
            )
        ok = derivation.verify(pres, word)
        return AssertionOutcome(
            kind, assertion.label, "1",
            "pass" if ok else "fail", "derivation", f"depth {derivation.depth}",
            budget_used=used,
        )
    if kind == "arithmetic_identity":
        lhs, rhs = assertion.payload(params)
        return AssertionOutcome(
            kind, assertion.label, str(rhs),
            "pass" if lhs == rhs else "fail", "arithmetic", str(lhs),
        )
    raise RecipeError(f"unknown assertion kind {kind!r}")


# ---------------------------------------------------------------------------
# derived blocks


_derived_cache: dict[str, ManifoldModel] = {}


def named_block(name: str, budget: Budget = DEFAULT_BUDGET) -> ManifoldModel:
    """Catalog blocks plus the derived blocks X, X1, and B."""
    if name in BLOCK_IDS:
        return make_block(name)
    builders = {"X": _build_x, "X1": _build_x1, "B": _build_b}
    if name in builders:
        if name not in _derived_cache:
            _derived_cache[name] = builders[name](budget)
        return _derived_cache[name]
    raise KeyError(f"unknown block id {name!r}")


def _cool_surgeries(count: int = 6) -> list[SurgeryStep]:
    steps = [
        SurgeryStep("z", "T1'", 1, 1, 1, 0),
        SurgeryStep("z", "T1", -1, 1, 1, 0),
        SurgeryStep("z", "T2", -1, 1, 0, 1),
        SurgeryStep("z", "T2'", 1, 1, 0, 1),
        SurgeryStep("z", "T3", -1, 1, 0, 1),
        SurgeryStep("z", "T4", -1, 1, 1, 0),
    ]
    return steps[:count]


def _build_x(budget: Budget) -> ManifoldModel:
    """The main simply connected block: all six surgeries, surface open,
    complement certified trivial."""
    env: dict[str, ManifoldModel] = {"z": make_block("Z")}
    for step in _cool_surgeries():
        _apply_step(step, env, {}, budget)
    model = certify_trivial_complement(env["z"], "F", budget)
    return replace(model, name="X")


def _build_x1(budget: Budget) -> ManifoldModel:
    """Infinite cyclic block: five surgeries, surface filled, torus kept.

    The torus complement data is marked exact, an assumption inherited
    from the construction rather than re-proved here.
    """
    env: dict[str, ManifoldModel] = {"z": make_block("Z")}
    for step in _cool_surgeries(5):
        _apply_step(step, env, {}, budget)
    model = fill_surface(env["z"], "F")
    torus = replace(model.torus("T4"), name="T", complement_exact=True)
    tori = tuple(torus if t.name == "T4" else t for t in model.tori)
    return replace(model, name="X1", tori=tori)


def _build_b(budget: Budget) -> ManifoldModel:
    """Two-torus block: sum of the certified block with the product block,
    then two more surgeries; tori kept with exact complement data."""
    x = _build_x(budget)
    m = make_block("M")
    a = sum_genus2_quotient(x, "F", m, "F", standard_gluings()["identity4"], name="A")
    a = torus_surgery(a, SurgerySpec("T1", -1, 1, 1, 0))
    a = torus_surgery(a, SurgerySpec("T2", -1, 1, 1, 0))
    tori = tuple(
        replace(t, complement_exact=True) if t.name in ("T3", "T4") else t
        for t in a.tori
    )
    return replace(a, name="B", tori=tori)


# ---------------------------------------------------------------------------
# builtin catalog


def _static(steps: list[Step]) -> Callable[[dict], list[Step]]:
    return lambda params: list(steps)


def _pi1(kind: str, **args) -> Callable[[dict], tuple[str, dict]]:
    return lambda params: (kind, {k: (v(params) if callable(v) else v) for k, v in args.items()})


def _canonical_abelian(values: Iterable[int]) -> AbelianGroup:
    rows = []
    values = list(values)
    n = len(values)
    for i, d in enumerate(values):
        row = [0] * n
        row[i] = d
        rows.append(row)
    return cokernel(rows, n)


def builtin_recipes() -> dict[str, Recipe]:
    maps = standard_gluings()
    recipes: dict[str, Recipe] = {}

    def add(recipe: Recipe) -> None:
        recipes[recipe.name] = recipe

    # -- simply connected family ------------------------------------------
    add(Recipe(
        "seven",
        {},
        _static([
            BlockStep("W1", "w1"),
            BlockStep("W2", "z"),
            Sum2Step("w1", "F1", "z", "F2", "identity4", quotient=True),
            SurgeryStep("z", "T1'", -1, 1, 1, 0),
            SurgeryStep("z", "T2'", -1, 1, 1, 0),
            FillStep("z", "*"),
        ]),
        lambda p: [
            Assertion("pi1_certificate", _pi1("trivial"), "simply connected"),
            Assertion("e_sigma_equals", lambda q: (10, -6), "e=10, sigma=-6"),
            Assertion("freedman_equals", lambda q: (1, 7), "CP2 # 7CP2bar"),
        ],
        doc="two Luttinger surgeries on the sum of the two blown up blocks",
    ))

    add(Recipe(
        "five",
        {},
        _static([
            BlockStep("W1", "w1"),
            BlockStep("M", "z"),
            Sum2Step("w1", "F1", "z", "F", "theorem-five", quotient=True),
            SurgeryStep("z", "T1", -1, 1, 1, 0),
            SurgeryStep("z", "T2", -1, 1, 0, 1),
            SurgeryStep("z", "T3", -1, 1, 0, 1),
            SurgeryStep("z", "T4", -1, 1, 1, 0),
            FillStep("z", "*"),
        ]),
        lambda p: [
            Assertion("pi1_certificate", _pi1("trivial"), "simply connected"),
            Assertion("e_sigma_equals", lambda q: (8, -4), "e=8, sigma=-4"),
            Assertion("freedman_equals", lambda q: (1, 5), "CP2 # 5CP2bar"),
        ],
        doc="four surgeries on the sum with the product block",
    ))

    add(Recipe(
        "cool",
        {},
        _static([BlockStep("Z", "z")] + _cool_surgeries() + [FillStep("z", "*")]),
        lambda p: [
            Assertion("pi1_certificate", _pi1("trivial"), "simply connected"),
            Assertion("e_sigma_equals", lambda q: (6, -2), "e=6, sigma=-2"),
            Assertion("freedman_equals", lambda q: (1, 3), "CP2 # 3CP2bar"),
        ],
        doc="six surgeries on the six-torus block",
    ))

    add(Recipe(
        "Yfamily",
        {"n": 2},
        lambda p: [BlockStep("Z", "z")] + _cool_surgeries(5) + [
            SurgeryStep("z", "T4", "-n", 1, 1, 0),
            FillStep("z", "*"),
        ],
        lambda p: [
            Assertion("pi1_certificate", _pi1("trivial"), "simply connected"),
            Assertion("e_sigma_equals", lambda q: (6, -2), "e=6, sigma=-2"),
            Assertion("freedman_equals", lambda q: (1, 3), "CP2 # 3CP2bar"),
        ],
        doc="the surgered family: -n/1 on the last torus",
    ))

    add(Recipe(
        "ZZ",
        {},
        _static([BlockStep("Z", "z")] + _cool_surgeries(5) + [FillStep("z", "F")]),
        lambda p: [
            Assertion("pi1_certificate", _pi1("infinite-cyclic"), "pi1 = Z"),
            Assertion("e_sigma_equals", lambda q: (6, -2), "e=6, sigma=-2"),
            Assertion(
                "word_trivial", lambda m: m.torus("T4").ell,
                "l4 = a2 dies (torus kills one generator)",
            ),
        ],
        doc="five surgeries leave an infinite cyclic group on the open torus",
    ))

    add(Recipe(
        "B1",
        {},
        _static([
            BlockStep("Z", "z"),
            SurgeryStep("z", "T1'", 1, 1, 1, 0),
            SurgeryStep("z", "T1", -1, 1, 1, 0),
            SurgeryStep("z", "T2", -1, 1, 0, 1),
            SurgeryStep("z", "T2'", 1, 1, 0, 1),
            FillStep("z", "F"),
            FillStep("z", "T3"),
            FillStep("z", "T4"),
        ]),
        lambda p: [
            Assertion("pi1_certificate", _pi1("free-abelian", rank=2), "pi1 = Z^2"),
            Assertion("e_sigma_equals", lambda q: (6, -2), "e=6, sigma=-2"),
            Assertion("word_trivial", lambda m: m.torus("T3").mu, "mu3 = 1"),
            Assertion("word_trivial", lambda m: m.torus("T3").m, "m3 = 1"),
            Assertion(
                "word_trivial",
                lambda m: m.torus("T3").ell * m.word("a2").inverse(),
                "l3 = t2",
            ),
            Assertion("word_trivial", lambda m: m.torus("T4").mu, "mu4 = 1"),
            Assertion(
                "word_trivial",
                lambda m: m.torus("T4").m * m.word("y").inverse(),
                "m4 = t1",
            ),
            Assertion(
                "word_trivial",
                lambda m: m.torus("T4").ell * m.word("a2").inverse(),
                "l4 = t2",
            ),
        ],
        doc="four surgeries; push-offs land on the rank two lattice",
    ))

    add(Recipe(
        "10baby",
        {},
        _static([
            BlockStep("Z", "z"),
            *_cool_surgeries(),
            CertifyStep("z", "F"),
            BlockStep("M", "m"),
            Sum2Step("z", "F", "m", "F", "identity4", quotient=True),
            SurgeryStep("m", "T1", -1, 1, 1, 0),
            SurgeryStep("m", "T2", -1, 1, 1, 0),
            FillStep("m", "*"),
        ]),
        lambda p: [
            Assertion("pi1_certificate", _pi1("trivial"), "simply connected"),
            Assertion("e_sigma_equals", lambda q: (10, -2), "e=10, sigma=-2"),
            Assertion("freedman_equals", lambda q: (3, 5), "3CP2 # 5CP2bar"),
        ],
        doc="sum with the product block and two more surgeries",
    ))

    # -- stabilized sums ---------------------------------------------------
    add(Recipe(
        "b31",
        {},
        _static([
            BlockStep("X", "x"),
            BlockStep("W2", "w"),
            Sum2Step("x", "F", "w", "F2", "identity4", quotient=True),
            FillStep("w", "*"),
        ]),
        lambda p: [
            Assertion("pi1_certificate", _pi1("trivial"), "simply connected"),
            Assertion("e_sigma_equals", lambda q: (12, -4), "e=12, sigma=-4"),
            Assertion("freedman_equals", lambda q: (3, 7), "3CP2 # 7CP2bar"),
        ],
    ))

    add(Recipe(
        "b32",
        {},
        _static([
            BlockStep("W1", "w"),
            BlockStep("X", "x"),
            Sum2Step("w", "F1", "x", "F", "identity4", quotient=True),
            FillStep("x", "*"),
        ]),
        lambda p: [
            Assertion("pi1_certificate", _pi1("trivial"), "simply connected"),
            Assertion("e_sigma_equals", lambda q: (14, -6), "e=14, sigma=-6"),
            Assertion("freedman_equals", lambda q: (3, 9), "3CP2 # 9CP2bar"),
        ],
    ))

    add(Recipe(
        "b51",
        {},
        _static([
            BlockStep("X", "x1"),
            BlockStep("X", "x2"),
            Sum2Step("x1", "F", "x2", "F", "identity4", quotient=False),
            FillStep("x2", "*"),
        ]),
        lambda p: [
            Assertion("pi1_certificate", _pi1("trivial"), "simply connected"),
            Assertion("e_sigma_equals", lambda q: (16, -4), "e=16, sigma=-4"),
            Assertion("freedman_equals", lambda q: (5, 9), "5CP2 # 9CP2bar"),
        ],
        doc="full amalgam of two copies of the main block",
    ))

    def family_steps(p: dict) -> list[Step]:
        steps: list[Step] = [BlockStep("X", "x")]
        for i in range(p["m"]):
            steps.append(BlockStep("W1", f"w1_{i}"))
            steps.append(Sum2Step(f"w1_{i}", "F1", "x", "F", "identity4",
                                  quotient=True, parallel=True))
        for i in range(p["n"]):
            steps.append(BlockStep("W2", f"w2_{i}"))
            steps.append(Sum2Step(f"w2_{i}", "F2", "x", "F", "identity4",
                                  quotient=True, parallel=True))
        steps.append(FillStep("x", "*"))
        return steps

    add(Recipe(
        "family",
        {"m": 1, "n": 1},
        family_steps,
        lambda p: [
            Assertion("pi1_certificate", _pi1("trivial"), "simply connected"),
            Assertion(
                "e_sigma_equals",
                lambda q: (6 + 8 * q["m"] + 6 * q["n"], -2 * (1 + 2 * q["m"] + q["n"])),
                "additive characteristic numbers",
            ),
            Assertion(
                "freedman_equals",
                lambda q: (1 + 2 * q["m"] + 2 * q["n"], 3 + 6 * q["m"] + 4 * q["n"]),
                "family homeomorphism type",
            ),
            Assertion(
                "arithmetic_identity",
                lambda q: (
                    (6 + 8 * q["m"] + 6 * q["n"]) + (-2 * (1 + 2 * q["m"] + q["n"])) - 2,
                    2 * (1 + 2 * q["m"] + 2 * q["n"]),
                ),
                "m + n = e - 2 consistency",
            ),
        ],
        validate=lambda p: _require(p["m"] >= 0 and p["n"] >= 0, "m, n must be >= 0"),
    ))

    # -- abelian families --------------------------------------------------
    z3_steps: list[Step] = [
        BlockStep("Z", "z"),
        SurgeryStep("z", "T1'", 1, 1, 1, 0),
        SurgeryStep("z", "T2", -1, 1, 0, 1),
        SurgeryStep("z", "T2'", 1, 1, 0, 1),
    ]

    add(Recipe(
        "Z3",
        {},
        _static(z3_steps + [FillStep("z", "*")]),
        lambda p: [
            Assertion("pi1_certificate", _pi1("free-abelian", rank=3), "pi1 = Z^3"),
            Assertion("e_sigma_equals", lambda q: (6, -2), "e=6, sigma=-2"),
        ],
        doc="three surgeries; the three surviving generators commute",
    ))

    def abelian_assertions(p: dict) -> list[Assertion]:
        values = (p["p"], p["q"], p["r"])
        group = _canonical_abelian(values)
        out = [
            Assertion("h1_equals", lambda q: _canonical_abelian((q["p"], q["q"], q["r"])),
                      "H1 = Z/p + Z/q + Z/r"),
            Assertion("e_sigma_equals", lambda q: (6, -2), "e=6, sigma=-2"),
        ]
        if all(values):
            out.insert(0, Assertion(
                "pi1_certificate",
                _pi1("finite-abelian", group=lambda q: _canonical_abelian((q["p"], q["q"], q["r"]))),
                "pi1 finite abelian",
            ))
        elif not any(values):
            out.insert(0, Assertion(
                "pi1_certificate", _pi1("free-abelian", rank=3), "pi1 = Z^3"
            ))
        return out

    add(Recipe(
        "abelian",
        {"p": 2, "q": 3, "r": 4},
        lambda p: z3_steps + [
            SurgeryStep("z", "T3", 1, "p", 0, 1),
            SurgeryStep("z", "T1", 1, "q", 1, 0),
            SurgeryStep("z", "T4", 1, "r", 1, 0),
            FillStep("z", "*"),
        ],
        abelian_assertions,
        doc="torsion surgeries on the three leftover tori",
    ))

    # -- free groups and fibered three-manifolds ---------------------------
    add(Recipe(
        "free",
        {"n": 2},
        lambda p: [
            MappingTorusStep("y", "n"),
            BlockStep("B", "b"),
            SumTStep("y", "T0", "b", "T3", torus_slot_map("kill-both", "m", "l")),
            FillStep("y", "*"),
        ],
        lambda p: [
            Assertion("pi1_certificate", _pi1("free", rank=lambda q: q["n"]), "pi1 free"),
            Assertion("e_sigma_equals", lambda q: (10, -2), "e=10, sigma=-2"),
        ],
        validate=lambda p: _require(p["n"] >= 1, "n must be >= 1"),
        doc="mapping torus summed with the two-torus block kills both factors",
    ))

    add(Recipe(
        "fibered",
        {"g": 2},
        lambda p: [
            MappingTorusStep("y", "g"),
            BlockStep("X1", "x1"),
            SumTStep("y", "T0", "x1", "T", torus_slot_map("kill-s", "l", "m")),
            FillStep("y", "*"),
        ],
        lambda p: [
            Assertion("e_sigma_equals", lambda q: (6, -2), "e=6, sigma=-2"),
            Assertion(
                "h1_equals", lambda q: AbelianGroup(q["g"] + 1),
                "H1 matches the fibered three-manifold",
            ),
        ],
        validate=lambda p: _require(p["g"] >= 1, "g must be >= 1"),
        doc="summing with the infinite cyclic block kills the circle factor",
    ))

    # -- arithmetic-level recipes ------------------------------------------
    add(Recipe(
        "fifty",
        {"g": 2, "r": 2},
        lambda p: [
            ArithStep("presentation-adapted base", lambda q: 0, lambda q: 0),
            ArithStep("two-torus block sum", lambda q: 10, lambda q: -2),
            ArithStep(
                "one infinite-cyclic sum per generator and relation",
                lambda q: 6 * (q["g"] + q["r"]),
                lambda q: -2 * (q["g"] + q["r"]),
            ),
        ],
        lambda p: [
            Assertion(
                "e_sigma_equals",
                lambda q: (10 + 6 * (q["g"] + q["r"]), -2 - 2 * (q["g"] + q["r"])),
                "e=10+6(g+r), sigma=-2-2(g+r)",
            ),
        ],
        validate=lambda p: _require(p["g"] >= 0 and p["r"] >= 0, "g, r must be >= 0"),
        doc="cost of killing a g generator, r relation presentation",
    ))

    def genabelian_validate(p: dict) -> None:
        _require(p["n"] >= 2 and p["n"] % 2 == 0, "n must be even and >= 2")

    def genabelian_steps(p: dict) -> list[Step]:
        genus = (p["n"] + 6) // 2
        steps: list[Step] = [Sym2Step("s", genus)]
        eq61 = ["T(a1,b2)", "T(b1,b3)", "T(a2,a3)"]
        for name in eq61:
            steps.append(H1SumStep(
                "s", name,
                rows=lambda q, m, name=name: _both_classes(m, name),
                e_delta=10, sigma_delta=-2,
                label=f"two-torus block sum along {name}",
            ))
        classes = []
        for j in range(4, genus + 1):
            classes.append(f"T(x{j},a{j})")
            classes.append(f"T(y{j},b{j})")
        for i, name in enumerate(classes):
            steps.append(H1SumStep(
                "s", name,
                rows=lambda q, m, name=name, i=i: _combination_class(m, name, _dcoeff(q, i)),
                e_delta=6, sigma_delta=-2,
                label=f"infinite-cyclic sum along {name}",
            ))
        return steps

    def genabelian_assertions(p: dict) -> list[Assertion]:
        def closed_form(q: dict) -> tuple[int, int]:
            n = q["n"]
            return (n * n + 19 * n + 72) // 2, -(5 * n + 16) // 2

        def expansion(q: dict) -> tuple[int, int]:
            g = (q["n"] + 6) // 2
            return (
                (12 * g - 6) + (2 * g * g - 5 * g + 3),
                closed_form(q)[0],
            )

        def expected_group(q: dict) -> AbelianGroup:
            ds = [_dcoeff(q, i) for i in range(q["n"])]
            return _canonical_abelian(ds)

        return [
            Assertion("e_sigma_equals", closed_form, "e and sigma closed forms"),
            Assertion("arithmetic_identity", expansion, "expansion matches closed form"),
            Assertion("h1_equals", expected_group, "H1 is the requested group"),
        ]

    add(Recipe(
        "genabelian",
        {"n": 2, "d1": 0, "d2": 0, "d3": 0, "d4": 0, "d5": 0, "d6": 0},
        genabelian_steps,
        genabelian_assertions,
        validate=genabelian_validate,
        doc="symmetric square summed down to an arbitrary abelian group",
    ))

    add(Recipe(
        "odd",
        {"n": 2},
        lambda p: [
            ArithStep(
                "symmetric square of genus n",
                lambda q: 2 * q["n"] * q["n"] - 5 * q["n"] + 3,
                lambda q: 1 - q["n"],
            ),
            ArithStep("one infinite-cyclic sum", lambda q: 6, lambda q: -2),
        ],
        lambda p: [
            Assertion(
                "e_sigma_equals",
                lambda q: (9 - 5 * q["n"] + 2 * q["n"] * q["n"], -1 - q["n"]),
                "e=9-5n+2n^2, sigma=-1-n",
            ),
        ],
        validate=lambda p: _require(p["n"] >= 1, "n must be >= 1"),
        doc="odd rank free abelian arithmetic",
    ))

    return recipes


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise RecipeError(message)


def _dcoeff(params: dict, index: int) -> int:
    return int(params.get(f"d{index + 1}", 0))


def _both_classes(model: ManifoldModel, torus_name: str) -> list[tuple[int, ...]]:
    torus = next(t for t in model.h1_tori if t.name == torus_name)
    return [torus.class_a, torus.class_b]


def _combination_class(
    model: ManifoldModel, torus_name: str, coefficient: int
) -> list[tuple[int, ...]]:
    torus = next(t for t in model.h1_tori if t.name == torus_name)
    row = tuple(
        a + coefficient * b for a, b in zip(torus.class_a, torus.class_b)
    )
    return [row]


# ---------------------------------------------------------------------------
# geography scan


@dataclass(frozen=True)
class ScanRow:
    coefficients: tuple[tuple[str, int, str], ...]  # (torus, k, direction)
    h1: AbelianGroup
    e: int
    sigma: int
    c1sq: int
    chi_h_num: int
    chi_h_den: int
    certificate: str


def scan_cells(
    base: ManifoldModel,
    k_range: Sequence[int],
    directions: Sequence[str] = ("m", "l"),
    tori: Sequence[str] | None = None,
) -> list[tuple[tuple[str, int, str], ...]]:
    """Deterministic, deduplicated cell list: k = 0 cells are trivial
    fillings, so their direction collapses to 'm'."""
    names = list(tori) if tori is not None else [t.name for t in base.tori if t.available]
    cells: list[tuple[tuple[str, int, str], ...]] = [()]
    for name in names:
        options = []
        seen = set()
        for k in k_range:
            for direction in directions:
                effective = (name, k, "m" if k == 0 else direction)
                if effective not in seen:
                    seen.add(effective)
                    options.append(effective)
        cells = [prev + (opt,) for prev in cells for opt in options]
    return cells


def run_scan_cell(
    base: ManifoldModel,
    cell: tuple[tuple[str, int, str], ...],
    budget: Budget,
) -> ScanRow:
    model = base
    for name, k, direction in cell:
        a, b = (1, 0) if direction == "m" else (0, 1)
        if k == 0:
            spec = SurgerySpec(name, 1, 0, 1, 0)
        else:
            spec = SurgerySpec(name, k, 1, a, b)
        model = torus_surgery(model, spec)
    model = fill_all(model)  # close up whatever the cell left untouched
    assert model.presentation is not None
    result = classify(model.presentation, budget)
    chi = (model.e + model.sigma, 4)
    from fractions import Fraction

    chi_h = Fraction(*chi)
    return ScanRow(
        coefficients=cell,
        h1=result.abelianization,
        e=model.e,
        sigma=model.sigma,
        c1sq=2 * model.e + 3 * model.sigma,
        chi_h_num=chi_h.numerator,
        chi_h_den=chi_h.denominator,
        certificate=result.certificate.describe(),
    )


def geography_scan(
    base_id: str,
    k_range: Sequence[int],
    directions: Sequence[str] = ("m", "l"),
    tori: Sequence[str] | None = None,
    budget: Budget | None = None,
) -> list[ScanRow]:
    """Enumerate surgery coefficient tuples on the block's tori and
    classify each filling with a small budget; unknown cells stay in the
    table, the scan never aborts."""
    base = named_block(base_id)
    scan_budget = budget or Budget(max_cosets=5_000, max_depth=2, max_tietze_passes=60)
    return [
        run_scan_cell(base, cell, scan_budget)
        for cell in scan_cells(base, k_range, directions, tori)
    ]
