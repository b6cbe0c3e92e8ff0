import pytest

from luttinger.abelian import AbelianGroup
from luttinger.classify import Budget
from luttinger.recipes import (
    RecipeError,
    builtin_recipes,
    geography_scan,
    named_block,
    run_recipe,
    scan_cells,
)

RECIPES = builtin_recipes()


def run(name, **params):
    return run_recipe(RECIPES[name], params=params or None)


def test_builtin_count():
    assert len(RECIPES) >= 16


def test_cool():
    report = run("cool")
    assert report.passed
    assert report.report.freedman == (1, 3)
    assert (report.report.e, report.report.sigma) == (6, -2)


def test_seven():
    report = run("seven")
    assert report.passed, [a for a in report.assertions if a.outcome != "pass"]
    assert report.report.freedman == (1, 7)


def test_five():
    report = run("five")
    assert report.passed
    assert report.report.freedman == (1, 5)


def test_ten_baby():
    report = run("10baby")
    assert report.passed
    assert report.report.freedman == (3, 5)


def test_zz_infinite_cyclic():
    report = run("ZZ")
    assert report.passed
    assert report.certificate_summary.startswith("infinite-cyclic")
    assert not report.report.closed


def test_yfamily_default():
    report = run("Yfamily")
    assert report.passed


def test_b1_lattice_and_pushoffs():
    report = run("B1")
    assert report.passed, [a for a in report.assertions if a.outcome != "pass"]


def test_z3():
    report = run("Z3")
    assert report.passed


def test_abelian_2_3_4():
    report = run("abelian", p=2, q=3, r=4)
    assert report.passed
    assert report.model.h1() == AbelianGroup(0, (2, 12))


def test_abelian_0_0_5():
    report = run("abelian", p=0, q=0, r=5)
    assert report.passed
    assert report.model.h1() == AbelianGroup(2, (5,))


def test_abelian_zero_is_z3():
    report = run("abelian", p=0, q=0, r=0)
    assert report.passed
    assert report.certificate_summary == "free-abelian-rank-3"


def test_free_rank_two():
    report = run("free", n=2)
    assert report.passed
    assert (report.report.e, report.report.sigma) == (10, -2)


def test_fibered_default():
    report = run("fibered")
    assert report.passed
    assert report.model.h1() == AbelianGroup(3)


def test_sums():
    for name, freedman in (("b31", (3, 7)), ("b32", (3, 9)), ("b51", (5, 9))):
        report = run(name)
        assert report.passed, (name, report.assertions)
        assert report.report.freedman == freedman


def test_family_1_1():
    report = run("family", m=1, n=1)
    assert report.passed
    assert report.report.freedman == (5, 13)


def test_fifty():
    report = run("fifty", g=3, r=1)
    assert report.passed
    assert (report.model.e, report.model.sigma) == (10 + 24, -2 - 8)


def test_genabelian_torsion():
    report = run("genabelian", n=2, d1=3, d2=0)
    assert report.passed
    assert report.model.h1() == AbelianGroup(1, (3,))
    assert report.model.e == (4 + 19 * 2 + 72) // 2


def test_odd():
    report = run("odd", n=3)
    assert report.passed
    assert report.model.e == 9 - 15 + 18


def test_unknown_never_pass_with_starved_budget():
    report = run_recipe(
        RECIPES["cool"], budget=Budget(max_cosets=2, max_depth=1, max_tietze_passes=1)
    )
    cert_assertions = [a for a in report.assertions if a.kind == "pi1_certificate"]
    assert cert_assertions[0].outcome in ("unknown", "pass")
    if cert_assertions[0].outcome == "unknown":
        assert not report.passed


def test_bad_parameter():
    with pytest.raises(RecipeError):
        run("free", bogus=1)
    with pytest.raises(RecipeError):
        run("free", n=0)


def test_exact_required_assertion_on_upper_bound_model_is_unknown():
    from luttinger.recipes import Assertion, Recipe, BlockStep, _pi1

    recipe = Recipe(
        "exactness-demand",
        {},
        lambda p: [BlockStep("Z", "z")],
        lambda p: [
            Assertion(
                "pi1_certificate", _pi1("free-abelian", rank=6),
                "needs exact model", required_exactness="exact",
            ),
        ],
    )
    report = run_recipe(recipe)
    assert report.assertions[0].outcome == "unknown"
    assert report.has_unknown and not report.passed


def test_deterministic_reports():
    a = run("cool")
    b = run("cool")
    assert a.assertions == b.assertions
    assert a.model.log == b.model.log


def test_surgery_steps_drop_b1_by_one():
    for name in ("cool", "seven", "five", "10baby", "ZZ", "B1", "Z3"):
        report = run(name)
        for entry in report.model.log:
            if entry.op == "torus_surgery":
                drop = entry.b1_before - entry.b1_after
                expected = 0 if "1/0" in entry.details else 1
                assert drop == expected, (name, entry)


def test_named_block_derived():
    x1 = named_block("X1")
    assert x1.torus("T").complement_exact
    b = named_block("B")
    assert b.torus("T3").complement_exact
    assert b.torus("T4").complement_exact
    with pytest.raises(KeyError):
        named_block("E1")


def test_scan_cells_dedup():
    z = named_block("Z")
    cells = scan_cells(z, k_range=(-1, 0, 1), tori=("T1'", "T1"))
    assert len(cells) == 25  # 5 effective options per torus
    assert len(set(cells)) == len(cells)


def test_scan_contains_cool_tuple_and_runs_it():
    z = named_block("Z")
    cells = scan_cells(z, k_range=(-1, 0, 1))
    cool_cell = (
        ("T1'", 1, "m"), ("T2'", 1, "l"), ("T1", -1, "m"),
        ("T2", -1, "l"), ("T3", -1, "l"), ("T4", -1, "m"),
    )
    assert cool_cell in cells
    from luttinger.recipes import run_scan_cell

    row = run_scan_cell(z, cool_cell, Budget(max_cosets=100_000, max_depth=2))
    assert row.certificate == "trivial"
    assert (row.e, row.sigma) == (6, -2)


def test_small_scan_table():
    rows = geography_scan("Z", k_range=(0, 1), tori=("T1'", "T2'"))
    assert all((row.e, row.sigma) == (6, -2) for row in rows)
    trivial_fill = next(
        row for row in rows if all(k == 0 for _, k, _ in row.coefficients)
    )
    assert trivial_fill.h1 == AbelianGroup(6)
