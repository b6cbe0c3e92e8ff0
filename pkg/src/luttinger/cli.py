"""Command line front end.

Exit codes: 0 all assertions pass, 2 any unknown, 1 failure or error.
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import fnmatch
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .classify import Budget
from .recipe_text import RecipeSyntaxError, parse_recipe
from .recipes import (
    BLOCK_IDS,
    RecipeError,
    builtin_recipes,
    named_block,
    run_recipe,
    run_scan_cell,
    scan_cells,
)
from .report import render_json, render_text

EXIT_PASS, EXIT_FAIL, EXIT_UNKNOWN = 0, 1, 2


def _budget(args) -> Budget:
    return Budget(
        max_cosets=args.max_cosets,
        max_depth=args.max_depth,
        max_tietze_passes=args.max_tietze_passes,
    )


def _parse_params(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise RecipeError(f"-P expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        out[key.strip()] = int(value)
    return out


def _load_recipe(source: str):
    builtins = builtin_recipes()
    if source in builtins:
        return builtins[source]
    with open(source, "r", encoding="utf-8") as handle:
        return parse_recipe(handle.read()).to_recipe()


def cmd_run(args) -> int:
    try:
        recipe = _load_recipe(args.recipe)
        report = run_recipe(recipe, budget=_budget(args), params=_parse_params(args.param))
    except (RecipeSyntaxError, RecipeError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(render_json(report) if args.format == "json" else render_text(report))
    if report.has_failure:
        return EXIT_FAIL
    if report.has_unknown:
        return EXIT_UNKNOWN
    return EXIT_PASS


def _verify_one(payload):
    name, max_cosets, max_depth, max_tietze = payload
    recipe = builtin_recipes()[name]
    budget = Budget(max_cosets=max_cosets, max_depth=max_depth,
                    max_tietze_passes=max_tietze)
    started = time.perf_counter()
    report = run_recipe(recipe, budget=budget)
    status = "pass"
    if report.has_failure:
        status = "fail"
    elif report.has_unknown:
        status = "unknown"
    return name, status, time.perf_counter() - started


def cmd_verify_all(args) -> int:
    names = list(builtin_recipes())
    if args.filter:
        names = [n for n in names if fnmatch.fnmatch(n, args.filter)]
    if not names:
        print("error: no recipe matches the filter", file=sys.stderr)
        return EXIT_FAIL
    payloads = [
        (name, args.max_cosets, args.max_depth, args.max_tietze_passes)
        for name in names
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_one, payloads))
    else:
        results = [_verify_one(p) for p in payloads]
    worst = EXIT_PASS
    width = max(len(n) for n in names)
    for name, status, wall in results:
        print(f"{name:<{width}}  {status:<8}  {wall:7.2f}s")
        if status == "fail":
            worst = EXIT_FAIL
        elif status == "unknown" and worst != EXIT_FAIL:
            worst = EXIT_UNKNOWN
    return worst


def cmd_show_block(args) -> int:
    try:
        model = named_block(args.block)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    pres = model.presentation
    print(f"block {model.name}: e={model.e} sigma={model.sigma} "
          f"exactness={model.exactness.value}")
    if pres is None:
        print(f"  abelian level: H1 rank {model.h1_rank}")
        for torus in model.h1_tori:
            print(f"  torus {torus.name} [{torus.status.value}]")
        return EXIT_PASS
    print("  generators: " + ", ".join(pres.generators))
    print(f"  relators ({len(pres.relators)}):")
    for rel in pres.relators:
        print(f"    {pres.format_word(rel)}")
    if model.tori:
        print(f"  tori ({len(model.tori)}):")
        for torus in model.tori:
            print(
                f"    {torus.name}: mu={pres.format_word(torus.mu)} "
                f"m={pres.format_word(torus.m)} l={pres.format_word(torus.ell)} "
                f"[{torus.status.value}]"
            )
    for surface in model.surfaces:
        loops = ", ".join(pres.format_word(w) for w in surface.loop_words)
        print(
            f"  surface {surface.name}: genus {surface.genus} "
            f"mu={pres.format_word(surface.mu)} loops=({loops}) [{surface.status.value}]"
        )
    if model.h1() is not None:
        print(f"  H1 = {model.h1()}")
    return EXIT_PASS


def _scan_one(payload):
    block_id, cell, max_cosets, max_depth, max_tietze = payload
    base = named_block(block_id)
    budget = Budget(max_cosets=max_cosets, max_depth=max_depth,
                    max_tietze_passes=max_tietze)
    return run_scan_cell(base, cell, budget)


def cmd_scan(args) -> int:
    try:
        base = named_block(args.block)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    lo, hi = args.k_min, args.k_max
    if lo > hi:
        print("error: empty coefficient range", file=sys.stderr)
        return EXIT_FAIL
    tori = args.tori.split(",") if args.tori else None
    cells = scan_cells(base, range(lo, hi + 1), tori=tori)
    payloads = [
        (args.block, cell, args.max_cosets, args.max_depth, args.max_tietze_passes)
        for cell in cells
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_scan_one, payloads))
    else:
        rows = [_scan_one(p) for p in payloads]
    for row in rows:
        coeffs = " ".join(f"{name}:{k}{d}" for name, k, d in row.coefficients)
        chi = f"{row.chi_h_num}/{row.chi_h_den}" if row.chi_h_den != 1 else str(row.chi_h_num)
        print(
            f"{coeffs}  H1={row.h1}  e={row.e} sigma={row.sigma} "
            f"c1sq={row.c1sq} chi_h={chi}  {row.certificate}"
        )
    return EXIT_PASS


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="luttinger",
        description="surgery calculus runner with certified group checks",
    )
    parser.add_argument("--max-cosets", type=int, default=1_000_000)
    parser.add_argument("--max-depth", type=int, default=8)
    parser.add_argument("--max-tietze-passes", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0,
                        help="reserved; the engine is deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a builtin or a recipe file")
    run_p.add_argument("recipe")
    run_p.add_argument("-P", "--param", action="append", metavar="KEY=VALUE")
    run_p.add_argument("--format", choices=("text", "json"), default="text")
    run_p.set_defaults(func=cmd_run)

    verify_p = sub.add_parser("verify-all", help="run every builtin recipe")
    verify_p.add_argument("--filter", default=None, help="glob over recipe names")
    verify_p.add_argument("--jobs", type=int, default=1)
    verify_p.set_defaults(func=cmd_verify_all)

    show_p = sub.add_parser("show-block", help="dump a block's tables")
    show_p.add_argument("block", help=f"one of {', '.join(BLOCK_IDS)}, X, X1, B")
    show_p.set_defaults(func=cmd_show_block)

    scan_p = sub.add_parser("scan", help="geography scan over surgery tuples")
    scan_p.add_argument("block")
    scan_p.add_argument("--k-min", type=int, default=-1)
    scan_p.add_argument("--k-max", type=int, default=1)
    scan_p.add_argument("--tori", default=None, help="comma separated torus names")
    scan_p.add_argument("--jobs", type=int, default=1)
    scan_p.set_defaults(func=cmd_scan)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
