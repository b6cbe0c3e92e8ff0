"""Geography: which (c1^2, chi_h) pairs do the families reach?

Every Luttinger filling of the six-torus block keeps e=6 and sigma=-2;
the interesting variation is the fundamental group.  The scan enumerates
coefficient tuples, classifies each cell with a small budget, and leaves
unknown cells honestly unknown.  The arithmetic families then show the
additive structure of e and sigma under the standard sums.
"""

from luttinger import builtin_recipes, geography_scan, run_recipe

# Scan two of the six tori with coefficients in {-1, 0, 1}: 25 cells
# after deduplication (the direction is irrelevant for a trivial filling).
rows = geography_scan("Z", k_range=(-1, 0, 1), tori=("T1'", "T1"))
print(f"{len(rows)} cells on (T1', T1):")
for row in rows:
    coeffs = " ".join(f"{name}:{k}{d}" for name, k, d in row.coefficients)
    print(f"  {coeffs:24s} H1={str(row.h1):14s} {row.certificate}")

# All cells share the block's characteristic numbers.
assert {(r.e, r.sigma) for r in rows} == {(6, -2)}

# The sum families move through the (c1^2, chi_h) plane in fixed steps:
# each quotient sum with a blown up block adds (e, sigma) = (+8, -4) or
# (+6, -2) on top of the base manifold.
recipes = builtin_recipes()
print("\nfamily(m,n) geography:")
for m in range(3):
    for n in range(3):
        report = run_recipe(recipes["family"], params={"m": m, "n": n})
        r = report.report
        print(f"  m={m} n={n}: e={r.e:3d} sigma={r.sigma:3d} "
              f"c1^2={r.c1sq:3d} chi_h={r.chi_h} freedman={r.freedman}")

# Presentation-cost arithmetic: a group with g generators and r relations
# costs e = 10 + 6(g+r).
print("\npresentation cost:")
for g, r in ((1, 0), (2, 1), (3, 3)):
    report = run_recipe(recipes["fifty"], params={"g": g, "r": r})
    print(f"  g={g} r={r}: e={report.model.e}, sigma={report.model.sigma}")
