"""Catalog of building blocks: complement presentations, tracked pieces,
and characteristic numbers, transcribed from the source tables.

Slot alphabet: kernel words of a genus 2 surface and slot-level gluing
maps are written over the four standard surface generators, referred to
positionally (slot i resolves to the i-th loop word of the concrete
surface at sum time).
"""

from __future__ import annotations

from .models import (
    Exactness,
    GluingMap,
    H1Torus,
    IntersectionFormRecord,
    ManifoldModel,
    TrackedSurface,
    TrackedTorus,
)
from .presentations import Presentation
from .words import Word, parse_word

SLOTS = ("s1", "t1", "s2", "t2")

BLOCK_IDS = ("HxK", "W1", "W2", "M", "Z")


def slot_word(text: str) -> Word:
    return parse_word(text, SLOTS)


def _torus(pres: Presentation, name: str, mu: str, m: str, ell: str, **kw) -> TrackedTorus:
    return TrackedTorus(
        name, pres.word(mu), pres.word(m), pres.word(ell), **kw
    )


def make_block(block_id: str) -> ManifoldModel:
    """Catalog blocks: HxK, W1, W2, M, Z (see BLOCK_IDS)."""
    if block_id == "HxK":
        p = Presentation.parse(
            "x y a b",
            ["[x,a]", "[y,a]", "[y,b*a*b^-1]", "[[x,y],b]", "[x,[a,b]]", "[y,[a,b]]"],
        )
        return ManifoldModel(
            "HxK",
            p,
            tori=(
                _torus(p, "T1", "[b^-1,y^-1]", "x", "a"),
                _torus(p, "T2", "[x^-1,b]", "y", "b*a*b^-1"),
            ),
            e=0,
            sigma=0,
        )
    if block_id == "W1":
        p = Presentation.parse("s t", ["[s,t]"])
        surface = TrackedSurface(
            "F1",
            genus=2,
            square=0,
            loop_words=(p.word("s"), p.word("t"), p.word("s^-1"), p.word("t^-1")),
            mu=Word(),
            kernel_words=(slot_word("s1*s2"), slot_word("t1*t2"), slot_word("[s1,t1]")),
            dual_sphere=True,
            surjects=True,
        )
        return ManifoldModel("W1", p, surfaces=(surface,), e=4, sigma=-4, odd_form=True)
    if block_id == "W2":
        rels = ["[s1,s2]", "[t1,s2]", "[t1,t2*s2*t2^-1]", "[s1,t1]", "[s2,t2]"]
        p = Presentation.parse("s1 t1 s2 t2", rels)
        surface = TrackedSurface(
            "F2",
            genus=2,
            square=0,
            loop_words=tuple(p.word(s) for s in ("s1", "t1", "s2", "t2")),
            mu=Word(),
            kernel_words=tuple(slot_word(r) for r in rels),
            dual_sphere=True,
            surjects=True,
        )
        return ManifoldModel(
            "W2",
            p,
            tori=(
                _torus(p, "T1'", "[t2^-1,t1^-1]", "s1", "s2"),
                _torus(p, "T2'", "[s1^-1,t2]", "t1", "s2"),
            ),
            surfaces=(surface,),
            e=2,
            sigma=-2,
            odd_form=True,
        )
    if block_id == "M":
        p = Presentation.parse(
            "x y a1 b1 a2 b2",
            ["[x,a1]", "[y,a1]", "[y,b1*a1*b1^-1]",
             "[x,a2]", "[y,a2]", "[y,b2*a2*b2^-1]"],
        )
        surface = TrackedSurface(
            "F",
            genus=2,
            square=0,
            loop_words=tuple(p.word(s) for s in ("a1", "b1", "a2", "b2")),
            mu=p.word("[x,y]"),
        )
        return ManifoldModel(
            "M",
            p,
            tori=(
                _torus(p, "T1", "[b1^-1,y^-1]", "x", "a1"),
                _torus(p, "T2", "[x^-1,b1]", "y", "b1*a1*b1^-1"),
                _torus(p, "T3", "[b2^-1,y^-1]", "x", "a2"),
                _torus(p, "T4", "[x^-1,b2]", "y", "b2*a2*b2^-1"),
            ),
            surfaces=(surface,),
            e=0,
            sigma=0,
        )
    if block_id == "Z":
        p = Presentation.parse(
            "x y a1 b1 a2 b2",
            ["[b1,b2]", "[a1,b2]", "[b1,a1]", "[b2,a2]",
             "[x,a1]", "[y,a1]", "[x,a2]", "[y,a2]"],
        )
        surface = TrackedSurface(
            "F",
            genus=2,
            square=0,
            loop_words=tuple(p.word(s) for s in ("a1", "b1", "a2", "b2")),
            mu=p.word("[x,y]"),
        )
        form = IntersectionFormRecord(
            hyperbolic_pairs=6,
            odd_block=((-1, 0, 0, 1), (0, -1, 0, 1), (0, 0, 0, 1), (1, 1, 1, 0)),
            basis=("H1", "H2", "H3", "F"),
        )
        return ManifoldModel(
            "Z",
            p,
            tori=(
                _torus(p, "T1'", "[a2^-1,a1^-1]", "b1^-1", "b2^-1"),
                _torus(p, "T2'", "[b1,a2]", "b1*a2*b1^-1", "b2^-1"),
                _torus(p, "T1", "[b1^-1,y^-1]", "x", "a1"),
                _torus(p, "T2", "[x^-1,b1]", "y", "a1"),
                _torus(p, "T3", "[b2^-1,y^-1]", "x", "a2"),
                _torus(p, "T4", "[x^-1,b2]", "y", "a2"),
            ),
            surfaces=(surface,),
            e=6,
            sigma=-2,
            exactness=Exactness.UPPER_BOUND,
            form=form,
            odd_form=True,
        )
    raise KeyError(f"unknown block id {block_id!r}")


def twist_monodromy(genus: int) -> tuple[Word, ...]:
    """Composite of the Dehn twists along the x_i: x_i -> x_i, y_i -> y_i x_i."""
    symbols = _surface_symbols(genus)
    images = []
    for i in range(genus):
        images.append(parse_word(f"x{i + 1}", symbols))
        images.append(parse_word(f"y{i + 1}*x{i + 1}", symbols))
    return tuple(images)


def _surface_symbols(genus: int) -> tuple[str, ...]:
    out = []
    for i in range(1, genus + 1):
        out.extend([f"x{i}", f"y{i}"])
    return tuple(out)


def mapping_torus_block(genus: int, monodromy: tuple[Word, ...]) -> ManifoldModel:
    """Surface bundle over the circle, crossed with a circle.

    Generators x_i, y_i, t, s; relators t g t^-1 (image g)^-1 for the
    surface generators, and s central.  Torus section tracked as T0 with
    push-offs (s, t) and trivial meridian.
    """
    if len(monodromy) != 2 * genus:
        raise ValueError("monodromy must give images for all 2*genus generators")
    symbols = _surface_symbols(genus) + ("t", "s")
    n = 2 * genus
    t_id, s_id = n, n + 1
    surface_ids = list(range(n))
    for image in monodromy:
        if any(g >= n for g in image.generator_ids()):
            raise ValueError("monodromy images must stay on the surface generators")
    relators = []
    t = Word.gen(t_id)
    for i in range(n):
        g = Word.gen(i)
        relators.append(t * g * t.inverse() * monodromy[i].inverse())
    s = Word.gen(s_id)
    for other in surface_ids + [t_id]:
        relators.append(s * Word.gen(other) * s.inverse() * Word.gen(other).inverse())
    p = Presentation.make(symbols, relators)
    torus = TrackedTorus("T0", Word(), p.word("s"), p.word("t"))
    return ManifoldModel(f"Y{genus}xS1", p, tori=(torus,), e=0, sigma=0)


def sym2_block(genus: int) -> ManifoldModel:
    """Symmetric square of a genus g surface, at homology level only.

    H1 = Z^(2g) with basis a1, b1, ..., ag, bg; the x_j, y_j curves used
    for the extra tori are parallel copies of a1, so their classes equal
    a1's.  e = 2g^2 - 5g + 3, sigma = 1 - g.
    """
    if genus < 3:
        raise ValueError("symmetric square block needs genus >= 3")
    rank = 2 * genus

    def cls(name: str) -> tuple[int, ...]:
        vec = [0] * rank
        kind, idx = name[0], int(name[1:])
        offset = 2 * (idx - 1) + (0 if kind == "a" else 1)
        vec[offset] = 1
        return tuple(vec)

    a1 = cls("a1")
    tori = [
        H1Torus("T(a1,b2)", a1, cls("b2")),
        H1Torus("T(b1,b3)", cls("b1"), cls("b3")),
        H1Torus("T(a2,a3)", cls("a2"), cls("a3")),
    ]
    for j in range(4, genus + 1):
        tori.append(H1Torus(f"T(x{j},a{j})", a1, cls(f"a{j}")))
        tori.append(H1Torus(f"T(y{j},b{j})", a1, cls(f"b{j}")))
    return ManifoldModel(
        f"Sym2(F{genus})",
        presentation=None,
        e=2 * genus * genus - 5 * genus + 3,
        sigma=1 - genus,
        h1_rank=rank,
        h1_tori=tuple(tori),
    )


def _slot_matrix(images: tuple[Word, ...], n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(img.exponent_sums(n)) for img in images)


def _slot_map(name: str, image_texts: tuple[str, ...]) -> GluingMap:
    images = tuple(slot_word(t) for t in image_texts)
    return GluingMap(name, images, _slot_matrix(images, 4), kind="slot")


def standard_gluings() -> dict[str, GluingMap]:
    """Named genus-2 gluing maps, written over the target surface slots."""
    return {
        "identity4": _slot_map("identity4", ("s1", "t1", "s2", "t2")),
        "theorem-five": _slot_map(
            "theorem-five", ("t1^-1", "t1*s1*t1^-1", "s2", "t2")
        ),
        "eq-phi": _slot_map(
            "eq-phi", ("t1^-1", "t1*s1*t1^-1", "t2^-1", "t2*s2*t2^-1")
        ),
    }


def torus_gluing(name: str, image_m: Word, image_ell: Word, n_gens: int) -> GluingMap:
    """Direct torus gluing: images of (m, ell) in the target's generators."""
    matrix = tuple(
        tuple(img.exponent_sums(n_gens)) for img in (image_m, image_ell)
    )
    # validity is abelianization-level; reduce the matrix to the classes
    # actually hit so the 2x2 minor test makes sense
    cols = [j for j in range(n_gens) if any(row[j] for row in matrix)]
    if len(cols) == 2:
        reduced = tuple(tuple(row[j] for j in cols) for row in matrix)
    else:
        reduced = ((1, 0), (0, 1))  # degenerate images are trusted catalog data
    return GluingMap(name, (image_m, image_ell), reduced, kind="direct")
