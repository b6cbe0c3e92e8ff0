"""Manifold-level operations as presentation and integer bookkeeping.

Torus surgery appends the relator mu^p (m^a l^b)^q and never touches e
or sigma; fillings append the meridian; genus 2 sums add 4 to e and add
signatures; torus sums are plainly additive.  Quotient-style sums (dual
sphere or simply connected complement on the killer side) produce upper
bound models; amalgamated sums preserve exactness.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd

from .abelian import AbelianGroup
from .classify import Budget, Certificate, DEFAULT_BUDGET, classify
from .models import (
    Exactness,
    GluingMap,
    IntersectionFormRecord,
    LogEntry,
    ManifoldModel,
    PieceStatus,
    TrackedSurface,
    TrackedTorus,
)
from .presentations import Presentation
from .words import Word, remap, substitute


class CalculusError(ValueError):
    pass


@dataclass(frozen=True)
class SurgerySpec:
    torus: str
    p: int
    q: int
    a: int = 1  # direction gamma = m^a l^b
    b: int = 0

    def __post_init__(self) -> None:
        if gcd(self.p, self.q) != 1:
            raise CalculusError(f"surgery coefficients must be coprime: {self.p}/{self.q}")
        if self.q != 0 and gcd(self.a, self.b) != 1:
            raise CalculusError("direction exponents must be coprime when q is nonzero")

    @property
    def symplectic(self) -> bool:
        return abs(self.p) == 1

    def describe(self) -> str:
        return f"{self.p}/{self.q} on {self.torus} along m^{self.a}*l^{self.b}"


def _append_relators(
    model: ManifoldModel, op: str, details: str, relators: list[Word], **deltas
) -> ManifoldModel:
    assert model.presentation is not None
    b1_before = model.b1()
    pres = model.presentation.with_relators(relators)
    out = replace(model, presentation=pres)
    entry = LogEntry(
        op,
        details,
        relators_added=tuple(model.presentation.format_word(r) for r in relators),
        b1_before=b1_before,
        b1_after=out.b1(),
        **deltas,
    )
    return out.logged(entry)


def torus_surgery(model: ManifoldModel, spec: SurgerySpec) -> ManifoldModel:
    """p/q torus surgery along gamma = m^a l^b: kills mu^p gamma^q."""
    if model.presentation is None:
        raise CalculusError("torus surgery needs a presentation-level model")
    torus = model.torus(spec.torus)
    if not torus.available:
        raise CalculusError(f"torus {spec.torus} already consumed")
    gamma = torus.m ** spec.a * torus.ell ** spec.b
    relator = torus.mu ** spec.p * gamma ** spec.q
    surgered = replace(torus, status=PieceStatus.SURGERED)
    out = model.replace_torus(surgered)
    out = _append_relators(
        out,
        "torus_surgery",
        spec.describe() + ("" if spec.symplectic else " (not symplectic)"),
        [relator],
    )
    if spec.symplectic and spec.q != 0:
        # the surgered core torus is nullhomologous; beta is the old meridian
        core = out.core_tori + ((torus.name, model.presentation.format_word(torus.mu)),)
        out = replace(out, core_tori=core)
    return out


def fill_surface(model: ManifoldModel, name: str) -> ManifoldModel:
    """Glue the surface back: appends its meridian relator."""
    if model.presentation is None:
        raise CalculusError("fill needs a presentation-level model")
    surface = model.surface(name)
    if not surface.available:
        raise CalculusError(f"surface {name} already consumed")
    if surface.square != 0:
        raise CalculusError("only square-zero surfaces can be filled")
    out = model.replace_surface(replace(surface, status=PieceStatus.FILLED))
    return _append_relators(out, "fill_surface", name, [surface.mu])


def fill_torus(model: ManifoldModel, name: str) -> ManifoldModel:
    """Trivial (1/0) filling: appends the meridian relator only."""
    if model.presentation is None:
        raise CalculusError("fill needs a presentation-level model")
    torus = model.torus(name)
    if not torus.available:
        raise CalculusError(f"torus {name} already consumed")
    out = model.replace_torus(replace(torus, status=PieceStatus.FILLED))
    return _append_relators(out, "fill_torus", name, [torus.mu])


def fill_all(model: ManifoldModel) -> ManifoldModel:
    """Trivially fill every available torus and surface."""
    for torus in model.tori:
        if torus.available:
            model = fill_torus(model, torus.name)
    for surface in model.surfaces:
        if surface.available:
            model = fill_surface(model, surface.name)
    return model


def blow_up(model: ManifoldModel, on_surface: str | None = None) -> ManifoldModel:
    """Connected sum with a reversed projective plane: e += 1, sigma -= 1."""
    out = replace(model, e=model.e + 1, sigma=model.sigma - 1, odd_form=True)
    details = "blow-up"
    if on_surface is not None:
        surface = out.surface(on_surface)
        out = out.replace_surface(replace(surface, dual_sphere=True))
        details += f" on {on_surface}"
    return out.logged(LogEntry("blow_up", details, e_delta=1, sigma_delta=-1))


def _merge_symbols(
    a: tuple[str, ...], b: tuple[str, ...]
) -> tuple[tuple[str, ...], list[int]]:
    """Union of generator alphabets; clashing b-side symbols get primes.

    Returns the combined symbols and the id remap for the b side.
    """
    symbols = list(a)
    taken = set(a)
    mapping = []
    for s in b:
        name = s
        while name in taken:
            name += "'"
        taken.add(name)
        symbols.append(name)
        mapping.append(len(symbols) - 1)
    return tuple(symbols), mapping


def _rename_pieces(
    model: ManifoldModel, mapping: list[int], taken_tori: set[str], taken_surfaces: set[str]
) -> tuple[tuple[TrackedTorus, ...], tuple[TrackedSurface, ...]]:
    tori = []
    for t in model.tori:
        name = t.name
        while name in taken_tori:
            name += "'"
        taken_tori.add(name)
        tori.append(
            replace(
                t,
                name=name,
                mu=remap(t.mu, mapping),
                m=remap(t.m, mapping),
                ell=remap(t.ell, mapping),
            )
        )
    surfaces = []
    for s in model.surfaces:
        name = s.name
        while name in taken_surfaces:
            name += "'"
        taken_surfaces.add(name)
        surfaces.append(
            replace(
                s,
                name=name,
                loop_words=tuple(remap(w, mapping) for w in s.loop_words),
                mu=remap(s.mu, mapping),
            )
        )
    return tuple(tori), tuple(surfaces)


def resolve_gluing(
    phi: GluingMap, target_surface_loops: tuple[Word, ...]
) -> tuple[Word, ...]:
    """Images as words over the target model's generators."""
    if phi.kind == "direct":
        return phi.images
    return tuple(substitute(img, target_surface_loops) for img in phi.images)


def sum_genus2_amalgam(
    a: ManifoldModel,
    fa: str,
    b: ManifoldModel,
    fb: str,
    phi: GluingMap,
    name: str | None = None,
) -> ManifoldModel:
    """Symplectic sum along genus 2 surfaces, full amalgamated presentation.

    Generators of both sides, relators of both sides, identification of
    the four surface generators through the gluing map, and the meridian
    matching relator.  Exact when both sides are exact.
    """
    if a.presentation is None or b.presentation is None:
        raise CalculusError("amalgam needs presentation-level models")
    sa, sb = a.surface(fa), b.surface(fb)
    for s in (sa, sb):
        if s.genus != 2 or s.square != 0 or not s.available:
            raise CalculusError("amalgam needs available square-zero genus 2 surfaces")
    if len(phi.images) != 2 * sb.genus:
        raise CalculusError("gluing map must give 2*genus images")
    symbols, b_map = _merge_symbols(a.presentation.generators, b.presentation.generators)
    b_rel = [remap(r, b_map) for r in b.presentation.relators]
    b_loops = tuple(remap(w, b_map) for w in sb.loop_words)
    b_mu = remap(sb.mu, b_map)
    images = resolve_gluing(phi, b_loops)
    identifications = [
        loop * image.inverse() for loop, image in zip(sa.loop_words, images)
    ]
    meridian = sa.mu * b_mu.inverse()
    pres = Presentation.make(
        symbols, a.presentation.relators + tuple(b_rel) + tuple(identifications) + (meridian,)
    )
    taken_tori = {t.name for t in a.tori}
    taken_surfaces = {s.name for s in a.surfaces}
    b_tori, b_surfaces = _rename_pieces(b, b_map, taken_tori, taken_surfaces)
    consumed_a = replace(sa, status=PieceStatus.SUMMED)
    consumed_b_name = b_surfaces[[s.name for s in b.surfaces].index(fb)].name
    surfaces = tuple(
        consumed_a if s.name == fa else s for s in a.surfaces
    ) + tuple(
        replace(s, status=PieceStatus.SUMMED) if s.name == consumed_b_name else s
        for s in b_surfaces
    )
    out = ManifoldModel(
        name or f"{a.name}+{b.name}",
        pres,
        tori=a.tori + b_tori,
        surfaces=surfaces,
        e=a.e + b.e + 4,
        sigma=a.sigma + b.sigma,
        exactness=a.exactness.combine(b.exactness),
        odd_form=a.odd_form or b.odd_form,
        log=a.log,
        core_tori=a.core_tori,
    )
    return out.logged(
        LogEntry(
            "sum_genus2_amalgam",
            f"{a.name}.{fa} + {b.name}.{fb} via {phi.name}",
            e_delta=4,
            b1_before=None,
            b1_after=out.b1(),
        )
    )


def sum_genus2_quotient(
    killer: ManifoldModel,
    fk: str,
    target: ManifoldModel,
    ft: str,
    phi: GluingMap,
    parallel: bool = False,
    name: str | None = None,
) -> ManifoldModel:
    """Quotient shortcut for a genus 2 sum.

    When the killer surface meets a sphere once and its surface group
    surjects onto the complement, the sum's group is a quotient of the
    target's by the pushed kernel words; when the killer complement is
    simply connected, by the images of all four surface generators.
    Either way the result is an upper bound model.  With parallel=True
    the sum runs along a parallel copy and the target surface survives.
    """
    if killer.presentation is None or target.presentation is None:
        raise CalculusError("quotient sum needs presentation-level models")
    sk, st = killer.surface(fk), target.surface(ft)
    for s in (sk, st):
        if s.genus != 2 or s.square != 0 or not s.available:
            raise CalculusError("quotient sum needs available square-zero genus 2 surfaces")
    if len(phi.images) != 2 * st.genus:
        raise CalculusError("gluing map must give 2*genus images")
    images = resolve_gluing(phi, st.loop_words)
    if sk.kernel_words and sk.dual_sphere and sk.surjects:
        extra = [substitute(r, images) for r in sk.kernel_words]
        mode = "kernel words"
    elif sk.complement_simply_connected:
        extra = list(images)
        mode = "simply connected complement"
    else:
        raise CalculusError(
            f"killer surface {fk} lacks kernel words or a simply connected complement certificate"
        )
    surfaces = target.surfaces
    if not parallel:
        surfaces = tuple(
            replace(s, status=PieceStatus.SUMMED) if s.name == ft else s
            for s in surfaces
        )
    out = replace(
        target,
        name=name or f"{killer.name}>{target.name}",
        surfaces=surfaces,
        e=target.e + killer.e + 4,
        sigma=target.sigma + killer.sigma,
        exactness=Exactness.UPPER_BOUND,
        odd_form=target.odd_form or killer.odd_form,
    )
    return _append_relators(
        out,
        "sum_genus2_quotient",
        f"{killer.name}.{fk} -> {target.name}.{ft} via {phi.name} ({mode})"
        + (" [parallel copy]" if parallel else ""),
        extra,
        e_delta=killer.e + 4,
        sigma_delta=killer.sigma,
    )


def sum_torus(
    left: ManifoldModel,
    tl: str,
    right: ManifoldModel,
    tr: str,
    phi: GluingMap,
    name: str | None = None,
) -> ManifoldModel:
    """Symplectic sum along square-zero tori.

    Identifies the left push-offs with their images in the right side's
    generators and matches meridians; e and sigma are additive.  The
    right side must carry exact complement data for its torus.
    """
    if left.presentation is None or right.presentation is None:
        raise CalculusError("torus sum needs presentation-level models")
    t_left, t_right = left.torus(tl), right.torus(tr)
    if len(phi.images) != 2:
        raise CalculusError("torus gluing map must give two images")
    if not (t_left.available and t_right.available):
        raise CalculusError("torus sum needs available tori")
    if not t_right.complement_exact:
        raise CalculusError(
            f"torus {tr} on {right.name} lacks the exact complement data flag"
        )
    symbols, r_map = _merge_symbols(left.presentation.generators, right.presentation.generators)
    r_rel = [remap(r, r_map) for r in right.presentation.relators]
    if phi.kind == "slot":
        images = tuple(
            substitute(img, (remap(t_right.m, r_map), remap(t_right.ell, r_map)))
            for img in phi.images
        )
    else:
        images = tuple(remap(img, r_map) for img in phi.images)
    identifications = [
        t_left.m * images[0].inverse(),
        t_left.ell * images[1].inverse(),
        t_left.mu * remap(t_right.mu, r_map).inverse(),
    ]
    pres = Presentation.make(
        symbols, left.presentation.relators + tuple(r_rel) + tuple(identifications)
    )
    taken_tori = {t.name for t in left.tori}
    taken_surfaces = {s.name for s in left.surfaces}
    r_tori, r_surfaces = _rename_pieces(right, r_map, taken_tori, taken_surfaces)
    tr_new = r_tori[[t.name for t in right.tori].index(tr)].name
    tori = tuple(
        replace(t, status=PieceStatus.SUMMED) if t.name == tl else t for t in left.tori
    ) + tuple(
        replace(t, status=PieceStatus.SUMMED) if t.name == tr_new else t for t in r_tori
    )
    out = ManifoldModel(
        name or f"{left.name}#T{right.name}",
        pres,
        tori=tori,
        surfaces=left.surfaces + r_surfaces,
        e=left.e + right.e,
        sigma=left.sigma + right.sigma,
        exactness=left.exactness.combine(right.exactness),
        odd_form=left.odd_form or right.odd_form,
        log=left.log,
        core_tori=left.core_tori,
    )
    return out.logged(
        LogEntry(
            "sum_torus",
            f"{left.name}.{tl} + {right.name}.{tr}",
            e_delta=right.e,
            sigma_delta=right.sigma,
            b1_after=out.b1(),
        )
    )


def certify_trivial_complement(
    model: ManifoldModel, surface_name: str, budget: Budget = DEFAULT_BUDGET
) -> ManifoldModel:
    """Certify pi1 of the current complement trivial and flag the surface."""
    if model.presentation is None:
        raise CalculusError("certification needs a presentation")
    result = classify(model.presentation, budget)
    if result.claim != "trivial":
        raise CalculusError(
            f"complement of {surface_name} not certified trivial (got {result.claim})"
        )
    surface = replace(
        model.surface(surface_name), complement_simply_connected=True
    )
    out = model.replace_surface(surface)
    return out.logged(
        LogEntry("certify", f"complement of {surface_name} certified simply connected")
    )


def form_signature(record: IntersectionFormRecord) -> int:
    """Signature: hyperbolic pairs contribute zero; the odd block is
    diagonalized exactly over the rationals."""
    n = len(record.odd_block)
    m = [[Fraction(x) for x in row] for row in record.odd_block]
    alive = list(range(n))
    pos = neg = 0
    while alive:
        pivot = next((i for i in alive if m[i][i] != 0), None)
        if pivot is None:
            off = None
            for i in alive:
                for j in alive:
                    if i != j and m[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                break  # all-zero block contributes nothing
            i, j = off
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            continue
        d = m[pivot][pivot]
        if d > 0:
            pos += 1
        else:
            neg += 1
        alive.remove(pivot)
        for i in alive:
            factor = m[i][pivot] / d
            if factor:
                for k in range(n):
                    m[i][k] -= factor * m[pivot][k]
                for k in range(n):
                    m[k][i] -= factor * m[k][pivot]
    return pos - neg


def form_determinant(record: IntersectionFormRecord) -> int:
    from .models import _int_det

    return _int_det(record.odd_block)


@dataclass(frozen=True)
class CharacteristicReport:
    e: int
    sigma: int
    b1: int | None
    h1: AbelianGroup | None
    closed: bool
    b2: int | None
    chi_h: Fraction
    chi_h_integral: bool
    c1sq: int
    freedman: tuple[int, int] | None

    def freedman_label(self) -> str | None:
        if self.freedman is None:
            return None
        m, n = self.freedman
        return f"{m}CP^2 # {n}CP^2-bar"


def characteristic_report(
    model: ManifoldModel,
    budget: Budget = DEFAULT_BUDGET,
    certificate: Certificate | None = None,
    compute_certificate: bool = True,
) -> CharacteristicReport:
    """Betti/homology numbers plus the geography and homeomorphism data.

    b2 and the Freedman type need a closed model; the Freedman pair is
    populated only under a trivial-group certificate with an odd form.
    With compute_certificate=False and no certificate supplied the
    Freedman field stays absent rather than triggering classification.
    """
    h1 = model.h1()
    b1 = None if h1 is None else h1.free_rank
    closed = model.is_closed()
    b2 = model.e - 2 + 2 * b1 if closed and b1 is not None else None
    chi_h = Fraction(model.e + model.sigma, 4)
    c1sq = 2 * model.e + 3 * model.sigma
    freedman = None
    if closed and model.odd_form:
        cert = certificate
        if cert is None and compute_certificate and model.presentation is not None:
            cert = classify(model.presentation, budget).certificate
        if cert is not None and cert.claim == "trivial":
            m = (model.e + model.sigma - 2) // 2
            n = (model.e - model.sigma - 2) // 2
            freedman = (m, n)
    return CharacteristicReport(
        e=model.e,
        sigma=model.sigma,
        b1=b1,
        h1=h1,
        closed=closed,
        b2=b2,
        chi_h=chi_h,
        chi_h_integral=chi_h.denominator == 1,
        c1sq=c1sq,
        freedman=freedman,
    )
