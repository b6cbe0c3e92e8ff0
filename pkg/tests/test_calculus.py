from fractions import Fraction

import pytest

from luttinger.abelian import AbelianGroup, abelianize
from luttinger.blocks import make_block, standard_gluings, torus_gluing
from luttinger.calculus import (
    CalculusError,
    SurgerySpec,
    blow_up,
    certify_trivial_complement,
    characteristic_report,
    fill_all,
    fill_surface,
    form_signature,
    sum_genus2_amalgam,
    sum_genus2_quotient,
    sum_torus,
    torus_surgery,
)
from luttinger.models import Exactness, IntersectionFormRecord, PieceStatus


def test_surgery_relator_theorem_cool_first_step():
    z = make_block("Z")
    out = torus_surgery(z, SurgerySpec("T1'", p=1, q=1, a=1, b=0))
    # relator mu * m = [a2^-1,a1^-1] * b1^-1, i.e. b1 = [a2^-1,a1^-1]
    added = out.log[-1].relators_added
    assert added == ("[a2^-1,a1^-1]*b1^-1",) or added == (
        z.format_word(z.word("[a2^-1,a1^-1]*b1^-1")),
    )
    assert out.torus("T1'").status is PieceStatus.SURGERED
    assert (out.e, out.sigma) == (z.e, z.sigma)


def test_surgery_relator_theorem_zz_step():
    z = make_block("Z")
    out = torus_surgery(z, SurgerySpec("T1", p=-1, q=1, a=1, b=0))
    expected = z.word("[b1^-1,y^-1]") ** -1 * z.word("x")
    assert out.presentation.relators[-1].cyclic_reduce().letters() in {
        r.letters() for r in out.presentation.relators
    }
    assert abelianize(out.presentation).free_rank == 5


def test_trivial_filling_keeps_homology():
    z = make_block("Z")
    out = torus_surgery(z, SurgerySpec("T1", p=1, q=0))
    assert abelianize(out.presentation) == abelianize(z.presentation)


def test_surgery_errors():
    z = make_block("Z")
    with pytest.raises(CalculusError):
        SurgerySpec("T1", p=2, q=4)
    with pytest.raises(CalculusError):
        SurgerySpec("T1", p=1, q=1, a=2, b=2)
    with pytest.raises(KeyError):
        torus_surgery(z, SurgerySpec("T9", p=1, q=1))
    once = torus_surgery(z, SurgerySpec("T1", p=1, q=1))
    with pytest.raises(CalculusError):
        torus_surgery(once, SurgerySpec("T1", p=1, q=1))


def test_nullhomologous_core_recorded():
    z = make_block("Z")
    out = torus_surgery(z, SurgerySpec("T4", p=-1, q=1, a=1, b=0))
    assert out.core_tori == (("T4", "[x^-1,b2]"),)


def test_fill_surface_adds_meridian():
    m = make_block("M")
    out = fill_surface(m, "F")
    assert out.log[-1].relators_added == ("[x,y]",)
    assert out.surface("F").status is PieceStatus.FILLED
    assert (out.e, out.sigma) == (m.e, m.sigma)


def test_e_sigma_of_quotient_sums():
    w1, w2, m = make_block("W1"), make_block("W2"), make_block("M")
    maps = standard_gluings()
    s = sum_genus2_quotient(w1, "F1", w2, "F2", maps["identity4"])
    assert (s.e, s.sigma) == (10, -6)
    v = sum_genus2_quotient(w1, "F1", m, "F", maps["theorem-five"])
    assert (v.e, v.sigma) == (8, -4)


def test_quotient_sum_relators_theorem_seven():
    w1, w2 = make_block("W1"), make_block("W2")
    s = sum_genus2_quotient(w1, "F1", w2, "F2", standard_gluings()["identity4"])
    added = set(s.log[-1].relators_added)
    assert added == {"s1*s2", "t1*t2", "[s1,t1]"}
    assert s.exactness is Exactness.UPPER_BOUND


def test_quotient_sum_relators_theorem_five():
    w1, m = make_block("W1"), make_block("M")
    v = sum_genus2_quotient(w1, "F1", m, "F", standard_gluings()["theorem-five"])
    added = set(v.log[-1].relators_added)
    assert added == {"b1^-1*a2", "b1*a1*b1^-1*b2", "[a1,b1]"}


def test_quotient_requires_killer_certificates():
    m1, m2 = make_block("M"), make_block("M")
    with pytest.raises(CalculusError):
        sum_genus2_quotient(m1, "F", m2, "F", standard_gluings()["identity4"])


def test_amalgam_exactness_and_numbers():
    w1, w2 = make_block("W1"), make_block("W2")
    s = sum_genus2_amalgam(w1, "F1", w2, "F2", standard_gluings()["identity4"])
    assert (s.e, s.sigma) == (10, -6)
    assert s.exactness is Exactness.EXACT
    # quotient of Z s1 + Z t1: the amalgam abelianizes to rank 2
    assert abelianize(s.presentation) == AbelianGroup(2)
    # the carried tori keep their words in the combined alphabet
    assert {t.name for t in s.tori} == {"T1'", "T2'"}


def test_amalgam_of_two_copies_renames_cleanly():
    w2a, w2b = make_block("W2"), make_block("W2")
    s = sum_genus2_amalgam(w2a, "F2", w2b, "F2", standard_gluings()["identity4"])
    assert len(s.presentation.generators) == 8
    assert len({t.name for t in s.tori}) == 4


def test_blow_up():
    hxk = make_block("HxK")
    out = blow_up(blow_up(hxk))
    assert (out.e, out.sigma) == (2, -2)  # the twice blown up four-torus
    assert out.odd_form
    assert abelianize(out.presentation) == abelianize(hxk.presentation)
    four = blow_up(blow_up(out))
    assert (four.e, four.sigma) == (4, -4)


def test_form_signature_cases():
    hyperbolic = IntersectionFormRecord(1, (), ())
    assert form_signature(hyperbolic) == 0
    diag = IntersectionFormRecord(0, ((-1, 0), (0, -1)), ("a", "b"))
    assert form_signature(diag) == -2
    z = make_block("Z")
    assert form_signature(z.form) == -2


def test_characteristic_report_open_model():
    z = make_block("Z")
    report = characteristic_report(z)
    assert not report.closed
    assert report.b2 is None
    assert report.b1 == 6
    assert report.chi_h == Fraction(1)
    assert report.c1sq == 2 * 6 + 3 * -2


def test_characteristic_report_closed_trivial_fill():
    z = fill_all(make_block("Z"))
    report = characteristic_report(z)
    assert report.closed
    assert report.b1 == 6
    assert report.b2 == 6 - 2 + 2 * 6
    assert report.freedman is None  # group is Z^6, no trivial certificate


def test_freedman_consistency_identity():
    # m + n = e - 2 and m - n = sigma whenever populated
    for e, sigma in [(6, -2), (10, -6), (8, -4), (10, -2), (16, -4)]:
        m = (e + sigma - 2) // 2
        n = (e - sigma - 2) // 2
        assert m + n == e - 2
        assert m - n == sigma


def test_certify_trivial_complement_flags_surface():
    # after the six surgeries of the main construction the complement of F
    # is simply connected; certification flags it for ontolem2-style sums
    z = make_block("Z")
    steps = [
        SurgerySpec("T1'", 1, 1, 1, 0),
        SurgerySpec("T1", -1, 1, 1, 0),
        SurgerySpec("T2", -1, 1, 0, 1),
        SurgerySpec("T2'", 1, 1, 0, 1),
        SurgerySpec("T3", -1, 1, 0, 1),
        SurgerySpec("T4", -1, 1, 1, 0),
    ]
    for spec in steps:
        z = torus_surgery(z, spec)
    x = certify_trivial_complement(z, "F")
    assert x.surface("F").complement_simply_connected


def test_sum_torus_requires_exact_flag():
    a = make_block("M")
    b = make_block("M")
    phi = torus_gluing("id", b.word("x"), b.word("y"), 6)
    with pytest.raises(CalculusError):
        sum_torus(a, "T1", b, "T2", phi)
