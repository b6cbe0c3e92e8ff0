import pytest

from luttinger.abelian import AbelianGroup
from luttinger.blocks import make_block
from luttinger.calculus import fill_all
from luttinger.models import (
    Exactness,
    GluingMap,
    IntersectionFormRecord,
    ManifoldModel,
    TrackedSurface,
    TrackedTorus,
)
from luttinger.presentations import Presentation
from luttinger.words import Word


def test_piece_lookup_errors():
    z = make_block("Z")
    with pytest.raises(KeyError):
        z.torus("T9")
    with pytest.raises(KeyError):
        z.surface("G")


def test_words_validated_against_generators():
    p = Presentation.parse("a", [])
    bad = TrackedTorus("T", Word.gen(3), Word.gen(0), Word.gen(0))
    with pytest.raises(ValueError):
        ManifoldModel("bad", p, tori=(bad,))


def test_surface_loop_count_validation():
    with pytest.raises(ValueError):
        TrackedSurface("F", genus=2, square=0, loop_words=(Word.gen(0),), mu=Word())


def test_closedness():
    z = make_block("Z")
    assert not z.is_closed()
    assert fill_all(z).is_closed()


def test_exactness_combine():
    assert Exactness.EXACT.combine(Exactness.EXACT) is Exactness.EXACT
    assert Exactness.EXACT.combine(Exactness.UPPER_BOUND) is Exactness.UPPER_BOUND
    assert Exactness.UPPER_BOUND.combine(Exactness.EXACT) is Exactness.UPPER_BOUND


def test_gluing_map_requires_unimodular_matrix():
    images = (Word.gen(0), Word.gen(1))
    with pytest.raises(ValueError):
        GluingMap("bad", images, ((2, 0), (0, 1)))
    GluingMap("ok", images, ((0, 1), (1, 0)))  # determinant -1 is fine


def test_intersection_form_symmetry_validation():
    with pytest.raises(ValueError):
        IntersectionFormRecord(0, ((0, 1), (2, 0)), ("a", "b"))


def test_h1_of_abelian_level_model():
    model = ManifoldModel(
        "lattice", presentation=None, h1_rank=3,
        h1_relations=((2, 0, 0), (0, 0, 1)),
    )
    assert model.h1() == AbelianGroup(1, (2,))
    assert model.b1() == 1


def test_format_word_through_model():
    z = make_block("Z")
    assert z.format_word(z.word("[x,y]")) == "[x,y]"
