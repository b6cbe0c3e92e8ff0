from luttinger.coset import todd_coxeter
from luttinger.presentations import Presentation
from luttinger.words import parse_word


def test_cyclic_order():
    p = Presentation.parse("x", ["x^3"])
    assert todd_coxeter(p).index == 3


def test_trivial_group():
    p = Presentation.parse("x y", ["x", "y"])
    assert todd_coxeter(p).index == 1


def test_symmetric_group_s3():
    p = Presentation.parse("a b", ["a^2", "b^3", "(a*b)^2"])
    assert todd_coxeter(p).index == 6


def test_quaternion_group():
    p = Presentation.parse("i j", ["i^4", "i^2*j^-2", "j^-1*i*j*i"])
    assert todd_coxeter(p).index == 8


def test_alternating_a5():
    p = Presentation.parse("a b", ["a^2", "b^3", "(a*b)^5"])
    assert todd_coxeter(p).index == 60


def test_subgroup_index():
    p = Presentation.parse("a b", ["a^2", "b^3", "(a*b)^2"])
    sub = [parse_word("b", ("a", "b"))]
    assert todd_coxeter(p, sub).index == 2


def test_direct_product_z2_z3_z4():
    p = Presentation.parse(
        "x y z", ["x^2", "y^3", "z^4", "[x,y]", "[x,z]", "[y,z]"]
    )
    assert todd_coxeter(p).index == 24


def test_budget_exceeded_on_infinite_group():
    p = Presentation.parse("a b", [])
    res = todd_coxeter(p, max_cosets=50)
    assert res.index is None
    assert res.exceeded


def test_budget_exceeded_is_not_a_wrong_answer():
    # starved budget on a finite group gives Exceeded, not a bad index
    p = Presentation.parse("a b", ["a^2", "b^3", "(a*b)^5"])
    res = todd_coxeter(p, max_cosets=10)
    assert res.index is None or res.index == 60


def test_no_generators():
    p = Presentation.parse([], [])
    assert todd_coxeter(p).index == 1


def test_nontrivial_abelianization_never_index_one():
    for rels in (["x^2"], ["x^4", "[x,y]"], ["x*y*x^-1*y^-1"]):
        p = Presentation.parse("x y", rels)
        res = todd_coxeter(p, max_cosets=2000)
        if res.index is not None:
            assert res.index > 1
