from fractions import Fraction

import pytest

from fuzzitop.carrier import CarrierError
from fuzzitop.maps import continuity_degrees, openness_degrees
from fuzzitop.named import discrete, graded_pair, sierpinski
from fuzzitop.product import product_space
from fuzzitop.space import crisp_spaces, random_space


def test_labels_and_order():
    p = product_space([graded_pair(), sierpinski()])
    assert p.carrier.points == ("a|a", "a|b", "b|a", "b|b")


def test_discrete_product_is_discrete():
    p = product_space([discrete(2), discrete(2)])
    assert all(v == 1 for v in p.tau_p.deg)


def test_whole_space_and_cylinders():
    p = product_space([sierpinski(), sierpinski()])
    assert p.tau_p(p.carrier.full) == 1
    q = product_space([graded_pair(), graded_pair()])
    assert q.tau_p(q.cylinder(0, 0b01)) == Fraction(3, 4)
    assert q.beta_p(q.box([0b01, 0b10])) == Fraction(1, 2)


def test_projections_are_pre_open_and_pre_continuous():
    twos = list(crisp_spaces(2)) + [graded_pair()]
    threes = list(crisp_spaces(3))
    for left in twos:
        for right in twos + threes:
            p = product_space([left, right])
            for s, factor in enumerate(p.factors):
                proj = p.projection(s)
                assert continuity_degrees(proj, p, factor)[1] == 1
                assert openness_degrees(proj, p, factor)[1] == 1


def test_cap():
    with pytest.raises(CarrierError):
        product_space([random_space(4, 2, 0), random_space(4, 2, 1)])
    with pytest.raises(CarrierError):
        product_space([graded_pair()])
