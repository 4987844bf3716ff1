import pytest
from hypothesis import given, strategies as st

from fuzzitop.named import graded_pair, sierpinski
from fuzzitop.nets import (
    DirectednessError, ExplicitNet, FiniteNet, NetRep, adh_p, all_nets, beta2, beta3, beta4,
    eventually_periodic_nets, is_universal, oracle_net_predicates, pre_accumulates, pre_converges,
    subnet_reps, subnet_witness,
)
from fuzzitop.preopen import cl_p
from fuzzitop.space import random_space


def test_kernel_predicates():
    net = NetRep(0b011)
    assert net.almost_in(0b111) and not net.almost_in(0b001)
    assert net.often_in(0b001) and not net.often_in(0b100)
    with pytest.raises(Exception):
        NetRep(0)


def test_constant_net_converges_in_s1():
    s1 = sierpinski()
    assert pre_converges(s1, NetRep(0b01), 0) == 1
    # the constant net at a also converges to b: every pre-open set around b is X
    assert pre_converges(s1, NetRep(0b01), 1) == 1
    assert pre_converges(s1, NetRep(0b10), 0) == 0


def test_explicit_net_tails():
    net = ExplicitNet((2,), (0, 1))
    assert net(0) == 2 and net(1) == 0 and net(4) == 1
    assert net.cofinal_values() == 0b011
    assert net.almost_in(0b011) and not net.almost_in(0b001)
    assert net.often_in(0b001) and not net.often_in(0b100)


def test_finite_net_directedness():
    with pytest.raises(DirectednessError):
        FiniteNet.build(["p", "q"], [], {"p": 0, "q": 1})
    net = FiniteNet.build(["p", "q", "top"], [("p", "top"), ("q", "top")], {"p": 0, "q": 1, "top": 1})
    assert net.almost_in(0b10) and not net.often_in(0b01)


def test_kernel_reduction_matches_explicit_nets():
    for s in (sierpinski(), graded_pair(), random_space(3, 4, 5)):
        for net in eventually_periodic_nets(s.n, 1, 3):
            rep = NetRep(net.cofinal_values())
            for x in range(s.n):
                assert oracle_net_predicates(s, net, x) == (pre_converges(s, rep, x), pre_accumulates(s, rep, x))


@given(st.integers(0, 2), st.lists(st.integers(0, 2), min_size=1, max_size=4), st.data())
def test_subnet_witness(prefix_len, cycle, data):
    net = ExplicitNet(tuple(cycle[:1]) * prefix_len, tuple(cycle))
    cof = net.cofinal_values()
    kernel = data.draw(st.integers(1, cof).filter(lambda k: k & ~cof == 0))
    sub, index = subnet_witness(net, kernel)
    ks = [index(k) for k in range(30)]
    assert all(a < b for a, b in zip(ks, ks[1:]))
    assert all(net(index(k)) == sub(k) for k in range(30))
    assert sub.cofinal_values() == kernel


@given(st.integers(1, 3), st.integers(0, 5000))
def test_adherence_is_preclosure(n, seed):
    s = random_space(n, 6, seed)
    for net in all_nets(s.carrier):
        assert adh_p(s, net) == cl_p(s, net.kernel)


def test_universal_nets_and_betas():
    assert is_universal(NetRep(0b100)) and not is_universal(NetRep(0b101))
    assert sorted(r.kernel for r in subnet_reps(NetRep(0b101))) == [1, 4, 5]
    for s in (sierpinski(), graded_pair(), random_space(4, 6, 2)):
        assert beta2(s) == beta3(s) == beta4(s) == 1
