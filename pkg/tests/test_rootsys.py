from __future__ import annotations

import itertools
from math import factorial

import pytest

from wmult.errors import InvalidInput
from wmult.rootsys import (
    GroupId, build_root_system, delta, delta_any, dominant_conjugate, dominates,
    fw_to_eps, eps_to_fw, pairing, reflect, weyl_group_order, weyl_orbit,
)


def G(f, n, p=3):
    return GroupId(f, n, p)


@pytest.mark.parametrize("bad", [("E", 3, 3), ("A", 0, 3), ("D", 3, 3), ("B", 1, 3), ("A", 2, 4), ("B", 3, 2)])
def test_group_guards(bad):
    with pytest.raises(InvalidInput):
        GroupId(*bad)


def test_parse_group():
    assert GroupId.parse("c_3", 2) == GroupId("C", 3, 2)
    with pytest.raises(InvalidInput):
        GroupId.parse("A", 2)


@pytest.mark.parametrize("f,n,count", [("A", 3, 6), ("B", 3, 9), ("C", 3, 9), ("D", 4, 12), ("A", 4, 10)])
def test_positive_root_counts(f, n, count):
    assert len(build_root_system(G(f, n)).positive_roots) == count


@pytest.mark.parametrize("f,n", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("B", 2)])
def test_cartan_against_pairings(f, n):
    rs = build_root_system(G(f, n))
    g = G(f, n)
    for j in range(n):
        for i in range(n):
            # <omega_i, alpha_j^vee> = delta_ij
            e = tuple(int(i == k) for k in range(n))
            assert pairing(g, e, rs.simple_roots[j]) == int(i == j)


def test_delta_examples():
    # <w1+w3, a1+a2+a3> = 2 on A_3, and <w3, 2e1> = 1 on C_3
    assert delta(G("A", 3), (1, 0, 1)) == 2
    assert delta(G("C", 3), (0, 0, 1)) == 1
    assert delta(G("A", 5), (1, 0, 2, 0, 0)) == 3


def test_delta_is_max_over_orbit():
    for f, n in (("A", 3), ("B", 3), ("C", 3), ("D", 4)):
        g = G(f, n)
        rs = build_root_system(g)
        for lam in itertools.product(range(2), repeat=n):
            best = max(pairing(g, mu, rs.max_root) for mu in weyl_orbit(g, lam))
            assert best == delta(g, lam)


def test_orbit_sizes():
    assert len(weyl_orbit(G("B", 3), (0, 0, 1))) == 8
    assert len(weyl_orbit(G("A", 3), (1, 0, 0))) == 4
    assert len(weyl_orbit(G("D", 4), (0, 0, 0, 1))) == 8
    # a regular weight has a free orbit
    for f, n in (("A", 3), ("B", 3), ("C", 3)):
        g = G(f, n)
        assert len(weyl_orbit(g, (1,) * n)) == weyl_group_order(g)


def test_weyl_orders():
    assert weyl_group_order(G("A", 4)) == factorial(5)
    assert weyl_group_order(G("B", 3)) == 48
    assert weyl_group_order(G("D", 4)) == 192


def test_eps_round_trip_and_reflection():
    for f, n in (("A", 3), ("B", 3), ("C", 4), ("D", 4)):
        g = G(f, n)
        for lam in itertools.product(range(-1, 2), repeat=n):
            assert eps_to_fw(g, fw_to_eps(g, lam)) == lam
            for i in range(n):
                assert reflect(g, reflect(g, lam, i), i) == lam
            mu = dominant_conjugate(g, lam)
            assert min(mu) >= 0 and mu in weyl_orbit(g, lam)


def test_dominance():
    g = G("A", 2)
    assert dominates(g, (1, 1), (0, 0))
    assert not dominates(g, (1, 0), (0, 1))
    # the linear pairing on a non-dominant weight is not the orbit maximum
    assert delta_any(g, (-1, 2)) == 1
    assert delta(g, dominant_conjugate(g, (-1, 2))) == 2
