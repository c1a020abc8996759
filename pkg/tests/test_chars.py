from __future__ import annotations

from math import comb, factorial

import pytest

from wmult import chars, oracle
from wmult.errors import InvalidInput
from wmult.rootsys import GroupId


def test_natural_tensor_power():
    # V^{(x)d} with n >= d: the zero-ish weight e1+...+ed has d! preimages
    for d in (1, 2, 3):
        g = GroupId("A", 3, 5)
        assert chars.tensor_power(chars.natural_char(g), d).wdeg() == factorial(d)


def test_wedges():
    g = GroupId("A", 4, 2)
    for i in range(1, 5):
        chi = chars.wedge_char(g, i)
        assert chi.dim() == comb(5, i) and chi.wdeg() == 1
        assert chi == oracle.simple_char(g, tuple(int(j == i - 1) for j in range(4)))


def test_truncated_sym():
    g = GroupId("A", 2, 3)
    chi = chars.truncated_sym_char(g, 2)
    assert chi.dim() == 6 and chi.highest_weight() == (2, 0) and chi.wdeg() == 1
    g4 = GroupId("A", 4, 3)
    assert chars.truncated_sym_char(g4, 2) == oracle.simple_char(g4, (2, 0, 0, 0))
    # degree 3 at p = 3 is (p-1-a) w_k + a w_{k+1} with k = 1, a = 1
    assert chars.truncated_sym_weight(g4, 3) == (1, 1, 0, 0)


def test_spin_and_oscillator():
    assert chars.spin_char(GroupId("B", 3, 3)).dim() == 8
    assert chars.spin_char(GroupId("B", 4, 3)).dim() == 16
    d4 = GroupId("D", 4, 3)
    assert chars.spin_char(d4, "even").dim() == 8
    assert chars.spin_char(d4, "even").highest_weight() == (0, 0, 0, 1)
    even, odd = chars.oscillator_chars(GroupId("C", 2, 3))
    assert (even.dim(), odd.dim()) == (5, 4)
    assert even.highest_weight() == (0, 1)
    g = GroupId("C", 3, 5)
    even, odd = chars.oscillator_chars(g)
    assert even == oracle.simple_char(g, (0, 0, 2))
    assert odd == oracle.simple_char(g, (0, 1, 1))


def test_c2_family():
    g = GroupId("C", 3, 2)
    assert chars.c2_spin_char(g).dim() == 8
    assert chars.c2_q_char(g).wdeg() == 2
    assert chars.c2_spin_char(g) == oracle.simple_char(g, (0, 0, 1))


def test_ring_operations():
    g = GroupId("A", 3, 3)
    v = chars.natural_char(g)
    assert chars.dual(v).highest_weight() == (0, 0, 1)
    assert chars.trivial_char(g).wdeg() == 1
    tw = chars.frobenius_twist(v, 2)
    assert tw.highest_weight() == (9, 0, 0) and tw.dim() == 4
    assert (v + v - v) == v
    assert chars.tensor(v, chars.dual(v)).is_weyl_invariant()


def test_known_simple_char_matches_oracle():
    cases = [(GroupId("A", 3, 3), (2, 1, 0)), (GroupId("A", 3, 2), (1, 0, 1)),
             (GroupId("B", 3, 3), (1, 0, 1)), (GroupId("C", 3, 3), (0, 1, 0)),
             (GroupId("A", 2, 3), (4, 0))]
    for g, lam in cases:
        known = chars.known_simple_char(g, lam)
        if known is not None:
            assert known == oracle.simple_char(g, lam)
    assert chars.known_simple_char(GroupId("A", 3, 3), (1, 1, 1)) is None


def test_builder_errors():
    with pytest.raises(InvalidInput):
        chars.build("nope", GroupId("A", 2, 3))
    with pytest.raises(InvalidInput):
        chars.spin_char(GroupId("D", 4, 3))
    with pytest.raises(InvalidInput):
        chars.oscillator_chars(GroupId("C", 3, 2))


def test_json_roundtrip_shape():
    chi = chars.natural_char(GroupId("B", 3, 3))
    j = chi.to_json()
    assert j["mode"] == "full" and j["dim"] == 7 and j["entries"][0]["weight"] == [1, 0, 0]
    assert chi.to_json(dominant_only=True)["entries"] == [
        {"weight": [1, 0, 0], "mult": 1}, {"weight": [0, 0, 0], "mult": 1}]
