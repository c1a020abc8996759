from __future__ import annotations

import pytest

from wmult import inductive
from wmult.errors import InvalidInput
from wmult.weights import omega


def win(text, fam, p, n_max=6):
    return inductive.realize(inductive.parse_descriptor(text, fam, p), n_max=n_max)


def test_parse_and_format():
    d = inductive.parse_descriptor("CL[1,0] * Fr^2(L)", "A", 3)
    assert d.depth == 2
    assert inductive.format_descriptor(d) == "CL[1,0] * Fr^2(L)"
    assert inductive.format_descriptor(inductive.parse_descriptor("L^3*Fr(R^2)", "A", 5)) == "L^3 * Fr(R^2)"


@pytest.mark.parametrize("text,fam,p", [
    ("F", "B", 3), ("S", "A", 3), ("S", "C", 2), ("Q", "C", 3), ("CL[3]", "A", 3),
    ("L * Fr(L) * Fr(O)", "A", 3), ("Fr(L", "A", 3), ("X", "A", 3),
])
def test_parse_rejects(text, fam, p):
    with pytest.raises(InvalidInput):
        inductive.parse_descriptor(text, fam, p)


def test_named_levels():
    f = win("F", "A", 3, 4)
    assert f[3] == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)}
    s = win("S", "C", 3, 4)
    assert s[3] == {(0, 0, 1), (0, 1, 0)}
    assert inductive.delta_system(f) == 1
    assert inductive.delta_system(win("T", "A", 5, 4)) == 4


def test_cl_window_and_closure():
    w = win("CL[0,1]", "A", 3, 5)
    # closure under restriction forces omega_1 and 0 next to omega_2
    assert w[4] == {(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0)}
    assert all(v is True for v in inductive.check_closure(w).values())
    assert w.checks["stability"]["status"] == "stable on the requested levels"


def test_generate_matches_f():
    gen = inductive.generate(lambda t: [omega(t, (t + 1) // 2)], "A", 3, top=10)
    f = win("F", "A", 3, 8)
    stable = gen.checks["stability"]["stable_upto"]
    assert stable >= 3
    for n in range(1, stable + 1):
        assert gen[n] == f[n]


def test_generate_needs_room():
    with pytest.raises(InvalidInput):
        inductive.generate({3: [(0, 1, 0)]}, "A", 3, top=2)


def test_window_algebra():
    f, t = win("F", "A", 3, 7), win("T", "A", 3, 7)
    u = inductive.union(f, t)
    d = inductive.difference(u, f)
    for n in d.levels:
        assert d[n] == t[n]
    with pytest.raises(InvalidInput):
        inductive.difference(f, u)
    tw = inductive.fr_twist(f)
    assert tw[2] == {(0, 0), (3, 0), (0, 3)}


def test_tensor_windows():
    a = win("L * Fr(S)", "B", 3, 4)
    assert a[3] == {(0, 0, 3), (1, 0, 3)}


def test_q1():
    assert inductive.q1_level() == {(0,), (1,), (2,)}


def test_enumeration_counts():
    assert len(inductive.enumerate_bwm("B", 3, 1).descriptors) == 9
    assert len(inductive.enumerate_bwm("C", 2, 1).descriptors) == 12
    assert len(inductive.enumerate_bwm("A", 2, 0).descriptors) == 6
    j = inductive.enumerate_bwm("D", 5, 1).to_json()
    assert j["count"] == 9


def test_bwm_examples():
    v = inductive.bwm_check(inductive.parse_descriptor("L * Fr(S)", "B", 3), n_max=5)
    assert (v.kind, v.max_wdeg) == ("bounded", 1)
    v = inductive.bwm_check(inductive.parse_descriptor("S' * Fr(L)", "C", 2), n_max=4)
    assert v.kind == "unbounded" and [c["lower"] for c in v.certificate] == [4, 8, 12, 16]
    v = inductive.bwm_check(inductive.parse_descriptor("CL[1] * Fr(CR[1])", "A", 2), n_max=5)
    assert v.kind == "bounded"
    v = inductive.bwm_check(inductive.parse_descriptor("CL[1,1] * Fr(CR[1])", "A", 2), n_max=5)
    assert v.kind == "unbounded"


def test_json_is_deterministic():
    a = win("L * Fr(S)", "B", 3, 4).to_json()
    b = win("L * Fr(S)", "B", 3, 4).to_json()
    assert a == b and list(a["levels"]) == ["2", "3", "4"]
