"""Oracle values are frozen from facts that do not use the Gram machinery:
classical dimension formulas for small modular simples and Weyl's formula."""
from __future__ import annotations

import itertools

import pytest

from wmult import oracle
from wmult.errors import InvalidInput, OracleRefusal
from wmult.rootsys import GroupId


def test_a2_p3_adjoint():
    g = GroupId("A", 2, 3)
    chi = oracle.simple_char(g, (1, 1))
    assert chi.dim() == 7 and chi.wdeg() == 1
    zero = [r for r in oracle.gram_reports(g, (1, 1)) if r.weight == (0, 0)][0]
    assert (zero.rank_q, zero.rank_p) == (2, 1)


@pytest.mark.parametrize("g,lam,dim,wdeg", [
    # adjoint of sl_4 with p | 4: dimension 14, zero weight 2
    (GroupId("A", 3, 2), (1, 0, 1), 14, 2),
    # Lambda^2 of the natural Sp_6 module, p = 2 does not divide 3
    (GroupId("C", 3, 2), (0, 1, 0), 14, 2),
    # B_3 adjoint with p = 3 is irreducible of dimension 21
    (GroupId("B", 3, 3), (0, 1, 0), 21, 3),
    # natural module of B_3 and the Steinberg module of A_2 at p = 2
    (GroupId("B", 3, 3), (1, 0, 0), 7, 1),
    (GroupId("A", 2, 2), (1, 1), 8, 2),
    # C_2 natural (dimension 4) and L(w2) at p = 2 (dimension 4)
    (GroupId("C", 2, 2), (1, 0), 4, 1),
    (GroupId("C", 2, 2), (0, 1), 4, 1),
])
def test_known_dimensions(g, lam, dim, wdeg):
    chi = oracle.simple_char(g, lam)
    assert (chi.dim(), chi.wdeg()) == (dim, wdeg)


def test_weyl_dimension_values():
    assert oracle.weyl_dimension(GroupId("A", 2, 3), (1, 1)) == 8
    assert oracle.weyl_dimension(GroupId("B", 3, 3), (0, 0, 1)) == 8
    assert oracle.weyl_dimension(GroupId("C", 3, 3), (0, 0, 1)) == 14
    assert oracle.weyl_dimension(GroupId("D", 4, 3), (0, 1, 0, 0)) == 28


def test_freudenthal_agrees_with_weyl():
    for f, n in (("A", 3), ("B", 3), ("C", 3), ("D", 4)):
        g = GroupId(f, n, 3)
        for lam in itertools.product(range(2), repeat=n):
            assert oracle.freudenthal_char(g, lam).dim() == oracle.weyl_dimension(g, lam)


def test_large_p_is_characteristic_zero():
    g = GroupId("A", 3, 23)
    for lam in ((1, 1, 0), (2, 0, 0), (1, 0, 1)):
        assert oracle.simple_char(g, lam) == oracle.freudenthal_char(g, lam)


def test_steinberg_switch():
    g = GroupId("A", 2, 2)
    for lam in ((2, 0), (3, 1), (2, 2)):
        assert oracle.simple_char(g, lam, steinberg=False) == oracle.simple_char(g, lam)


def test_rank_p_bounded_by_rank_q():
    g = GroupId("D", 4, 2)
    for rep in oracle.gram_reports(g, (0, 1, 0, 0)):
        assert rep.rank_p <= rep.rank_q == rep.weyl_mult


def test_refusal_and_bad_input():
    with pytest.raises(OracleRefusal):
        oracle.simple_char(GroupId("A", 3, 5), (2, 2, 2), oracle.OracleLimits(max_weyl_dim=10))
    with pytest.raises(InvalidInput):
        oracle.simple_char(GroupId("A", 2, 3), (-1, 0))


def test_gram_report_json():
    rep = oracle.gram_reports(GroupId("A", 2, 3), (1, 1))[0]
    j = rep.to_json(with_matrix=True)
    assert set(j) >= {"weight", "rank_q", "rank_p", "gram"}
