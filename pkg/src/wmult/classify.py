"""Which simple modules have all weight multiplicities 1, and what is known
about the largest weight multiplicity (wdeg) of the others.

Bound sources are tagged with short names:

    omega-classification   wdeg = 1 exactly on the Omega sets (rank >= 4)
    bcd-rank-bound         wdeg >= n - 4 - (n mod 4) outside Omega, types B/C/D, n >= 8
    c2-layer-count         p = 2, type C: wdeg = 2^l or the rank bound, n >= 8
    pdeg-interval          type A restricted, d = min pdeg <= n: d - 2 <= wdeg <= d!
    pdeg-lower             type A restricted, pdeg <= n: wdeg >= pdeg - 2
    sqrt-bound             type A restricted, n >= 16, d > n: wdeg > sqrt(n)/p - 1
    kleshchev-chain        type A restricted, support j..k: wdeg >= f(support) >= k - j
    tensor-product         twisted layers: wdeg >= product of the layer lower bounds
    twisted-product-cap    type A twisted products of small-degree blocks: wdeg <= prod d_j!
    split-tensor-growth    type A, M (x) N^[j+1] with far-apart supports: wdeg >= l - i - 1
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, isqrt

from .errors import InvalidInput
from .rootsys import GroupId, check_weight, delta
from .weights import (dual_weight, format_weight, is_p_restricted, omega, pdeg,
                      steinberg_decompose, support)


# -- Omega sets --------------------------------------------------------------------

def omega_p_set(g: GroupId) -> set:
    """The restricted highest weights with all multiplicities 1, as displayed."""
    n, p, fam = g.rank, g.p, g.family
    zero = (0,) * n
    out = {zero}
    if fam == "A":
        for k in range(1, n + 1):
            out.add(omega(n, k))
        for k in range(0, n + 1):
            for a in range(p):
                w = [0] * n
                if 1 <= k <= n:
                    w[k - 1] += p - 1 - a
                if k + 1 <= n:
                    w[k] += a
                out.add(tuple(w))
        return out
    out.add(omega(n, 1))
    if fam == "B":
        out.add(omega(n, n))
    elif fam == "D":
        out.add(omega(n, n - 1))
        out.add(omega(n, n))
    elif fam == "C" and p == 2:
        out.add(omega(n, n))
    else:
        out.add(omega(n, n, (p - 1) // 2))
        w = list(omega(n, n - 1))
        w[n - 1] += (p - 3) // 2
        out.add(tuple(w))
    return out


def omega_prime_2_set(g: GroupId) -> set:
    _require_c2(g)
    n = g.rank
    return omega_p_set(g) | {tuple(1 if i in (0, n - 1) else 0 for i in range(n))}


def _require_c2(g: GroupId):
    if g.family != "C" or g.p != 2:
        raise InvalidInput("this predicate is for type C in characteristic 2")


def in_omega_p(g: GroupId, lam) -> bool:
    lam = check_weight(g, lam)
    if not is_p_restricted(lam, g.p):
        raise InvalidInput(f"{format_weight(lam)} is not {g.p}-restricted")
    return lam in omega_p_set(g)


def in_omega(g: GroupId, lam) -> bool:
    lam = check_weight(g, lam)
    layers = steinberg_decompose(lam, g.p).layers
    good = omega_p_set(g)
    if not all(x in good for x in layers):
        return False
    if g.family == "C" and g.p == 2:
        n = g.rank
        bad = (omega(n, n), omega(n, 1))
        return all((layers[j], layers[j + 1]) != bad for j in range(len(layers) - 1))
    return True


@dataclass(frozen=True)
class C2Class:
    kind: str           # "exact" or "lower"
    value: int
    l: int | None
    rank_ok: bool       # n >= 8, where the statement is proved
    layers: tuple

    def to_json(self):
        return {"kind": self.kind, "value": self.value, "l": self.l,
                "rank_condition": "n >= 8", "rank_condition_holds": self.rank_ok,
                "layers": [list(x) for x in self.layers]}


def rank_bound(n: int) -> int:
    return n - 4 - n % 4


def c2_wdeg_class(g: GroupId, lam) -> C2Class:
    _require_c2(g)
    lam = check_weight(g, lam)
    n = g.rank
    layers = steinberg_decompose(lam, 2).layers
    nat, spin = omega(n, 1), omega(n, n)
    q = tuple(a + b for a, b in zip(nat, spin))
    forbidden = {(spin, nat), (q, nat), (spin, q), (q, q)}
    ok = n >= 8
    if all(x in omega_prime_2_set(g) for x in layers) and \
            not any((layers[j], layers[j + 1]) in forbidden for j in range(len(layers) - 1)):
        l = sum(1 for x in layers if x == q)
        return C2Class("exact", 2 ** l, l, ok, layers)
    if in_omega(g, lam):
        # the only way to be in Omega but outside the display above is impossible;
        # kept for safety
        return C2Class("exact", 1, 0, ok, layers)
    return C2Class("lower", rank_bound(n), None, ok, layers)


def kleshchev_f(u) -> int:
    u = [int(x) for x in u]
    if not u:
        raise InvalidInput("kleshchev_f needs a nonempty sequence")
    if any(b <= a for a, b in zip(u, u[1:])):
        raise InvalidInput(f"sequence {u} is not strictly increasing")
    # f(u_k..u_l) computed from the right
    vals = {len(u) - 1: 1}
    if len(u) >= 2:
        vals[len(u) - 2] = u[-1] - u[-2]
    for s in range(len(u) - 3, -1, -1):
        vals[s] = (u[s + 1] - u[s]) * vals[s + 1] + vals[s + 2]
    return vals[0]


def enumerate_small_pdeg_weights(d: int, n: int) -> list[tuple]:
    """Dominant A_n weights with sum k*a_k <= d."""
    if d < 0 or n < 1:
        raise InvalidInput("need d >= 0 and n >= 1")
    out = []

    def rec(k, left, acc):
        if k > min(d, n):
            out.append(tuple(acc + [0] * (n - len(acc))))
            return
        for a in range(left // k + 1):
            rec(k + 1, left - a * k, acc + [a])

    rec(1, d, [])
    out.sort(key=lambda w: (sum((i + 1) * a for i, a in enumerate(w)), tuple(-x for x in w)))
    return out


# -- verdicts ---------------------------------------------------------------------

@dataclass(frozen=True)
class Bound:
    value: int
    source: str
    note: str = ""

    def to_json(self):
        d = {"value": self.value, "source": self.source}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class WdegVerdict:
    group: GroupId
    weight: tuple
    omega: bool
    exact: int | None = None
    exact_source: str | None = None
    lower: list = field(default_factory=list)
    upper: list = field(default_factory=list)
    conditional: list = field(default_factory=list)   # (kind, Bound, requirement)

    @property
    def lo(self) -> int:
        if self.exact is not None:
            return self.exact
        return max([1] + [b.value for b in self.lower])

    @property
    def hi(self):
        if self.exact is not None:
            return self.exact
        return min((b.value for b in self.upper), default=None)

    def contains(self, w: int) -> bool:
        return self.lo <= w and (self.hi is None or w <= self.hi)

    def check(self):
        hi = self.hi
        if hi is not None and self.lo > hi:
            raise AssertionError(f"empty interval [{self.lo}, {hi}] for {self.weight}")

    def to_json(self) -> dict:
        d = {"group": {"family": self.group.family, "rank": self.group.rank, "p": self.group.p},
             "weight": list(self.weight), "omega": self.omega}
        if self.exact is not None:
            d["exact"] = self.exact
            d["exact_source"] = self.exact_source
        d["interval"] = [self.lo, self.hi]
        d["lower"] = [b.to_json() for b in self.lower]
        d["upper"] = [b.to_json() for b in self.upper]
        d["conditional"] = [dict(kind=k, requires=req, **b.to_json())
                            for k, b, req in self.conditional]
        return d


def _add(v: WdegVerdict, kind: str, b: Bound, holds: bool, requirement: str):
    if holds:
        (v.lower if kind == "lower" else v.upper).append(b)
    else:
        v.conditional.append((kind, b, requirement))


def wdeg_verdict(g: GroupId, lam) -> WdegVerdict:
    lam = check_weight(g, lam)
    if min(lam) < 0:
        raise InvalidInput(f"{format_weight(lam)} is not dominant")
    n, p, fam = g.rank, g.p, g.family
    om = in_omega(g, lam)
    v = WdegVerdict(g, lam, om)
    if om:
        v.exact, v.exact_source = 1, "omega-classification"
        return v
    c2 = fam == "C" and p == 2
    _add(v, "lower", Bound(2, "omega-classification", "not in Omega"),
         n >= 4 or c2, "rank >= 4")
    if fam in "BCD":
        if c2:
            cl = c2_wdeg_class(g, lam)
            if cl.kind == "exact":
                if cl.rank_ok:
                    v.exact, v.exact_source = cl.value, "c2-layer-count"
                    v.lower.clear()
                    v.check()
                    return v
                v.conditional.append(("exact", Bound(cl.value, "c2-layer-count", f"l={cl.l}"),
                                      "rank >= 8"))
            else:
                _add(v, "lower", Bound(cl.value, "c2-layer-count"), cl.rank_ok, "rank >= 8")
        else:
            _add(v, "lower", Bound(rank_bound(n), "bcd-rank-bound"), n >= 8, "rank >= 8")
    layers = steinberg_decompose(lam, p).layers
    if len(layers) == 1:
        if fam == "A":
            _restricted_a_bounds(g, lam, v)
    else:
        _layer_bounds(g, layers, v)
        if fam == "A":
            _twisted_cap(g, layers, v)
            _split_growth(g, layers, v)
    v.check()
    return v


def _restricted_a_bounds(g, lam, v):
    n, p = g.rank, g.p
    P, Pd = pdeg(g, lam), pdeg(g, dual_weight(g, lam))
    d = min(P, Pd)
    if d <= n:
        v.lower.append(Bound(d - 2, "pdeg-interval", f"d={d}"))
        v.upper.append(Bound(factorial(d), "pdeg-interval", f"d={d}"))
    for x in sorted({P, Pd}):
        if x <= n and x != d:
            v.lower.append(Bound(x - 2, "pdeg-lower", f"pdeg={x}"))
    if d > n:
        _add(v, "lower", Bound(isqrt(n) // p, "sqrt-bound"), n >= 16, "rank >= 16")
    sup = support(lam)
    if len(sup) >= 2:
        v.lower.append(Bound(kleshchev_f(sup), "kleshchev-chain",
                             f"support {sup[0]}..{sup[-1]}"))


def _layer_bounds(g, layers, v):
    prod = 1
    for lay in layers:
        if any(lay):
            prod *= wdeg_verdict(g, lay).lo
    if prod > 1:
        v.lower.append(Bound(prod, "tensor-product", f"{len(layers)} layers"))


def _twisted_cap(g, layers, v):
    """Best cap over all ways of cutting the layer sequence into blocks."""
    n, p = g.rank, g.p
    S = len(layers)
    good = omega_p_set(g)
    best, best_need = None, None
    for mask in range(1 << (S - 1)):
        cuts = [0] + [s + 1 for s in range(S - 1) if mask >> s & 1] + [S]
        blocks = [range(a, b) for a, b in zip(cuts, cuts[1:])]
        need_d = 0
        lens = []
        ok = True
        for t, blk in enumerate(blocks):
            if all(layers[s] in good for s in blk):
                continue
            side_l = max(pdeg(g, layers[s]) for s in blk)
            side_r = max(pdeg(g, dual_weight(g, layers[s])) for s in blk)
            need_d = max(need_d, min(side_l, side_r))
            lens.append(len(blk) - 1)
        for t, blk in enumerate(blocks[:-1]):
            dl = sum(p ** s * delta(g, layers[s]) for s in blk)
            if dl >= p ** (blk[-1] + 1):
                ok = False
        if not ok or not lens:
            continue
        dj = [need_d * sum(p ** e for e in range(lj + 1)) for lj in lens]
        bound = 1
        for x in dj:
            bound *= factorial(x)
        need_n = max(dj)
        if need_n <= n and (best is None or bound < best):
            best = bound
        if need_n > n and (best_need is None or bound < best_need[0]):
            best_need = (bound, need_n)
    if best is not None:
        v.upper.append(Bound(best, "twisted-product-cap"))
    elif best_need is not None:
        v.conditional.append(("upper", Bound(best_need[0], "twisted-product-cap"),
                              f"rank >= {best_need[1]}"))


def _split_growth(g, layers, v):
    n, p = g.rank, g.p
    best = 0
    for j in range(len(layers) - 1):
        m_w = [0] * n
        for k in range(j + 1):
            for t, a in enumerate(layers[k]):
                m_w[t] += p ** k * a
        N = layers[j + 1]
        sm, sn = support(m_w), support(N)
        if not sm or not sn or delta(g, tuple(m_w)) < p ** (j + 1):
            continue
        if sm[-1] < sn[0] - 1:
            best = max(best, sn[0] - sm[-1] - 1)
        if sn[-1] < sm[0] - 1:
            best = max(best, sm[0] - sn[-1] - 1)
    if best >= 1:
        v.lower.append(Bound(best, "split-tensor-growth"))
