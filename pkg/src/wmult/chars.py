"""Formal characters and explicit builders for the multiplicity-free families."""
from __future__ import annotations

from collections import defaultdict
from itertools import combinations, product
from math import comb

from .errors import InvalidInput
from .rootsys import GroupId, eps_to_fw, fw_to_eps, height, weyl_orbit
from .weights import format_weight, is_dominant


class FormalCharacter:
    """Finite map weight -> positive multiplicity (full support, not just dominant)."""

    __slots__ = ("group", "_m")

    def __init__(self, group: GroupId, mults=None):
        self.group = group
        m = {}
        n = group.rank
        for w, c in (mults or {}).items():
            if c == 0:
                continue
            w = tuple(w)
            if len(w) != n:
                raise InvalidInput("weight length does not match the group rank")
            m[w] = c
        self._m = m

    # mapping-ish access
    def __getitem__(self, w):
        return self._m.get(tuple(w), 0)

    def __contains__(self, w):
        return tuple(w) in self._m

    def __iter__(self):
        return iter(self._m)

    def __len__(self):
        return len(self._m)

    def items(self):
        return self._m.items()

    @property
    def support(self) -> dict:
        return dict(self._m)

    def __eq__(self, other):
        return (isinstance(other, FormalCharacter) and self.group == other.group
                and self._m == other._m)

    def __repr__(self):
        return f"FormalCharacter({self.group}, dim={self.dim()}, wdeg={self.wdeg()})"

    def _same(self, other):
        if self.group != other.group:
            raise InvalidInput(f"group mismatch: {self.group} vs {other.group}")

    def dim(self) -> int:
        return sum(self._m.values())

    def wdeg(self) -> int:
        return max(self._m.values()) if self._m else 0

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._m.values())

    def dominant_support(self) -> dict:
        return {w: c for w, c in self._m.items() if is_dominant(w)}

    def highest_weight(self):
        """The dominant support weight of maximal height (ties broken on eps)."""
        dom = self.dominant_support()
        if not dom:
            return None
        g = self.group
        return max(dom, key=lambda w: (height(g, w), fw_to_eps(g, w)))

    def is_weyl_invariant(self) -> bool:
        g = self.group
        for w, c in self.dominant_support().items():
            for v in weyl_orbit(g, w):
                if self._m.get(v, 0) != c:
                    return False
        return len(self._m) == sum(len(weyl_orbit(g, w)) for w in self.dominant_support())

    def __add__(self, other):
        self._same(other)
        m = dict(self._m)
        for w, c in other._m.items():
            m[w] = m.get(w, 0) + c
        return FormalCharacter(self.group, m)

    def __sub__(self, other):
        self._same(other)
        m = dict(self._m)
        for w, c in other._m.items():
            m[w] = m.get(w, 0) - c
        return FormalCharacter(self.group, m)

    def scale(self, k: int):
        return FormalCharacter(self.group, {w: k * c for w, c in self._m.items()})

    def to_json(self, dominant_only: bool = False) -> dict:
        g = self.group
        items = self.dominant_support() if dominant_only else self._m
        keys = sorted(items, key=lambda w: (-height(g, w), tuple(-x for x in fw_to_eps(g, w))))
        return {"group": {"family": g.family, "rank": g.rank, "p": g.p},
                "mode": "dominant" if dominant_only else "full",
                "dim": self.dim(), "wdeg": self.wdeg(),
                "entries": [{"weight": list(w), "mult": items[w]} for w in keys]}


def from_eps(g: GroupId, eps_mults) -> FormalCharacter:
    m = defaultdict(int)
    for v, c in eps_mults.items():
        m[eps_to_fw(g, v)] += c
    return FormalCharacter(g, m)


def from_dominant(g: GroupId, dom) -> FormalCharacter:
    m = {}
    for w, c in dom.items():
        for v in weyl_orbit(g, w):
            m[v] = c
    return FormalCharacter(g, m)


def trivial_char(g: GroupId) -> FormalCharacter:
    return FormalCharacter(g, {(0,) * g.rank: 1})


def tensor(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    a._same(b)
    m = defaultdict(int)
    for w, c in a.items():
        for v, d in b.items():
            m[tuple(x + y for x, y in zip(w, v))] += c * d
    return FormalCharacter(a.group, m)


def tensor_power(a: FormalCharacter, d: int) -> FormalCharacter:
    out = trivial_char(a.group)
    for _ in range(d):
        out = tensor(out, a)
    return out


def frobenius_twist(chi: FormalCharacter, k: int = 1) -> FormalCharacter:
    if k < 0:
        raise InvalidInput("twist power must be nonnegative")
    q = chi.group.p ** k
    return FormalCharacter(chi.group, {tuple(q * x for x in w): c for w, c in chi.items()})


def dual(chi: FormalCharacter) -> FormalCharacter:
    return FormalCharacter(chi.group, {tuple(-x for x in w): c for w, c in chi.items()})


def wdeg(chi: FormalCharacter) -> int:
    return chi.wdeg()


def dim(chi: FormalCharacter) -> int:
    return chi.dim()


def dominant_support(chi: FormalCharacter) -> dict:
    return chi.dominant_support()


# -- builders -----------------------------------------------------------------

def _require(g: GroupId, families, what):
    if g.family not in families:
        raise InvalidInput(f"{what} is not defined for type {g.family}")


def wedge_char(g: GroupId, i: int) -> FormalCharacter:
    """Exterior power of the natural module of SL_{n+1}."""
    _require(g, "A", "wedge_char")
    if not 0 <= i <= g.rank + 1:
        raise InvalidInput(f"wedge degree {i} out of range")
    m = g.rank + 1
    out = {}
    for s in combinations(range(m), i):
        v = [0] * m
        for j in s:
            v[j] = 2
        out[tuple(v)] = 1
    return from_eps(g, out)


def natural_char(g: GroupId) -> FormalCharacter:
    if g.family == "A":
        return wedge_char(g, 1)
    n = g.rank
    out = {}
    for i in range(n):
        for s in (2, -2):
            v = [0] * n
            v[i] = s
            out[tuple(v)] = 1
    if g.family == "B":
        out[(0,) * n] = 1
    return from_eps(g, out)


def truncated_sym_char(g: GroupId, d: int) -> FormalCharacter:
    """Degree-d part of S(V)/(v^p): highest weight (p-1-a)w_k + a w_{k+1}, d = k(p-1)+a."""
    _require(g, "A", "truncated_sym_char")
    p, m = g.p, g.rank + 1
    if not 0 <= d <= (p - 1) * m:
        raise InvalidInput(f"degree {d} outside [0, {(p - 1) * m}]")
    out = {}

    def rec(prefix, left, slots):
        if slots == 0:
            if left == 0:
                out[tuple(2 * b for b in prefix)] = 1
            return
        for b in range(min(p - 1, left) + 1):
            if left - b <= (p - 1) * (slots - 1):
                rec(prefix + [b], left - b, slots - 1)

    rec([], d, m)
    return from_eps(g, out)


def truncated_sym_weight(g: GroupId, d: int) -> tuple[int, ...]:
    p, n = g.p, g.rank
    k, a = divmod(d, p - 1)
    v = [0] * n
    if 1 <= k <= n:
        v[k - 1] += p - 1 - a
    if 1 <= k + 1 <= n:
        v[k] += a
    return tuple(v)


def spin_char(g: GroupId, which: str | None = None) -> FormalCharacter:
    """B: the spin module.  D: which='even' gives L(w_n), 'odd' gives L(w_{n-1})."""
    _require(g, "BD", "spin_char")
    n = g.rank
    if g.family == "D" and which not in ("even", "odd"):
        raise InvalidInput("type D needs which='even' or 'odd'")
    out = {}
    for signs in product((1, -1), repeat=n):
        if g.family == "D":
            neg = signs.count(-1)
            if (neg % 2 == 0) != (which == "even"):
                continue
        out[signs] = 1
    return from_eps(g, out)


def oscillator_chars(g: GroupId) -> tuple[FormalCharacter, FormalCharacter]:
    """(M_2, M_1): the even and odd halves of the truncated polynomial module."""
    _require(g, "C", "oscillator_chars")
    p, n = g.p, g.rank
    if p == 2:
        raise InvalidInput("oscillator modules need p odd; use c2_spin_char / c2_q_char")
    even, odd = {}, {}
    for bs in product(range(p), repeat=n):
        v = tuple(2 * b - (p - 1) for b in bs)
        (even if sum(bs) % 2 == 0 else odd)[v] = 1
    return from_eps(g, even), from_eps(g, odd)


def c2_spin_char(g: GroupId) -> FormalCharacter:
    _require(g, "C", "c2_spin_char")
    if g.p != 2:
        raise InvalidInput("c2_spin_char needs p=2")
    return from_eps(g, {tuple(2 * s for s in signs): 1 for signs in product((1, -1), repeat=g.rank)})


def c2_q_char(g: GroupId) -> FormalCharacter:
    return tensor(natural_char(g), c2_spin_char(g))


BUILDERS = ("trivial", "natural", "wedge", "truncated_sym", "spin", "oscillator_even",
            "oscillator_odd", "c2_spin", "c2_q")


def build(name: str, g: GroupId, arg=None) -> FormalCharacter:
    if name == "trivial":
        return trivial_char(g)
    if name == "natural":
        return natural_char(g)
    if name == "wedge":
        return wedge_char(g, int(arg))
    if name == "truncated_sym":
        return truncated_sym_char(g, int(arg))
    if name == "spin":
        return spin_char(g, arg)
    if name == "oscillator_even":
        return oscillator_chars(g)[0]
    if name == "oscillator_odd":
        return oscillator_chars(g)[1]
    if name == "c2_spin":
        return c2_spin_char(g)
    if name == "c2_q":
        return c2_q_char(g)
    raise InvalidInput(f"unknown builder {name!r}; choose from {', '.join(BUILDERS)}")


def known_simple_char(g: GroupId, lam):
    """Character of L(lam) when lam is one of the named multiplicity-free
    highest weights (or a twisted product of them); None otherwise."""
    from .weights import steinberg_decompose
    lam = tuple(lam)
    layers = steinberg_decompose(lam, g.p).layers
    if len(layers) > 1:
        out = None
        for k, lay in enumerate(layers):
            c = known_simple_char(g, lay)
            if c is None:
                return None
            c = frobenius_twist(c, k)
            out = c if out is None else tensor(out, c)
        return out
    return _known_restricted(g, lam)


def _known_restricted(g: GroupId, lam):
    n, p = g.rank, g.p
    nz = [(i + 1, a) for i, a in enumerate(lam) if a]
    if not nz:
        return trivial_char(g)
    fam = g.family
    if fam == "A":
        if len(nz) == 1 and nz[0][1] == 1:
            return wedge_char(g, nz[0][0])
        # (p-1-a) w_k + a w_{k+1}
        if len(nz) == 1:
            k, c = nz[0]
            if c == p - 1:
                return truncated_sym_char(g, k * (p - 1))
            if k == 1:
                return truncated_sym_char(g, c)
            return None
        if len(nz) == 2 and nz[1][0] == nz[0][0] + 1 and nz[0][1] + nz[1][1] == p - 1:
            k, c = nz[0]
            return truncated_sym_char(g, k * (p - 1) + nz[1][1])
        return None
    if lam == tuple(int(i == 0) for i in range(n)):
        return natural_char(g)
    if fam == "B" and nz == [(n, 1)]:
        return spin_char(g)
    if fam == "D" and nz == [(n, 1)]:
        return spin_char(g, "even")
    if fam == "D" and nz == [(n - 1, 1)]:
        return spin_char(g, "odd")
    if fam == "C" and p == 2:
        if nz == [(n, 1)]:
            return c2_spin_char(g)
        if nz == [(1, 1), (n, 1)]:
            return c2_q_char(g)
        return None
    if fam == "C":
        even, odd = oscillator_chars(g)
        if lam == tuple((p - 1) // 2 if i == n - 1 else 0 for i in range(n)):
            return even
        target = [0] * n
        target[n - 2] += 1
        target[n - 1] += (p - 3) // 2
        if lam == tuple(target):
            return odd
    return None


def describe(chi: FormalCharacter) -> str:
    hw = chi.highest_weight()
    return f"dim {chi.dim()}, wdeg {chi.wdeg()}, highest weight {format_weight(hw) if hw else '-'}"


def binomial(n: int, k: int) -> int:
    return comb(n, k)
