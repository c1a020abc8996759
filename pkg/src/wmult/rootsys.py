"""Root data for the classical types A_n, B_n, C_n, D_n (Bourbaki labels).

Weights are tuples of fundamental-weight coordinates.  Epsilon coordinates
are stored doubled so that spin weights stay integral.  For type A the
epsilon vector has length n+1 and is taken modulo the all-ones vector,
with canonical representative of minimum 0.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import InvalidInput

FAMILIES = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True, order=True)
class GroupId:
    family: str
    rank: int
    p: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInput(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < MIN_RANK[self.family]:
            raise InvalidInput(
                f"rank {self.rank} below the guard {MIN_RANK[self.family]} for type {self.family}")
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise InvalidInput(f"characteristic {self.p} is not a prime")
        if self.family == "B" and self.p == 2:
            raise InvalidInput("type B in characteristic 2 is not considered")

    @property
    def n(self) -> int:
        return self.rank

    def with_rank(self, k: int) -> "GroupId":
        return GroupId(self.family, k, self.p)

    def __str__(self):
        return f"{self.family}{self.rank}(p={self.p})"

    @classmethod
    def parse(cls, text: str, p: int) -> "GroupId":
        text = text.strip().upper().replace("_", "")
        if len(text) < 2 or text[0] not in FAMILIES or not text[1:].isdigit():
            raise InvalidInput(f"cannot parse group {text!r}; expected e.g. A4 or C3")
        return cls(text[0], int(text[1:]), p)


def eps_dim(family: str, n: int) -> int:
    return n + 1 if family == "A" else n


def _unit(m, i, v=2):
    e = [0] * m
    e[i] = v
    return e


def simple_roots_eps(family: str, n: int) -> list[tuple[int, ...]]:
    """Simple roots in doubled epsilon coordinates."""
    m = eps_dim(family, n)
    out = []
    for i in range(n - 1):
        r = [0] * m
        r[i], r[i + 1] = 2, -2
        out.append(r)
    last = [0] * m
    if family == "A":
        last[n - 1], last[n] = 2, -2
    elif family == "B":
        last[n - 1] = 2
    elif family == "C":
        last[n - 1] = 4
    else:
        last[n - 2], last[n - 1] = 2, 2
    out.append(last)
    return [tuple(r) for r in out]


def fundamental_weights_eps(family: str, n: int) -> list[tuple[int, ...]]:
    m = eps_dim(family, n)
    out = []
    for i in range(1, n + 1):
        w = [2 if j < i else 0 for j in range(m)]
        if family == "B" and i == n:
            w = [1] * m
        if family == "D" and i == n - 1:
            w = [1] * (m - 1) + [-1]
        if family == "D" and i == n:
            w = [1] * m
        out.append(tuple(w))
    return out


def positive_roots_eps(family: str, n: int) -> list[tuple[int, ...]]:
    m = eps_dim(family, n)
    out = []
    for i, j in combinations(range(m), 2):
        r = [0] * m
        r[i], r[j] = 2, -2
        out.append(tuple(r))
        if family != "A":
            r = [0] * m
            r[i], r[j] = 2, 2
            out.append(tuple(r))
    if family in ("B", "C"):
        for i in range(m):
            out.append(tuple(_unit(m, i, 2 if family == "B" else 4)))
    return out


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _normalize_a(v):
    lo = min(v)
    return tuple(x - lo for x in v)


@dataclass(frozen=True)
class RootSystemData:
    group: GroupId
    simple_roots: tuple          # doubled eps
    positive_roots: tuple        # doubled eps, height-then-lex order
    fundamental_weights: tuple   # doubled eps
    max_root: tuple              # doubled eps
    cartan: tuple                # cartan[i][j] = <alpha_i, alpha_j^vee>
    root_coeffs: dict = field(repr=False)   # eps root -> simple-root coefficients
    inner_fw: tuple = field(repr=False)     # (omega_i, omega_j) as Fractions

    @property
    def rank(self):
        return self.group.rank

    def to_dict(self):
        g = self.group
        return {
            "group": {"family": g.family, "rank": g.rank, "p": g.p},
            "simple_roots_eps2": [list(r) for r in self.simple_roots],
            "fundamental_weights_eps2": [list(w) for w in self.fundamental_weights],
            "positive_roots": len(self.positive_roots),
            "max_root_eps2": list(self.max_root),
            "max_root_coeffs": list(self.root_coeffs[self.max_root]),
            "cartan": [list(r) for r in self.cartan],
        }


def _pair_eps(lam_eps2, alpha_eps2):
    # <lambda, alpha^vee> with lambda given doubled: 2(lam/2, a/2)/(a/2, a/2)
    num = _dot(lam_eps2, alpha_eps2)
    den = _dot(alpha_eps2, alpha_eps2)
    if (2 * num) % den:
        raise InvalidInput("pairing is not integral")
    return 2 * num // den


@lru_cache(maxsize=None)
def _build(family: str, n: int) -> tuple:
    simple = simple_roots_eps(family, n)
    fund = fundamental_weights_eps(family, n)
    cartan = tuple(tuple(_pair_eps(a, b) for b in simple) for a in simple)
    inv = _fraction_inverse([list(r) for r in cartan])
    roots = positive_roots_eps(family, n)
    coeffs = {}
    for r in roots:
        fw = [_pair_eps(r, a) for a in simple]
        c = [sum(Fraction(fw[i]) * inv[i][j] for i in range(n)) for j in range(n)]
        assert all(x.denominator == 1 and x >= 0 for x in c), (family, n, r, c)
        coeffs[r] = tuple(int(x) for x in c)
    roots.sort(key=lambda r: (sum(coeffs[r]), tuple(-x for x in coeffs[r])))
    height = {r: sum(coeffs[r]) for r in roots}
    top = max(roots, key=lambda r: height[r])
    # (omega_i, omega_j); type A vectors are projected to the sum-zero hyperplane
    m = eps_dim(family, n)
    inner = []
    for u in fund:
        row = []
        for v in fund:
            x = Fraction(_dot(u, v), 4)
            if family == "A":
                x -= Fraction(sum(u) * sum(v), 4 * m)
            row.append(x)
        inner.append(tuple(row))
    return simple, tuple(roots), fund, top, cartan, coeffs, tuple(inner)


def build_root_system(g: GroupId) -> RootSystemData:
    simple, roots, fund, top, cartan, coeffs, inner = _build(g.family, g.rank)
    return RootSystemData(g, tuple(simple), roots, tuple(fund), top, cartan, coeffs, inner)


def _fraction_inverse(mat):
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


@lru_cache(maxsize=None)
def cartan_inverse(family: str, n: int):
    _, _, _, _, cartan, _, _ = _build(family, n)
    return tuple(tuple(r) for r in _fraction_inverse([list(r) for r in cartan]))


# -- conversions -------------------------------------------------------------

def fw_to_eps(g: GroupId, lam) -> tuple[int, ...]:
    fund = _build(g.family, g.rank)[2]
    m = eps_dim(g.family, g.rank)
    v = [0] * m
    for a, w in zip(lam, fund):
        if a:
            for j in range(m):
                v[j] += a * w[j]
    if g.family == "A":
        return _normalize_a(v)
    return tuple(v)


def eps_to_fw(g: GroupId, v) -> tuple[int, ...]:
    if len(v) != eps_dim(g.family, g.rank):
        raise InvalidInput("epsilon vector has the wrong length")
    simple = _build(g.family, g.rank)[0]
    return tuple(_pair_eps(v, a) for a in simple)


def check_weight(g: GroupId, lam) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if len(lam) != g.rank:
        raise InvalidInput(f"weight {list(lam)} has {len(lam)} coordinates; {g} needs {g.rank}")
    return lam


def pairing(g: GroupId, lam, alpha_eps2) -> int:
    """<lambda, alpha^vee> for lambda in fw coordinates and a root in doubled eps."""
    lam = check_weight(g, lam)
    if len(alpha_eps2) != eps_dim(g.family, g.rank):
        raise InvalidInput("root does not belong to this root system")
    v = fw_to_eps(g, lam)
    if g.family == "A":
        # the root is orthogonal to the all-ones vector, so the shift is harmless
        pass
    return _pair_eps(v, alpha_eps2)


def inner(g: GroupId, lam, mu) -> Fraction:
    ip = _build(g.family, g.rank)[6]
    s = Fraction(0)
    for i, a in enumerate(lam):
        if a:
            row = ip[i]
            for j, b in enumerate(mu):
                if b:
                    s += a * b * row[j]
    return s


def root_fw(g: GroupId, alpha_eps2) -> tuple[int, ...]:
    return eps_to_fw(g, alpha_eps2)


def reflect(g: GroupId, lam, i: int) -> tuple[int, ...]:
    cartan = _build(g.family, g.rank)[4]
    c = lam[i]
    if c == 0:
        return tuple(lam)
    row = cartan[i]
    return tuple(x - c * y for x, y in zip(lam, row))


def weyl_orbit(g: GroupId, lam) -> set:
    lam = check_weight(g, lam)
    cartan = _build(g.family, g.rank)[4]
    seen = {lam}
    todo = deque([lam])
    n = g.rank
    while todo:
        x = todo.popleft()
        for i in range(n):
            c = x[i]
            if c:
                row = cartan[i]
                y = tuple(a - c * b for a, b in zip(x, row))
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return seen


def dominant_conjugate(g: GroupId, lam) -> tuple[int, ...]:
    cartan = _build(g.family, g.rank)[4]
    x = list(lam)
    n = len(x)
    while True:
        for i in range(n):
            if x[i] < 0:
                c = x[i]
                row = cartan[i]
                for j in range(n):
                    x[j] -= c * row[j]
                break
        else:
            return tuple(x)


def weyl_group_order(g: GroupId) -> int:
    from math import factorial
    n = g.rank
    return {"A": factorial(n + 1), "B": 2 ** n * factorial(n),
            "C": 2 ** n * factorial(n), "D": 2 ** (n - 1) * factorial(n)}[g.family]


def delta(g: GroupId, lam) -> int:
    """Value of a dominant weight on the maximal coroot."""
    lam = check_weight(g, lam)
    if any(a < 0 for a in lam):
        raise InvalidInput("delta needs a dominant weight")
    return delta_any(g, lam)


def delta_any(g: GroupId, lam) -> int:
    top = _build(g.family, g.rank)[3]
    return _pair_eps(fw_to_eps(g, lam), top)


def coroot_coeffs_of_max(g: GroupId) -> tuple[int, ...]:
    """Coefficients c_i with delta(lam) = sum c_i lam_i."""
    n = g.rank
    return tuple(delta_any(g, tuple(int(i == j) for j in range(n))) for i in range(n))


def root_coordinates(g: GroupId, lam) -> tuple[Fraction, ...]:
    """lam written in the basis of simple roots."""
    inv = cartan_inverse(g.family, g.rank)
    n = g.rank
    return tuple(sum(Fraction(lam[i]) * inv[i][j] for i in range(n)) for j in range(n))


def height(g: GroupId, lam) -> Fraction:
    return sum(root_coordinates(g, lam), Fraction(0))


def dominates(g: GroupId, lam, mu) -> bool:
    """True if lam - mu is a nonnegative integer combination of simple roots."""
    d = tuple(a - b for a, b in zip(lam, mu))
    c = root_coordinates(g, d)
    return all(x.denominator == 1 and x >= 0 for x in c)


# -- Chevalley basis -----------------------------------------------------------

def _natural_rep(family: str, n: int):
    """Matrices (e_i, f_i) of the simple root vectors in the natural module,
    plus the doubled-eps weight of each basis vector."""
    if family == "A":
        dim = n + 1
        wts = [tuple(_unit(dim, i)) for i in range(dim)]
        es = []
        for i in range(n):
            e = np.zeros((dim, dim), dtype=object)
            e[i, i + 1] = 1
            es.append(e)
        return es, [e.T.copy() for e in es], wts
    # basis v_1..v_n, v_-1..v_-n (and v_0 last for B)
    dim = 2 * n + (1 if family == "B" else 0)
    wts = [tuple(_unit(n, i)) for i in range(n)] + [tuple(_unit(n, i, -2)) for i in range(n)]
    if family == "B":
        wts.append(tuple([0] * n))
    neg = lambda i: n + i  # index of v_{-(i+1)}
    es, fs = [], []
    for i in range(n - 1):
        e = np.zeros((dim, dim), dtype=object)
        e[i, i + 1] = 1            # v_{i+1} -> v_i
        e[neg(i + 1), neg(i)] = -1  # v_{-i} -> -v_{-(i+1)}
        es.append(e)
        fs.append(e.T.copy())
    e = np.zeros((dim, dim), dtype=object)
    f = np.zeros((dim, dim), dtype=object)
    last = n - 1
    if family == "B":
        z = 2 * n
        e[last, z] = 2          # v_0 -> 2 v_n
        e[z, neg(last)] = -1    # v_-n -> -v_0
        f[z, last] = 1          # v_n -> v_0
        f[neg(last), z] = -2    # v_0 -> -2 v_-n
    elif family == "C":
        e[last, neg(last)] = 1  # v_-n -> v_n
        f = e.T.copy()
    else:
        e[last - 1, neg(last)] = 1   # v_-n -> v_{n-1}
        e[last, neg(last - 1)] = -1  # v_-(n-1) -> -v_n
        f = e.T.copy()
    es.append(e)
    fs.append(f)
    return es, fs, wts


def _bracket(x, y):
    return x.dot(y) - y.dot(x)


@dataclass(frozen=True)
class ChevalleyData:
    group: GroupId
    roots: tuple                 # all roots (positive then negative), doubled eps
    constants: dict = field(repr=False)   # (alpha, beta) -> N_{alpha,beta}
    coroots: dict = field(repr=False)     # root -> diagonal of H_alpha on the natural module
    matrices: dict = field(repr=False)    # root -> matrix X_alpha on the natural module

    def N(self, a, b) -> int:
        return self.constants.get((tuple(a), tuple(b)), 0)

    def string_q(self, a, b) -> int:
        rs = set(self.roots)
        q = 0
        while tuple(x - (q + 1) * y for x, y in zip(b, a)) in rs:
            q += 1
        return q


def _as_int_matrix(m):
    out = np.zeros(m.shape, dtype=object)
    for idx, x in np.ndenumerate(m):
        x = Fraction(x)
        if x.denominator != 1:
            raise ArithmeticError("non-integral Chevalley matrix entry")
        out[idx] = int(x)
    return out


@lru_cache(maxsize=None)
def _chevalley(family: str, n: int):
    simple, pos, _, _, _, coeffs, _ = _build(family, n)
    es, fs, wts = _natural_rep(family, n)
    roots_set = set(pos)
    X = {}
    for i, a in enumerate(simple):
        X[a] = es[i]
        X[tuple(-x for x in a)] = fs[i]
    for beta in pos:
        if beta in X:
            continue
        for i, a in enumerate(simple):
            rest = tuple(x - y for x, y in zip(beta, a))
            if rest in roots_set:
                break
        q = 0
        while tuple(x - (q + 1) * y for x, y in zip(rest, a)) in roots_set:
            q += 1
        nb = tuple(-x for x in beta)
        X[beta] = _as_int_matrix(_bracket(X[a], X[rest]) * Fraction(1, q + 1))
        X[nb] = _as_int_matrix(-_bracket(X[tuple(-x for x in a)], X[tuple(-x for x in rest)])
                               * Fraction(1, q + 1))
    roots = list(pos) + [tuple(-x for x in r) for r in pos]
    allset = set(roots)
    consts = {}
    for a in roots:
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s not in allset:
                continue
            br = _bracket(X[a], X[b])
            target = X[s]
            idx = next(ix for ix, v in np.ndenumerate(target) if v != 0)
            c = Fraction(br[idx], target[idx])
            assert c.denominator == 1
            consts[(a, b)] = int(c)
    coroots = {}
    for a in roots:
        coroots[a] = tuple(_pair_eps(w, a) for w in wts)
    return tuple(roots), consts, coroots, X


def chevalley_data(g: GroupId) -> ChevalleyData:
    roots, consts, coroots, X = _chevalley(g.family, g.rank)
    return ChevalleyData(g, roots, consts, coroots, X)
