"""Ground truth at desk scale.

freudenthal_char gives Weyl-module characters.  simple_char gives the
character of the simple module L(lam) in characteristic p: for restricted
lam the multiplicity at mu is the F_p-rank of the contravariant form on the
mu-weight space of the admissible lattice V_Z(lam) = U_Z^- v+, and for
general lam the Steinberg layers are tensored.

The lattice is built weight by weight.  At depth c (lam - mu = sum c_i alpha_i)
it is spanned by f_i^(k) b with b running over an integer basis at depth
c - k e_i.  The form is evaluated by moving e_i^(k) across: for j != i the
operators commute, and for j == i the sl2 identity

    e^(a) f^(b) = sum_t  binom(h - a - b + 2t, t) f^(b-t) e^(a-t)

is applied, h acting on e^(a-t) u.  A basis is then picked from the
spanning set by pivoting on Gram entries of least p-adic valuation, so it
spans the same lattice after inverting every prime other than p; the
mod-p rank of the form does not see the difference.  The action of
e_i^(k), f_i^(k) is recorded in that basis for the deeper weights, with
rational coordinates whose denominators are prime to p.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from gmpy2 import mpq

from .chars import FormalCharacter, frobenius_twist, from_dominant, tensor, trivial_char
from .errors import InvalidInput, OracleRefusal
from .linalg import inverse_q, padic_row_basis, rank_mod_p
from .rootsys import (GroupId, _build, check_weight, dominant_conjugate, inner,
                      root_coordinates, eps_to_fw, weyl_orbit)
from .weights import format_weight, steinberg_decompose


@dataclass(frozen=True)
class OracleLimits:
    max_weyl_dim: int = 2_000_000
    max_weight_space: int = 300
    max_lattice_points: int = 60_000


DEFAULT_LIMITS = OracleLimits()


@dataclass
class GramReport:
    weight: tuple
    depth: tuple
    candidates: int
    gram: list = field(repr=False)
    rank_q: int = 0
    rank_p: int = 0
    weyl_mult: int = 0

    def to_json(self, with_matrix: bool = False) -> dict:
        d = {"weight": list(self.weight), "depth": list(self.depth),
             "spanning_set": self.candidates, "weyl_multiplicity": self.weyl_mult,
             "rank_q": self.rank_q, "rank_p": self.rank_p}
        if with_matrix:
            d["gram"] = self.gram
        return d


# -- Weyl modules ---------------------------------------------------------------

def _positive_roots_fw(g: GroupId):
    simple, pos, *_ = _build(g.family, g.rank)
    return [eps_to_fw(g, r) for r in pos]


def dominant_weights_below(g: GroupId, lam) -> list[tuple]:
    """Dominant mu <= lam, sorted by depth."""
    lam = tuple(lam)
    roots = _positive_roots_fw(g)
    seen = {lam}
    todo = [lam]
    while todo:
        x = todo.pop()
        for r in roots:
            y = tuple(a - b for a, b in zip(x, r))
            if min(y) >= 0 and y not in seen:
                seen.add(y)
                todo.append(y)
    d = {mu: sum(root_coordinates(g, tuple(a - b for a, b in zip(lam, mu)))) for mu in seen}
    return sorted(seen, key=lambda mu: (d[mu], mu))


def weyl_dimension(g: GroupId, lam) -> int:
    lam = check_weight(g, lam)
    rho = (1,) * g.rank
    lr = tuple(a + 1 for a in lam)
    num = den = Fraction(1)
    for r in _positive_roots_fw(g):
        num *= inner(g, lr, r)
        den *= inner(g, rho, r)
    v = num / den
    assert v.denominator == 1
    return int(v)


_freud_cache: dict = {}
_lock = threading.Lock()


def freudenthal_dominant(g: GroupId, lam, limits: OracleLimits = DEFAULT_LIMITS) -> dict:
    """Dominant weight multiplicities of the Weyl module V(lam) (independent of p)."""
    lam = check_weight(g, lam)
    if min(lam) < 0:
        raise InvalidInput(f"{format_weight(lam)} is not dominant")
    key = (g.family, g.rank, lam)
    hit = _freud_cache.get(key)
    if hit is not None:
        return hit
    if weyl_dimension(g, lam) > limits.max_weyl_dim:
        raise OracleRefusal(f"Weyl dimension of {format_weight(lam)} for {g} exceeds "
                            f"max_weyl_dim={limits.max_weyl_dim}")
    doms = dominant_weights_below(g, lam)
    domset = set(doms)
    roots = _positive_roots_fw(g)
    n = g.rank
    ip = _build(g.family, g.rank)[6]
    # (x, alpha) as a linear form in fw coordinates
    forms = [[sum(ip[i][j] * r[j] for j in range(n)) for i in range(n)] for r in roots]
    rho = (1,) * n
    lr = tuple(a + 1 for a in lam)
    top = inner(g, lr, lr)
    mult = {lam: 1}
    for mu in doms[1:]:
        s = Fraction(0)
        for r, form in zip(roots, forms):
            k = 1
            while True:
                w = tuple(a + k * b for a, b in zip(mu, r))
                d = dominant_conjugate(g, w)
                if d not in domset:
                    break
                s += mult[d] * sum(f * x for f, x in zip(form, w))
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        v = 2 * s / (top - inner(g, mr, mr))
        assert v.denominator == 1 and v > 0, (g, lam, mu, v)
        mult[mu] = int(v)
    with _lock:
        _freud_cache[key] = mult
    return mult


def freudenthal_char(g: GroupId, lam, limits: OracleLimits = DEFAULT_LIMITS) -> FormalCharacter:
    return from_dominant(g, freudenthal_dominant(g, lam, limits))


# -- Gram recursion --------------------------------------------------------------

def gbinom(x: int, t: int) -> int:
    """Binomial coefficient with arbitrary integer top."""
    num = 1
    den = 1
    for s in range(t):
        num *= x - s
        den *= s + 1
    return num // den


def _mat_vec(m, v):
    return [sum(a * b for a, b in zip(row, v) if b) for row in m]


def _matmul(a, b):
    if not a:
        return []
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in a]


class _Lattice:
    """Integer bases of the weight spaces of V_Z(lam) below a set of targets."""

    def __init__(self, g: GroupId, lam, targets, limits: OracleLimits):
        self.g = g
        self.lam = lam
        self.n = g.rank
        self.cartan = _build(g.family, g.rank)[4]
        self.weyl = freudenthal_dominant(g, lam, limits)
        self.limits = limits
        depths = []
        for mu in targets:
            c = root_coordinates(g, tuple(a - b for a, b in zip(lam, mu)))
            if any(x.denominator != 1 or x < 0 for x in c):
                raise InvalidInput(f"{format_weight(mu)} is not below {format_weight(lam)}")
            depths.append(tuple(int(x) for x in c))
        self.targets = dict(zip(depths, targets))
        region = set()
        for c in depths:
            for x in product(*(range(ci + 1) for ci in c)):
                if x not in region and self.mult(x):
                    region.add(x)
                    if len(region) > limits.max_lattice_points:
                        raise OracleRefusal(
                            f"{g}, {format_weight(lam)}: more than {limits.max_lattice_points} "
                            "weight spaces needed")
        self.order = sorted(region, key=lambda c: (sum(c), c))
        self.region = region
        self.dim = {}
        self.gram = {}
        self.E = {}   # (c, i, k) -> matrix dim(c - k e_i) x dim(c)
        self.F = {}   # (c, i, k) -> matrix dim(c + k e_i) x dim(c)
        self.reports = {}

    def weight(self, c):
        lam, A = self.lam, self.cartan
        return tuple(lam[j] - sum(c[i] * A[i][j] for i in range(self.n)) for j in range(self.n))

    def mult(self, c):
        return self.weyl.get(dominant_conjugate(self.g, self.weight(c)), 0)

    def _ok(self, c):
        return c in self.region

    @staticmethod
    def _shift(c, i, k):
        c = list(c)
        c[i] += k
        return tuple(c)

    def _e_apply(self, y, i, a, vec):
        """e_i^(a) applied to a coordinate vector at depth y."""
        if a == 0:
            return vec
        return _mat_vec(self.E[(y, i, a)], vec)

    def _f_apply(self, z, i, b, vec):
        if b == 0:
            return vec
        return _mat_vec(self.F[(z, i, b)], vec)

    def _raise_candidate(self, c, nu, i, k, cand):
        """Coordinates of e_i^(k) f_j^(l) b' at depth c - k e_i."""
        j, l, bp = cand
        tgt = self._shift(c, i, -k)
        if j != i:
            y = self._shift(c, j, -l)
            t = self._shift(y, i, -k)
            if not self._ok(t):
                return None
            col = [row[bp] for row in self.E[(y, i, k)]]
            return self._f_apply(t, j, l, col)
        y = self._shift(c, i, -l)
        out = [0] * self.dim[tgt]
        x = nu[i] + k + l
        unit = [int(s == bp) for s in range(self.dim[y])]
        for t in range(min(k, l) + 1):
            a, b = k - t, l - t
            z = self._shift(y, i, -a)
            if not self._ok(z):
                continue
            coef = gbinom(x, t)
            if not coef:
                continue
            v = self._e_apply(y, i, a, unit)
            w = self._f_apply(z, i, b, v)
            for s, val in enumerate(w):
                if val:
                    out[s] += coef * val
        return out

    def run(self):
        n = self.n
        zero = (0,) * n
        self.dim[zero] = 1
        self.gram[zero] = [[1]]
        if zero in self.targets:
            self.reports[zero] = GramReport(self.lam, zero, 1, [[1]], 1, 1, 1)
        for c in self.order:
            if c == zero:
                continue
            self._step(c)
        return self

    def _step(self, c):
        g, n, p = self.g, self.n, self.g.p
        nu = self.weight(c)
        want = self.mult(c)
        if want > self.limits.max_weight_space:
            raise OracleRefusal(f"{g}, {format_weight(self.lam)}: weight space of "
                                f"dimension {want} exceeds max_weight_space")
        cands = []
        blocks = []
        for i in range(n):
            for k in range(1, c[i] + 1):
                src = self._shift(c, i, -k)
                if self._ok(src):
                    blocks.append((i, k, src))
                    cands.extend((i, k, b) for b in range(self.dim[src]))
        m = len(cands)
        ecols = {}
        gram = []
        for i, k, src in blocks:
            cols = []
            for cand in cands:
                v = self._raise_candidate(c, nu, i, k, cand)
                cols.append(v if v is not None else [0] * self.dim[src])
            ecols[(i, k)] = cols
            gs = self.gram[src]
            for b in range(self.dim[src]):
                grow = gs[b]
                row = []
                for col in cols:
                    x = sum(a * y for a, y in zip(grow, col) if y)
                    if mpq(x).denominator != 1:
                        raise ArithmeticError(
                            f"non-integral Gram entry {x} at {nu} for {format_weight(self.lam)}")
                    row.append(int(x))
                gram.append(row)
        for a in range(m):
            ga = gram[a]
            for b in range(a):
                if ga[b] != gram[b][a]:
                    raise ArithmeticError(f"asymmetric Gram matrix at {nu} for {self.lam}")
        basis = padic_row_basis(gram, p)
        r = len(basis)
        if r != want:
            raise ArithmeticError(
                f"Gram rank {r} differs from Weyl multiplicity {want} at {nu} "
                f"for {format_weight(self.lam)} in {g}")
        gs = [[gram[a][b] for b in basis] for a in basis]
        inv = inverse_q(gs)
        # coordinates of every spanning vector in the chosen basis
        coords = _matmul([[gram[a][b] for b in basis] for a in range(m)], inv)
        self.dim[c] = r
        self.gram[c] = gs
        for i, k, src in blocks:
            cols = ecols[(i, k)]
            d = self.dim[src]
            self.E[(c, i, k)] = [[cols[b][s] for b in basis] for s in range(d)]
        pos = 0
        for i, k, src in blocks:
            d = self.dim[src]
            self.F[(src, i, k)] = [[coords[pos + b][s] for b in range(d)] for s in range(r)]
            pos += d
        if c in self.targets:
            self.reports[c] = GramReport(nu, c, m, gs, r, rank_mod_p(gs, p), want)


_simple_cache: dict = {}
_report_cache: dict = {}


def _restricted_dominant(g: GroupId, lam, limits: OracleLimits) -> dict:
    key = (g, lam)
    hit = _simple_cache.get(key)
    if hit is not None:
        return hit
    doms = dominant_weights_below(g, lam)
    lat = _Lattice(g, lam, doms, limits).run()
    out = {}
    for c, rep in lat.reports.items():
        if rep.rank_p:
            out[lat.targets[c]] = rep.rank_p
    with _lock:
        _simple_cache.setdefault(key, out)
        _report_cache.setdefault(key, [lat.reports[c] for c in sorted(lat.reports)])
    return out


def gram_reports(g: GroupId, lam, limits: OracleLimits = DEFAULT_LIMITS) -> list[GramReport]:
    lam = check_weight(g, lam)
    _restricted_dominant(g, lam, limits)
    return _report_cache[(g, lam)]


def simple_dominant(g: GroupId, lam, limits: OracleLimits = DEFAULT_LIMITS,
                    steinberg: bool = True) -> dict:
    """Dominant multiplicities of L(lam)."""
    lam = check_weight(g, lam)
    if min(lam) < 0:
        raise InvalidInput(f"{format_weight(lam)} is not dominant")
    if not steinberg or max(lam, default=0) < g.p:
        return _restricted_dominant(g, lam, limits)
    return simple_char(g, lam, limits).dominant_support()


def simple_char(g: GroupId, lam, limits: OracleLimits = DEFAULT_LIMITS,
                steinberg: bool = True) -> FormalCharacter:
    """Character of L(lam).  With steinberg=False the Gram recursion is run on
    V(lam) directly even when lam is not restricted."""
    lam = check_weight(g, lam)
    if min(lam) < 0:
        raise InvalidInput(f"{format_weight(lam)} is not dominant")
    layers = steinberg_decompose(lam, g.p).layers
    if not steinberg or len(layers) == 1:
        return from_dominant(g, _restricted_dominant(g, lam, limits))
    out = trivial_char(g)
    for k, lay in enumerate(layers):
        if any(lay):
            out = tensor(out, frobenius_twist(from_dominant(g, _restricted_dominant(g, lay, limits)), k))
    return out


def wdeg_oracle(g: GroupId, lam, limits: OracleLimits = DEFAULT_LIMITS) -> int:
    """Largest weight multiplicity of L(lam).  For non-restricted lam only the
    dominant part of the layer product is needed, but the full product is cheap
    at desk scale."""
    return simple_char(g, lam, limits).wdeg()


def clear_caches():
    with _lock:
        _freud_cache.clear()
        _simple_cache.clear()
        _report_cache.clear()


def orbit_size(g: GroupId, lam) -> int:
    return len(weyl_orbit(g, lam))
