"""Restriction along G_{n,k} = G_n(n-k+1..n) and along the split Levi
G_n(1..m, m+2..n) of type A, peeling characters into composition factors,
and executable checks of the branching statements used by the inductive
machinery."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .chars import FormalCharacter, known_simple_char
from .errors import InvalidInput, NotAModuleCharacter
from .oracle import DEFAULT_LIMITS, OracleLimits, simple_char, simple_dominant
from .rootsys import GroupId, check_weight, delta, eps_to_fw, fw_to_eps, height, weyl_orbit
from .weights import check_target_rank, format_weight, omega

SOURCES = ("oracle", "known", "auto")


@lru_cache(maxsize=None)
def _orbit_len(g: GroupId, w) -> int:
    return len(weyl_orbit(g, w))


def restrict_char(chi: FormalCharacter, k: int) -> FormalCharacter:
    g = chi.group
    h = check_target_rank(g, k)
    m = defaultdict(int)
    if g.family == "A":
        cut = g.rank - k
        for w, c in chi.items():
            m[w[cut:]] += c
    else:
        cut = g.rank - k
        for w, c in chi.items():
            m[eps_to_fw(h, fw_to_eps(g, w)[cut:])] += c
    return FormalCharacter(h, m)


@lru_cache(maxsize=None)
def _known_dominant(g: GroupId, mu):
    c = known_simple_char(g, mu)
    return None if c is None else c.dominant_support()


def simple_dominant_from(g: GroupId, mu, source: str = "oracle",
                         limits: OracleLimits = DEFAULT_LIMITS) -> dict:
    if source not in SOURCES:
        raise InvalidInput(f"unknown character source {source!r}")
    if source != "oracle":
        d = _known_dominant(g, tuple(mu))
        if d is not None:
            return d
        if source == "known":
            raise InvalidInput(f"no closed-form character for {format_weight(mu)} on {g}")
    return simple_dominant(g, mu, limits)


def simple_char_from(g: GroupId, mu, source: str = "oracle",
                     limits: OracleLimits = DEFAULT_LIMITS) -> FormalCharacter:
    if source != "oracle":
        c = known_simple_char(g, tuple(mu))
        if c is not None:
            return c
        if source == "known":
            raise InvalidInput(f"no closed-form character for {format_weight(mu)} on {g}")
    return simple_char(g, mu, limits)


def _peel_key(g, w):
    return (height(g, w), fw_to_eps(g, w))


def decompose(chi: FormalCharacter, source: str = "oracle",
              limits: OracleLimits = DEFAULT_LIMITS) -> list[tuple[tuple, int]]:
    """Composition factors [(highest weight, multiplicity)], highest first."""
    g = chi.group
    dom = chi.dominant_support()
    if sum(c * _orbit_len(g, w) for w, c in dom.items()) != chi.dim():
        raise NotAModuleCharacter("character is not Weyl-invariant")
    rest = dict(dom)
    out = []
    while rest:
        mu = max(rest, key=lambda w: _peel_key(g, w))
        c = rest[mu]
        if c < 0:
            raise NotAModuleCharacter(f"negative multiplicity {c} at {format_weight(mu)}")
        for w, a in simple_dominant_from(g, mu, source, limits).items():
            v = rest.get(w, 0) - c * a
            if v:
                rest[w] = v
            else:
                rest.pop(w, None)
        if any(v < 0 for v in rest.values()):
            bad = min(rest, key=rest.get)
            raise NotAModuleCharacter(
                f"peeling {format_weight(mu)} leaves {rest[bad]} at {format_weight(bad)}")
        out.append((mu, c))
    return out


def irr_k(g: GroupId, lam, k: int, source: str = "oracle",
          limits: OracleLimits = DEFAULT_LIMITS) -> set:
    lam = check_weight(g, lam)
    chi = simple_char_from(g, lam, source, limits)
    return {mu for mu, _ in decompose(restrict_char(chi, k), source, limits)}


def smith_highest_weight(g: GroupId, lam, roots) -> tuple[int, ...]:
    """Highest weight of the Smith factor K H v+ for H = G_n(roots)."""
    lam = check_weight(g, lam)
    roots = [int(r) for r in roots]
    if not roots or roots != sorted(set(roots)) or roots[0] < 1 or roots[-1] > g.rank:
        raise InvalidInput(f"root indices {roots} must be distinct, increasing, in 1..{g.rank}")
    return tuple(lam[r - 1] for r in roots)


# -- split Levi of type A ------------------------------------------------------------

def _hook(r: int, i: int, c: int, p: int) -> tuple:
    """c w_i + (p-1-c) w_{i+1} on a rank-r block (indices outside 1..r vanish)."""
    v = [0] * r
    if 1 <= i <= r:
        v[i - 1] += c
    if 1 <= i + 1 <= r:
        v[i] += p - 1 - c
    return tuple(v)


def levi_index_set(n: int, m: int, i: int, c: int, p: int) -> set:
    """Distinct weight pairs listed by N(i, c)."""
    r1, r2 = m, n - m - 1
    d = (p - 1) * i + p - 1 - c
    out = set()
    for i1, c1, i2, c2 in product(range(-1, r1 + 2), range(p), range(-1, r2 + 2), range(p)):
        e1 = (p - 1) * (i1 + 1) - c1
        e2 = (p - 1) * (i2 + 1) - c2
        if 0 <= e1 <= (p - 1) * (m + 1) and 0 <= e2 <= (p - 1) * (n - m) and e1 + e2 == d:
            out.add((_hook(r1, i1, c1, p), _hook(r2, i2, c2, p)))
    return out


def _block_factors(r: int, p: int, marg: dict, source, limits) -> set:
    if r == 0:
        return {()}
    h = GroupId("A", r, p)
    return {mu for mu, _ in decompose(FormalCharacter(h, marg), source, limits)}


def _fw_from_exps(b) -> tuple:
    return tuple(b[j] - b[j + 1] for j in range(len(b) - 1))


def _block_monomials(vars_: int, d: int, p: int) -> dict:
    out = defaultdict(int)
    for b in product(range(p), repeat=vars_):
        if sum(b) == d:
            out[_fw_from_exps(b)] += 1
    return dict(out)


@dataclass
class LeviReport:
    n: int
    m: int
    i: int
    c: int
    p: int
    expected: set
    computed: set
    pieces: int = 0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.expected == self.computed and not self.notes

    def __bool__(self):
        return self.passed

    def to_json(self):
        fmt = lambda s: sorted([list(a), list(b)] for a, b in s)
        return {"n": self.n, "m": self.m, "i": self.i, "c": self.c, "p": self.p,
                "expected": fmt(self.expected), "computed": fmt(self.computed),
                "pieces": self.pieces, "notes": self.notes, "pass": self.passed}


def levi_restrict_check(n: int, m: int, i: int, c: int, p: int, source: str = "oracle",
                        limits: OracleLimits = DEFAULT_LIMITS) -> LeviReport:
    """Restrict the truncated symmetric power L(c w_i + (p-1-c) w_{i+1}) of A_n
    to G_n(1..m, m+2..n) and compare its factors with N(i, c)."""
    g = GroupId("A", n, p)
    if not (0 <= c < p and 0 <= i <= n and 0 <= m < n):
        raise InvalidInput("need 0 <= c < p, 0 <= i <= n, 0 <= m < n")
    d = (p - 1) * i + p - 1 - c
    r1, r2 = m, n - m - 1
    # monomials b in [0, p-1]^{n+1} with |b| = d, graded by the degree on the first block
    pieces = defaultdict(lambda: defaultdict(int))
    for b in product(range(p), repeat=n + 1):
        if sum(b) != d:
            continue
        b1, b2 = b[:m + 1], b[m + 1:]
        pieces[sum(b1)][_fw_from_exps(b1), _fw_from_exps(b2)] += 1
    rep = LeviReport(n, m, i, c, p, levi_index_set(n, m, i, c, p), set(), len(pieces))
    total = 0
    for d1 in sorted(pieces):
        piece = pieces[d1]
        x1 = _block_monomials(m + 1, d1, p)
        x2 = _block_monomials(n - m, d - d1, p)
        dim = sum(piece.values())
        # the piece must be the outer product of the two block characters
        if dict(piece) != {(w1, w2): a * b for w1, a in x1.items() for w2, b in x2.items()}:
            rep.notes.append(f"degree {d1} piece is not an outer product")
            continue
        f1 = _block_factors(r1, p, x1, source, limits)
        f2 = _block_factors(r2, p, x2, source, limits)
        if len(f1) != 1 or len(f2) != 1:
            rep.notes.append(f"degree {d1} piece is not simple")
        rep.computed |= {(a, b) for a in f1 for b in f2}
        total += dim
    g_char = known_simple_char(g, _hook(n, i, c, p))
    if g_char is not None and g_char.dim() != total:
        rep.notes.append("pieces do not exhaust the module")
    return rep


# -- statement checks ----------------------------------------------------------------

@dataclass
class LemmaReport:
    lemma: str
    params: dict
    expected: object
    computed: object
    passed: bool

    def to_json(self):
        return {"lemma": self.lemma, "params": self.params, "expected": _jsonable(self.expected),
                "computed": _jsonable(self.computed), "pass": self.passed}


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted((_jsonable(v) for v in x), key=lambda v: (len(str(v)), str(v)))
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _fund_set(k: int) -> set:
    return {(0,) * k} | {omega(k, j) for j in range(1, k + 1)}


def _hook_set(k: int, p: int) -> set:
    return {_hook(k, j, p - 1 - a, p) for j in range(k + 1) for a in range(p)}


def _param(params, key, default=None):
    if key in params:
        return int(params[key])
    if default is None:
        raise InvalidInput(f"missing parameter {key!r}")
    return default


def _group(params, family=None) -> GroupId:
    fam = params.get("family", family)
    if family is not None and fam != family:
        raise InvalidInput(f"this check is for type {family}")
    return GroupId(fam, _param(params, "n"), _param(params, "p"))


def _set_check(lemma, params, expected, g, lam, k, source, limits):
    comp = irr_k(g, lam, k, source, limits)
    return LemmaReport(lemma, params, expected, comp, comp == expected)


def _fundamental_restriction(params, source, limits):
    g = _group(params, "A")
    n, i = g.rank, _param(params, "i")
    if not 1 <= i <= n or n < 2:
        raise InvalidInput("need n >= 2 and 1 <= i <= n")
    exp = {omega(n - 1, i - 1), omega(n - 1, i)}
    return _set_check("fundamental-restriction", params, exp, g, omega(n, i), n - 1, source, limits)


def _fundamental_window(params, source, limits):
    g = _group(params, "A")
    n, i, k = g.rank, _param(params, "i"), _param(params, "k")
    if not k < i <= n - k + 1 or k < 1:
        raise InvalidInput("need k < i <= n - k + 1")
    return _set_check("fundamental-window", params, _fund_set(k), g, omega(n, i), k, source, limits)


def _truncated_window(params, source, limits):
    g = _group(params, "A")
    n, p, i, c, k = g.rank, g.p, _param(params, "i"), _param(params, "c"), _param(params, "k")
    if not (k + 1 <= i < n - k and 0 <= c < p and k >= 1):
        raise InvalidInput("need k + 1 <= i < n - k and 0 <= c < p")
    lam = _hook(n, i, c, p)
    return _set_check("truncated-window", params, _hook_set(k, p), g, lam, k, source, limits)


def _sym_restriction(params, source, limits):
    g = _group(params, "A")
    n, p, a, k = g.rank, g.p, _param(params, "a"), _param(params, "k")
    if not (0 < a < p and 1 <= k < n):
        raise InvalidInput("need 0 < a < p and 1 <= k < n")
    exp = {omega(k, 1, b) for b in range(a + 1)}
    return _set_check("sym-restriction", params, exp, g, omega(n, 1, a), k, source, limits)


def _natural_restriction(params, source, limits):
    g = _group(params)
    n = g.rank
    if (g.family == "B" and n <= 2) or (g.family == "D" and n <= 4):
        raise InvalidInput("need n > 2 for B and n > 4 for D")
    exp = {(0,) * (n - 1), omega(n - 1, 1)}
    return _set_check("natural-restriction", params, exp, g, omega(n, 1), n - 1, source, limits)


def _oscillator_restriction(params, source, limits):
    g = _group(params, "C")
    n, p = g.rank, g.p
    if p == 2 or n < 3:
        raise InvalidInput("need p > 2 and n >= 3 (the target must have rank >= 2)")
    which = _param(params, "j", 2)
    if which == 2:
        lam = omega(n, n, (p - 1) // 2)
    else:
        lam = tuple(x + y for x, y in zip(omega(n, n - 1), omega(n, n, (p - 3) // 2)))
    m1 = tuple(x + y for x, y in zip(omega(n - 1, n - 2), omega(n - 1, n - 1, (p - 3) // 2)))
    exp = {m1, omega(n - 1, n - 1, (p - 1) // 2)}
    return _set_check("oscillator-restriction", params, exp, g, lam, n - 1, source, limits)


def _d3_half_spins():
    """Weight sets (doubled eps) of the two half-spin modules of D_3."""
    even = set()
    odd = set()
    for s in product((1, -1), repeat=3):
        (odd if s.count(-1) % 2 else even).add(s)
    return frozenset(even), frozenset(odd)


def _spin_restriction(params, source, limits):
    g = _group(params)
    n, fam = g.rank, g.family
    if fam == "B" and n > 2 or fam == "C" and g.p == 2:
        exp = {omega(n - 1, n - 1)}
        return _set_check("spin-restriction", params, exp, g, omega(n, n), n - 1, source, limits)
    if fam != "D":
        raise InvalidInput("needs B (n > 2), C with p = 2, or D")
    which = _param(params, "half", n)
    if which not in (n - 1, n):
        raise InvalidInput("half must be n-1 or n")
    lam = omega(n, which)
    if n == 4:
        # D_3 is below the rank guard: compare weight sets with the two half-spin
        # orbits of D_3 directly (they are minuscule, so weights determine factors)
        chi = simple_char_from(g, lam, source, limits)
        buckets = defaultdict(int)
        for w, c in chi.items():
            buckets[fw_to_eps(g, w)[1:]] += c
        halves = _d3_half_spins()
        got = set()
        ok = all(c == 2 for c in buckets.values()) or all(c == 1 for c in buckets.values())
        for h in halves:
            if h <= set(buckets):
                got.add(h)
        ok = ok and set().union(*got) == set(buckets) if got else False
        names = {halves[0]: "half-spin even (omega_3 of D_3)", halves[1]: "half-spin odd (omega_2 of D_3)"}
        return LemmaReport("spin-restriction", params, sorted(names.values()),
                           sorted(names[h] for h in got), ok and len(got) == 2)
    exp = {omega(n - 1, n - 1), omega(n - 1, n - 2)}
    return _set_check("spin-restriction", params, exp, g, lam, n - 1, source, limits)


def _c2_q_restriction(params, source, limits):
    g = _group(params, "C")
    n = g.rank
    if g.p != 2 or n <= 2:
        raise InvalidInput("need p = 2 and n > 2")
    lam = tuple(x + y for x, y in zip(omega(n, 1), omega(n, n)))
    exp = {tuple(x + y for x, y in zip(omega(n - 1, 1), omega(n - 1, n - 1))), omega(n - 1, n - 1)}
    return _set_check("c2-q-restriction", params, exp, g, lam, n - 1, source, limits)


def _monotone(params, source, limits, kind):
    g = _group(params)
    lam = check_weight(g, tuple(params["weight"]))
    k = _param(params, "k")
    if kind == "delta" and g.family == "B" and k <= 1:
        raise InvalidInput("needs k > 1 for type B")
    factors = irr_k(g, lam, k, source, limits)
    h = g.with_rank(k)
    if kind == "wdeg":
        top = simple_char_from(g, lam, source, limits).wdeg()
        vals = {mu: simple_char_from(h, mu, source, limits).wdeg() for mu in factors}
        lemma = "factor-wdeg-monotone"
    else:
        top = delta(g, lam)
        vals = {mu: delta(h, mu) for mu in factors}
        lemma = "factor-delta-monotone"
    comp = {format_weight(mu): v for mu, v in sorted(vals.items())}
    return LemmaReport(lemma, params, {"bound": top}, comp, all(v <= top for v in vals.values()))


def _levi_split(params, source, limits):
    n, m, i, c, p = (_param(params, x) for x in ("n", "m", "i", "c", "p"))
    rep = levi_restrict_check(n, m, i, c, p, source, limits)
    j = rep.to_json()
    return LemmaReport("levi-split", params, j["expected"], j["computed"], rep.passed)


LEMMAS = {
    "fundamental-restriction": _fundamental_restriction,
    "fundamental-window": _fundamental_window,
    "truncated-window": _truncated_window,
    "sym-restriction": _sym_restriction,
    "natural-restriction": _natural_restriction,
    "oscillator-restriction": _oscillator_restriction,
    "spin-restriction": _spin_restriction,
    "c2-q-restriction": _c2_q_restriction,
    "factor-wdeg-monotone": lambda pr, s, l: _monotone(pr, s, l, "wdeg"),
    "factor-delta-monotone": lambda pr, s, l: _monotone(pr, s, l, "delta"),
    "levi-split": _levi_split,
}


def verify_lemma(lemma: str, params: dict, source: str = "oracle",
                 limits: OracleLimits = DEFAULT_LIMITS) -> LemmaReport:
    try:
        fn = LEMMAS[lemma]
    except KeyError:
        raise InvalidInput(f"unknown check {lemma!r}; choose from {', '.join(LEMMAS)}")
    return fn(dict(params), source, limits)
