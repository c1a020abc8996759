"""Finite windows of inductive systems along G_1 < G_2 < ... (trailing-block
embeddings), the named catalog, and the BWM enumerators.

A window keeps the level sets Phi_n for n in [n_min, n_max] as frozensets of
dominant weights.  Generated systems <R_t> are computed downward,

    Pi_n = union of Irr_n(phi) over phi in Pi_{n+1} and R_{n+1},

which equals the union over all t > n by transitivity of restriction.  Since
generators stop at some top rank T, the levels near T are incomplete; the
computation is repeated with top T - w and only the prefix on which the two
agree is reported.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product

from . import classify
from .branching import irr_k, simple_char_from
from .chars import FormalCharacter, frobenius_twist, tensor
from .errors import InvalidInput, OracleRefusal, UnstableWindow
from .oracle import DEFAULT_LIMITS, OracleLimits, dominant_weights_below
from .rootsys import MIN_RANK, GroupId, delta, fw_to_eps
from .weights import omega, steinberg_decompose, wsum

N_MIN = {"A": 1, "B": 2, "C": 2, "D": 4}
ATOMS = ("O", "L", "F", "T", "S", "S'", "Q", "CL", "CR", "L^", "R^")


# -- descriptors ---------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    kind: str
    coeffs: tuple = ()

    def __str__(self):
        if self.kind in ("CL", "CR"):
            return f"{self.kind}[{','.join(map(str, self.coeffs))}]"
        if self.kind in ("L^", "R^"):
            return f"{self.kind}{self.coeffs[0]}"
        return self.kind


def _check_atom(atom: Atom, family: str, p: int):
    k = atom.kind
    if k not in ATOMS:
        raise InvalidInput(f"unknown atom {k!r}")
    if k in ("F", "T", "CL", "CR", "L^", "R^") and family != "A":
        raise InvalidInput(f"atom {atom} is for type A only")
    if k == "S" and (family == "A" or (family == "C" and p == 2)):
        raise InvalidInput("S is defined for B, D and for C with p > 2")
    if k in ("S'", "Q") and not (family == "C" and p == 2):
        raise InvalidInput(f"atom {k} is for type C with p = 2 only")
    if k in ("CL", "CR"):
        if not atom.coeffs or min(atom.coeffs) < 0:
            raise InvalidInput(f"{atom} needs a nonempty nonnegative coefficient vector")
        if max(atom.coeffs) >= p:
            raise InvalidInput(f"{atom}: coefficients must be below p = {p}")
    if k in ("L^", "R^") and atom.coeffs[0] < 0:
        raise InvalidInput("degree must be nonnegative")


@dataclass(frozen=True)
class SystemDescriptor:
    family: str
    p: int
    factors: tuple      # ((twist, Atom), ...) sorted by twist

    def __post_init__(self):
        tw = [k for k, _ in self.factors]
        if len(set(tw)) != len(tw) or any(k < 0 for k in tw):
            raise InvalidInput("twists must be distinct and nonnegative")
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=lambda f: f[0])))
        GroupId(self.family, N_MIN[self.family], self.p)
        for _, a in self.factors:
            _check_atom(a, self.family, self.p)

    @property
    def depth(self) -> int:
        return max(k for k, _ in self.factors)

    def positions(self) -> list:
        d = dict(self.factors)
        return [d.get(k, Atom("O")) for k in range(self.depth + 1)]

    def __str__(self):
        return format_descriptor(self)


_TERM = re.compile(r"^(?:Fr(?:\^(\d+))?\((.*)\)|(.*))$")
_ATOM = re.compile(r"^(O|L|F|T|S'|S|Q|CL\[([0-9,\s]*)\]|CR\[([0-9,\s]*)\]|L\^(\d+)|R\^(\d+))$")


def parse_atom(text: str) -> Atom:
    m = _ATOM.match(text.strip())
    if not m:
        raise InvalidInput(f"cannot parse atom {text!r}")
    tok = m.group(1)
    if tok.startswith("CL") or tok.startswith("CR"):
        body = m.group(2) if tok.startswith("CL") else m.group(3)
        try:
            coeffs = tuple(int(x) for x in body.split(",") if x.strip())
        except ValueError:
            raise InvalidInput(f"bad coefficients in {text!r}")
        return Atom(tok[:2], coeffs)
    if m.group(4) is not None:
        return Atom("L^", (int(m.group(4)),))
    if m.group(5) is not None:
        return Atom("R^", (int(m.group(5)),))
    return Atom(tok)


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "*" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [s.strip() for s in parts]


def parse_descriptor(text: str, family: str, p: int) -> SystemDescriptor:
    """Grammar: term ('*' term)*, term = atom | Fr(atom) | Fr^k(atom)."""
    factors = []
    for term in _split_top(text):
        if not term:
            raise InvalidInput(f"empty factor in {text!r}")
        m = _TERM.match(term)
        if m.group(3) is not None:
            factors.append((0, parse_atom(m.group(3))))
        else:
            k = int(m.group(1)) if m.group(1) else 1
            factors.append((k, parse_atom(m.group(2))))
    return SystemDescriptor(family, p, tuple(factors))


def format_descriptor(d: SystemDescriptor) -> str:
    out = []
    for k, a in d.factors:
        out.append(str(a) if k == 0 else (f"Fr({a})" if k == 1 else f"Fr^{k}({a})"))
    return " * ".join(out)


# -- windows -------------------------------------------------------------------------

@dataclass
class InductiveWindow:
    family: str
    p: int
    levels: dict            # n -> frozenset of weights
    provenance: str = ""
    checks: dict = field(default_factory=dict)

    @property
    def n_min(self) -> int:
        return min(self.levels)

    @property
    def n_max(self) -> int:
        return max(self.levels)

    def group(self, n: int) -> GroupId:
        return GroupId(self.family, n, self.p)

    def __getitem__(self, n):
        return self.levels[n]

    def same_levels(self, other) -> bool:
        return self.levels == other.levels

    def to_json(self) -> dict:
        return {"family": self.family, "p": self.p, "provenance": self.provenance,
                "levels": {str(n): [list(w) for w in sorted(ws, key=lambda w: (sum(w), w))]
                           for n, ws in sorted(self.levels.items())},
                "checks": self.checks}


def _bounds(family, n_min, n_max):
    lo = N_MIN[family] if n_min is None else n_min
    if lo < MIN_RANK[family] or n_max < lo:
        raise InvalidInput(f"window [{lo}, {n_max}] is not valid for type {family}")
    return lo, n_max


def _fund(n):
    return {(0,) * n} | {omega(n, i) for i in range(1, n + 1)}


def _hooks(n, p):
    out = set()
    for i in range(n + 1):
        for a in range(p):
            w = [0] * n
            if 1 <= i <= n:
                w[i - 1] += p - 1 - a
            if i + 1 <= n:
                w[i] += a
            out.add(tuple(w))
    return out


def atom_levels(atom: Atom, family: str, p: int, n: int) -> set:
    """Displayed level set of a catalog atom (C_L/C_R excluded: those are generated)."""
    k = atom.kind
    z = (0,) * n
    if k == "O":
        return {z}
    if k == "L":
        return {z, omega(n, 1)}
    if k == "F":
        return _fund(n)
    if k == "T":
        return _hooks(n, p)
    if k == "S":
        if family == "B":
            return {omega(n, n)}
        if family == "D":
            return {omega(n, n - 1), omega(n, n)}
        return {omega(n, n, (p - 1) // 2), wsum(omega(n, n - 1), omega(n, n, (p - 3) // 2))}
    if k == "S'":
        return {omega(n, n)}
    if k == "Q":
        return {wsum(omega(n, 1), omega(n, n)), omega(n, n)}
    if k == "L^":
        return set(classify.enumerate_small_pdeg_weights(atom.coeffs[0], n))
    if k == "R^":
        return {tuple(reversed(w)) for w in classify.enumerate_small_pdeg_weights(atom.coeffs[0], n)}
    raise InvalidInput(f"atom {atom} has no displayed level set")


def generator_weight(atom: Atom, family: str, p: int, n: int):
    """The weight of M_{n,L}(a) / M_{n,R}(a), or None when n < d."""
    a = atom.coeffs
    if len(a) > n:
        return None
    w = [0] * n
    for i, c in enumerate(a):
        if atom.kind == "CL":
            w[i] = c
        else:
            w[n - 1 - i] = c
    return tuple(w)


def _irr(family, p, n, lam, source, limits):
    return irr_k(GroupId(family, n + 1, p), lam, n, source, limits)


def _downward(family, p, gens: dict, lo: int, top: int, source, limits) -> dict:
    """Pi_n for lo <= n < top from generators gens[t], t <= top."""
    pi = {}
    above = set()
    for n in range(top - 1, lo - 1, -1):
        src = above | set(gens.get(n + 1, ()))
        lev = set()
        for lam in src:
            lev |= _irr(family, p, n, lam, source, limits)
        pi[n] = frozenset(lev)
        above = lev
    return pi


def generate(generators, family: str, p: int, n_min: int | None = None, top: int = 10,
             w: int = 2, source: str = "auto", limits: OracleLimits = DEFAULT_LIMITS,
             provenance: str = "generated") -> InductiveWindow:
    """Window of <R_t> from generators R_t (callable t -> iterable of weights, or
    a dict), using t <= top, and checked against the run with t <= top - w."""
    lo, _ = _bounds(family, n_min, top)
    get = generators if callable(generators) else (lambda t: generators.get(t, ()))
    gens = {}
    for t in range(lo, top + 1):
        ws = {tuple(x) for x in (get(t) or ())}
        if ws:
            gens[t] = ws
    if not gens:
        raise InvalidInput("no generators in range")
    kmax = max(delta(GroupId(family, t, p), x) for t, ws in gens.items() for x in ws)
    hi = _downward(family, p, gens, lo, top, source, limits)
    low_top = top - w
    if low_top <= lo:
        raise InvalidInput(f"top - w = {low_top} leaves nothing to compare")
    low = _downward(family, p, {t: v for t, v in gens.items() if t <= low_top},
                    lo, low_top, source, limits)
    stable = lo - 1
    for n in range(lo, low_top):
        if hi[n] != low[n]:
            break
        stable = n
    if stable < lo:
        raise UnstableWindow(f"levels disagree already at n = {lo}; raise the top rank")
    levels = {n: hi[n] for n in range(lo, stable + 1)}
    missing = [t for t, ws in gens.items() if t <= stable and not ws <= levels[t]]
    win = InductiveWindow(family, p, levels, provenance)
    win.checks["stability"] = {"top": top, "w": w, "stable_upto": stable,
                               "compared_upto": low_top - 1,
                               "status": "stable" if stable == low_top - 1 else "stable prefix only"}
    win.checks["generator_delta_bound"] = kmax
    win.checks["generators_contained"] = not missing
    return win


def _twist_weights(ws, p, k):
    return {tuple(p ** k * a for a in x) for x in ws}


def _fits_below(x, p, k) -> bool:
    return max(x, default=0) < p ** k


def _tensor_factors(family, p, n, x, y, source, limits) -> set:
    """Irr(L(x) (x) L(y)); exact and cheap when the Steinberg theorem applies."""
    if not any(x):
        return {y}
    if not any(y):
        return {x}
    # x below p^k and y divisible by p^k: the product is simple
    for k in range(1, 64):
        if not _fits_below(x, p, k):
            continue
        if all(a % p ** k == 0 for a in y):
            return {wsum(x, y)}
        break
    for k in range(1, 64):
        if not _fits_below(y, p, k):
            continue
        if all(a % p ** k == 0 for a in x):
            return {wsum(x, y)}
        break
    from .branching import decompose
    g = GroupId(family, n, p)
    chi = tensor(simple_char_from(g, x, source, limits), simple_char_from(g, y, source, limits))
    return {mu for mu, _ in decompose(chi, source, limits)}


def fr_twist(win: InductiveWindow, k: int = 1) -> InductiveWindow:
    if k < 0:
        raise InvalidInput("twist power must be nonnegative")
    return InductiveWindow(win.family, win.p,
                           {n: frozenset(_twist_weights(ws, win.p, k)) for n, ws in win.levels.items()},
                           f"Fr^{k}({win.provenance})")


def _compatible(a: InductiveWindow, b: InductiveWindow):
    if (a.family, a.p) != (b.family, b.p):
        raise InvalidInput("windows belong to different families or characteristics")
    common = sorted(set(a.levels) & set(b.levels))
    if not common:
        raise InvalidInput("windows have no common levels")
    return common


def tensor_windows(a: InductiveWindow, b: InductiveWindow, source: str = "auto",
                   limits: OracleLimits = DEFAULT_LIMITS) -> InductiveWindow:
    levels = {}
    for n in _compatible(a, b):
        lev = set()
        for x in a.levels[n]:
            for y in b.levels[n]:
                lev |= _tensor_factors(a.family, a.p, n, x, y, source, limits)
        levels[n] = frozenset(lev)
    return InductiveWindow(a.family, a.p, levels, f"{a.provenance} (x) {b.provenance}")


def union(a: InductiveWindow, b: InductiveWindow) -> InductiveWindow:
    return InductiveWindow(a.family, a.p, {n: a.levels[n] | b.levels[n] for n in _compatible(a, b)},
                           f"{a.provenance} u {b.provenance}")


def difference(a: InductiveWindow, b: InductiveWindow, source: str = "auto",
               limits: OracleLimits = DEFAULT_LIMITS) -> InductiveWindow:
    """D(a, b): generated by the levelwise differences; the top level is dropped
    because nothing above it is known."""
    common = _compatible(a, b)
    if any(not b.levels[n] <= a.levels[n] for n in common):
        raise InvalidInput("subtrahend is not contained in the window levelwise")
    xi = {n: a.levels[n] - b.levels[n] for n in common}
    if not any(xi.values()):
        raise InvalidInput("the inclusion is not proper: empty difference")
    lo, top = common[0], common[-1]
    levels = _downward(a.family, a.p, xi, lo, top, source, limits)
    return InductiveWindow(a.family, a.p, levels, f"D({a.provenance}, {b.provenance})")


def restrict_window(win: InductiveWindow, lo: int, hi: int) -> InductiveWindow:
    return InductiveWindow(win.family, win.p, {n: v for n, v in win.levels.items() if lo <= n <= hi},
                           win.provenance, dict(win.checks))


# -- realization ------------------------------------------------------------------------

def _atom_window(atom, family, p, lo, hi, w, source, limits) -> InductiveWindow:
    if atom.kind in ("CL", "CR"):
        gens = lambda t: [x for x in [generator_weight(atom, family, p, t)] if x]
        # raise the top rank until the stable prefix reaches the requested level
        for top in range(hi + w + 1, hi + 2 * w + 6):
            win = generate(gens, family, p, lo, top, w, source, limits, provenance=str(atom))
            if win.n_max >= hi:
                win.checks["stability"]["status"] = "stable on the requested levels"
                break
        else:
            win.checks["stability"]["status"] = "unstable - raise the top rank"
            win.checks["requested_upto"] = hi
        return restrict_window(win, lo, hi) if win.n_max > hi else win
    levels = {n: frozenset(atom_levels(atom, family, p, n)) for n in range(lo, hi + 1)}
    win = InductiveWindow(family, p, levels, str(atom))
    if atom.kind == "T" and p == 2:
        win.checks["note"] = "T coincides with F when p = 2"
    return win


def realize(d: SystemDescriptor, n_max: int = 8, n_min: int | None = None, w: int = 2,
            source: str = "auto", limits: OracleLimits = DEFAULT_LIMITS) -> InductiveWindow:
    lo, hi = _bounds(d.family, n_min, n_max)
    out = None
    for k, atom in d.factors:
        win = _atom_window(atom, d.family, d.p, lo, hi, w, source, limits)
        if k:
            win = fr_twist(win, k)
        out = win if out is None else tensor_windows(out, win, source, limits)
    out.provenance = format_descriptor(d)
    return out


def check_closure(win: InductiveWindow, source: str = "auto",
                  limits: OracleLimits = DEFAULT_LIMITS) -> dict:
    """n -> True / False / "unverified" for the identity
    union of Irr_n(phi), phi in level n+1  ==  level n."""
    out = {}
    for n in range(win.n_min, win.n_max):
        try:
            lev = set()
            for lam in win.levels[n + 1]:
                lev |= _irr(win.family, win.p, n, lam, source, limits)
            out[n] = lev == set(win.levels[n])
        except OracleRefusal:
            out[n] = "unverified"
    win.checks["closure"] = {str(n): v for n, v in out.items()}
    return out


def delta_system(win: InductiveWindow) -> int:
    vals = {n: max(delta(win.group(n), x) for x in ws) for n, ws in win.levels.items()}
    start = 3 if win.family == "B" else win.n_min
    seen = {v for n, v in vals.items() if n >= start}
    if len(seen) > 1:
        raise InvalidInput(f"delta is not constant across levels: {vals}")
    win.checks["delta"] = {str(n): v for n, v in sorted(vals.items())}
    return seen.pop() if seen else vals[win.n_max]


def q1_level() -> set:
    """Irr_1 of Q_2 for C_2, p = 2, with C_1 = SL_2 read off the last eps coordinate."""
    from .branching import decompose
    g = GroupId("C", 2, 2)
    a1 = GroupId("A", 1, 2)
    out = set()
    for lam in atom_levels(Atom("Q"), "C", 2, 2):
        chi = simple_char_from(g, lam, "auto")
        m = {}
        for x, c in chi.items():
            e = fw_to_eps(g, x)[-1] // 2
            m[(e,)] = m.get((e,), 0) + c
        out |= {mu for mu, _ in decompose(FormalCharacter(a1, m), "oracle")}
    return out


# -- BWM catalogs ---------------------------------------------------------------------

C2_FORBIDDEN = {("S'", "L"), ("Q", "L"), ("S'", "Q"), ("Q", "Q")}


@dataclass
class Enumeration:
    descriptors: list
    partial: bool = False
    note: str = ""

    def to_json(self):
        return {"count": len(self.descriptors), "partial": self.partial, "note": self.note,
                "descriptors": [format_descriptor(d) for d in self.descriptors]}


def _from_positions(family, p, atoms) -> SystemDescriptor:
    facs = tuple((k, a) for k, a in enumerate(atoms) if a.kind != "O" or k == 0)
    return SystemDescriptor(family, p, facs)


def atom_delta(atom: Atom, p: int) -> int:
    """delta of a type-A catalog atom (largest over its level sets)."""
    if atom.kind == "O":
        return 0
    if atom.kind == "F":
        return 1
    if atom.kind == "T":
        return p - 1
    if atom.kind in ("CL", "CR"):
        return sum(atom.coeffs)
    raise InvalidInput(f"no delta for {atom}")


def type_a_failure(atoms, p: int):
    """First position k where a C_L (or C_R) block ending at k-1 has
    delta >= p^k while a different nontrivial atom starts at k; None if fine."""
    for k in range(1, len(atoms)):
        cur = atoms[k]
        if cur.kind == "O":
            continue
        for side in ("CL", "CR"):
            if cur.kind == side:
                continue
            # maximal run of side-or-O atoms ending at k-1
            j = k - 1
            while j >= 0 and atoms[j].kind in (side, "O"):
                j -= 1
            run = range(j + 1, k)
            if not any(atoms[t].kind == side for t in run):
                continue
            dl = sum(p ** t * atom_delta(atoms[t], p) for t in run)
            if dl >= p ** k:
                return k
    return None


def _a_atoms(p: int, budget: int) -> list:
    out = [Atom("O"), Atom("F")]
    if p > 2:
        out.append(Atom("T"))
    vecs = []
    for d in range(1, budget + 1):
        for a in product(range(p), repeat=d):
            if a[-1] and sum((i + 1) * x for i, x in enumerate(a)) <= budget:
                vecs.append(a)
    for a in vecs:
        out.append(Atom("CL", a))
    for a in vecs:
        out.append(Atom("CR", a))
    return out


def enumerate_bwm(family: str, p: int, s: int, budget: int = 2) -> Enumeration:
    if s < 0 or s > 3:
        raise InvalidInput("twist depth s must be in 0..3")
    GroupId(family, N_MIN[family], p)
    if family == "A":
        atoms = _a_atoms(p, budget)
        out = []
        for tup in product(atoms, repeat=s + 1):
            if s and tup[-1].kind == "O":
                continue
            if type_a_failure(tup, p) is None:
                out.append(_from_positions(family, p, tup))
        return Enumeration(out, True, f"C_L/C_R atoms limited to pdeg <= {budget}")
    if family == "C" and p == 2:
        names = ("O", "L", "Q", "S'")
    else:
        names = ("O", "L", "S")
    out = []
    for tup in product(names, repeat=s + 1):
        if family == "C" and p == 2 and any((tup[j], tup[j + 1]) in C2_FORBIDDEN for j in range(s)):
            continue
        out.append(_from_positions(family, p, [Atom(x) for x in tup]))
    return Enumeration(out)


def representative_weight(d: SystemDescriptor, n: int) -> tuple | None:
    """A generator-level weight of the realized system at rank n (largest delta)."""
    tot = (0,) * n
    for k, atom in d.factors:
        if atom.kind in ("CL", "CR"):
            x = generator_weight(atom, d.family, d.p, n)
            if x is None:
                return None
        elif atom.kind == "F":
            x = omega(n, (n + 1) // 2)
        elif atom.kind == "T":
            x = omega(n, (n + 1) // 2, d.p - 1)
        elif atom.kind == "L^":
            x = omega(n, 1, atom.coeffs[0])
        elif atom.kind == "R^":
            x = omega(n, n, atom.coeffs[0])
        else:
            x = max(atom_levels(atom, d.family, d.p, n), key=lambda w: (delta(GroupId(d.family, n, d.p), w), w))
        tot = wsum(tot, tuple(d.p ** k * a for a in x))
    return tot


def layered_dominant(g: GroupId, lam, source: str = "auto",
                     limits: OracleLimits = DEFAULT_LIMITS) -> dict:
    """Dominant multiplicities of L(lam) via its Steinberg layers, convolving
    only onto dominant targets."""
    layers = steinberg_decompose(lam, g.p).layers
    base = simple_char_from(g, layers[0], source, limits)
    rest = None
    for k, lay in enumerate(layers[1:], start=1):
        if not any(lay):
            continue
        c = frobenius_twist(simple_char_from(g, lay, source, limits), k)
        rest = c if rest is None else tensor(rest, c)
    if rest is None:
        return base.dominant_support()
    out = {}
    for mu in dominant_weights_below(g, tuple(lam)):
        m = 0
        for x, c in base.items():
            r = rest[tuple(a - b for a, b in zip(mu, x))]
            if r:
                m += c * r
        if m:
            out[mu] = m
    return out


@dataclass
class BWMVerdict:
    descriptor: str
    kind: str                 # bounded | unbounded | inconclusive
    max_wdeg: int | None = None
    per_level: dict = field(default_factory=dict)
    cap: int | None = None
    certificate: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self):
        return {"descriptor": self.descriptor, "verdict": self.kind, "max_wdeg": self.max_wdeg,
                "per_level": {str(k): v for k, v in self.per_level.items()}, "cap": self.cap,
                "certificate": self.certificate, "notes": self.notes}


GROWTH_RANKS = (8, 12, 16, 20)


def _growth_certificate(d: SystemDescriptor) -> list:
    rows = []
    for n in GROWTH_RANKS:
        lam = representative_weight(d, n)
        if lam is None:
            return []
        v = classify.wdeg_verdict(GroupId(d.family, n, d.p), lam)
        rows.append({"n": n, "weight": list(lam), "lower": v.lo,
                     "sources": sorted({b.source for b in v.lower if b.value == v.lo})})
    lows = [r["lower"] for r in rows]
    if lows[0] >= 2 and all(a < b for a, b in zip(lows, lows[1:])):
        return rows
    return []


def in_catalog(d: SystemDescriptor) -> bool:
    atoms = d.positions()
    if d.family == "A":
        if any(a.kind in ("L^", "R^", "L") for a in atoms):
            return False
        return type_a_failure(atoms, d.p) is None
    names = [a.kind for a in atoms]
    if d.family == "C" and d.p == 2:
        return all((names[j], names[j + 1]) not in C2_FORBIDDEN for j in range(len(names) - 1))
    return True


def _type_a_cap(d: SystemDescriptor):
    """prod d_j! over the maximal same-side blocks, with d the largest atom pdeg."""
    atoms = d.positions()
    p = d.p
    blocks, cur = [], None
    for k, a in enumerate(atoms):
        side = a.kind if a.kind in ("CL", "CR") else None
        if side and cur and cur[0] in (side, "O"):
            cur[0] = side
            cur[1].append(k)
        elif a.kind == "O" and cur:
            cur[1].append(k)
        else:
            cur = [side or a.kind, [k]]
            blocks.append(cur)
    degs = [sum((i + 1) * x for i, x in enumerate(a.coeffs)) for a in atoms if a.kind in ("CL", "CR")]
    dd = max(degs, default=0)
    cap, need = 1, 0
    from math import factorial
    for side, ks in blocks:
        if side in ("CL", "CR"):
            dj = dd * sum(p ** e for e in range(len(ks)))
            cap *= factorial(dj)
            need = max(need, dj)
    return cap, need


def bwm_check(d: SystemDescriptor, n_max: int = 8, n_min: int | None = None, w: int = 2,
              source: str = "auto", limits: OracleLimits = DEFAULT_LIMITS) -> BWMVerdict:
    text = format_descriptor(d)
    v = BWMVerdict(text, "inconclusive")
    cert = _growth_certificate(d)
    if cert:
        v.kind = "unbounded"
        v.certificate = cert
        v.notes.append("lower bound grows with the rank")
    try:
        win = realize(d, n_max, n_min, w, source, limits)
    except (OracleRefusal, UnstableWindow) as e:
        v.notes.append(f"realization failed: {e}")
        return v
    for n, ws in sorted(win.levels.items()):
        g = GroupId(d.family, n, d.p)
        try:
            v.per_level[n] = max(max(layered_dominant(g, x, source, limits).values()) for x in ws)
        except OracleRefusal:
            v.notes.append(f"level {n} beyond the oracle envelope")
    if v.per_level:
        v.max_wdeg = max(v.per_level.values())
    if v.kind == "unbounded":
        return v
    if in_catalog(d):
        v.kind = "bounded"
        if d.family == "A":
            v.cap, need = _type_a_cap(d)
            v.notes.append(f"block cap prod d_j! holds for n >= {need}")
        else:
            v.cap = 2 ** sum(1 for a in d.positions() if a.kind == "Q")
    return v
