"""Acceptance suite: ten criteria, each printing one PASS/FAIL line.

Run with pytest, or directly (``python3 tests/test_acceptance.py``) for the summary alone.
"""
from __future__ import annotations

import itertools
import math
import random
import time

import pytest

from wmult import branching, chars, classify, inductive, oracle
from wmult.rootsys import GroupId, delta
from wmult.weights import dual_weight, min_pdeg, omega, support, wsum

SEED = 20260

SUMMARY = []


def _report(n: int, ok: bool, detail: str, t0: float):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({time.time() - t0:5.1f}s)  {detail}"
    SUMMARY.append(line)
    return line


@pytest.fixture
def say(capsys):
    def emit(line):
        with capsys.disabled():
            print("\n" + line)
    return emit


def _restricted(n, p, max_sum):
    for lam in itertools.product(range(p), repeat=n):
        if 0 < sum(lam) <= max_sum or sum(lam) == 0:
            yield lam


# -- 1: Omega classification matches the oracle ---------------------------------------

def criterion_1():
    cases = [("A", 4, 2), ("A", 4, 3), ("B", 3, 3), ("C", 3, 3), ("D", 4, 3), ("C", 3, 2)]
    bad, total = [], 0
    for fam, n, p in cases:
        g = GroupId(fam, n, p)
        for lam in _restricted(n, p, 2):
            total += 1
            if (oracle.wdeg_oracle(g, lam) == 1) != classify.in_omega(g, lam):
                bad.append((str(g), lam))
    return not bad, f"{total} weights, mismatches {bad[:5]}"


# -- 2: branching statements --------------------------------------------------------------

def _lemma_cases():
    for n, p in itertools.product((3, 4, 5), (2, 3)):
        for i in range(1, n + 1):
            yield "fundamental-restriction", {"n": n, "p": p, "i": i}
            for k in range(1, n):
                if k < i <= n - k + 1:
                    yield "fundamental-window", {"n": n, "p": p, "i": i, "k": k}
        for i, c, k in itertools.product(range(n + 1), range(p), range(1, n)):
            if k + 1 <= i < n - k:
                yield "truncated-window", {"n": n, "p": p, "i": i, "c": c, "k": k}
        for a, k in itertools.product(range(1, p), range(1, n)):
            yield "sym-restriction", {"n": n, "p": p, "a": a, "k": k}
    for a, k in itertools.product(range(1, 5), range(1, 4)):
        yield "sym-restriction", {"n": 4, "p": 5, "a": a, "k": k}
    for fam, n, p in [("B", 3, 3), ("B", 4, 3), ("C", 3, 3), ("C", 3, 2), ("C", 4, 3), ("D", 5, 3)]:
        yield "natural-restriction", {"family": fam, "n": n, "p": p}
    for p, j in itertools.product((3, 5), (1, 2)):
        yield "oscillator-restriction", {"family": "C", "n": 3, "p": p, "j": j}
    yield "spin-restriction", {"family": "B", "n": 3, "p": 3}
    yield "spin-restriction", {"family": "C", "n": 3, "p": 2}
    for half in (3, 4):
        yield "spin-restriction", {"family": "D", "n": 4, "p": 3, "half": half}
    yield "c2-q-restriction", {"family": "C", "n": 3, "p": 2}
    for n, p in itertools.product((3, 4), (2, 3)):
        for m, i, c in itertools.product(range(n), range(n + 1), range(p)):
            yield "levi-split", {"n": n, "m": m, "i": i, "c": c, "p": p}


def criterion_2():
    failed, count = [], 0
    for lemma, params in _lemma_cases():
        count += 1
        if not branching.verify_lemma(lemma, params).passed:
            failed.append((lemma, params))
    return not failed, f"{count} checks, failures {failed[:3]}"


# -- 3: Steinberg product vs direct Gram computation ---------------------------------------

def _nonrestricted(g, count):
    pool = [lam for lam in itertools.product(range(2 * g.p), repeat=g.rank) if max(lam) >= g.p]
    pool.sort(key=lambda lam: (oracle.weyl_dimension(g, lam), lam))
    return pool[:count]


def criterion_3():
    bad, total = [], 0
    for g in (GroupId("A", 2, 2), GroupId("A", 3, 2), GroupId("B", 3, 3), GroupId("C", 3, 2)):
        for lam in _nonrestricted(g, 10):
            total += 1
            direct = oracle.simple_char(g, lam, steinberg=False)
            if direct != oracle.simple_char(g, lam):
                bad.append((str(g), lam))
    return not bad, f"{total} weights, mismatches {bad}"


# -- 4: pdeg bounds and rank independence ----------------------------------------------------

def _partition_weight(parts, n):
    lam = [0] * n
    for k in parts:
        lam[k - 1] += 1
    return tuple(lam)


def _partitions(d, cap):
    if d == 0:
        yield ()
        return
    for k in range(min(d, cap), 0, -1):
        for rest in _partitions(d - k, k):
            yield (k,) + rest


def criterion_4():
    bad, total = [], 0
    for p in (2, 3, 5):
        for d in range(1, 5):
            for parts in _partitions(d, d):
                seen = {}
                for n in (4, 5, 6):
                    g = GroupId("A", n, p)
                    for lam in (_partition_weight(parts, n), dual_weight(g, _partition_weight(parts, n))):
                        total += 1
                        w = oracle.wdeg_oracle(g, lam)
                        md = min_pdeg(g, lam)
                        lo = md - 2 if not classify.in_omega(g, lam) else 1
                        if not lo <= w <= math.factorial(md):
                            bad.append((p, n, lam, w))
                    seen[n] = w
                if len(set(seen.values())) != 1:
                    bad.append((p, parts, seen))
    return not bad, f"{total} evaluations, violations {bad[:5]}"


# -- 5: support-width lower bound and the chain function --------------------------------------

def criterion_5():
    rng = random.Random(SEED)
    pool = []
    for n, p in ((4, 2), (4, 3), (5, 2), (5, 3)):
        for lam in _restricted(n, p, 3):
            if len(support(lam)) >= 2:
                pool.append((n, p, lam))
    sample = rng.sample(pool, 20)
    bad = []
    for n, p, lam in sample:
        s = support(lam)
        w = oracle.wdeg_oracle(GroupId("A", n, p), lam)
        if w < s[-1] - s[0]:
            bad.append((n, p, lam, w))
    seqs = 0
    for r in range(1, 13):
        for u in itertools.combinations(range(1, 13), r):
            seqs += 1
            if classify.kleshchev_f(u) < u[-1] - u[0]:
                bad.append(u)
    return not bad, f"20 weights and {seqs} sequences, violations {bad[:5]}"


# -- 6: factor monotonicity ---------------------------------------------------------------

def criterion_6():
    rng = random.Random(SEED + 6)
    groups = [("A", 3, 2), ("A", 3, 3), ("A", 4, 2), ("B", 3, 3), ("C", 3, 3), ("C", 3, 2), ("D", 5, 3)]
    bad, pairs = [], 0
    while pairs < 50:
        fam, n, p = rng.choice(groups)
        lam = tuple(rng.randrange(p) for _ in range(n))
        lo = {"A": 1, "B": 2, "C": 2, "D": 4}[fam]
        k = rng.randrange(lo, n)
        if oracle.weyl_dimension(GroupId(fam, n, p), lam) > 5000:
            continue
        pairs += 1
        params = {"family": fam, "n": n, "p": p, "weight": list(lam), "k": k}
        for lemma in ("factor-wdeg-monotone", "factor-delta-monotone"):
            if lemma == "factor-delta-monotone" and fam == "B" and k <= 1:
                continue
            if not branching.verify_lemma(lemma, params).passed:
                bad.append((lemma, params))
    return not bad, f"{pairs} pairs, violations {bad[:3]}"


# -- 7: closure of realized windows and generation ---------------------------------------------

WINDOWS = [("O", "A", 3), ("L", "A", 3), ("F", "A", 3), ("T", "A", 3), ("CL[0,1]", "A", 3),
           ("CL[2]", "A", 3), ("L", "A", 2), ("F", "A", 2),
           ("O", "B", 3), ("L", "B", 3), ("S", "B", 3),
           ("L", "C", 3), ("S", "C", 3), ("L", "C", 2),
           ("L", "D", 3), ("S", "D", 3)]


def criterion_7():
    bad = []
    for text, fam, p in WINDOWS:
        win = inductive.realize(inductive.parse_descriptor(text, fam, p), n_max=8)
        res = inductive.check_closure(win)
        if any(v is False for v in res.values()):
            bad.append((text, fam, p, res))
    for name, coeff in (("F", 1), ("T", 2)):
        gen = inductive.generate(lambda t, c=coeff: [omega(t, (t + 1) // 2, c)], "A", 3, top=10)
        target = inductive.realize(inductive.parse_descriptor(name, "A", 3), n_max=8)
        upto = gen.checks["stability"]["stable_upto"]
        if any(gen.levels[n] != target.levels[n] for n in range(1, upto + 1)) or upto < 3:
            bad.append((name, "generation", upto))
    return not bad, f"{len(WINDOWS)} windows and 2 generated systems, failures {bad[:3]}"


# -- 8: BWM catalogs ------------------------------------------------------------------------

def criterion_8():
    bad = []
    expect = [("B", 3, 9), ("D", 3, 9), ("C", 3, 9), ("C", 2, 12)]
    for fam, p, count in expect:
        enum = inductive.enumerate_bwm(fam, p, 1)
        if len(enum.descriptors) != count:
            bad.append((fam, p, len(enum.descriptors)))
        for d in enum.descriptors:
            v = inductive.bwm_check(d, n_max=8)
            if v.kind != "bounded" or (v.max_wdeg or 0) > 2 ** (1 + 1):
                bad.append((inductive.format_descriptor(d), fam, p, v.kind, v.max_wdeg))
    g3 = GroupId("C", 3, 2)
    if oracle.wdeg_oracle(g3, wsum(omega(3, 1, 2), omega(3, 3))) <= 1:
        bad.append("S' then L gives wdeg 1 at C3")
    lows = [classify.wdeg_verdict(GroupId("C", n, 2), wsum(omega(n, 1, 2), omega(n, n))).lo
            for n in inductive.GROWTH_RANKS]
    if any(b <= a for a, b in zip(lows, lows[1:])):
        bad.append(("lower bounds", lows))
    return not bad, f"counts {[c for *_, c in expect]}, growth {lows}, failures {bad[:3]}"


# -- 9: oracle self-consistency -----------------------------------------------------------------

def criterion_9():
    rng = random.Random(SEED + 9)
    bad = []
    groups = [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("C", 4), ("D", 4)]
    done = 0
    while done < 30:
        fam, n = rng.choice(groups)
        g = GroupId(fam, n, 3)
        lam = tuple(rng.randrange(3) for _ in range(n))
        if oracle.weyl_dimension(g, lam) > 20000:
            continue
        done += 1
        if oracle.freudenthal_char(g, lam).dim() != oracle.weyl_dimension(g, lam):
            bad.append(("dim", str(g), lam))
    reports = 0
    for fam, n, p in (("A", 3, 2), ("A", 3, 3), ("B", 3, 3), ("C", 3, 2), ("D", 4, 2)):
        g = GroupId(fam, n, p)
        for lam in _restricted(n, p, 2):
            fr = oracle.freudenthal_dominant(g, lam)
            for rep in oracle.gram_reports(g, lam):
                reports += 1
                if rep.rank_q != fr.get(rep.weight, 0):
                    bad.append(("gram", str(g), lam, rep.weight))
    g = GroupId("A", 3, 23)
    for lam in _restricted(3, 23, 2):
        if oracle.simple_char(g, lam) != oracle.freudenthal_char(g, lam):
            bad.append(("p=23", lam))
    return not bad, f"30 dimensions, {reports} Gram ranks, A3 at p=23; failures {bad[:3]}"


# -- 10: multiplicativity under a deep enough twist ---------------------------------------------

def criterion_10():
    pairs = []
    for n, p in ((2, 2), (2, 3), (3, 2), (3, 3)):
        g = GroupId("A", n, p)
        rest = list(_restricted(n, p, 3))
        for a, b in itertools.product(rest, rest):
            if not any(a) or not any(b):
                continue
            s = 1
            while p ** s <= delta(g, a):
                s += 1
            pairs.append((g, a, b, s))
    rng = random.Random(SEED + 10)
    # prefer pairs whose factors are not multiplicity free, so the identity has content
    rich = [x for x in pairs if oracle.wdeg_oracle(x[0], x[1]) > 1 and oracle.wdeg_oracle(x[0], x[2]) > 1]
    chosen = rng.sample(rich, min(6, len(rich)))
    chosen += rng.sample([x for x in pairs if x not in chosen], 10 - len(chosen))
    bad = []
    for g, a, b, s in chosen:
        n1, n2 = oracle.simple_char(g, a), oracle.simple_char(g, b)
        prod = chars.tensor(n1, chars.frobenius_twist(n2, s))
        if prod.wdeg() != n1.wdeg() * n2.wdeg():
            bad.append((str(g), a, b, s))
    return not bad, f"{len(chosen)} pairs ({len(rich)} with both wdeg > 1 available), failures {bad}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.slow
@pytest.mark.parametrize("idx", range(1, 11))
def test_criterion(idx, say):
    t0 = time.time()
    ok, detail = CRITERIA[idx - 1]()
    say(_report(idx, ok, detail, t0))
    assert ok, detail


if __name__ == "__main__":
    for i, fn in enumerate(CRITERIA, 1):
        t0 = time.time()
        ok, detail = fn()
        print(_report(i, ok, detail, t0), flush=True)
