"""Exact linear algebra: integer row echelon form with a unimodular
transform, ranks over Q and F_p, and p-local row-basis selection."""
from __future__ import annotations

from gmpy2 import mpq, mpz, remove


def identity(m: int) -> list[list[int]]:
    return [[int(i == j) for j in range(m)] for i in range(m)]


def row_echelon_transform(mat):
    """Return (U, Uinv, r) with U unimodular, U @ mat = [H; 0] and H of rank r.

    The first r rows of U span the same Z-lattice (in the space the rows of
    mat pair against) as all rows of mat.
    """
    rows = [list(r) for r in mat]
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    U = identity(m)
    Ui = identity(m)
    r = 0
    for col in range(ncols):
        if r == m:
            break
        found = False
        while True:
            piv, best = -1, None
            for i in range(r, m):
                x = rows[i][col]
                if x and (best is None or abs(x) < best):
                    piv, best = i, abs(x)
            if piv < 0:
                break
            found = True
            if piv != r:
                rows[r], rows[piv] = rows[piv], rows[r]
                U[r], U[piv] = U[piv], U[r]
                for row in Ui:
                    row[r], row[piv] = row[piv], row[r]
            pr = rows[r]
            pv = pr[col]
            clean = True
            for i in range(r + 1, m):
                x = rows[i][col]
                if not x:
                    continue
                q = x // pv
                if q:
                    ri = rows[i]
                    for j in range(col, ncols):
                        if pr[j]:
                            ri[j] -= q * pr[j]
                    ui, ur = U[i], U[r]
                    for j in range(m):
                        if ur[j]:
                            ui[j] -= q * ur[j]
                    for row in Ui:
                        if row[i]:
                            row[r] += q * row[i]
                if rows[i][col]:
                    clean = False
            if clean:
                break
        if found:
            r += 1
    return U, Ui, r


def rank_mod_p(mat, p: int) -> int:
    rows = [[x % p for x in r] for r in mat]
    m = len(rows)
    if not m:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p) if p > 2 else 1
        pr = [(x * inv) % p for x in rows[r]]
        rows[r] = pr
        for i in range(r + 1, m):
            x = rows[i][col]
            if x:
                ri = rows[i]
                for j in range(col, ncols):
                    if pr[j]:
                        ri[j] = (ri[j] - x * pr[j]) % p
        r += 1
        if r == m:
            break
    return r


def rank_q(mat) -> int:
    """Rank over the rationals (fraction-free elimination)."""
    return row_echelon_transform(mat)[2] if mat else 0


def matmul(a, b):
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = mpq(x)
    return remove(mpz(x.numerator), p)[1] - remove(mpz(x.denominator), p)[1]


def padic_row_basis(mat, p: int) -> list[int]:
    """Indices S of rows such that every row is a combination of the rows in S
    with coefficients whose denominators are prime to p.

    Full pivoting on entries of least p-adic valuation keeps every
    elimination multiplier p-integral, so the pivot rows span the same
    module over Z localized at p as all rows do.
    """
    a = [[mpq(x) for x in row] for row in mat]
    m = len(a)
    ncols = len(a[0]) if m else 0
    rows = list(range(m))
    cols = list(range(ncols))
    vals = {}
    for i in rows:
        for j in cols:
            if a[i][j]:
                vals[i, j] = valuation(a[i][j], p)
    chosen = []
    while vals:
        (i0, j0), _ = min(vals.items(), key=lambda kv: (kv[1], kv[0]))
        chosen.append(i0)
        rows.remove(i0)
        cols.remove(j0)
        piv = a[i0]
        pv = piv[j0]
        for j in range(ncols):
            vals.pop((i0, j), None)
        for i in rows:
            vals.pop((i, j0), None)
            x = a[i][j0]
            if not x:
                continue
            f = x / pv
            ai = a[i]
            for j in cols:
                if piv[j]:
                    y = ai[j] - f * piv[j]
                    ai[j] = y
                    if y:
                        vals[i, j] = valuation(y, p)
                    else:
                        vals.pop((i, j), None)
            ai[j0] = mpq(0)
    return chosen


def inverse_q(mat):
    """Inverse of a nonsingular square matrix over Q."""
    n = len(mat)
    a = [[mpq(x) for x in row] + [mpq(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c])
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                pr = a[c]
                a[r] = [x - f * y for x, y in zip(a[r], pr)]
    return [row[n:] for row in a]
