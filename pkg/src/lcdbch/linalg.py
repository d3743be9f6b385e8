"""Dense linear algebra over GF(q): generator matrices, products and rank."""

from __future__ import annotations

import numpy as np

from .field import FieldCtx
from .polyring import Poly, reciprocal


def circulant_rows(f: Poly, rows: int, n: int) -> np.ndarray:
    """The matrix whose i-th row is x^i f(x), as length-n coefficient vectors."""
    c = f.array()
    M = np.zeros((rows, n), dtype=np.int64)
    for i in range(rows):
        M[i, i : i + len(c)] = c
    return M


def generator_matrix(g: Poly, n: int) -> np.ndarray:
    return circulant_rows(g, n - g.degree, n)


def dual_generator_matrix(g: Poly, n: int) -> np.ndarray:
    """Generator matrix of the dual code, built from the reciprocal check polynomial."""
    h = Poly.x_n_minus_1(g.field, n) // g
    return circulant_rows(reciprocal(h), n - h.degree, n)


def gram_matrix(f: Poly, rows: int) -> np.ndarray:
    """R R^T for R = circulant_rows(f, rows, n), without forming R.

    The rows are unwrapped shifts of f, so entry (i, j) is the autocorrelation
    of f at lag |i - j|: a symmetric Toeplitz matrix.  The lags are read off
    f(x) times its reversal.
    """
    F = f.field
    c = f.array()
    full = (f * Poly(F, tuple(int(v) for v in c[::-1]))).array()
    deg = len(c) - 1
    lags = np.zeros(rows, dtype=np.int64)
    top = min(rows, deg + 1)
    lags[:top] = full[deg - np.arange(top)]
    i = np.arange(rows)
    return lags[np.abs(i[:, None] - i[None, :])]


def matmul(F: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """A @ B over GF(p^e).

    Field multiplication is bilinear in the base-p digits, so the product is a
    sum of e^2 integer matrix products of digit planes, each taken mod p and
    weighted by x^(i+j) reduced in the field.  The integer products run in
    float64, exact while n (p-1)^2 < 2^53.
    """
    p, e = F.p, F.e
    K = A.shape[1]
    if K * (p - 1) ** 2 >= 1 << 53:
        raise OverflowError("matrix too large for exact float accumulation")
    planes_a = [((A // p**i) % p).astype(np.float64) for i in range(e)]
    planes_b = [((B // p**i) % p).astype(np.float64) for i in range(e)]
    if e == 1:
        return (planes_a[0] @ planes_b[0]).astype(np.int64) % p
    # several A planes share one float operand in t-bit lanes; every lane sum
    # stays below 2^t and the whole word below 2^53, so one product serves them all
    t = (K * (p - 1) ** 2).bit_length()
    per = max(1, 53 // t)
    groups = []
    for start in range(0, e, per):
        idx = range(start, min(e, start + per))
        groups.append((idx, sum(planes_a[i] * float(1 << (t * (i - start))) for i in idx)))
    lane = (1 << t) - 1
    conv = [np.zeros((A.shape[0], B.shape[1]), dtype=np.int64) for _ in range(2 * e - 1)]
    for j in range(e):
        for idx, packed in groups:
            prod = (packed @ planes_b[j]).astype(np.int64)
            for i in idx:
                conv[i + j] += (prod >> (t * (i - idx[0]))) & lane
    return F.fold_planes(conv)


def _rank_gf2(M: np.ndarray) -> int:
    rows = [int("".join("1" if v else "0" for v in r), 2) if len(r) else 0 for r in M.tolist()]
    rank = 0
    pivots: list[int] = []
    for r in rows:
        for pv in pivots:
            r = min(r, r ^ pv)
        if r:
            pivots.append(r)
            # keep pivots sorted by leading bit so min() reduction works
            pivots.sort(reverse=True)
            rank += 1
    return rank


BLOCK = 64


def rank(F: FieldCtx, M: np.ndarray) -> int:
    M = np.array(M, dtype=np.int64)
    if M.size == 0:
        return 0
    if min(M.shape) > 2 * BLOCK:
        return _rank_blocked(F, M)
    if F.p == 2 and F.e == 1:
        return _rank_gf2(M)
    return _rank_simple(F, M)


def _rank_simple(F: FieldCtx, M: np.ndarray) -> int:
    """Row echelon form; each step only touches the block below and to the right."""
    M = np.array(M, dtype=np.int64)
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        row = F.mul_arr(M[r, c:], F.inv(int(M[r, c])))
        hit = r + 1 + np.flatnonzero(M[r + 1 :, c])
        if hit.size:
            M[hit, c:] = F.submul_arr(M[hit, c:], M[hit, c][:, None], row[None, :])
        r += 1
    return r


def _rank_blocked(F: FieldCtx, M: np.ndarray, block: int = BLOCK) -> int:
    """Right-looking blocked elimination.

    A panel of columns is reduced with row swaps applied to whole rows and the
    multipliers kept in L.  The rows right of the panel are then brought up to
    date at once: U12 = L11^-1 A12 by forward substitution and the Schur
    complement A22 - L21 U12 by one matrix product.
    """
    rows, cols = M.shape
    r = c = 0
    while r < rows and c < cols:
        b = min(block, cols - c)
        R = rows - r
        panel = M[r:, c : c + b]  # view
        L = np.zeros((R, min(b, R)), dtype=np.int64)
        p = 0
        for j in range(b):
            if p == R:
                break
            nz = np.flatnonzero(panel[p:, j])
            if nz.size == 0:
                continue
            piv = p + int(nz[0])
            if piv != p:
                M[[r + p, r + piv]] = M[[r + piv, r + p]]
                L[[p, piv]] = L[[piv, p]]
            inv = F.inv(int(panel[p, j]))
            below = p + 1 + np.flatnonzero(panel[p + 1 :, j])
            if below.size:
                mult = F.mul_arr(panel[below, j], inv)
                L[below, p] = mult
                panel[below, j:] = F.submul_arr(panel[below, j:], mult[:, None], panel[p, j:][None, :])
            p += 1
        rest = slice(c + b, cols)
        if p and c + b < cols:
            U = M[r : r + p, rest].copy()
            for i in range(p - 1):
                hit = i + 1 + np.flatnonzero(L[i + 1 : p, i])
                if hit.size:
                    U[hit] = F.submul_arr(U[hit], L[hit, i][:, None], U[i][None, :])
            M[r : r + p, rest] = U
            if p < R:
                M[r + p :, rest] = F.sub_arr(M[r + p :, rest], matmul(F, L[p:, :p], U))
        r += p
        c += b
    return r


def is_lcd_by_rank(g: Poly, n: int) -> bool:
    """C n C^perp = {0} iff G G^T is nonsingular; the smaller of C and its dual is used."""
    F = g.field
    k = n - g.degree
    if k <= n - k:
        f, rows = g, k
    else:
        h = Poly.x_n_minus_1(F, n) // g
        f, rows = reciprocal(h), n - h.degree
    if rows == 0:
        return True
    return rank(F, gram_matrix(f, rows)) == rows
