"""Definitional brute-force counterparts of the closed forms in `cosets`.

Nothing here reuses the closed forms or the coset table: every quantity is
rebuilt from plain orbit enumeration, so these serve as independent oracles.
"""

from __future__ import annotations

import itertools

import numpy as np

from .cosets import CosetParams


def _orbit(n: int, q: int, s: int) -> frozenset[int]:
    out = {s % n}
    t = s * q % n
    while t not in out:
        out.add(t)
        t = t * q % n
    return frozenset(out)


def leader(params: CosetParams, s: int) -> int:
    return min(_orbit(params.n, params.q, s))


def union(params: CosetParams, reps) -> set[int]:
    out: set[int] = set()
    for s in reps:
        out |= _orbit(params.n, params.q, s % params.n)
    return out


def nonleaders(params: CosetParams, u: int) -> set[int]:
    """{1 <= j <= u q^mbar : q does not divide j, j is not its coset leader}."""
    q = params.q
    return {j for j in range(1, u * q**params.mbar + 1) if j % q and leader(params, j) != j}


def wrong_size(params: CosetParams, u: int) -> dict[int, int]:
    """Leaders j <= u q^mbar, q not dividing j, whose coset has size below m."""
    q, m = params.q, params.m
    out = {}
    for j in range(1, u * q**params.mbar + 1):
        if j % q and leader(params, j) == j:
            size = len(_orbit(params.n, q, j))
            if size != m:
                out[j] = size
    return out


def side_unions(params: CosetParams, u: int) -> tuple[set[int], set[int]]:
    """The two coset unions on either side of nbar (plus, minus)."""
    nb, q, top = params.nbar, params.q, u * params.q**params.mbar
    if q % 2:
        plus = union(params, (nb + j for j in range(1, top + 1)))
        minus = union(params, (nb - j for j in range(1, top + 1)))
    else:
        plus = union(params, (nb + j for j in range(0, top // 2)))
        minus = union(params, (nb - j for j in range(1, top // 2 + 1)))
    return plus, minus


def lambda_counts(params: CosetParams, u: int, J12: set[int]) -> tuple[int, int]:
    top = u * params.q**params.mbar - 1
    lam1 = sum(1 for j in range(1, top + 1, 2) if leader(params, j) == j)
    lam2 = sum(1 for j in range(1, top + 1, 2) if j in J12 and leader(params, j) % 2 == 0)
    return lam1, lam2


def theta_counts(params: CosetParams, u: int, J: set[int]) -> tuple[int, int, int]:
    top = u * params.q**params.mbar - 1
    m = params.m
    th = [0, 0, 0]
    for j in range(1, top + 1, 2):
        if leader(params, j) == j:
            size = len(_orbit(params.n, params.q, j))
            if size == m:
                th[0] += 1
            elif 2 * size == m:
                th[1] += 1
        if j in J and leader(params, j) % 2 == 0:
            th[2] += 1
    return th[0], th[1], th[2]


def negated_pairs(params: CosetParams, bound: int) -> set[tuple[int, int]]:
    """All (i, j) with 1 <= i, j <= bound and -j in C_i."""
    n = params.n
    out = set()
    for i in range(1, bound + 1):
        orb = _orbit(n, params.q, i)
        for j in range(1, bound + 1):
            if (-j) % n in orb:
                out.add((i, j))
    return out


def negated_pair_count(params: CosetParams, l: int) -> int:
    return len({(leader(params, i), leader(params, j)) for i, j in negated_pairs(params, l)})


def run_count(q: int, r: int, s: int) -> int:
    """Length-s words over {0..q-1} containing r consecutive zeros."""
    if s == 0:
        return 0
    target = (0,) * r
    total = 0
    for w in itertools.product(range(q), repeat=s):
        if any(w[i : i + r] == target for i in range(s - r + 1)):
            total += 1
    return total


def run_count_table(q: int, s_max: int, r_max: int) -> dict[tuple[int, int], int]:
    """{(r, s): number of length-s words containing r consecutive zeros}.

    Every word of length s_max is enumerated; the count for a shorter length
    s comes from the length-s prefixes, each of which occurs q^(s_max - s)
    times.  The tail digits are vectorized, the head digits looped.
    """
    tail = min(s_max, 9)
    head = s_max - tail
    idx = np.arange(q**tail, dtype=np.int64)
    tail_digits = []
    for _ in range(tail):
        tail_digits.append((idx % q).astype(np.uint8))
        idx //= q
    tail_digits.reverse()
    hits = np.zeros((s_max + 1, r_max + 1), dtype=np.int64)
    for prefix in itertools.product(range(q), repeat=head):
        cur, best = 0, 0
        for t, d in enumerate(prefix, 1):
            cur = cur + 1 if d == 0 else 0
            best = max(best, cur)
            for r in range(1, r_max + 1):
                hits[t, r] += q**tail if best >= r else 0
        cur_a = np.full(q**tail, cur, dtype=np.int16)
        best_a = np.full(q**tail, best, dtype=np.int16)
        for t, d in enumerate(tail_digits, head + 1):
            cur_a = np.where(d == 0, cur_a + 1, 0).astype(np.int16)
            np.maximum(best_a, cur_a, out=best_a)
            for r in range(1, r_max + 1):
                hits[t, r] += int(np.count_nonzero(best_a >= r))
    out = {}
    for s in range(s_max + 1):
        for r in range(1, r_max + 1):
            out[(r, s)] = int(hits[s, r]) // q ** (s_max - s) if s else 0
    return out
