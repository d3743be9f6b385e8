"""q-cyclotomic cosets modulo n = q^m - 1 and the coset-leader combinatorics
used by the LCD BCH dimension formulas.

Everything here is integer arithmetic on Z_n; no finite-field operations are
needed.  Set-valued results are returned as sorted, duplicate-free lists so
that they serialize deterministically.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

# Full coset tables are only materialized up to this length.
TABLE_LIMIT = 1 << 20


class NotCovered(ValueError):
    """Raised when a closed form is asked about parameters outside the range
    where it has been established."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    k = 0
    r = q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


@dataclass(frozen=True)
class CosetParams:
    """Parameters (q, m) of a primitive length n = q^m - 1 over GF(q)."""

    q: int
    m: int
    n: int = field(init=False)
    mbar: int = field(init=False)
    nbar: int = field(init=False)

    def __post_init__(self):
        if prime_power(self.q) is None:
            raise ValueError(f"q={self.q} is not a prime power")
        if self.m < 2:
            raise ValueError(f"m={self.m} must be at least 2")
        n = self.q**self.m - 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mbar", (self.m + 1) // 2)
        object.__setattr__(self, "nbar", (n + 1) // 2)
        assert np.gcd(n, self.q) == 1

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    def __str__(self):
        return f"(q={self.q}, m={self.m}, n={self.n})"


@dataclass(frozen=True)
class Coset:
    leader: int
    elements: tuple[int, ...]
    size: int

    def __contains__(self, s: int) -> bool:
        return s in self.elements

    def __len__(self):
        return self.size


@dataclass(frozen=True)
class QaryExpansion:
    """Digits (s_{m-1}, ..., s_0) of an integer in base q, most significant first."""

    digits: tuple[int, ...]
    q: int

    @classmethod
    def of(cls, s: int, q: int, m: int) -> QaryExpansion:
        digits = []
        for _ in range(m):
            s, r = divmod(s, q)
            digits.append(r)
        if s:
            raise ValueError("value does not fit in m digits")
        return cls(tuple(reversed(digits)), q)

    @classmethod
    def from_positions(cls, q: int, m: int, entries: dict[int, int]) -> QaryExpansion:
        """Build an expansion from a {position: digit} map, position 0 = least significant."""
        digits = [0] * m
        for pos, d in entries.items():
            if not 0 <= d < q:
                raise ValueError(f"digit {d} out of range for q={q}")
            digits[m - 1 - pos] = d
        return cls(tuple(digits), q)

    @property
    def value(self) -> int:
        v = 0
        for d in self.digits:
            v = v * self.q + d
        return v

    @property
    def weight(self) -> int:
        return sum(1 for d in self.digits if d)

    @property
    def support(self) -> tuple[int, ...]:
        m = len(self.digits)
        return tuple(sorted(m - 1 - i for i, d in enumerate(self.digits) if d))

    def digit(self, pos: int) -> int:
        return self.digits[len(self.digits) - 1 - pos]


def _check_residue(params: CosetParams, s: int):
    if not 0 <= s < params.n:
        raise ValueError(f"s={s} must lie in [0, {params.n})")


def orbit(params: CosetParams, s: int) -> list[int]:
    """The orbit s, sq, sq^2, ... mod n, stopping before the first repeat."""
    n, q = params.n, params.q
    s %= n
    out = [s]
    t = s * q % n
    while t != s:
        out.append(t)
        t = t * q % n
    return out


def coset(params: CosetParams, s: int) -> Coset:
    _check_residue(params, s)
    elems = orbit(params, s)
    return Coset(leader=min(elems), elements=tuple(sorted(elems)), size=len(elems))


def coset_leader(params: CosetParams, s: int) -> int:
    return min(orbit(params, s % params.n))


def coset_size(params: CosetParams, s: int) -> int:
    return len(orbit(params, s % params.n))


class CosetTable:
    """Leader and size of every residue mod n, stored as numpy arrays."""

    def __init__(self, params: CosetParams):
        if params.n > TABLE_LIMIT:
            raise ValueError(f"n={params.n} exceeds the table limit {TABLE_LIMIT}")
        self.params = params
        n, q = params.n, params.q
        base = np.arange(n, dtype=np.int64)
        leader = base.copy()
        size = np.full(n, params.m, dtype=np.int64)
        cur = base.copy()
        for ell in range(1, params.m):
            cur = cur * q % n
            np.minimum(leader, cur, out=leader)
            if params.m % ell == 0:
                hit = (cur == base) & (size == params.m)
                size[hit] = ell
        self.leader = leader
        self.size = size
        self.leaders = np.flatnonzero(leader == base)

    def __len__(self):
        return len(self.leaders)

    def cosets(self) -> list[Coset]:
        groups: dict[int, list[int]] = {}
        for s, ld in enumerate(self.leader.tolist()):
            groups.setdefault(ld, []).append(s)
        return [Coset(ld, tuple(el), len(el)) for ld, el in sorted(groups.items())]

    def union_size(self, exponents) -> int:
        """Size of the union of the cosets of the given exponents."""
        idx = np.asarray(exponents, dtype=np.int64) % self.params.n
        if idx.size == 0:
            return 0
        leaders = np.unique(self.leader[idx])
        return int(self.size[leaders].sum())

    def union(self, exponents) -> np.ndarray:
        """Sorted array of all residues in the union of the cosets."""
        idx = np.asarray(exponents, dtype=np.int64) % self.params.n
        if idx.size == 0:
            return np.empty(0, dtype=np.int64)
        mask = np.zeros(self.params.n, dtype=bool)
        mask[np.unique(self.leader[idx])] = True
        return np.flatnonzero(mask[self.leader])


@functools.lru_cache(maxsize=64)
def coset_table(params: CosetParams) -> CosetTable:
    return CosetTable(params)


def coset_union(params: CosetParams, exponents: Iterable[int]) -> set[int]:
    """Union of cosets without a table; cost is O(m) per new coset."""
    out: set[int] = set()
    for s in exponents:
        s %= params.n
        if s not in out:
            out.update(orbit(params, s))
    return out


def q_ary(params: CosetParams, s: int) -> QaryExpansion:
    _check_residue(params, s) if s != params.n else None
    return QaryExpansion.of(s, params.q, params.m)


# ---------------------------------------------------------------------------
# Exception sets for coset leaders in [1, u q^mbar]


def _check_u(params: CosetParams, u: int, upper: int | None = None):
    upper = params.q - 1 if upper is None else upper
    if not 1 <= u <= upper:
        raise ValueError(f"u={u} outside [1, {upper}] for {params}")


def exception_sets_odd_m(params: CosetParams, u: int) -> tuple[list[int], list[int]]:
    """Integers j <= u q^mbar with q not dividing j that are not coset leaders (m >= 5 odd).

    Returns the two families (J1, J2); their union is exactly the set of
    non-leaders in that range.
    """
    q, m, mb = params.q, params.m, params.mbar
    if m % 2 == 0 or m < 5:
        raise ValueError(f"m={m} must be odd and at least 5")
    _check_u(params, u)
    J1 = {
        top * q**mb + j1 * q + j0
        for top in range(1, u)
        for j1 in range(top)
        for j0 in range(1, q)
    }
    J2 = {
        top * q**mb + mid * q ** (mb - 1) + j0
        for top in range(1, u)
        for mid in range(1, q)
        for j0 in range(1, top + 1)
    }
    return sorted(J1), sorted(J2)


def exception_set_even_m(params: CosetParams, u: int) -> list[int]:
    """Non-leaders j <= u q^mbar with q not dividing j, for m even."""
    q, m, mb = params.q, params.m, params.mbar
    if m % 2:
        raise ValueError(f"m={m} must be even")
    _check_u(params, u)
    return sorted(top * q**mb + j0 for top in range(1, u) for j0 in range(1, top))


def half_size_cosets(params: CosetParams, u: int) -> list[int]:
    """The representatives v (q^mbar + 1), 1 <= v <= u-1, whose cosets have size m/2 (m even)."""
    if params.m % 2:
        raise ValueError(f"m={params.m} must be even")
    _check_u(params, u)
    return [v * (params.q**params.mbar + 1) for v in range(1, u)]


# ---------------------------------------------------------------------------
# Intersections of the coset unions around nbar


def intersection_set_odd(params: CosetParams, u: int) -> list[int]:
    """Index set l for which C_{nbar+l} and C_{nbar-l} make up J+ n J- (q odd, m >= 5 odd)."""
    q, m, mb = params.q, params.m, params.mbar
    if q % 2 == 0:
        raise ValueError("q must be odd")
    if m % 2 == 0 or m < 5:
        raise ValueError(f"m={m} must be odd and at least 5")
    _check_u(params, u)
    middle = (q - 1) * sum(q**i for i in range(1, mb - 1))
    return sorted(
        top * q**mb + nxt * q ** (mb - 1) + middle + l0
        for top in range(u)
        for nxt in range(q - 1)
        for l0 in range(q - u, q)
    )


def intersection_set_even(params: CosetParams, u: int) -> list[int]:
    """Index set l for which C_{nbar-l} make up J+ n J- (q odd, m even)."""
    q, m, mb = params.q, params.m, params.mbar
    if q % 2 == 0:
        raise ValueError("q must be odd")
    if m % 2:
        raise ValueError(f"m={m} must be even")
    _check_u(params, u, (q - 1) // 2 if m == 2 else q - 1)
    middle = (q - 1) * sum(q**i for i in range(1, mb))
    return sorted(top * q**mb + middle + l0 for top in range(u) for l0 in range(q - u, q))


def tilde_sets(params: CosetParams, u: int) -> list[int]:
    """q even analogue of the intersection sets (odd l only)."""
    q, m, mb = params.q, params.m, params.mbar
    if q % 2:
        raise ValueError("q must be even")
    if m % 2:
        if m < 5:
            raise ValueError(f"m={m} must be at least 5 when odd")
        _check_u(params, u)
        middle = (q - 1) * sum(q**i for i in range(1, mb - 1))
        return sorted(
            top * q**mb + nxt * q ** (mb - 1) + middle + l0
            for top in range(u)
            for nxt in range(0, q - 1, 2)
            for l0 in range(q - u, q)
            if l0 % 2
        )
    _check_u(params, u, q // 2 if m == 2 else q - 1)
    middle = (q - 1) * sum(q**i for i in range(1, mb))
    return sorted(
        top * q**mb + middle + l0
        for top in range(0, u, 2)
        for l0 in range(q - u, q)
        if l0 % 2
    )


def intersection_size_formula(params: CosetParams, u: int) -> int:
    """Closed-form size of the intersection of the two coset unions around nbar."""
    q, m = params.q, params.m
    if q % 2:
        if m % 2:
            intersection_set_odd(params, u)  # gate
            return 2 * u * u * (q - 1) * m
        intersection_set_even(params, u)
        return u * u * m
    tilde_sets(params, u)
    if m % 2:
        return (u * u * q * m) // 2 if u % 2 == 0 else (u * (u + 1) * q * m) // 2
    return (u * u * m) // 4 if u % 2 == 0 else ((u + 1) ** 2 * m) // 4


def intersection_cosets(params: CosetParams, u: int) -> list[int]:
    """Representatives whose cosets form the intersection, per the index sets."""
    nb, n = params.nbar, params.n
    if params.q % 2:
        if params.m % 2:
            ls = intersection_set_odd(params, u)
            return [(nb + l) % n for l in ls] + [(nb - l) % n for l in ls]
        return [(nb - l) % n for l in intersection_set_even(params, u)]
    ls = tilde_sets(params, u)
    if params.m % 2:
        return [(nb + (l - 1) // 2) % n for l in ls] + [(nb - (l + 1) // 2) % n for l in ls]
    return [(nb - (l + 1) // 2) % n for l in ls]


# ---------------------------------------------------------------------------
# Counting odd leaders (q even)


def lambda_counts(params: CosetParams, u: int) -> tuple[int, int]:
    q, m, mb = params.q, params.m, params.mbar
    if q % 2 or m % 2 == 0 or m < 5:
        raise ValueError("needs q even and m >= 5 odd")
    _check_u(params, u)
    top = u * q**mb // 2
    if u % 2 == 0:
        lam1 = top - (u * u - u) * q // 4 - u * u * (q - 1) // 4
        lam2 = ((u * u - u) * q - u * u) // 4
    else:
        lam1 = top - (u * u - u) * q // 4 - (u * u - 1) * (q - 1) // 4
        lam2 = (u * u - 1) * (q - 1) // 4
    return lam1, lam2


def theta_counts(params: CosetParams, u: int) -> tuple[int, int, int]:
    q, m, mb = params.q, params.m, params.mbar
    if q % 2 or m % 2:
        raise ValueError("needs q even and m even")
    _check_u(params, u)
    top = u * q**mb // 2
    if u % 2 == 0:
        return top - u * u // 4, u // 2, u * (u - 2) // 8
    return top - (u * u - 1) // 4, (u - 1) // 2, (u * u - 1) // 8


# ---------------------------------------------------------------------------
# Pairs (i, j) with -j in C_i


def negated_pair_count(params: CosetParams, l: int) -> int:
    """Number of leader pairs (cl(i), cl(j)) with -j in C_i and 1 <= i, j <= l."""
    q, m = params.q, params.m
    if l < 1:
        raise NotCovered(f"l={l} < 1")
    if m % 2:
        top = q ** ((m + 1) // 2)
        if l <= top - q:
            return 0
        if l <= top - 2:
            return 2 * (l - (top - q))
        if l <= top:
            return 2 * (q - 1)
        raise NotCovered(f"l={l} > q^((m+1)/2)={top}")
    h = q ** (m // 2)
    if q > 2:
        if l <= h - 2:
            return 0
        if l <= 2 * h - 3:
            return 1
        if l == 2 * h - 2:
            return 2
        if l <= 2 * h:
            return 4
        raise NotCovered(f"l={l} > 2q^(m/2)={2 * h}")
    if m < 4:
        raise NotCovered("q=2 needs m >= 4")
    if l <= h - 2:
        return 0
    if l <= 2 * h - 4:
        return 1
    if l <= 2 * h - 2:
        return 3
    if l <= 2 * h:
        return 5
    raise NotCovered(f"l={l} > 2^(m/2+1)={2 * h}")


def negated_pair_bound(params: CosetParams) -> int:
    """Largest i, j covered by the digit-pattern characterization."""
    q, m = params.q, params.m
    if m % 2:
        return q ** ((m + 1) // 2)
    return 2 * q ** (m // 2)


def negated_pair_profiles(params: CosetParams) -> list[tuple[QaryExpansion, QaryExpansion]]:
    """All (i, j) digit patterns with -j in C_i and i, j <= negated_pair_bound(params).

    For q = 2 and m even the patterns list the odd pairs only; any other pair
    in range is (2^a i, 2^b j) for a listed (i, j), see `expand_profiles`.
    """
    q, m = params.q, params.m

    def pat(entries):
        return QaryExpansion.from_positions(q, m, entries)

    def ones(hi, lo, d):
        return {pos: d for pos in range(lo, hi + 1)}

    pairs = []
    if m % 2:
        h = (m - 1) // 2
        for u in range(q):
            i = pat({**ones(h, 1, q - 1), 0: u})
            j = pat({**ones(h - 1, 0, q - 1), h: q - 1 - u})
            pairs += [(i, j), (j, i)]
    elif q > 2:
        h = m // 2
        a = pat({h: 1, **ones(h - 1, 1, q - 1), 0: q - 2})
        b = pat({**ones(h - 1, 1, q - 1), 0: q - 2})
        c = pat({h: 1, **ones(h - 1, 0, q - 1)})
        d = pat(ones(h - 1, 0, q - 1))
        pairs += [(a, a), (b, c), (c, b), (d, d)]
    else:
        if m < 4:
            raise NotCovered("q=2 needs m >= 4")
        h = m // 2
        p1 = pat(ones(h - 2, 0, 1))
        p2 = pat(ones(h, 0, 1))
        r = pat(ones(h - 1, 0, 1))
        s = pat({h: 1, h - 1: 0, **ones(h - 2, 0, 1)})
        t = pat({**ones(h, 2, 1), 1: 0, 0: 1})
        pairs += [(p1, p2), (p2, p1), (r, r), (s, t), (t, s)]
    seen = set()
    out = []
    for i, j in pairs:
        key = (i.value, j.value)
        if key not in seen:
            seen.add(key)
            out.append((i, j))
    return out


def expand_profiles(params: CosetParams) -> set[tuple[int, int]]:
    """Concrete pairs from the profiles, closed under multiplication by q in range."""
    bound = negated_pair_bound(params)
    out = set()
    for a, b in negated_pair_profiles(params):
        i = a.value
        while i <= bound:
            j = b.value
            while j <= bound:
                out.add((i, j))
                j *= params.q
            i *= params.q
    return out


# ---------------------------------------------------------------------------
# Runs of a fixed symbol


@functools.lru_cache(maxsize=None)
def run_count(q: int, r: int, s: int) -> int:
    """Number of length-s words over a q-letter alphabet containing r consecutive
    copies of one fixed letter (taken to be 0)."""
    if r < 0 or s < 0:
        raise ValueError("r and s must be nonnegative")
    if s < r or s == 0:
        return 0
    if s == r:
        return 1
    return q * run_count(q, r, s - 1) + (q - 1) * (q ** (s - r - 1) - run_count(q, r, s - r - 1))


def half_union_size(params: CosetParams, u: int) -> int:
    """Closed-form size of the coset union on one side of nbar (either side)."""
    q, m, mb = params.q, params.m, params.mbar
    _check_u(params, u)
    if q % 2:
        if m % 2:
            if m < 5:
                raise NotCovered("m odd needs m >= 5")
            return (u * q ** (mb - 1) - u * u + u) * (q - 1) * m
        return u * q ** (mb - 1) * (q - 1) * m - (u - 1) ** 2 * m // 2
    if m % 2:
        if m < 5:
            raise NotCovered("m odd needs m >= 5")
        lam1, lam2 = lambda_counts(params, u)
        return (lam1 + lam2) * m
    th1, th2, th3 = theta_counts(params, u)
    return th1 * m + th2 * m // 2 + th3 * m
