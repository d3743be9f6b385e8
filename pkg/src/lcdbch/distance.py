"""Minimum distance: BCH bound, sphere-packing cap, witness codewords and
exhaustive search at desk scale."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bchcodes import CodeSpec, DefiningSetOnly, Family, defining_set, generator_poly
from .cosets import CosetParams
from .field import FieldCtx, extension, gf, make_field
from .linalg import dual_generator_matrix, generator_matrix, matmul
from .polyring import Poly, eval_in_extension

MESSAGE_BUDGET = 1 << 24
SUPPORT_BUDGET = 1 << 26
CHUNK = 1 << 16


class Method(str, enum.Enum):
    BCH = "bch"
    SPHERE_PACKING = "sphere-packing"
    WITNESS = "witness"
    EXHAUSTIVE_MESSAGES = "exhaustive-messages"
    EXHAUSTIVE_DUAL = "exhaustive-dual"
    LOW_WEIGHT_SEARCH = "low-weight-search"


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class DistanceResult:
    lower: int
    upper: int | None = None
    exact: int | None = None
    method: Method = Method.BCH
    witness: Poly | None = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.exact is not None:
            assert self.lower <= self.exact
            assert self.upper is None or self.exact <= self.upper
        if self.method is Method.WITNESS:
            assert self.witness is not None and self.witness.weight == self.upper

    def to_json(self) -> dict:
        out: dict = {"method": self.method.value}
        if self.exact is not None:
            out["exact"] = self.exact
        else:
            out["lower"] = self.lower
            if self.upper is not None:
                out["upper"] = self.upper
        if self.witness is not None:
            out["witness"] = witness_json(self.witness)
        return out


def witness_json(c: Poly) -> dict[str, int]:
    return {str(i): v for i, v in enumerate(c.coeffs) if v}


# ---------------------------------------------------------------------------
# bounds


def longest_run(exponents, n: int) -> int:
    """Longest run of cyclically consecutive residues in a subset of Z_n."""
    mask = np.zeros(n, dtype=bool)
    mask[np.asarray(list(exponents), dtype=np.int64)] = True
    if mask.all():
        return n
    if not mask.any():
        return 0
    # rotate so the array starts just after a gap, then runs never wrap
    start = int(np.flatnonzero(~mask)[0])
    m = np.roll(mask, -start - 1).astype(np.int8)
    edges = np.diff(np.concatenate(([0], m, [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return int((ends - starts).max())


def bch_lower(spec: CodeSpec) -> int:
    """Designed distance, raised by the longest consecutive run in the defining set.

    For the non-even-like LCD_B_TILDE code the Tzeng-Hartmann refinement
    d >= delta + 1 applies when delta does not divide n.
    """
    designed = spec.designed_distance
    if spec.family is Family.LCD_B_TILDE and spec.n % spec.delta:
        designed = spec.delta + 1
    ds = defining_set(spec)
    if ds.size == spec.n:
        return designed
    run = longest_run(ds.exponents, spec.n)
    return max(designed, run + 1)


def sphere_packing_cap(n: int, k: int, q: int, delta: int) -> bool:
    """True when sum_{i<=delta} C(n,i)(q-1)^i > q^(n-k), which forces d <= 2 delta."""
    ball = sum(math.comb(n, i) * (q - 1) ** i for i in range(delta + 1))
    return ball > q ** (n - k)


def sphere_packing_result(spec: CodeSpec) -> DistanceResult | None:
    """Exact 2 delta for the LCD_B family when the BCH bound meets the cap."""
    if spec.family not in (Family.LCD_B, Family.MELAS_EVENLIKE):
        return None
    k = spec.n - defining_set(spec).size
    lower = bch_lower(spec)
    if lower == 2 * spec.delta and sphere_packing_cap(spec.n, k, spec.params.q, spec.delta):
        return DistanceResult(lower, 2 * spec.delta, 2 * spec.delta, Method.SPHERE_PACKING)
    return None


# ---------------------------------------------------------------------------
# witnesses


def is_codeword(spec: CodeSpec, c: Poly) -> bool:
    """All defining-set roots vanish (coefficients in GF(q), so leaders suffice)."""
    big, emb = extension(spec.params.q, spec.params.m)
    return all(eval_in_extension(c, emb, big.alpha_pow(ld)) == 0 for ld in defining_set(spec).leaders)


def _spread(F: FieldCtx, n: int, D: int) -> Poly:
    coeffs = [0] * n
    for i in range(D):
        coeffs[i * n // D] = 1
    return Poly(F, coeffs)


def witness_delta_divides(spec: CodeSpec) -> DistanceResult:
    """Weight-D codeword sum_i x^(i n / D) when D | gcd(n, b-1); for LCD_B,
    the weight-2 delta codeword (x - 1) sum_i x^(i n / delta) when delta | n."""
    n = spec.n
    F = gf(spec.params.q)
    lower = bch_lower(spec)
    if spec.family in (Family.LCD_B, Family.MELAS_EVENLIKE):
        d = spec.delta
        if n % d:
            raise WitnessError(f"delta={d} does not divide n={n}")
        c = Poly(F, (F.neg(1), 1)) * _spread(F, n, d)
        claim = 2 * d
    else:
        D = spec.designed_distance
        if math.gcd(n, spec.b - 1) % D:
            raise WitnessError(f"D={D} does not divide gcd(n={n}, b-1={spec.b - 1})")
        c = _spread(F, n, D)
        claim = D
    if c.weight != claim or not is_codeword(spec, c):
        raise WitnessError("constructed witness failed verification")
    if lower > claim:
        raise WitnessError(f"witness weight {claim} below the BCH bound {lower}")
    return DistanceResult(lower, claim, claim if lower == claim else None, Method.WITNESS, c)


def _span(F: FieldCtx, elems) -> set[int]:
    span = {0}
    for a in elems:
        span |= {F.add(s, a) for s in span}
    return span


def rm_subspace_witness(m: int, r: int, H, modulus=None) -> DistanceResult:
    """Weight-2 delta codeword of the binary LCD_B code with delta = 2^r - 1,
    supported on the exponents of (H1 u H2) minus 0.

    H is a sequence of four collections of field elements (packed integers)
    spanning r-dimensional subspaces H1..H4 of GF(2^m).
    """
    if modulus is None:
        F = make_field(2, m)
    else:
        F = FieldCtx(2, m, tuple(modulus), 2)
    if not 1 <= r <= m // 2:
        raise WitnessError(f"r={r} outside [1, floor(m/2)={m // 2}]")
    if len(H) != 4:
        raise WitnessError("need four subspaces")
    spaces = []
    for idx, gens in enumerate(H, 1):
        sp = _span(F, gens)
        if len(sp) != 2**r:
            raise WitnessError(f"H{idx} spans a subspace of size {len(sp)}, expected 2^{r}")
        spaces.append(sp)
    H1, H2, H3, H4 = spaces
    if H1 & H2 != {0}:
        raise WitnessError("H1 and H2 intersect nontrivially")
    if H3 & H4 != {0}:
        raise WitnessError("H3 and H4 intersect nontrivially")
    left = (H1 | H2) - {0}
    right = (H3 | H4) - {0}
    inverses = {F.inv(a) for a in left}
    if inverses != right:
        bad = sorted(inverses ^ right)
        raise WitnessError(f"inverse condition fails at elements {bad}")
    delta = 2**r - 1
    n = 2**m - 1
    spec = CodeSpec(Family.LCD_B, CosetParams(2, m), delta)
    if F != make_field(2, m):
        raise WitnessError("membership is checked against the canonical field; pass its modulus")
    coeffs = [0] * n
    for a in left:
        coeffs[F.log(a)] = 1
    c = Poly(gf(2), coeffs)
    if c.weight != 2 * delta or not is_codeword(spec, c):
        raise WitnessError("incidence codeword is not in the code")
    return DistanceResult(bch_lower(spec), 2 * delta, 2 * delta, Method.WITNESS, c)


def search_subspaces(m: int, r: int = 2):
    """Find H1..H4 satisfying the subspace witness conditions (small m only)."""
    if m > 6 or r != 2:
        raise WitnessError("subspace search runs only for m <= 6 and r = 2")
    F = make_field(2, m)
    planes = sorted({frozenset(_span(F, (a, b))) for a in range(1, F.size) for b in range(a + 1, F.size)},
                    key=sorted)
    planes = [p for p in planes if len(p) == 4]
    index = {frozenset(p - {0}): p for p in planes}
    for i, A in enumerate(planes):
        for B in planes[i + 1:]:
            if A & B != {0}:
                continue
            inv = [F.inv(a) for a in (A | B) - {0}]
            for trio in itertools.combinations(inv, 3):
                rest = frozenset(inv) - frozenset(trio)
                if frozenset(trio) in index and rest in index:
                    return [sorted(A), sorted(B), sorted(index[frozenset(trio)]), sorted(index[rest])]
    return None


# ---------------------------------------------------------------------------
# exhaustive search


def _message_block(q: int, k: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    return np.stack([(idx // q**j) % q for j in range(k)], axis=1)


def _binary_weights(G: np.ndarray) -> np.ndarray:
    """Weights of all 2^k codewords spanned by the rows of a binary G."""
    n = G.shape[1]
    words = (n + 63) // 64
    rows = np.zeros((G.shape[0], words), dtype=np.uint64)
    for w in range(words):
        seg = G[:, 64 * w : 64 * (w + 1)]
        shifts = np.arange(seg.shape[1], dtype=np.uint64)
        rows[:, w] = (seg.astype(np.uint64) << shifts).sum(axis=1, dtype=np.uint64)
    span = np.zeros((1, words), dtype=np.uint64)
    for row in rows:
        span = np.concatenate([span, span ^ row])
    return np.bitwise_count(span).sum(axis=1).astype(np.int64)


def _weights(F: FieldCtx, G: np.ndarray) -> np.ndarray:
    """Weight enumerator counts A_0..A_n of the code generated by G."""
    k, n = G.shape
    counts = np.zeros(n + 1, dtype=np.int64)
    if k == 0:
        counts[0] = 1
        return counts
    if F.size == 2:
        w = _binary_weights(G)
        return np.bincount(w, minlength=n + 1)
    q = F.size
    total = q**k
    for s in range(0, total, CHUNK):
        M = _message_block(q, k, s, min(total, s + CHUNK))
        C = matmul(F, M, G)
        counts += np.bincount((C != 0).sum(axis=1), minlength=n + 1)
    return counts


def krawtchouk(n: int, q: int, i: int, x: int) -> int:
    return sum((-1) ** j * (q - 1) ** (i - j) * math.comb(x, j) * math.comb(n - x, i - j) for j in range(i + 1))


def macwilliams(B, n: int, q: int) -> list[int]:
    """Weight distribution of C from that of its dual."""
    size = sum(int(b) for b in B)
    out = []
    for i in range(n + 1):
        s = sum(int(B[x]) * krawtchouk(n, q, i, x) for x in range(n + 1) if B[x])
        assert s % size == 0
        out.append(s // size)
    return out


def _support_cost(n: int, q: int, lo: int, hi: int) -> int:
    return sum(math.comb(n, w) * (q - 1) ** w for w in range(lo, hi + 1))


class _Packed:
    """Syndromes over GF(p^e) packed into one Python int, one lane per GF(p) digit.

    For p = 2 addition is XOR.  For odd p each lane has a spare top bit, which
    lets a lane-wise reduction mod p run as a handful of big-int operations.
    """

    def __init__(self, F: FieldCtx, lanes: int):
        self.p, self.e = F.p, F.e
        self.F = F
        if self.p == 2:
            self.width = 1
            return
        b = self.p.bit_length() + 1
        self.width = b
        ones = sum(1 << (i * b) for i in range(lanes))
        self.bias = ones * ((1 << (b - 1)) - self.p)
        self.top = ones << (b - 1)
        self.all_p = ones * self.p

    def pack(self, col) -> int:
        x, lane = 0, 0
        for v in col:
            for d in self.F.digits(int(v)):
                x |= d << (lane * self.width)
                lane += 1
        return x

    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        s = x + y
        over = ((s + self.bias) & self.top) >> (self.width - 1)
        return s - over * self.p

    def neg(self, x: int) -> int:
        if self.p == 2:
            return x
        return self.add(self.all_p - x, 0)


def _low_weight(F: FieldCtx, g: Poly, n: int, lower: int, budget: int):
    """Smallest weight w >= lower admitting a codeword, scanning supports through 0
    (cyclic shifts) with first coefficient 1 (scaling).  Returns (weight, codeword)
    or (None, first weight not yet excluded) when the budget runs out.

    The last support position is not enumerated: it is looked up in a table
    keyed by the syndrome it has to cancel."""
    H = dual_generator_matrix(g, n)  # rows span C^perp, so H c^T = 0 on C
    q = F.size
    pk = _Packed(F, H.shape[0] * F.e)
    syn = [[pk.pack(F.mul(a, int(v)) for v in H[:, j]) for a in range(q)] for j in range(n)]
    last: dict[int, list[tuple[int, int]]] = {}
    for j in range(n - 1, 0, -1):
        for a in range(1, q):
            last.setdefault(syn[j][a], []).append((j, a))
    for lst in last.values():
        lst.sort()

    def word(sup, coef) -> Poly:
        vec = [0] * n
        for i, a in zip(sup, coef):
            vec[i] = a
        return Poly(F, vec)

    spent = 0
    w = max(lower, 1)
    while w <= n:
        cost = math.comb(n - 1, w - 1) * (q - 1) ** (w - 1)
        if spent + cost > budget:
            return None, w
        spent += cost
        if w == 1:
            if syn[0][1] == 0:
                return 1, word((0,), (1,))
            w += 1
            continue
        hit = _complete(syn, last, pk, q, n, w - 2, syn[0][1], 1, [0], [1])
        if hit is not None:
            return w, word(*hit)
        w += 1
    return None, w


def _complete(syn, last, pk, q, n, depth, partial, start, sup, coef):
    """Depth-first over the middle positions; the final one comes from `last`."""
    if depth == 0:
        for j, a in last.get(pk.neg(partial), ()):
            if j >= start:
                return sup + [j], coef + [a]
        return None
    for i in range(start, n - depth):
        row = syn[i]
        for a in range(1, q):
            sup.append(i)
            coef.append(a)
            hit = _complete(syn, last, pk, q, n, depth - 1, pk.add(partial, row[a]), i + 1, sup, coef)
            sup.pop()
            coef.pop()
            if hit is not None:
                return hit
    return None


def exact_distance(spec: CodeSpec, message_budget: int = MESSAGE_BUDGET,
                   support_budget: int = SUPPORT_BUDGET) -> DistanceResult:
    lower = bch_lower(spec)
    q, n = spec.params.q, spec.n
    try:
        g = generator_poly(spec)
    except DefiningSetOnly:
        return DistanceResult(lower, None, None, Method.BCH, notes=("generator not materialized",))
    F = g.field
    k = n - g.degree
    if k == 0:
        return DistanceResult(lower, None, None, Method.BCH, notes=("zero code",))
    primal, dual = q**k, q ** (n - k)
    if primal <= message_budget and (primal <= dual or dual > message_budget):
        A = _weights(F, generator_matrix(g, n))
        d = next(i for i in range(1, n + 1) if A[i])
        return DistanceResult(lower, d, d, Method.EXHAUSTIVE_MESSAGES)
    if dual <= message_budget:
        B = _weights(F, dual_generator_matrix(g, n))
        A = macwilliams(B, n, q)
        d = next(i for i in range(1, n + 1) if A[i])
        return DistanceResult(lower, d, d, Method.EXHAUSTIVE_DUAL)
    w, found = _low_weight(F, g, n, lower, support_budget)
    if w is not None:
        return DistanceResult(lower, w, w, Method.LOW_WEIGHT_SEARCH, witness=found)
    return DistanceResult(max(lower, found), None, None, Method.BCH, notes=("search budget exceeded",))


def best_known(spec: CodeSpec, search: bool = True, **budgets) -> DistanceResult:
    """Cheapest route to an exact value: witness, then sphere packing, then search."""
    try:
        return _tighten(witness_delta_divides(spec))
    except (WitnessError, DefiningSetOnly):
        pass
    sp = sphere_packing_result(spec)
    if sp is not None:
        return sp
    if search:
        return exact_distance(spec, **budgets)
    return DistanceResult(bch_lower(spec))


def _tighten(res: DistanceResult) -> DistanceResult:
    if res.exact is None and res.upper is not None and res.lower == res.upper:
        return DistanceResult(res.lower, res.upper, res.upper, res.method, res.witness)
    return res


# ---------------------------------------------------------------------------
# empirical checks of open claims (reported, never asserted)


def _conjecture_specs(max_n: int):
    from .dimensions import sweep_pairs

    for q, m in sweep_pairs(max_n + 1):
        P = CosetParams(q, m)
        if q % 2:
            for t in range(1, P.mbar + 1):
                if (q**t - 1) // 2 >= 1:
                    yield "designed-qt", CodeSpec(Family.LCD_A_EVEN_N, P, (q**t - 1) // 2), q**t - 1
        for lam in range(1, m // 2 + 1):
            delta = q**lam - 1
            if 2 <= delta < (P.n + 1) // 2:
                yield "lcd-b-q^lam-1", CodeSpec(Family.LCD_B, P, delta), 2 * delta
        if q == 3 and m % 2 and m >= 3:
            yield "q3-delta4", CodeSpec(Family.LCD_B, P, 4), 8


def conjecture_sweep(max_n: int = 256, **budgets) -> list[dict]:
    """Exact distances, where reachable, against the conjectured values."""
    rows = []
    for name, spec, claim in _conjecture_specs(max_n):
        res = best_known(spec, **budgets)
        d = res.exact
        rows.append({
            "conjecture": name, "q": spec.params.q, "m": spec.params.m, "delta": spec.delta,
            "n": spec.n, "claimed": claim, "lower": res.lower, "upper": res.upper, "exact": d,
            "status": "open" if d is None else ("holds" if d == claim else "fails"),
        })
    return rows
