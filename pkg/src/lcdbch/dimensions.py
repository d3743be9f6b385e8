"""Closed-form dimensions of the BCH families, with explicit validity gates.

Every function returns a DimPrediction.  Outside a formula's proven range the
result has kind NOT_COVERED instead of an extrapolated value.  `predict`
routes a CodeSpec to the most specific formula available.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .bchcodes import CodeSpec, Family, GateError, dimension_constructive
from .cosets import CosetParams, prime_power, run_count


class Kind(str, enum.Enum):
    EXACT = "exact"
    BOUNDS = "bounds"
    NOT_COVERED = "not-covered"


@dataclass(frozen=True)
class DimPrediction:
    kind: Kind
    source: str
    domain: str
    k: int | None = None
    bounds: tuple[int, int] | None = None
    spec: CodeSpec | None = None
    distance: int | None = None  # exact minimum distance when the formula states it
    distance_lower: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def covered(self) -> bool:
        return self.kind is not Kind.NOT_COVERED

    def agrees_with(self, k: int) -> bool:
        if self.kind is Kind.EXACT:
            return self.k == k
        if self.kind is Kind.BOUNDS:
            return self.bounds[0] <= k <= self.bounds[1]
        return True

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "source_theorem": self.source, "domain": self.domain}
        if self.k is not None:
            out["k"] = self.k
        if self.bounds is not None:
            out["bounds"] = list(self.bounds)
        if self.distance is not None:
            out["d"] = self.distance
        out.update({key: v for key, v in self.extra.items() if isinstance(v, (int, str))})
        return out


def _nc(source: str, why: str) -> DimPrediction:
    return DimPrediction(Kind.NOT_COVERED, source, why)


def _params(q: int, m: int) -> CosetParams | None:
    if prime_power(q) is None or m < 2:
        return None
    return CosetParams(q, m)


def _u_ok(q: int, m: int, u: int, halve_at_m2: bool) -> bool:
    top = q - 1
    if halve_at_m2 and m == 2:
        top = (q - 1) // 2 if q % 2 else q // 2
    return 1 <= u <= top


# ---------------------------------------------------------------------------
# narrow-sense and one-sided codes, delta = u q^mbar + 1


def _narrow_k(q: int, m: int, u: int) -> int:
    if m % 2:
        return q**m - 1 - (u * q ** ((m - 1) // 2) - u * u + u) * (q - 1) * m
    # (u-1)^2 m / 2 is an integer: either m is even or (u-1)^2 is
    return q**m - 1 - u * q ** (m // 2 - 1) * (q - 1) * m + (u - 1) ** 2 * m // 2


def dim_narrow(q: int, m: int, u: int) -> DimPrediction:
    src = "narrow"
    P = _params(q, m)
    if P is None:
        return _nc(src, "q must be a prime power and m >= 2")
    if m % 2 and m < 5:
        return _nc(src, "m odd needs m >= 5")
    if not _u_ok(q, m, u, False):
        return _nc(src, f"u={u} outside [1, q-1]")
    delta = u * q**P.mbar + 1
    spec = CodeSpec(Family.NARROW, P, delta)
    d = delta if (m % 2 == 0 and u == 1) else None
    return DimPrediction(Kind.EXACT, src, f"delta = u q^mbar + 1, 1 <= u <= q-1, m={'even' if m % 2 == 0 else 'odd >= 5'}",
                         k=_narrow_k(q, m, u), spec=spec, distance=d, distance_lower=delta)


def dim_familyA_onesided(q: int, m: int, u: int, side: str = "plus") -> DimPrediction:
    """One of the two BCH codes whose lcm is the family-A generator.

    side "plus" starts at nbar (q even) or n/2 + 1 (q odd); "minus" ends just below it.
    """
    src = "one-sided"
    P = _params(q, m)
    if P is None:
        return _nc(src, "q must be a prime power and m >= 2")
    if side not in ("plus", "minus"):
        raise ValueError("side is 'plus' or 'minus'")
    if m % 2 and m < 5:
        return _nc(src, "m odd needs m >= 5")
    if not _u_ok(q, m, u, False):
        return _nc(src, f"u={u} outside [1, q-1]")
    n = P.n
    if q % 2:
        delta = u * q**P.mbar + 1
        b = n // 2 + 1 if side == "plus" else n // 2 - (delta - 1)
        k = _narrow_k(q, m, u)
    else:
        delta = u * q**P.mbar // 2 + 1
        b = (n + 1) // 2 if side == "plus" else (n + 1) // 2 - (delta - 1)
        if m % 2:
            sub = u * u * q // 4 if u % 2 == 0 else (u * u - u) * q // 4
            k = q**m - 1 - (u * q**P.mbar // 2 - sub) * m
        else:
            sub = u * u // 4 if u % 2 == 0 else (u - 1) ** 2 // 4
            k = q**m - 1 - (u * q**P.mbar - sub) * m // 2
    spec = CodeSpec(Family.GENERIC, P, delta, b)
    return DimPrediction(Kind.EXACT, src, f"q {'odd' if q % 2 else 'even'}, delta = u q^mbar{'' if q % 2 else '/2'} + 1",
                         k=k, spec=spec, distance_lower=delta)


# ---------------------------------------------------------------------------
# family A: LCD codes centered at n/2


def dim_lcd_A(q: int, m: int, u: int) -> DimPrediction:
    src = "lcd-a"
    P = _params(q, m)
    if P is None:
        return _nc(src, "q must be a prime power and m >= 2")
    if m % 2 and m < 5:
        return _nc(src, "m odd needs m >= 5")
    if not _u_ok(q, m, u, True):
        return _nc(src, f"u={u} outside the allowed range for m={m}")
    if q % 2:
        delta = u * q**P.mbar + 1
        fam = Family.LCD_A_EVEN_N
        if m % 2:
            k = q**m - 2 - 2 * (u * q ** ((m - 1) // 2) - 2 * u * u + u) * (q - 1) * m
        else:
            k = q**m - 2 - 2 * u * q ** (m // 2 - 1) * (q - 1) * m + (2 * u * u - 2 * u + 1) * m
    else:
        delta = u * q**P.mbar // 2 + 1
        fam = Family.LCD_A_ODD_N
        if m % 2:
            k = q**m - 1 - (u * q**P.mbar - u * u * q) * m
        elif u % 2 == 0:
            k = q**m - 1 - (u * q ** (m // 2) - u * u // 2) * m
        else:
            k = q**m - 1 - (u * q ** (m // 2) - (u * u + 1) // 2) * m
    spec = CodeSpec(fam, P, delta)
    d = None
    b = spec.b
    D = spec.designed_distance
    if u == 1 and m % 2 == 0 and (n_b := (P.n, b - 1)) and n_b[0] % D == 0 and n_b[1] % D == 0:
        d = D
    return DimPrediction(Kind.EXACT, src, f"q {'odd' if q % 2 else 'even'}, m {'odd >= 5' if m % 2 else 'even'}, delta from u={u}",
                         k=k, spec=spec, distance=d, distance_lower=D)


def dim_designed_qt(q: int, m: int, t: int) -> DimPrediction:
    """Family A with designed distance q^t - 1."""
    src = "designed-qt"
    P = _params(q, m)
    if P is None:
        return _nc(src, "q must be a prime power and m >= 2")
    if not 1 <= t <= P.mbar:
        return _nc(src, f"t={t} outside [1, mbar={P.mbar}]")
    if q % 2:
        delta = (q**t - 1) // 2
        spec = CodeSpec(Family.LCD_A_EVEN_N, P, delta)
        k = q**m - 2 - (q**t - q ** (t - 1) - 2) * m
    else:
        if m == 3:
            return _nc(src, "q even excludes m = 3")
        delta = q**t // 2
        spec = CodeSpec(Family.LCD_A_ODD_N, P, delta)
        if m % 2 and m >= 5 and t == (m + 1) // 2:
            k = q**m - 1 - (q ** ((m + 1) // 2) - q) * m
        else:
            k = q**m - 1 - (q**t - 2) * m
    return DimPrediction(Kind.EXACT, src, f"designed distance q^t - 1, 1 <= t={t} <= mbar",
                         k=k, spec=spec, distance_lower=q**t - 1)


# ---------------------------------------------------------------------------
# family B: LCD codes centered at 0


def split_delta(q: int, delta: int) -> tuple[int, int]:
    """(delta_q, delta_0) with delta - 1 = delta_q q + delta_0, 0 <= delta_0 < q."""
    return divmod(delta - 1, q)


def dim_lcd_B_small_delta(q: int, m: int, delta: int) -> DimPrediction:
    src = "lcd-b-small"
    P = _params(q, m)
    if P is None:
        return _nc(src, "q must be a prime power and m >= 2")
    dq, d0 = split_delta(q, delta)
    base = dq * (q - 1) + d0
    extra = {"delta_q": dq, "delta_0": d0}
    if delta < 2:
        return _nc(src, "delta >= 2")
    # halves: k = q^m - 2 - 2m(base - off) with off in halves, i.e. - 2m base + m (2 off)
    twice_off = None
    if m % 2:
        top = q ** ((m + 1) // 2)
        if delta <= top - q:
            twice_off = 0
        elif delta <= top + 1:
            k = q**m - 2 - 2 * m * (q ** ((m - 1) // 2) - 1) * (q - 1)
            return _exact_b(src, P, delta, k, "m odd, q^((m+1)/2) - q < delta <= q^((m+1)/2) + 1", extra)
        else:
            return _nc(src, f"delta={delta} > q^((m+1)/2) + 1")
        domain = "m odd, delta <= q^((m+1)/2) - q"
    elif q > 2:
        h = q ** (m // 2)
        if delta <= h - 1:
            twice_off = 0
        elif delta <= h + 1:
            twice_off = 1
        elif delta <= 2 * h - 2:
            twice_off = 2
        elif delta == 2 * h - 1:
            twice_off = 3
        elif delta <= 2 * h + 1:
            twice_off = 5
        else:
            return _nc(src, f"delta={delta} > 2 q^(m/2) + 1")
        domain = "m even, q > 2"
    else:
        if m < 4:
            return _nc(src, "q = 2 with m even needs m >= 4")
        h = 2 ** (m // 2)
        if delta <= h - 1:
            twice_off = 0
        elif delta <= h + 1:
            twice_off = 1
        elif delta <= 2 * h - 3:
            twice_off = 2
        elif delta <= 2 * h + 1:
            if m < 6:
                return _nc(src, "the last two windows for q = 2 need m >= 6")
            twice_off = 4 if delta <= 2 * h - 1 else 6
        else:
            return _nc(src, f"delta={delta} > 2^(m/2+1) + 1")
        domain = "m even, q = 2"
    k = q**m - 2 - 2 * m * base + m * twice_off
    return _exact_b(src, P, delta, k, domain, extra)


def _exact_b(src, P, delta, k, domain, extra) -> DimPrediction:
    try:
        spec = CodeSpec(Family.LCD_B, P, delta)
    except GateError as exc:
        return _nc(src, str(exc))
    return DimPrediction(Kind.EXACT, src, domain, k=k, spec=spec, distance_lower=2 * delta, extra=extra)


def narrow_degree_mann(q: int, m: int, lam: int) -> int:
    """Degree of the narrow-sense generator with designed distance q^lam."""
    r = m - lam
    s = _mann_sum(q, m, r)
    return run_count(q, r, m) - 1 + s


def _mann_sum(q: int, m: int, r: int) -> int:
    return (q - 1) ** 2 * sum(
        (r - u - 1) * (q ** (m - r - u - 2) - run_count(q, r, m - r - u - 2)) for u in range(r - 1)
    )


def dim_lcd_B_mann(q: int, m: int, lam: int) -> DimPrediction:
    src = "lcd-b-mann"
    P = _params(q, m)
    if P is None:
        return _nc(src, "q must be a prime power and m >= 2")
    if not P.mbar <= lam <= m - 1:
        return _nc(src, f"lambda={lam} outside [ceil(m/2)={P.mbar}, m-1]")
    delta = q**lam
    r = m - lam
    s = _mann_sum(q, m, r)
    lr_m, lr_mr = run_count(q, r, m), run_count(q, r, m - r)
    lo = q**m - 2 * lr_m + 2 * lr_mr - 2 * s
    hi = q**m - 2 * lr_m + m * lr_mr - 2 * s
    try:
        spec = CodeSpec(Family.LCD_B, P, delta)
    except GateError as exc:
        return _nc(src, str(exc))
    return DimPrediction(Kind.BOUNDS, src, f"delta = q^lambda, r = m - lambda = {r}", bounds=(lo, hi), spec=spec,
                         distance_lower=2 * delta,
                         extra={"r": r, "deg_narrow": run_count(q, r, m) - 1 + s, "N_prime": lr_mr})


def dim_melas_evenlike(q: int, m: int) -> DimPrediction:
    src = "melas"
    P = _params(q, m)
    if P is None:
        return _nc(src, "q must be a prime power and m >= 2")
    if q % 2 == 0:
        return _nc(src, "q must be odd")
    spec = CodeSpec.melas(P)
    return DimPrediction(Kind.EXACT, src, "q odd, m >= 2", k=q**m - 2 - 2 * m, spec=spec, distance=4, distance_lower=4)


def dim_small_delta_theorems(q: int, m: int, delta: int) -> DimPrediction:
    src = "lcd-b-fixed-delta"
    P = _params(q, m)
    if P is None:
        return _nc(src, "q must be a prime power and m >= 2")
    if delta == 2:
        return dim_melas_evenlike(q, m)
    if delta == 3:
        if q == 2 and m >= 4:
            spec = CodeSpec(Family.LCD_B, P, 3)
            return DimPrediction(Kind.EXACT, src, "q = 2, m >= 4", k=2**m - 2 - 2 * m, spec=spec, distance=6,
                                 distance_lower=6)
        if q != 2 and q**m % 3 == 1 and m >= 4:
            spec = CodeSpec(Family.LCD_B, P, 3)
            return DimPrediction(Kind.EXACT, src, "q^m = 1 mod 3, q != 2, m >= 4", k=q**m - 2 - 4 * m, spec=spec,
                                 distance=6, distance_lower=6)
        return _nc(src, "delta = 3 needs q = 2 or q^m = 1 mod 3, with m >= 4")
    if delta == 4 and q == 3 and m >= 3:
        spec = CodeSpec(Family.LCD_B, P, 4)
        return DimPrediction(Kind.EXACT, src, "q = 3, m >= 3", k=3**m - 2 - 4 * m, spec=spec,
                             distance=8 if m % 2 == 0 else None, distance_lower=8)
    return _nc(src, f"no fixed-delta formula for (q={q}, m={m}, delta={delta})")


# ---------------------------------------------------------------------------
# dispatcher


def _u_from_delta(P: CosetParams, delta: int, half: bool) -> int | None:
    step = P.q**P.mbar // 2 if half else P.q**P.mbar
    if step and (delta - 1) % step == 0 and delta > 1:
        return (delta - 1) // step
    return None


def _t_from_distance(q: int, D: int) -> int | None:
    t, v = 0, 1
    while v - 1 < D:
        v *= q
        t += 1
    return t if v - 1 == D else None


def _first(*preds: DimPrediction) -> DimPrediction | None:
    for p in preds:
        if p is not None and p.covered:
            return p
    return None


def _relabel(p: DimPrediction, spec: CodeSpec, via: str) -> DimPrediction:
    return DimPrediction(p.kind, f"{p.source} ({via})", p.domain, p.k, p.bounds, spec, p.distance,
                         p.distance_lower, p.extra)


def predict(spec: CodeSpec) -> DimPrediction:
    P, q, m, n, delta = spec.params, spec.params.q, spec.params.m, spec.n, spec.delta
    f = spec.family
    hit: DimPrediction | None = None
    if f is Family.NARROW:
        u = _u_from_delta(P, delta, False)
        hit = _first(dim_narrow(q, m, u)) if u else None
    elif f is Family.GENERIC:
        if spec.b == 1:
            return predict(CodeSpec(Family.NARROW, P, delta))
        u = _u_from_delta(P, delta, q % 2 == 0)
        if u:
            for side in ("plus", "minus"):
                p = dim_familyA_onesided(q, m, u, side)
                if p.covered and p.spec == spec:
                    hit = p
    elif f in (Family.LCD_A_EVEN_N, Family.LCD_A_ODD_N):
        u = _u_from_delta(P, delta, q % 2 == 0)
        t = _t_from_distance(q, spec.designed_distance)
        cands = []
        if u:
            cands.append(dim_lcd_A(q, m, u))
        if t:
            cands.append(dim_designed_qt(q, m, t))
        hit = _first(*[c for c in cands if c.spec == spec])
        if hit is None and q % 2:
            # odd q: the two families are monomially equivalent
            twin = CodeSpec(Family.LCD_B, P, delta) if delta < (n + 1) // 2 else None
            if twin is not None:
                p = predict(twin)
                if p.covered:
                    hit = _relabel(p, spec, "monomially equivalent lcd-b code")
    elif f in (Family.LCD_B, Family.MELAS_EVENLIKE):
        cands = [dim_small_delta_theorems(q, m, delta), dim_lcd_B_small_delta(q, m, delta)]
        if q % 2:
            u = _u_from_delta(P, delta, False)
            t = _t_from_distance(q, 2 * delta)
            for p in ([dim_lcd_A(q, m, u)] if u else []) + ([dim_designed_qt(q, m, t)] if t else []):
                if p.covered and p.spec.delta == delta:
                    cands.append(_relabel(p, CodeSpec(Family.LCD_B, P, delta), "monomially equivalent lcd-a code"))
        lam = _log_q(q, delta)
        if lam is not None:
            cands.append(dim_lcd_B_mann(q, m, lam))
        hit = _first(*[c for c in cands if not c.covered or c.spec.delta == delta])
        if hit is not None and f is Family.MELAS_EVENLIKE:
            hit = _relabel(hit, spec, "delta = 2")
    elif f is Family.LCD_B_TILDE:
        base = predict(CodeSpec(Family.LCD_B, P, delta))
        if base.covered:
            shift = (lambda v: v + 1)
            hit = DimPrediction(base.kind, f"{base.source} (drop the root 1)", base.domain,
                                shift(base.k) if base.k is not None else None,
                                (base.bounds[0] + 1, base.bounds[1] + 1) if base.bounds else None,
                                spec, None, spec.designed_distance, base.extra)
    if hit is None:
        return DimPrediction(Kind.NOT_COVERED, "none", f"no formula covers {spec.label()}", spec=spec)
    return hit


def _log_q(q: int, v: int) -> int | None:
    lam = 0
    while v % q == 0:
        v //= q
        lam += 1
    return lam if v == 1 else None


# ---------------------------------------------------------------------------
# sweeps over validity domains


def _domain_narrow(q, m):
    for u in range(1, q):
        yield dim_narrow(q, m, u)


def _domain_onesided(q, m):
    for u in range(1, q):
        for side in ("plus", "minus"):
            yield dim_familyA_onesided(q, m, u, side)


def _domain_lcd_a(q, m):
    for u in range(1, q):
        yield dim_lcd_A(q, m, u)


def _domain_designed_qt(q, m):
    for t in range(1, (m + 1) // 2 + 1):
        yield dim_designed_qt(q, m, t)


def _domain_lcd_b_small(q, m):
    top = q ** ((m + 1) // 2) + 1 if m % 2 else 2 * q ** (m // 2) + 1
    for delta in range(2, min(top, (q**m) // 2 - 1) + 1):
        yield dim_lcd_B_small_delta(q, m, delta)


def _domain_mann(q, m):
    for lam in range((m + 1) // 2, m):
        yield dim_lcd_B_mann(q, m, lam)


def _domain_fixed_delta(q, m):
    for delta in (2, 3, 4):
        yield dim_small_delta_theorems(q, m, delta)


THEOREMS: dict[str, Callable[[int, int], Iterator[DimPrediction]]] = {
    "narrow": _domain_narrow,
    "one-sided": _domain_onesided,
    "lcd-a": _domain_lcd_a,
    "designed-qt": _domain_designed_qt,
    "lcd-b-small": _domain_lcd_b_small,
    "lcd-b-mann": _domain_mann,
    "lcd-b-fixed-delta": _domain_fixed_delta,
}


@dataclass
class SweepSummary:
    checked: int = 0
    mismatches: list = field(default_factory=list)
    skipped: int = 0
    rows: list = field(default_factory=list)

    def merge(self, other: SweepSummary) -> SweepSummary:
        self.checked += other.checked
        self.mismatches += other.mismatches
        self.skipped += other.skipped
        self.rows += other.rows
        return self


def verify_theorem(name: str, q: int, m: int, keep_rows: bool = False) -> SweepSummary:
    """Compare every prediction in the theorem's domain at (q, m) with the constructive dimension."""
    out = SweepSummary()
    if prime_power(q) is None or m < 2:
        return out
    for pred in THEOREMS[name](q, m):
        if not pred.covered:
            out.skipped += 1
            continue
        k = dimension_constructive(pred.spec)
        out.checked += 1
        if not pred.agrees_with(k):
            out.mismatches.append((name, q, m, pred.spec.delta, pred.spec.b, pred.k or pred.bounds, k))
        if keep_rows:
            out.rows.append((pred, k))
    return out


def sweep_pairs(max_size: int, q_max: int | None = None) -> list[tuple[int, int]]:
    """All (q, m) with q a prime power, m >= 2 and q^m <= max_size."""
    pairs = []
    q = 2
    while q * q <= max_size and (q_max is None or q <= q_max):
        if prime_power(q):
            m = 2
            while q**m <= max_size:
                pairs.append((q, m))
                m += 1
        q += 1
    return pairs


MASTER_SIZE = 3**8
BINARY_EXTRA_M = range(13, 21)
MANN_SIZE = 1 << 16


def master_tasks(max_size: int = MASTER_SIZE, binary_extra: Iterable[int] = BINARY_EXTRA_M,
                 theorems: Iterable[str] | None = None) -> list[tuple[str, int, int]]:
    """(theorem, q, m) triples of the default sweep.

    All prime powers with q^m <= max_size, plus q = 2 at the extra m values
    (defining sets only).  The Mann bounds enumerate run patterns, so they
    stop at q^m <= MANN_SIZE.
    """
    names = list(THEOREMS) if theorems is None else list(theorems)
    pairs = sweep_pairs(max_size)
    pairs += [(2, m) for m in binary_extra if (2, m) not in pairs]
    return [(name, q, m) for name in names for q, m in pairs
            if name != "lcd-b-mann" or q**m <= MANN_SIZE]


def run_tasks(tasks, workers: int = 1) -> dict[str, SweepSummary]:
    """Run verify_theorem over the tasks; results are merged in task order."""
    tasks = list(tasks)
    if workers > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=4))
    else:
        results = [_run_one(t) for t in tasks]
    out: dict[str, SweepSummary] = {}
    for (name, _, _), res in zip(tasks, results):
        out.setdefault(name, SweepSummary()).merge(res)
    return out


def _run_one(task) -> SweepSummary:
    return verify_theorem(*task)
