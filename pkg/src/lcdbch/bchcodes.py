"""Primitive BCH code families as defining sets and generator polynomials.

The defining set of a cyclic code is the set of exponents j such that
alpha^j is a root of its generator.  Dimensions only need the defining set,
which is pure coset arithmetic and works at any length; generator
polynomials are materialized only for n <= GENERATOR_LIMIT.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .cosets import TABLE_LIMIT, CosetParams, coset_table, orbit
from .polyring import Poly, is_self_reciprocal, lcm, minimal_poly, product
from .field import gf

GENERATOR_LIMIT = 1 << 14


class GateError(ValueError):
    """A code specification violates the hypotheses of its family."""


class DefiningSetOnly(ValueError):
    """The code is too long to materialize its generator polynomial."""


class Family(str, enum.Enum):
    NARROW = "narrow"
    GENERIC = "generic"
    LCD_A_EVEN_N = "lcd-a-even"
    LCD_A_ODD_N = "lcd-a-odd"
    LCD_B = "lcd-b"
    LCD_B_TILDE = "lcd-b-tilde"
    MELAS_EVENLIKE = "melas"

    @property
    def is_lcd(self) -> bool:
        return self in LCD_FAMILIES


LCD_FAMILIES = frozenset(
    {Family.LCD_A_EVEN_N, Family.LCD_A_ODD_N, Family.LCD_B, Family.LCD_B_TILDE, Family.MELAS_EVENLIKE}
)


@dataclass(frozen=True)
class CodeSpec:
    """A primitive BCH code instance.

    For the LCD families `delta` is the half-range parameter: the designed
    distance is 2*delta (LCD_A_EVEN_N, LCD_B), 2*delta-1 (LCD_A_ODD_N) or
    delta (LCD_B_TILDE).  For NARROW and GENERIC it is the designed distance.
    """

    family: Family
    params: CosetParams
    delta: int
    b: int | None = None

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        q, n = self.params.q, self.params.n
        d = self.delta
        half = (n + 1) // 2
        if fam is Family.NARROW:
            if self.b not in (None, 1):
                raise GateError("narrow-sense codes have b = 1")
            if not 1 <= d <= n:
                raise GateError(f"designed distance {d} outside [1, n={n}]")
            b = 1
        elif fam is Family.GENERIC:
            if self.b is None:
                raise GateError("a generic BCH code needs b")
            if not 1 <= d <= n:
                raise GateError(f"designed distance {d} outside [1, n={n}]")
            b = self.b % n
        elif fam in (Family.LCD_A_EVEN_N, Family.LCD_A_ODD_N):
            if fam is Family.LCD_A_EVEN_N and q % 2 == 0:
                raise GateError("LCD_A_EVEN_N needs q odd (n even)")
            if fam is Family.LCD_A_ODD_N and q % 2:
                raise GateError("LCD_A_ODD_N needs q even (n odd)")
            if not 1 <= d <= half:
                raise GateError(f"delta={d} outside [1, floor((n+1)/2)={half}]")
            b = (half - d + 1) % n
        elif fam in (Family.LCD_B, Family.LCD_B_TILDE, Family.MELAS_EVENLIKE):
            if fam is Family.MELAS_EVENLIKE and d != 2:
                raise GateError("the even-like Melas code has delta = 2")
            if not 2 <= d < half:
                raise GateError(f"delta={d} outside [2, floor((n+1)/2)={half})")
            b = (n - d + 1) % n
        else:  # pragma: no cover
            raise GateError(f"unknown family {fam}")
        if self.b is not None and self.b % n != b:
            raise GateError(f"b={self.b} does not match the family value {b}")
        object.__setattr__(self, "b", b)

    @classmethod
    def melas(cls, params: CosetParams) -> CodeSpec:
        return cls(Family.MELAS_EVENLIKE, params, 2)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def designed_distance(self) -> int:
        f = self.family
        if f in (Family.NARROW, Family.GENERIC, Family.LCD_B_TILDE):
            return self.delta
        if f is Family.LCD_A_ODD_N:
            return 2 * self.delta - 1
        return 2 * self.delta

    def root_exponents(self) -> list[int]:
        """The consecutive (or symmetric) exponents whose cosets form the defining set."""
        n, d, f = self.n, self.delta, self.family
        if f is Family.LCD_B_TILDE:
            return sorted({j % n for j in range(1, d)} | {(-j) % n for j in range(1, d)})
        return ((np.arange(self.designed_distance - 1) + self.b) % n).tolist()

    def label(self) -> str:
        return f"{self.family.value}(q={self.params.q}, m={self.params.m}, delta={self.delta}, b={self.b})"


@dataclass(frozen=True)
class DefiningSet:
    params: CosetParams
    leaders: tuple[int, ...]
    size: int

    @functools.cached_property
    def exponents(self) -> tuple[int, ...]:
        out: set[int] = set()
        for ld in self.leaders:
            out.update(orbit(self.params, ld))
        return tuple(sorted(out))

    def __contains__(self, j: int) -> bool:
        return min(orbit(self.params, j % self.params.n)) in self._leader_set

    @functools.cached_property
    def _leader_set(self) -> frozenset[int]:
        return frozenset(self.leaders)

    def is_negation_closed(self) -> bool:
        n = self.params.n
        if n <= TABLE_LIMIT:
            lds = np.asarray(self.leaders, dtype=np.int64)
            return bool(np.isin(coset_table(self.params).leader[(-lds) % n], lds).all())
        return all(min(orbit(self.params, (-ld) % n)) in self._leader_set for ld in self.leaders)


def leaders_of(params: CosetParams, exponents) -> tuple[tuple[int, ...], int]:
    """Distinct coset leaders of the given exponents and the union size."""
    exps = np.asarray(list(exponents), dtype=np.int64) % params.n
    if exps.size == 0:
        return (), 0
    if params.n <= TABLE_LIMIT:
        tab = coset_table(params)
        lds = np.unique(tab.leader[exps])
        return tuple(lds.tolist()), int(tab.size[lds].sum())
    seen: dict[int, int] = {}
    for j in exps.tolist():
        orb = orbit(params, j)
        seen.setdefault(min(orb), len(orb))
    return tuple(sorted(seen)), sum(seen.values())


def defining_set(spec: CodeSpec) -> DefiningSet:
    lds, size = leaders_of(spec.params, spec.root_exponents())
    return DefiningSet(spec.params, lds, size)


def dimension_constructive(spec: CodeSpec) -> int:
    return spec.n - defining_set(spec).size


def is_lcd(obj) -> bool:
    """Negation closure T = -T of the defining set."""
    ds = defining_set(obj) if isinstance(obj, CodeSpec) else obj
    return ds.is_negation_closed()


def generator_poly(spec: CodeSpec, limit: int = GENERATOR_LIMIT) -> Poly:
    """Product of the minimal polynomials of the defining-set leaders."""
    if spec.n > limit:
        raise DefiningSetOnly(f"n={spec.n} exceeds the materialization limit {limit}")
    ds = defining_set(spec)
    F = gf(spec.params.q)
    g = product([minimal_poly(spec.params, ld) for ld in ds.leaders], F)
    assert g.degree == ds.size
    return g


def bch_generator(params: CosetParams, delta: int, b: int, limit: int = GENERATOR_LIMIT) -> Poly:
    """g_(q,n,delta,b) = lcm(m_b, ..., m_{b+delta-2}), computed by polynomial lcm."""
    if params.n > limit:
        raise DefiningSetOnly(f"n={params.n} exceeds the materialization limit {limit}")
    F = gf(params.q)
    polys = [minimal_poly(params, (b + i) % params.n) for i in range(delta - 1)]
    return lcm(polys) if polys else Poly.one(F)


def generator_poly_lcm(spec: CodeSpec) -> Poly:
    """The generator rebuilt from the family's lcm description."""
    P, n, d = spec.params, spec.n, spec.delta
    F = gf(P.q)
    x_plus_1 = Poly(F, (1, 1))
    x_minus_1 = Poly(F, (F.neg(1), 1))
    f = spec.family
    if f is Family.LCD_A_EVEN_N:
        parts = [x_plus_1, bch_generator(P, d, n // 2 + 1), bch_generator(P, d, n // 2 - (d - 1))]
    elif f is Family.LCD_A_ODD_N:
        parts = [bch_generator(P, d, (n + 1) // 2), bch_generator(P, d, (n + 1) // 2 - (d - 1))]
    elif f in (Family.LCD_B, Family.LCD_B_TILDE, Family.MELAS_EVENLIKE):
        tilde = lcm([bch_generator(P, d, 1), bch_generator(P, d, n - d + 1)])
        return tilde if f is Family.LCD_B_TILDE else x_minus_1 * tilde
    else:
        return bch_generator(P, spec.designed_distance, spec.b)
    return lcm(parts)


def check_generator(spec: CodeSpec, g: Poly) -> dict:
    """g is monic, has degree |T| and divides x^n - 1 with an exact cofactor."""
    n = spec.n
    F = g.field
    xn1 = Poly.x_n_minus_1(F, n)
    h, r = xn1.divmod(g)
    return {
        "monic": g.lead == 1,
        "degree_matches": g.degree == defining_set(spec).size,
        "divides": r.is_zero() and g * h == xn1,
        "self_reciprocal": is_self_reciprocal(g),
    }


def monomial_equivalence_check(spec_a: CodeSpec, spec_b: CodeSpec, distances: tuple | None = None) -> bool:
    """q odd: the family-A code and the family-B code with the same delta coincide
    after negating every odd coordinate.  The defining sets are translates by n/2."""
    if spec_a.params.q % 2 == 0 or spec_b.params.q % 2 == 0:
        raise GateError("monomial equivalence needs q odd")
    if spec_a.family is not Family.LCD_A_EVEN_N or spec_b.family is not Family.LCD_B:
        raise GateError("expects an LCD_A_EVEN_N spec and an LCD_B spec")
    if spec_a.params != spec_b.params or spec_a.delta != spec_b.delta:
        raise GateError("the two specs must share (q, m, delta)")
    n = spec_a.n
    ta = set(defining_set(spec_a).exponents)
    tb = {(t + n // 2) % n for t in defining_set(spec_b).exponents}
    same = ta == tb and dimension_constructive(spec_a) == dimension_constructive(spec_b)
    if distances is not None:
        same = same and distances[0] == distances[1]
    return same


def odd_coordinate_negation(c: Poly) -> Poly:
    """c(x) -> c(-x): the monomial map relating the two LCD families for q odd."""
    F = c.field
    return Poly(F, tuple(F.neg(v) if i % 2 else v for i, v in enumerate(c.coeffs)))

