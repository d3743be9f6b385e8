"""Dense polynomials over GF(q) and minimal polynomials of powers of alpha.

Coefficients are GF(q) labels (packed integers of the canonical GF(q)
context), lowest degree first, with no trailing zeros.  The zero polynomial
has an empty coefficient tuple and degree -1.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cosets import CosetParams, orbit
from .field import ContextMismatch, FieldCtx, SubfieldEmbedding, SubfieldError, extension, gf


def _trimmed(coeffs) -> tuple[int, ...]:
    c = list(int(x) for x in coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    field: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trimmed(self.coeffs))

    @classmethod
    def zero(cls, F: FieldCtx) -> Poly:
        return cls(F, ())

    @classmethod
    def one(cls, F: FieldCtx) -> Poly:
        return cls(F, (1,))

    @classmethod
    def x(cls, F: FieldCtx) -> Poly:
        return cls(F, (0, 1))

    @classmethod
    def monomial(cls, F: FieldCtx, k: int, c: int = 1) -> Poly:
        return cls(F, (0,) * k + (c,))

    @classmethod
    def x_n_minus_1(cls, F: FieldCtx, n: int) -> Poly:
        return cls(F, (F.neg(1),) + (0,) * (n - 1) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def weight(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if not i else f"{c}*{mono}")
        return "Poly(" + " + ".join(terms) + ")"

    def _same(self, other: Poly):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field != self.field:
            raise ContextMismatch("polynomials over different fields")

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __add__(self, other: Poly) -> Poly:
        self._same(other)
        a, b = self.array(), other.array()
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        if len(b):
            out[: len(b)] = self.field.add_arr(a[: len(b)], b)
        return Poly(self.field, out)

    def __neg__(self) -> Poly:
        return Poly(self.field, self.field.neg_arr(self.array()) if self.coeffs else ())

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, c: int) -> Poly:
        if not self.coeffs or c == 0:
            return Poly.zero(self.field)
        return Poly(self.field, self.field.mul_arr(self.array(), c))

    def __mul__(self, other: Poly) -> Poly:
        self._same(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly.zero(F)
        a, b = self.array(), other.array()
        if F.e == 1:
            if F.p == 2:
                return Poly(F, np.convolve(a, b) & 1)
            # chunk the shorter operand so partial sums stay within int64
            if len(a) < len(b):
                a, b = b, a
            p = F.p
            step = max(1, (1 << 62) // (len(a) * (p - 1) ** 2 + 1))
            out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
            for s in range(0, len(b), step):
                part = np.convolve(a, b[s : s + step]) % p
                out[s : s + len(part)] = (out[s : s + len(part)] + part) % p
            return Poly(F, out)
        p, e = F.p, F.e
        if min(len(a), len(b)) * e * (p - 1) ** 3 < 1 << 62:
            # integer convolutions of base-p digit planes, folded once at the end
            pa = [(a // p**i) % p for i in range(e)]
            pb = [(b // p**i) % p for i in range(e)]
            conv = [np.zeros(len(a) + len(b) - 1, dtype=np.int64) for _ in range(2 * e - 1)]
            for i in range(e):
                for j in range(e):
                    conv[i + j] += np.convolve(pa[i], pb[j])
            return Poly(F, F.fold_planes(conv))
        if len(a) < len(b):
            a, b = b, a
        out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
        for i, c in enumerate(b.tolist()):
            if c:
                seg = slice(i, i + len(a))
                out[seg] = F.add_arr(out[seg], F.mul_arr(a, c))
        return Poly(F, out)

    def monic(self) -> Poly:
        if not self.coeffs:
            raise ZeroDivisionError("the zero polynomial has no monic form")
        return self.scale(self.field.inv(self.lead))

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        self._same(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = self.array().copy()
        d = other.array()
        dd = len(d) - 1
        if len(r) - 1 < dd:
            return Poly.zero(F), self
        inv_lead = F.inv(int(d[-1]))
        quo = np.zeros(len(r) - dd, dtype=np.int64)
        neg_d = F.neg_arr(d)
        for i in range(len(r) - 1, dd - 1, -1):
            c = int(r[i])
            if c == 0:
                continue
            c = F.mul(c, inv_lead)
            quo[i - dd] = c
            seg = slice(i - dd, i + 1)
            r[seg] = F.add_arr(r[seg], F.mul_arr(neg_d, c))
        return Poly(F, quo), Poly(F, r[:dd])

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def divides(self, other: Poly) -> bool:
        return (other % self).is_zero()

    def __call__(self, a: int) -> int:
        """Horner evaluation at a GF(q) label."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def gcd(a: Poly, b: Poly) -> Poly:
    a._same(b)
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def lcm(polys: Iterable[Poly]) -> Poly:
    polys = list(polys)
    if not polys:
        raise ValueError("lcm of an empty list")
    out = polys[0].monic()
    for f in polys[1:]:
        if not f:
            raise ZeroDivisionError("lcm with the zero polynomial")
        out = (out * f) // gcd(out, f)
        out = out.monic()
    return out


def product(polys: Iterable[Poly], F: FieldCtx) -> Poly:
    """Balanced product tree, which keeps the big multiplications few."""
    items = list(polys)
    if not items:
        return Poly.one(F)
    while len(items) > 1:
        nxt = [items[i] * items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def reciprocal(f: Poly) -> Poly:
    """x^deg f(1/x)."""
    if not f:
        raise ValueError("reciprocal of the zero polynomial")
    return Poly(f.field, tuple(reversed(f.coeffs)))


def is_self_reciprocal(f: Poly) -> bool:
    if not f:
        raise ValueError("zero polynomial")
    r = reciprocal(f)
    if r.degree != f.degree:
        return False
    return r.monic() == f.monic()


def eval_in_extension(f: Poly, emb: SubfieldEmbedding, a: int) -> int:
    """Evaluate f at an element of GF(q^m), coefficients mapped through emb."""
    if f.field != emb.small:
        raise ContextMismatch("polynomial field differs from the embedded subfield")
    big = emb.big
    acc = 0
    for c in reversed(f.coeffs):
        acc = big.add(big.mul(acc, a), emb.to_big[c])
    return acc


def roots_product(exps: Sequence[int], big: FieldCtx) -> list[int]:
    """Coefficients in GF(q^m) of prod (x - alpha^j), lowest degree first."""
    coeffs = [1]
    for j in exps:
        r = big.neg(big.alpha_pow(j))
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = big.add(nxt[i + 1], c)
            nxt[i] = big.add(nxt[i], big.mul(c, r))
        coeffs = nxt
    return coeffs


def to_subfield(coeffs: Sequence[int], emb: SubfieldEmbedding) -> Poly:
    """Map GF(q^m) coefficients that lie in GF(q) to a Poly over GF(q)."""
    try:
        return Poly(emb.small, tuple(emb.label(c) for c in coeffs))
    except SubfieldError as exc:
        raise SubfieldError(f"coefficient outside GF({emb.q}): {exc}") from None


@functools.lru_cache(maxsize=1 << 16)
def _minimal_poly_cached(q: int, m: int, leader: int) -> Poly:
    params = CosetParams(q, m)
    big, emb = extension(q, m)
    return to_subfield(roots_product(sorted(orbit(params, leader)), big), emb)


def minimal_poly(params: CosetParams, i: int, big: FieldCtx | None = None,
                 emb: SubfieldEmbedding | None = None) -> Poly:
    """Minimal polynomial of alpha^i over GF(q); alpha is the designated primitive element."""
    if not 0 <= i < params.n:
        raise ValueError(f"i={i} must lie in [0, {params.n})")
    leader = min(orbit(params, i))
    if big is None and emb is None:
        return _minimal_poly_cached(params.q, params.m, leader)
    if big is None or emb is None:
        raise ValueError("pass both the field and the embedding, or neither")
    if emb.big != big or emb.q != params.q or big.e != emb.m * (big.e // emb.m) or emb.m != params.m:
        raise ContextMismatch("field/embedding do not match the coset parameters")
    return to_subfield(roots_product(sorted(orbit(params, leader)), big), emb)


def small_field(q: int) -> FieldCtx:
    return gf(q)
