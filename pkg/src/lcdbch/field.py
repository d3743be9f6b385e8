"""Finite fields GF(p^e) in a polynomial basis over GF(p).

An element is stored as a packed integer: the digit vector (c_0, ..., c_{e-1})
of c_0 + c_1 x + ... + c_{e-1} x^{e-1} read as a base-p number.  With that
packing the prime field is just {0, ..., p-1} and GF(2^e) is plain bit
vectors.  Fields of order at most TABLE_LIMIT also carry exp/log tables and
support vectorized numpy arithmetic.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field

import numpy as np

from .cosets import is_prime, prime_power

FIELD_CEILING = 1 << 32
TABLE_LIMIT = 1 << 20
SQUARE_TABLE_LIMIT = 256


class ContextMismatch(TypeError):
    pass


class SubfieldError(ArithmeticError):
    """A value that should lie in the subfield does not: an internal bug."""


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# -- polynomials over GF(p) as digit lists, low degree first -----------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, f, p)


def _ppowmod(a: list[int], k: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while k:
        if k & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        k >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % p
    return _trim(out)


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic f of degree e >= 1 over GF(p)."""
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    if _psub(_ppowmod(x, p**e, f, p), x, p):
        return False
    for r in factorize(e):
        h = _psub(_ppowmod(x, p ** (e // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _digits(v: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _pack(d, p: int) -> int:
    v = 0
    for c in reversed(list(d)):
        v = v * p + c
    return v


# -- field contexts ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """GF(p^e) = GF(p)[x]/(modulus) with a designated primitive element alpha."""

    p: int
    e: int
    modulus: tuple[int, ...]  # low degree first, monic, length e+1
    alpha: int
    order: int = field(init=False)
    _exp: np.ndarray | None = field(init=False, repr=False, default=None)
    _log: np.ndarray | None = field(init=False, repr=False, default=None)
    _mod_bits: int = field(init=False, repr=False, default=0)
    _sq: tuple | None = field(init=False, repr=False, default=None)  # (mul, sub) tables for small extensions

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.e < 1 or self.p**self.e > FIELD_CEILING:
            raise ValueError(f"GF({self.p}^{self.e}) exceeds the size ceiling 2^32")
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not is_irreducible(list(self.modulus), self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over GF({self.p})")
        object.__setattr__(self, "order", self.p**self.e - 1)
        object.__setattr__(self, "_mod_bits", _pack(self.modulus, self.p))
        if not self._is_primitive(self.alpha):
            raise ValueError(f"alpha={self.alpha} is not primitive")
        if self.size <= TABLE_LIMIT:
            self._build_tables()

    @property
    def size(self) -> int:
        return self.p**self.e

    @property
    def key(self) -> tuple:
        return (self.p, self.e, self.modulus, self.alpha)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FieldCtx(GF({self.p}^{self.e}), modulus={list(self.modulus)}, alpha={self.alpha})"

    # scalar arithmetic on packed ints

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % p
        out, scale = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.e == 1:
            return (-a) % p
        out, scale = 0, 1
        while a:
            a, da = divmod(a, p)
            out += ((-da) % p) * scale
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_poly(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        if e == 1:
            return a * b % p
        if p == 2:
            out = 0
            while b:
                if b & 1:
                    out ^= a
                b >>= 1
                a <<= 1
                if a >> e & 1:
                    a ^= self._mod_bits
            return out
        return _pack(
            _pmulmod(_digits(a, p, e), _digits(b, p, e), list(self.modulus), p) + [0] * e, p
        ) if a and b else 0

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return int(self._exp[(int(self._log[a]) + int(self._log[b])) % self.order])
        return self._mul_poly(a, b)

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if k == 0 else 0
        if self._log is not None:
            return int(self._exp[int(self._log[a]) * k % self.order])
        k %= self.order
        result = 1
        while k:
            if k & 1:
                result = self._mul_poly(result, a)
            a = self._mul_poly(a, a)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(%d^%d)" % (self.p, self.e))
        return self.pow(a, self.order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def alpha_pow(self, k: int) -> int:
        if self._exp is not None:
            return int(self._exp[k % self.order])
        return self.pow(self.alpha, k)

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of 0")
        if self._log is None:
            raise ValueError("log tables not available for this field size")
        return int(self._log[a])

    def elem(self, v: int) -> FieldElem:
        return FieldElem(self, v)

    def digits(self, a: int) -> list[int]:
        return _digits(a, self.p, self.e)

    def _is_primitive(self, a: int) -> bool:
        if not 0 < a < self.size:
            return False
        if self.pow(a, self.order) != 1:
            return False
        return all(self.pow(a, self.order // r) != 1 for r in factorize(self.order))

    def _build_tables(self):
        N = self.order
        exp = np.zeros(N + 1, dtype=np.int64)
        log = np.zeros(self.size, dtype=np.int64)
        x = 1
        for i in range(N):
            exp[i] = x
            log[x] = i
            x = self._mul_poly(x, self.alpha)
        exp[N] = 1
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        if self.e > 1 and self.size <= SQUARE_TABLE_LIMIT:
            idx = np.arange(self.size)
            a, b = idx[:, None], idx[None, :]
            nz = (a != 0) & (b != 0)
            mul = np.where(nz, exp[(log[a] + log[b]) % N], 0)
            digits = [(idx // self.p**i) % self.p for i in range(self.e)]
            sub = sum(((da[:, None] - db[None, :]) % self.p) * self.p**i for i, (da, db) in enumerate(zip(digits, digits)))
            object.__setattr__(self, "_sq", (mul, sub))

    # vectorized arithmetic (table-backed fields only)

    def add_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.p
        if p == 2:
            return np.bitwise_xor(a, b)
        if self.e == 1:
            return (a + b) % p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.e):
            out += ((a // scale + b // scale) % p) * scale
            scale *= p
        return out

    def neg_arr(self, a: np.ndarray) -> np.ndarray:
        p = self.p
        if p == 2:
            return a
        if self.e == 1:
            return (-a) % p
        out = np.zeros_like(a)
        scale = 1
        for _ in range(self.e):
            out += ((-(a // scale)) % p) * scale
            scale *= p
        return out

    def mul_arr(self, a: np.ndarray, b) -> np.ndarray:
        if self._log is None:
            raise ValueError("vectorized multiply needs log tables")
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return a * b % self.p
        if self._sq is not None:
            return self._sq[0][a, b]
        s = (self._log[a] + self._log[b]) % self.order
        return np.where((a == 0) | (b == 0), 0, self._exp[s])

    def fold_planes(self, conv: list[np.ndarray]) -> np.ndarray:
        """Pack sum_s conv[s] x^s into field elements.

        conv[s] holds integer coefficients of x^s (not yet reduced mod p), for
        s up to 2e-2; each x^s is reduced through the modulus digit by digit.
        """
        p, e = self.p, self.e
        red = [self.digits(self.pow(p, s)) for s in range(len(conv))]
        out = np.zeros(conv[0].shape, dtype=np.int64)
        for d in range(e):
            acc = np.zeros_like(out)
            for s, plane in enumerate(conv):
                if red[s][d]:
                    acc += plane * red[s][d]
            out += (acc % p) * p**d
        return out

    def sub_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a - b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._sq is not None:
            return self._sq[1][a, b]
        return self.add_arr(a, self.neg_arr(b))

    def submul_arr(self, a: np.ndarray, c: np.ndarray, b: np.ndarray) -> np.ndarray:
        """a - c * b elementwise, fused where the field allows it."""
        if self.e == 1:
            return (a - c * b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, self.mul_arr(c, b))
        if self._sq is not None:
            return self._sq[1][a, self._sq[0][c, b]]
        return self.sub_arr(a, self.mul_arr(c, b))

    # serialization

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "modulus": list(self.modulus),
            "alpha": _digits(self.alpha, self.p, self.e),
        }

    @classmethod
    def from_json(cls, data: dict) -> FieldCtx:
        return cls(
            int(data["p"]),
            int(data["e"]),
            tuple(int(c) for c in data["modulus"]),
            _pack(data["alpha"], int(data["p"])),
        )


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    value: int

    def _check(self, other) -> FieldElem:
        if isinstance(other, int):
            return FieldElem(self.ctx, other % self.ctx.p if self.ctx.e == 1 else other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextMismatch("elements belong to different fields")
        return other

    def __add__(self, other):
        o = self._check(other)
        return FieldElem(self.ctx, self.ctx.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        return FieldElem(self.ctx, self.ctx.sub(self.value, o.value))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, other):
        o = self._check(other)
        return FieldElem(self.ctx, self.ctx.mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._check(other)
        return FieldElem(self.ctx, self.ctx.div(self.value, o.value))

    def __pow__(self, k: int):
        return FieldElem(self.ctx, self.ctx.pow(self.value, k))

    def inv(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def __bool__(self):
        return self.value != 0

    @property
    def coeffs(self) -> list[int]:
        return self.ctx.digits(self.value)


@functools.lru_cache(maxsize=128)
def make_field(p: int, e: int, seed: int | None = None) -> FieldCtx:
    """Construct GF(p^e).

    Without a seed the result is canonical: the smallest monic primitive
    polynomial in the packed ordering, with alpha = x.  With a seed the modulus
    is drawn at random among irreducibles and alpha at random among
    primitive elements.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if e < 1 or p**e > FIELD_CEILING:
        raise ValueError(f"GF({p}^{e}) exceeds the size ceiling 2^32")
    order = p**e - 1
    primes = list(factorize(order)) if order > 1 else []

    def primitive(mod, a):
        probe = _Probe(p, e, mod)
        if probe.pow(a, order) != 1:
            return False
        return all(probe.pow(a, order // r) != 1 for r in primes)

    if seed is None:
        for low in range(1, p**e):
            mod = tuple(_digits(low, p, e)) + (1,)
            if not is_irreducible(list(mod), p):
                continue
            a = p if e > 1 else (-mod[0]) % p
            if primitive(mod, a):
                return FieldCtx(p, e, mod, a)
        raise AssertionError("no primitive polynomial found")
    rng = random.Random(seed)
    while True:
        mod = tuple(rng.randrange(p) for _ in range(e)) + (1,)
        if is_irreducible(list(mod), p):
            break
    while True:
        a = rng.randrange(1, p**e)
        if primitive(mod, a):
            return FieldCtx(p, e, mod, a)


class _Probe:
    """Table-free arithmetic used while a modulus is still being chosen."""

    def __init__(self, p, e, mod):
        self.p, self.e, self.mod = p, e, list(mod)

    def pow(self, a: int, k: int) -> int:
        p, e = self.p, self.e
        if e == 1:
            return pow(a, k, p)
        return _pack(_ppowmod(_digits(a, p, e), k, self.mod, p), p)


@functools.lru_cache(maxsize=128)
def gf(q: int) -> FieldCtx:
    """Canonical standalone GF(q)."""
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"q={q} is not a prime power")
    return make_field(*pk)


@dataclass(frozen=True, eq=False)
class SubfieldEmbedding:
    """GF(q) inside GF(q^m), with labels taken from the standalone canonical GF(q)."""

    big: FieldCtx
    small: FieldCtx
    q: int
    m: int
    beta0: int
    to_big: tuple[int, ...]  # label -> element of big
    _to_label: dict = field(repr=False)

    def label(self, a: int) -> int:
        try:
            return self._to_label[a]
        except KeyError:
            raise SubfieldError(f"{a} is not in the GF({self.q}) subfield") from None

    def contains(self, a: int) -> bool:
        return a in self._to_label

    def elements(self) -> list[int]:
        return list(self.to_big)


@functools.lru_cache(maxsize=64)
def subfield_embedding(big: FieldCtx, q: int) -> SubfieldEmbedding:
    pk = prime_power(q)
    if pk is None or pk[0] != big.p:
        raise ValueError(f"q={q} is not a power of p={big.p}")
    k = pk[1]
    if big.e % k:
        raise ValueError(f"GF({q}) is not a subfield of GF({big.p}^{big.e}): {k} does not divide {big.e}")
    small = gf(q)
    step = big.order // (q - 1)
    beta0 = big.alpha_pow(step)
    sub = [0] + [big.pow(beta0, i) for i in range(q - 1)]
    if k == 1:
        theta = None
        to_big = list(range(q))
    else:
        # a root of the small modulus inside the subfield fixes the isomorphism
        def ev(t):
            acc = 0
            for c in reversed(small.modulus):
                acc = big.add(big.mul(acc, t), c)
            return acc

        theta = next(t for t in sub[1:] if ev(t) == 0)
        to_big = []
        for lab in range(q):
            acc = 0
            for c in reversed(small.digits(lab)):
                acc = big.add(big.mul(acc, theta), c)
            to_big.append(acc)
    if sorted(to_big) != sorted(sub):
        raise SubfieldError("subfield labeling is not onto the power-map subfield")
    return SubfieldEmbedding(
        big=big,
        small=small,
        q=q,
        m=big.e // k,
        beta0=beta0,
        to_big=tuple(to_big),
        _to_label={v: i for i, v in enumerate(to_big)},
    )


def extension(q: int, m: int) -> tuple[FieldCtx, SubfieldEmbedding]:
    """GF(q^m) as a single extension of GF(p), with its GF(q) embedding."""
    p, k = prime_power(q)
    big = make_field(p, k * m)
    return big, subfield_embedding(big, q)
