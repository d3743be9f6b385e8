from __future__ import annotations

import pytest
import sympy
from hypothesis import given, strategies as st

from lcdbch.field import (
    ContextMismatch,
    FieldCtx,
    extension,
    factorize,
    gf,
    is_irreducible,
    make_field,
    subfield_embedding,
)

FIELDS = [(2, 1), (2, 4), (2, 5), (2, 8), (3, 1), (3, 4), (3, 5), (5, 2), (7, 3), (2, 12), (3, 7), (13, 2)]
X = sympy.Symbol("x")


def _sym(F: FieldCtx, a: int) -> sympy.Poly:
    return sympy.Poly(list(reversed(F.digits(a))), X, modulus=F.p)


def _unsym(F: FieldCtx, f: sympy.Poly) -> int:
    coeffs = [int(c) % F.p for c in reversed(f.all_coeffs())]
    return sum(c * F.p**i for i, c in enumerate(coeffs))


def _modulus(F: FieldCtx) -> sympy.Poly:
    return sympy.Poly(list(reversed(F.modulus)), X, modulus=F.p)


@pytest.mark.parametrize("p,e", FIELDS)
def test_modulus_irreducible_and_alpha_primitive(p, e):
    F = make_field(p, e)
    if e > 1:
        assert _modulus(F).is_irreducible
    order = p**e - 1
    assert F.pow(F.alpha, order) == 1
    for r in factorize(order):
        assert F.pow(F.alpha, order // r) != 1


def test_canonical_examples():
    F = make_field(2, 1)
    assert F.alpha == 1
    F = make_field(2, 4)
    a = F.alpha
    assert F.pow(a, 15) == 1 and F.pow(a, 5) != 1 and F.pow(a, 3) != 1
    assert make_field(2, 5).modulus == (1, 0, 1, 0, 0, 1)  # x^5 + x^2 + 1
    assert make_field(2, 8).modulus == (1, 0, 1, 1, 1, 0, 0, 0, 1)  # x^8 + x^4 + x^3 + x^2 + 1
    F = make_field(3, 5)
    assert factorize(242) == {2: 1, 11: 2}
    for a in range(1, F.size, 17):
        assert 242 % _order(F, a) == 0


def _order(F, a):
    k, x = 1, a
    while x != 1:
        x = F.mul(x, a)
        k += 1
    return k


def test_seeded_fields_are_deterministic():
    assert make_field(3, 4, seed=7) == make_field(3, 4, seed=7)
    F = make_field(2, 6, seed=11)
    assert is_irreducible(list(F.modulus), 2)


def test_rejections():
    with pytest.raises(ValueError):
        make_field(4, 2)
    with pytest.raises(ValueError):
        make_field(2, 33)
    with pytest.raises(ValueError):
        FieldCtx(2, 2, (1, 0, 1), 2)  # x^2 + 1 = (x + 1)^2
    F = gf(16)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ContextMismatch):
        _ = F.elem(3) + gf(8).elem(3)


@pytest.mark.parametrize("p,e", FIELDS)
def test_multiplication_matches_polynomial_reduction(p, e):
    F = make_field(p, e)
    M = _modulus(F)
    step = max(1, F.size // 40)
    for a in range(0, F.size, step):
        for b in range(1, F.size, step + 3):
            want = _unsym(F, (_sym(F, a) * _sym(F, b)).rem(M)) if e > 1 else a * b % p
            assert F.mul(a, b) == want
            want = _unsym(F, _sym(F, a) + _sym(F, b)) if e > 1 else (a + b) % p
            assert F.add(a, b) == want


field_and_elems = st.sampled_from(FIELDS).flatmap(
    lambda pe: st.tuples(st.just(make_field(*pe)), *[st.integers(0, pe[0] ** pe[1] - 1)] * 3))


@given(field_and_elems)
def test_field_axioms(sample):
    F, a, b, c = sample
    assert F.add(a, F.neg(a)) == 0
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(a, b) == F.mul(b, a)
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.log(a) >= 0 and F.alpha_pow(F.log(a)) == a
    assert F.pow(a, 0) == 1


@given(field_and_elems)
def test_element_wrapper_agrees(sample):
    F, a, b, _ = sample
    x, y = F.elem(a), F.elem(b)
    assert (x + y).value == F.add(a, b)
    assert (x * y).value == F.mul(a, b)
    assert (x - y).value == F.sub(a, b)
    if b:
        assert ((x / y) * y).value == a
    assert (x**5).value == F.pow(a, 5)


def test_json_round_trip():
    F = make_field(3, 4)
    data = F.to_json()
    assert set(data) == {"p", "e", "modulus", "alpha"}
    assert FieldCtx.from_json(data) == F


def test_subfield_examples():
    big, emb = extension(4, 2)
    assert big.size == 16
    assert emb.beta0 == big.alpha_pow(5)
    assert set(emb.elements()) == {0, 1, big.alpha_pow(5), big.alpha_pow(10)}
    big = make_field(3, 4)
    emb = subfield_embedding(big, 3)
    assert emb.beta0 == big.alpha_pow(40)
    assert [emb.label(v) for v in emb.elements()] == [0, 1, 2]
    big = make_field(5, 1)
    emb = subfield_embedding(big, 5)
    assert list(emb.to_big) == list(range(5))
    with pytest.raises(ValueError):
        subfield_embedding(make_field(2, 5), 4)


def _frob_cases():
    out = []
    for q in (2, 3, 4, 5, 7, 8, 9, 16):
        for m in range(1, 17):
            if q**m <= 1 << 16:
                out.append((q, m))
    return out


@pytest.mark.parametrize("q,m", _frob_cases())
def test_frobenius_fixes_exactly_the_subfield(q, m):
    big, emb = extension(q, m)
    fixed = {a for a in range(big.size) if big.pow(a, q) == a}
    assert fixed == set(emb.elements())
    small = emb.small
    for x in range(q):
        for y in range(q):
            bx, by = emb.to_big[x], emb.to_big[y]
            assert emb.label(big.add(bx, by)) == small.add(x, y)
            assert emb.label(big.mul(bx, by)) == small.mul(x, y)
