from __future__ import annotations

import time

import pytest
from hypothesis import given, settings, strategies as st

from lcdbch.bchcodes import CodeSpec, Family, dimension_constructive
from lcdbch.cosets import CosetParams
from lcdbch.distance import (
    DistanceResult,
    Method,
    WitnessError,
    bch_lower,
    best_known,
    conjecture_sweep,
    exact_distance,
    is_codeword,
    krawtchouk,
    longest_run,
    macwilliams,
    rm_subspace_witness,
    search_subspaces,
    sphere_packing_cap,
    sphere_packing_result,
    witness_delta_divides,
)
from lcdbch.field import make_field


def spec(family, q, m, delta, b=None):
    return CodeSpec(Family(family), CosetParams(q, m), delta, b)


def test_bch_lower_examples():
    assert bch_lower(spec("lcd-a-even", 3, 4, 10)) >= 20
    assert bch_lower(CodeSpec.melas(CosetParams(3, 3))) == 4
    assert bch_lower(spec("lcd-b-tilde", 2, 5, 3)) == 4  # 3 does not divide 31
    assert bch_lower(spec("lcd-b-tilde", 2, 4, 3)) == 3
    # narrow (2,4,4): the cosets of 1 and 3 cover 1..4, so the bound rises to 5
    assert bch_lower(spec("narrow", 2, 4, 4)) == 5
    assert longest_run([14, 0, 1, 5], 15) == 3


def test_sphere_packing_examples():
    def k_b(q, m, d):
        return dimension_constructive(spec("lcd-b", q, m, d))

    assert sphere_packing_cap(255, k_b(2, 8, 3), 2, 3)
    assert sphere_packing_cap(2**20 - 1, k_b(2, 20, 9), 2, 9)
    assert not sphere_packing_cap(31, k_b(2, 5, 5), 2, 5)
    r = sphere_packing_result(spec("lcd-b", 2, 8, 3))
    assert r.exact == 6 and r.method is Method.SPHERE_PACKING
    assert sphere_packing_result(spec("narrow", 2, 8, 3)) is None


@pytest.mark.parametrize("args,d", [(("lcd-a-even", 7, 2, 8), 16), (("lcd-a-odd", 4, 4, 9), 17),
                                    (("lcd-b", 3, 4, 4), 8), (("lcd-b", 2, 4, 5), 10)])
def test_witness_examples(args, d):
    t = time.perf_counter()
    r = witness_delta_divides(spec(*args))
    assert time.perf_counter() - t < 1.0
    assert r.exact == d and r.method is Method.WITNESS
    assert r.witness.weight == d and is_codeword(spec(*args), r.witness)


def test_witness_preconditions():
    with pytest.raises(WitnessError):
        witness_delta_divides(spec("lcd-b", 2, 5, 3))
    with pytest.raises(WitnessError):
        witness_delta_divides(spec("narrow", 2, 5, 11))


def _alpha(F, *exps):
    return [F.alpha_pow(e) for e in exps]


def test_subspace_witness_example():
    F = make_field(2, 5)
    H = [_alpha(F, 1, 2), _alpha(F, 8, 12), _alpha(F, 12, 13), _alpha(F, 19, 23)]
    r = rm_subspace_witness(5, 2, H, modulus=(1, 0, 1, 0, 0, 1))
    assert r.exact == 6 and r.witness.weight == 6
    assert is_codeword(spec("lcd-b", 2, 5, 3), r.witness)
    assert sorted(i for i, v in enumerate(r.witness.coeffs) if v) == [1, 2, 8, 12, 18, 19]


def test_subspace_witness_errors():
    F = make_field(2, 5)
    dep = [_alpha(F, 1, 1), _alpha(F, 8, 12), _alpha(F, 12, 13), _alpha(F, 19, 23)]
    with pytest.raises(WitnessError, match="H1 spans"):
        rm_subspace_witness(5, 2, dep)
    bad = [_alpha(F, 1, 2), _alpha(F, 8, 12), _alpha(F, 12, 13), _alpha(F, 19, 24)]
    with pytest.raises(WitnessError, match="inverse condition"):
        rm_subspace_witness(5, 2, bad)
    with pytest.raises(WitnessError):
        rm_subspace_witness(5, 3, bad)
    with pytest.raises(WitnessError):
        rm_subspace_witness(5, 2, bad[:3])


def test_subspace_search():
    H = search_subspaces(5)
    assert H is not None
    r = rm_subspace_witness(5, 2, [h[1:] for h in H])
    assert r.exact == 6
    with pytest.raises(WitnessError):
        search_subspaces(8)


@pytest.mark.parametrize("args,d", [(("narrow", 2, 4, 5), 5), (("lcd-a-odd", 2, 4, 3), 5), (("lcd-b", 2, 5, 3), 6),
                                    (("narrow", 2, 5, 9), 11), (("lcd-a-even", 5, 2, 6), 12),
                                    (("lcd-b", 3, 3, 4), 8), (("generic", 2, 6, 5, 32), 9)])
def test_exact_distance_examples(args, d):
    r = exact_distance(spec(*args))
    assert r.exact == d
    assert r.method in (Method.EXHAUSTIVE_MESSAGES, Method.EXHAUSTIVE_DUAL, Method.LOW_WEIGHT_SEARCH)


def test_budget_exceeded_is_bounds_only():
    r = exact_distance(spec("lcd-b", 2, 8, 5), message_budget=1 << 10, support_budget=1 << 10)
    assert r.exact is None and r.lower >= 10 and r.notes


def test_macwilliams_hamming():
    # dual of the [7,4] Hamming code is the simplex code: weights 0 and 4
    B = [1, 0, 0, 0, 7, 0, 0, 0]
    assert macwilliams(B, 7, 2) == [1, 0, 0, 7, 7, 0, 0, 1]
    assert krawtchouk(7, 2, 0, 3) == 1


def _search_specs():
    out = []
    for q, m in [(2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (5, 2), (2, 6)]:
        P = CosetParams(q, m)
        half = (P.n + 1) // 2
        fam_a = Family.LCD_A_ODD_N if q % 2 == 0 else Family.LCD_A_EVEN_N
        for d in range(2, half):
            out += [CodeSpec(fam_a, P, d), CodeSpec(Family.LCD_B, P, d), CodeSpec(Family.NARROW, P, d)]
    return out


@settings(max_examples=40)
@given(st.sampled_from(_search_specs()))
def test_exact_at_least_bch_and_agrees_with_witness(s):
    r = exact_distance(s)
    if r.exact is None:
        return
    assert r.exact >= bch_lower(s)
    try:
        w = witness_delta_divides(s)
    except WitnessError:
        return
    assert w.upper >= r.exact
    if w.exact is not None:
        assert w.exact == r.exact


def test_best_known_routes():
    assert best_known(spec("lcd-a-odd", 4, 4, 9)).method is Method.WITNESS
    assert best_known(spec("lcd-b", 2, 9, 3)).method is Method.SPHERE_PACKING
    r = best_known(spec("narrow", 2, 5, 9), search=False)
    assert r.exact is None and r.lower == 11


def test_distance_result_invariants():
    with pytest.raises(AssertionError):
        DistanceResult(5, 4, 4)
    assert DistanceResult(3).to_json() == {"method": "bch", "lower": 3}


def test_conjecture_sweep_reports(capsys):
    rows = conjecture_sweep(max_n=80, message_budget=1 << 16, support_budget=1 << 16)
    assert rows and {r["status"] for r in rows} <= {"holds", "fails", "open"}
    for r in rows:
        print(r)


@pytest.mark.parametrize("q,m", [(2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (5, 2), (8, 2)])
def test_low_weight_search_matches_enumeration(q, m):
    from lcdbch.bchcodes import generator_poly
    from lcdbch.distance import _low_weight

    P = CosetParams(q, m)
    fam_a = Family.LCD_A_ODD_N if q % 2 == 0 else Family.LCD_A_EVEN_N
    seen = 0
    for d in range(2, (P.n + 1) // 2):
        for s in (CodeSpec(fam_a, P, d), CodeSpec(Family.LCD_B, P, d), CodeSpec(Family.NARROW, P, d)):
            g = generator_poly(s)
            k = s.n - g.degree
            if k == 0 or min(q**k, q ** (s.n - k)) > 1 << 16:
                continue
            w, c = _low_weight(g.field, g, s.n, 1, 1 << 18)
            if w is None:
                continue
            seen += 1
            assert w == exact_distance(s, support_budget=0).exact
            assert c.weight == w and is_codeword(s, c)
    assert seen
