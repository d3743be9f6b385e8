from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from lcdbch.bchcodes import CodeSpec, Family, dimension_constructive
from lcdbch.bruteforce import run_count as brute_run_count
from lcdbch.cosets import CosetParams, run_count
from lcdbch.dimensions import (
    THEOREMS,
    Kind,
    dim_designed_qt,
    dim_familyA_onesided,
    dim_lcd_A,
    dim_lcd_B_mann,
    dim_lcd_B_small_delta,
    dim_melas_evenlike,
    dim_narrow,
    dim_small_delta_theorems,
    master_tasks,
    narrow_degree_mann,
    predict,
    run_tasks,
    split_delta,
    sweep_pairs,
    verify_theorem,
)


def exact(pred):
    assert pred.kind is Kind.EXACT, pred
    return pred.k


@pytest.mark.parametrize("q,m,u,k", [(2, 5, 1, 11), (2, 7, 1, 71), (3, 4, 2, 34), (3, 4, 1, 56), (2, 4, 1, 7)])
def test_narrow_examples(q, m, u, k):
    p = dim_narrow(q, m, u)
    assert exact(p) == k == dimension_constructive(p.spec)


def test_narrow_distance_when_stated():
    assert dim_narrow(2, 4, 1).distance == 5
    assert dim_narrow(3, 4, 2).distance is None
    assert not dim_narrow(2, 3, 1).covered
    assert not dim_narrow(3, 4, 3).covered


@pytest.mark.parametrize("q,m,u,k", [(3, 5, 1, 152), (4, 5, 1, 863), (2, 6, 1, 39), (4, 4, 3, 161)])
def test_onesided_examples(q, m, u, k):
    for side in ("plus", "minus"):
        p = dim_familyA_onesided(q, m, u, side)
        assert exact(p) == k == dimension_constructive(p.spec)
    with pytest.raises(ValueError):
        dim_familyA_onesided(q, m, u, "both")


@pytest.mark.parametrize("q,m,u,k,d", [(3, 7, 1, 1457, None), (5, 2, 1, 9, None), (4, 4, 1, 195, 17),
                                       (2, 7, 1, 29, None), (3, 7, 2, 841, None)])
def test_lcd_a_examples(q, m, u, k, d):
    p = dim_lcd_A(q, m, u)
    assert exact(p) == k == dimension_constructive(p.spec)
    assert p.distance == d
    assert p.spec.family.is_lcd


def test_lcd_a_gates():
    assert not dim_lcd_A(5, 2, 3).covered  # u <= (q-1)/2 at m = 2
    assert not dim_lcd_A(3, 3, 1).covered
    assert dim_lcd_A(4, 2, 2).covered and not dim_lcd_A(4, 2, 3).covered


@pytest.mark.parametrize("q,m,t,k", [(3, 5, 2, 221), (2, 7, 4, 29), (2, 6, 2, 51), (3, 5, 1, 241), (3, 5, 3, 161),
                                     (2, 7, 2, 113), (2, 7, 3, 85), (2, 6, 3, 27), (3, 4, 2, 63)])
def test_designed_qt_examples(q, m, t, k):
    p = dim_designed_qt(q, m, t)
    assert exact(p) == k == dimension_constructive(p.spec)
    assert p.spec.designed_distance == q**t - 1


def test_designed_qt_gates():
    assert not dim_designed_qt(2, 3, 1).covered
    assert not dim_designed_qt(3, 5, 4).covered


@pytest.mark.parametrize("q,m,delta,k,split", [(2, 5, 3, 20, (1, 0)), (3, 3, 4, 13, (1, 0)), (2, 4, 2, 6, (0, 1)),
                                               (3, 4, 5, 55, (1, 1))])
def test_lcd_b_small_examples(q, m, delta, k, split):
    p = dim_lcd_B_small_delta(q, m, delta)
    assert exact(p) == k == dimension_constructive(p.spec)
    assert split_delta(q, delta) == split
    assert p.distance_lower == 2 * delta


def test_mann_example():
    p = dim_lcd_B_mann(2, 4, 2)
    assert p.kind is Kind.BOUNDS
    assert p.extra["deg_narrow"] == narrow_degree_mann(2, 4, 2) == 8
    assert p.extra["N_prime"] == run_count(2, 2, 2)
    lo, hi = p.bounds
    assert lo <= dimension_constructive(p.spec) <= hi
    assert not dim_lcd_B_mann(2, 4, 1).covered


@pytest.mark.parametrize("q,m,lam", [(2, 4, 2), (2, 5, 3), (2, 6, 4), (3, 3, 2), (2, 8, 5), (3, 4, 3), (4, 3, 2)])
def test_narrow_degree_mann_matches_constructive(q, m, lam):
    spec = CodeSpec(Family.NARROW, CosetParams(q, m), q**lam)
    assert narrow_degree_mann(q, m, lam) == spec.n - dimension_constructive(spec)


def test_small_delta_theorems():
    p = dim_melas_evenlike(3, 3)
    assert exact(p) == 19 and p.distance == 4
    assert not dim_melas_evenlike(2, 4).covered
    p = dim_small_delta_theorems(2, 6, 3)
    assert exact(p) == 50 and p.distance == 6
    p = dim_small_delta_theorems(4, 4, 3)
    assert exact(p) == 254 - 16
    assert not dim_small_delta_theorems(3, 5, 3).covered  # 3^5 = 0 mod 3
    p = dim_small_delta_theorems(3, 4, 4)
    assert exact(p) == 63 and p.distance == 8
    assert dim_small_delta_theorems(3, 5, 4).distance is None
    assert not dim_small_delta_theorems(5, 3, 5).covered


def test_predict_dispatch():
    P = CosetParams
    assert not predict(CodeSpec(Family.NARROW, P(2, 3), 5)).covered
    assert predict(CodeSpec(Family.LCD_B, P(2, 4), 4)).source == "lcd-b-small"
    p = predict(CodeSpec(Family.LCD_B, P(2, 9), 64))
    assert p.kind is Kind.BOUNDS and p.source == "lcd-b-mann"
    p = predict(CodeSpec(Family.LCD_A_EVEN_N, P(3, 4), 10))
    assert p.covered and p.agrees_with(dimension_constructive(p.spec))
    p = predict(CodeSpec(Family.GENERIC, P(3, 5), 28, 122))
    assert p.source == "one-sided" and p.k == 152
    assert predict(CodeSpec(Family.GENERIC, P(2, 5), 9, 1)).source == "narrow"
    p = predict(CodeSpec(Family.LCD_B_TILDE, P(2, 5), 3))
    assert p.k == 21 == dimension_constructive(p.spec)
    p = predict(CodeSpec.melas(P(3, 3)))
    assert p.k == 19 and p.spec.family is Family.MELAS_EVENLIKE
    p = predict(CodeSpec(Family.GENERIC, P(2, 5), 4, 7))
    assert not p.covered and p.to_json()["kind"] == "not-covered"


def _lcd_specs():
    out = []
    for q, m in sweep_pairs(400):
        P = CosetParams(q, m)
        half = (P.n + 1) // 2
        fam_a = Family.LCD_A_ODD_N if q % 2 == 0 else Family.LCD_A_EVEN_N
        for d in range(2, half):
            out += [CodeSpec(fam_a, P, d), CodeSpec(Family.LCD_B, P, d), CodeSpec(Family.LCD_B_TILDE, P, d)]
    return out


@given(st.sampled_from(_lcd_specs()))
def test_every_covered_prediction_agrees(spec):
    p = predict(spec)
    if p.covered:
        assert p.agrees_with(dimension_constructive(spec))
        assert p.spec == spec


@pytest.mark.parametrize("name", sorted(THEOREMS))
def test_theorem_sweep(name):
    tasks = [t for t in master_tasks(3**7, range(13, 17), [name])]
    res = run_tasks(tasks)[name]
    assert res.checked > 0
    assert res.mismatches == []


def test_sweep_helpers():
    assert sweep_pairs(16) == [(2, 2), (2, 3), (2, 4), (3, 2), (4, 2)]
    s = verify_theorem("narrow", 6, 3)
    assert s.checked == 0
    s = verify_theorem("lcd-a", 5, 2, keep_rows=True)
    assert s.checked == len(s.rows) == 2
    tasks = master_tasks(81, (), ["lcd-b-fixed-delta"])
    assert run_tasks(tasks, workers=2)["lcd-b-fixed-delta"].checked == run_tasks(tasks)["lcd-b-fixed-delta"].checked


@pytest.mark.parametrize("q,r,s", [(2, 2, 6), (3, 2, 5), (2, 3, 8), (4, 2, 4), (5, 3, 4)])
def test_run_count_vs_enumeration(q, r, s):
    assert run_count(q, r, s) == brute_run_count(q, r, s)
