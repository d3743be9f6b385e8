from __future__ import annotations

import csv
import io
import json

import pytest

from lcdbch import dimensions
from lcdbch.cli import SweepConfig, UsageError, main, parse_range, resolve_spec
from lcdbch.dimensions import DimPrediction, Kind


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_range():
    assert parse_range("") == [] and parse_range(None) == []
    assert parse_range("5") == [5]
    assert parse_range("3:6") == [3, 4, 5, 6]
    assert parse_range("1,4:5,9") == [1, 4, 5, 9]
    for bad in ("a", "3:x", "5:2:1"):
        with pytest.raises(UsageError):
            parse_range(bad)


def test_cosets_flags_nonleaders(capsys):
    code, out, _ = run(capsys, "cosets", "--q", "3", "--m", "5", "--range", "1:54", "--format", "csv")
    rows = csv_rows(out)
    assert code == 0 and len(rows) == 54
    nonleaders = [int(r["j"]) for r in rows if r["is_leader"] == "0" and int(r["j"]) % 3]
    assert nonleaders == [28, 29, 37, 46]
    flagged = [int(r["j"]) for r in rows if r["exception"] == "1"]
    assert set(nonleaders) <= set(flagged)


def test_cosets_half_size(capsys):
    code, out, _ = run(capsys, "cosets", "--q", "2", "--m", "4", "--range", "5:5", "--format", "json")
    assert code == 0
    # 5 = q^mbar + 1 lies past the closed-form range for q = 2, so the flag is blank
    assert json.loads(out) == [{"j": 5, "leader": 5, "size": 2, "is_leader": 1, "exception": ""}]


def test_cosets_empty_and_bad(capsys):
    code, out, _ = run(capsys, "cosets", "--q", "2", "--m", "4", "--range", "", "--format", "csv")
    assert code == 0 and out == "j,leader,size,is_leader,exception\r\n"
    code, _, err = run(capsys, "cosets", "--q", "2", "--m", "4", "--range", "15")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "cosets", "--q", "2", "--m", "4", "--range", "1::2")
    assert code == 2


def _construct(capsys, *args):
    code, out, err = run(capsys, "construct", *args, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_construct_lcd_a(capsys):
    d = _construct(capsys, "--family", "lcd-a", "--q", "5", "--m", "2", "--u", "1", "--distance", "auto")
    assert (d["n"], d["k"], d["distance"]["exact"]) == (24, 9, 12)
    assert d["lcd"] and d["family"] == "lcd-a-even"
    assert d["prediction"]["k"] == 9


def test_construct_narrow(capsys):
    d = _construct(capsys, "--family", "narrow", "--q", "2", "--m", "5", "--u", "1")
    assert (d["n"], d["k"]) == (31, 11)
    assert d["designed_distance"] == 9 and d["distance"]["lower"] >= 9
    d = _construct(capsys, "--family", "narrow", "--q", "2", "--m", "5", "--u", "1", "--distance", "auto")
    assert d["distance"]["exact"] == 11


def test_construct_lcd_b_text(capsys):
    code, out, _ = run(capsys, "construct", "--family", "lcd-b", "--q", "3", "--m", "3", "--delta", "4",
                       "--distance", "auto")
    assert code == 0 and "[26, 13, 8]" in out


def test_construct_check_and_generator(capsys):
    d = _construct(capsys, "--family", "lcd-b", "--q", "2", "--m", "5", "--delta", "3", "--check", "--generator")
    assert d["checks"]["prediction"] and d["checks"]["divides"]
    assert d["checks"]["lcd_matches_reciprocity"]
    assert "generator" in d


def test_construct_gate_error(capsys):
    code, _, err = run(capsys, "construct", "--family", "lcd-a-even", "--q", "2", "--m", "4", "--delta", "3")
    assert code == 2 and "q odd" in err
    code, _, err = run(capsys, "construct", "--family", "narrow", "--q", "2", "--m", "4", "--delta", "3", "--u", "1")
    assert code == 2


def test_construct_csv(capsys):
    code, out, _ = run(capsys, "construct", "--family", "melas", "--q", "3", "--m", "3", "--format", "csv")
    assert code == 0
    assert out.startswith("family,q,m,")
    assert "\r\n" in out
    row = csv_rows(out)[0]
    assert (row["n"], row["k"]) == ("26", "19")


def test_distance_command(capsys):
    code, out, _ = run(capsys, "distance", "--family", "lcd-a-odd", "--q", "4", "--m", "4", "--u", "1",
                       "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["distance"]["exact"] == 17 and d["distance"]["method"] == "witness"
    code, out, _ = run(capsys, "distance", "--family", "narrow", "--q", "2", "--m", "5", "--u", "1", "--no-search",
                       "--format", "json")
    assert "exact" not in json.loads(out)["distance"]


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "lcd-b-small", "--q", "2", "--m", "5:13", "--format", "csv")
    rows = csv_rows(out)
    assert code == 0 and rows[0]["mismatches"] == "0" and int(rows[0]["checked"]) > 0


def test_verify_empty(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "narrow", "--q", "2", "--m", "", "--format", "csv")
    rows = csv_rows(out)
    assert code == 0 and rows == [{"theorem": "narrow", "checked": "0", "mismatches": "0", "skipped": "0"}]


def test_verify_rejects(capsys):
    code, _, err = run(capsys, "verify", "--theorem", "nope")
    assert code == 2
    code, _, err = run(capsys, "verify", "--q", "6", "--m", "2")
    assert code == 2 and "prime power" in err


def test_verify_mismatch_exits_nonzero(capsys, monkeypatch):
    from lcdbch.bchcodes import CodeSpec, Family
    from lcdbch.cosets import CosetParams

    def wrong(q, m):
        yield DimPrediction(Kind.EXACT, "wrong", "", k=0, spec=CodeSpec(Family.NARROW, CosetParams(q, m), 3))

    monkeypatch.setitem(dimensions.THEOREMS, "wrong", wrong)
    code, out, err = run(capsys, "verify", "--theorem", "wrong", "--q", "2", "--m", "4")
    assert code == 1 and "mismatch" in err


def test_golden_table(capsys):
    code, out, _ = run(capsys, "table", "--check")
    rows = csv_rows(out)
    assert code == 0
    assert len(rows) == 40 and all(r["match"] == "1" for r in rows)
    pairs = {(int(r["n"]), int(r["k"])) for r in rows}
    assert (2186, 1457) in pairs and (26, 13) in pairs


def _triples(out):
    return [r["triple"] for r in csv_rows(out)]


def test_table_sweeps(capsys):
    code, out, _ = run(capsys, "table", "--family", "lcd-a", "--q", "3", "--m", "5", "--t", "1:3")
    assert code == 0
    assert [(r["n"], r["k"], r["d_lower"]) for r in csv_rows(out)] == [
        ("242", "241", "2"), ("242", "221", "8"), ("242", "161", "26")]
    code, out, _ = run(capsys, "table", "--family", "lcd-a", "--q", "2", "--m", "7", "--t", "2:4", "--distance", "auto")
    rows = csv_rows(out)
    assert [(r["n"], r["k"]) for r in rows] == [("127", "113"), ("127", "85"), ("127", "29")]
    assert rows[0]["d_exact"] == "5"
    assert int(rows[1]["d_lower"]) <= 11 and int(rows[2]["d_lower"]) <= 37


def test_table_empty_is_header_only(capsys):
    code, out, _ = run(capsys, "table", "--family", "lcd-a", "--q", "3", "--m", "", "--t", "1")
    assert code == 0
    assert out == "family,q,m,param,delta,b,n,k,d_lower,d_exact,triple,source\r\n"


def test_table_skips_gated_rows(capsys):
    code, out, err = run(capsys, "table", "--family", "lcd-b", "--q", "2", "--m", "4", "--delta", "6:9")
    assert code == 0 and "skip" in err
    assert [r["delta"] for r in csv_rows(out)] == ["6", "7"]


def test_table_output_file(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, out, _ = run(capsys, "table", "--family", "melas", "--q", "3:5", "--m", "2", "--delta", "2",
                       "--format", "json", "--output", str(path))
    assert code == 0 and out == ""
    data = json.loads(path.read_text())
    assert [d["k"] for d in data] == [3, 10, 19]  # q^m - 2 - 2m for odd q; q = 4 by hand


def test_table_needs_one_parameter(capsys):
    code, _, err = run(capsys, "table", "--family", "lcd-a", "--q", "3", "--m", "5")
    assert code == 2


def test_resolve_spec_conventions():
    s = resolve_spec("lcd-a", 3, 4, u=1)
    assert s.delta == 10 and s.designed_distance == 20
    assert resolve_spec("lcd-a", 3, 4, designed=20) == s
    s = resolve_spec("lcd-a", 2, 7, t=4)
    assert s.designed_distance == 15
    s = resolve_spec("generic", 3, 5, u=1, side="plus")
    assert s.b == 122
    with pytest.raises(UsageError):
        resolve_spec("generic", 3, 5, u=1)
    assert resolve_spec("lcd-b", 2, 8, lam=5).delta == 32
    assert resolve_spec("melas", 3, 3).delta == 2 == resolve_spec("melas", 3, 3, delta=2).delta
    with pytest.raises(UsageError):
        resolve_spec("melas", 3, 3, delta=3)


def test_threads_env(monkeypatch):
    from lcdbch.cli import build_parser, workers_from

    args = build_parser().parse_args(["verify", "--workers", "3"])
    assert workers_from(args) == 3
    monkeypatch.setenv("LCDBCH_THREADS", "2")
    assert workers_from(args) == 2
    assert SweepConfig is not None
