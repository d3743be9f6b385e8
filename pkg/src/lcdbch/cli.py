"""Command-line interface: cosets, construct, distance, verify, table."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from importlib import resources

from .bchcodes import CodeSpec, Family, GateError
from .cosets import CosetParams, NotCovered, prime_power, coset_leader, coset_size, exception_set_even_m, exception_sets_odd_m
from .dimensions import THEOREMS, master_tasks, run_tasks
from .report import DISTANCE_MODES, analyze, check_failed

FORMATS = ("text", "json", "csv")


class UsageError(ValueError):
    pass


def parse_range(text: str | None) -> list[int]:
    """'5', '1:54' (inclusive), '2,3,7' or a mix such as '2,5:7'."""
    if text is None or text == "":
        return []
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ":" in part:
                lo, hi = part.split(":")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad range {text!r}; use N, A:B or a comma list") from None
    return out


@dataclass
class SweepConfig:
    families: list[str] = field(default_factory=list)
    qs: list[int] = field(default_factory=list)
    ms: list[int] = field(default_factory=list)
    params: list[int] = field(default_factory=list)
    param_kind: str = "delta"
    distance: str = "bounds"
    fmt: str = "text"
    output: str | None = None

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")
        if self.distance not in DISTANCE_MODES:
            raise UsageError(f"distance must be one of {DISTANCE_MODES}")


def workers_from(args) -> int:
    env = os.environ.get("LCDBCH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"LCDBCH_THREADS={env!r} is not an integer") from None
    return max(1, args.workers)


# ---------------------------------------------------------------------------
# output


def emit(rows: list[dict], columns: list[str], fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.DictWriter(out, fieldnames=columns, lineterminator="\r\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow(r)
    else:
        cells = [[_cell(r.get(c)) for c in columns] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
        out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
        for row in cells:
            out.write("  ".join(v.rjust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _cell(v) -> str:
    return "" if v is None else str(v)


def _open_out(path):
    return open(path, "w", newline="") if path else None


# ---------------------------------------------------------------------------
# code selection


def resolve_family(name: str, q: int) -> Family:
    if name == "lcd-a":
        return Family.LCD_A_EVEN_N if q % 2 else Family.LCD_A_ODD_N
    try:
        return Family(name)
    except ValueError:
        choices = ", ".join(["lcd-a"] + [f.value for f in Family])
        raise UsageError(f"unknown family {name!r}; choose from {choices}") from None


def resolve_spec(family: str, q: int, m: int, *, delta=None, u=None, t=None, designed=None,
                 b=None, side=None, lam=None) -> CodeSpec:
    """Turn CLI-level parameters into a CodeSpec.

    delta is the family's own parameter; designed is the designed distance.
    For the LCD families these differ (2 delta, 2 delta - 1 or delta).
    """
    P = CosetParams(q, m)
    fam = resolve_family(family, q)
    given = [v is not None for v in (delta, u, t, designed, lam)]
    if fam is Family.MELAS_EVENLIKE:
        # --delta 2 is accepted so that table sweeps can include it
        if any(given[1:]) or delta not in (None, 2):
            raise UsageError("the melas family takes no parameter (or --delta 2)")
        return CodeSpec.melas(P)
    if sum(given) != 1:
        raise UsageError("give exactly one of --delta, --u, --t, --designed, --lam")
    odd = q % 2 == 1
    n = P.n
    if u is not None:
        if fam in (Family.NARROW, Family.LCD_A_EVEN_N, Family.LCD_B) or (fam is Family.GENERIC and odd):
            delta = u * q**P.mbar + 1
        elif fam in (Family.LCD_A_ODD_N, Family.GENERIC):
            delta = u * q**P.mbar // 2 + 1
        else:
            raise UsageError(f"--u is not defined for {fam.value}")
        if fam is Family.GENERIC:
            if side not in ("plus", "minus"):
                raise UsageError("--u with the generic family needs --side plus|minus")
            # "plus" starts just past the centre, "minus" ends just before it
            start = n // 2 + 1 if odd else (n + 1) // 2
            end = n // 2 - 1 if odd else (n + 1) // 2 - 1
            b = start if side == "plus" else end - (delta - 2)
    elif t is not None:
        if fam is Family.LCD_A_EVEN_N:
            delta = (q**t - 1) // 2
        elif fam is Family.LCD_A_ODD_N:
            delta = q**t // 2
        elif fam in (Family.NARROW, Family.GENERIC):
            delta = q**t - 1
        else:
            raise UsageError(f"--t is not defined for {fam.value}")
    elif lam is not None:
        if fam not in (Family.LCD_B, Family.LCD_B_TILDE):
            raise UsageError("--lam applies to lcd-b and lcd-b-tilde")
        delta = q**lam
    elif designed is not None:
        D = designed
        if fam in (Family.NARROW, Family.GENERIC, Family.LCD_B_TILDE):
            delta = D
        elif fam is Family.LCD_A_ODD_N:
            if D % 2 == 0:
                raise UsageError("lcd-a-odd codes have odd designed distance 2 delta - 1")
            delta = (D + 1) // 2
        else:
            if D % 2:
                raise UsageError(f"{fam.value} codes have even designed distance 2 delta")
            delta = D // 2
    return CodeSpec(fam, P, delta, b)


def _add_spec_args(p: argparse.ArgumentParser):
    p.add_argument("--family", required=True, help="narrow, generic, lcd-a, lcd-a-even, lcd-a-odd, lcd-b, lcd-b-tilde, melas")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    g = p.add_argument_group("code parameter (exactly one, except melas)")
    g.add_argument("--delta", type=int, help="the family's own delta")
    g.add_argument("--designed", type=int, help="designed distance")
    g.add_argument("--u", type=int, help="delta = u q^mbar + 1 (q odd) or u q^mbar / 2 + 1 (q even)")
    g.add_argument("--t", type=int, help="designed distance q^t - 1")
    g.add_argument("--lam", type=int, help="delta = q^lam")
    p.add_argument("--b", type=int, help="first root exponent (generic family)")
    p.add_argument("--side", choices=("plus", "minus"), help="one-sided code for --u with generic")
    p.add_argument("--format", choices=FORMATS, default="text")


def _spec_from(args) -> CodeSpec:
    return resolve_spec(args.family, args.q, args.m, delta=args.delta, u=args.u, t=args.t,
                        designed=args.designed, b=args.b, side=args.side, lam=args.lam)


# ---------------------------------------------------------------------------
# subcommands


def _exception_lookup(P: CosetParams, hi: int) -> set[int] | None:
    """Closed-form exception set covering [1, hi], when one applies."""
    step = P.q**P.mbar
    u = max(1, -(-hi // step))
    try:
        if P.m % 2:
            J1, J2 = exception_sets_odd_m(P, u)
            return set(J1) | set(J2)
        return set(exception_set_even_m(P, u))
    except (NotCovered, ValueError):
        return None


def cmd_cosets(args) -> int:
    P = CosetParams(args.q, args.m)
    js = parse_range(args.range)
    bad = [j for j in js if not 0 <= j < P.n]
    if bad:
        raise UsageError(f"exponents must lie in [0, {P.n}); got {bad[0]}")
    exc = _exception_lookup(P, max(js)) if js else None
    rows = []
    for j in js:
        ld = coset_leader(P, j)
        row = {"j": j, "leader": ld, "size": coset_size(P, j), "is_leader": int(ld == j)}
        row["exception"] = "" if exc is None else int(j in exc)
        rows.append(row)
    emit(rows, ["j", "leader", "size", "is_leader", "exception"], args.format)
    return 0


def _report_text(rep) -> str:
    d = rep.to_json()
    lines = [f"{'code':<18} {rep.spec.label()}", f"{'parameters':<18} {rep.triple}"]
    for key in ("lcd", "designed_distance", "bch_lower"):
        lines.append(f"{key:<18} {d[key]}")
    lines.append(f"{'distance':<18} {json.dumps(d['distance'])}")
    lines.append(f"{'prediction':<18} {json.dumps(d['prediction'])}")
    if "generator" in d:
        lines.append(f"{'generator':<18} {d['generator']}")
    if rep.checks:
        lines.append(f"{'checks':<18} {json.dumps(rep.checks)}")
    return "\n".join(lines) + "\n"


def _report_row(rep) -> dict:
    d = rep.to_json()
    dist = d["distance"]
    return {
        "family": d["family"], "q": d["q"], "m": d["m"], "n": d["n"], "delta": d["delta"], "b": d["b"],
        "k": d["k"], "lcd": int(d["lcd"]), "designed_distance": d["designed_distance"],
        "bch_lower": d["bch_lower"], "d_exact": dist.get("exact", ""), "d_lower": dist.get("lower", dist.get("exact")),
        "d_upper": dist.get("upper", dist.get("exact", "")), "d_method": dist["method"],
        "k_predicted": d["prediction"].get("k", ""), "source": d["prediction"]["source_theorem"],
    }


REPORT_COLUMNS = ["family", "q", "m", "n", "delta", "b", "k", "lcd", "designed_distance", "bch_lower",
                  "d_exact", "d_lower", "d_upper", "d_method", "k_predicted", "source"]


def _print_reports(reports, fmt):
    if fmt == "json":
        data = [r.to_json() for r in reports]
        json.dump(data[0] if len(data) == 1 else data, sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif fmt == "csv":
        emit([_report_row(r) for r in reports], REPORT_COLUMNS, "csv")
    else:
        for r in reports:
            sys.stdout.write(_report_text(r))


def cmd_construct(args) -> int:
    spec = _spec_from(args)
    rep = analyze(spec, distance=args.distance, generator=args.generator, check=args.check)
    _print_reports([rep], args.format)
    if args.check and check_failed(rep):
        print("check failed", file=sys.stderr)
        return 1
    return 0


def cmd_distance(args) -> int:
    spec = _spec_from(args)
    rep = analyze(spec, distance="auto" if args.search else "bounds",
                  message_budget=args.message_budget, support_budget=args.support_budget)
    _print_reports([rep], args.format)
    return 0


def cmd_verify(args) -> int:
    names = [args.theorem] if args.theorem else list(THEOREMS)
    for nm in names:
        if nm not in THEOREMS:
            raise UsageError(f"unknown theorem {nm!r}; choose from {', '.join(THEOREMS)}")
    qs, ms = parse_range(args.q), parse_range(args.m)
    if args.q is None and args.m is None:
        tasks = master_tasks(args.max_size, theorems=names)
    else:
        # explicit ranges are taken as given; a missing one is filled under --max-size
        if args.q is None:
            qs = [q for q in range(2, math.isqrt(args.max_size) + 1) if prime_power(q)]
        pairs = []
        for q in qs:
            if not prime_power(q):
                raise UsageError(f"q={q} is not a prime power")
            pairs += [(q, m) for m in ms if m >= 2] if args.m is not None else [
                (q, m) for m in range(2, args.max_size.bit_length() + 1) if q**m <= args.max_size]
        tasks = [(nm, q, m) for nm in names for q, m in pairs]
    results = run_tasks(tasks, workers_from(args))
    rows = []
    mismatches = []
    for nm in names:
        s = results.get(nm)
        checked, bad, skipped = (s.checked, len(s.mismatches), s.skipped) if s else (0, 0, 0)
        rows.append({"theorem": nm, "checked": checked, "mismatches": bad, "skipped": skipped})
        if s:
            mismatches += s.mismatches
    emit(rows, ["theorem", "checked", "mismatches", "skipped"], args.format)
    for mm in mismatches:
        print("mismatch", *mm, file=sys.stderr)
    return 1 if mismatches else 0


def load_golden() -> list[dict]:
    text = resources.files("lcdbch").joinpath("data/golden.csv").read_text()
    return list(csv.DictReader(io.StringIO(text)))


GOLDEN_COLUMNS = ["family", "q", "m", "param", "delta", "b", "n", "k", "k_expected", "d_lower", "d_exact",
                  "d_reported", "match"]


def golden_rows(distance: str = "none") -> list[dict]:
    rows = []
    for g in load_golden():
        q, m, delta = int(g["q"]), int(g["m"]), int(g["delta"])
        b = int(g["b"]) if g["family"] == "generic" else None
        spec = CodeSpec(Family(g["family"]), CosetParams(q, m), delta, b)
        rep = analyze(spec, distance=distance)
        dist = rep.distance
        rows.append({
            "family": g["family"], "q": q, "m": m, "param": g["param"], "delta": delta, "b": spec.b,
            "n": rep.n, "k": rep.k, "k_expected": int(g["k"]), "d_lower": dist.lower,
            "d_exact": "" if dist.exact is None else dist.exact, "d_reported": g["d_reported"],
            "match": int(rep.n == int(g["n"]) and rep.k == int(g["k"])),
        })
    return rows


def cmd_table(args) -> int:
    if args.conjectures is not None:
        from .distance import conjecture_sweep

        rows = conjecture_sweep(args.conjectures)
        columns = ["conjecture", "q", "m", "delta", "n", "claimed", "lower", "upper", "exact", "status"]
        failed = False
    elif args.family is None:
        rows = golden_rows(args.distance)
        columns = GOLDEN_COLUMNS
        failed = any(not r["match"] for r in rows)
    else:
        kinds = [kd for kd in ("delta", "u", "t", "designed", "lam") if getattr(args, kd) is not None]
        if len(kinds) != 1:
            raise UsageError("a sweep needs exactly one of --delta, --u, --t, --designed, --lam as a range")
        kind = kinds[0]
        reports = []
        for q in parse_range(args.q):
            for m in parse_range(args.m):
                for v in parse_range(getattr(args, kind)):
                    try:
                        spec = resolve_spec(args.family, q, m, side=args.side, b=args.b, **{kind: v})
                    except GateError as exc:
                        print(f"skip q={q} m={m} {kind}={v}: {exc}", file=sys.stderr)
                        continue
                    reports.append((kind, v, analyze(spec, distance=args.distance)))
        reports.sort(key=lambda r: (r[2].spec.family.value, r[2].spec.params.q, r[2].spec.params.m, r[1]))
        rows = []
        for kind, v, rep in reports:
            row = _report_row(rep)
            row["param"] = f"{kind}={v}"
            row["triple"] = rep.triple
            rows.append(row)
        columns = ["family", "q", "m", "param", "delta", "b", "n", "k", "d_lower", "d_exact", "triple", "source"]
        failed = False
    out = _open_out(args.output)
    try:
        emit(rows, columns, args.format, out)
    finally:
        if out:
            out.close()
    return 1 if (args.check and failed) else 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcdbch", description="LCD BCH codes: construction, dimensions, distances.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cosets", help="coset leaders and sizes for a range of exponents")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--range", default="", help="N, A:B or comma list; empty gives a header-only table")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("construct", help="build one code and report its parameters")
    _add_spec_args(p)
    p.add_argument("--distance", choices=DISTANCE_MODES, default="bounds")
    p.add_argument("--generator", action="store_true", help="include the generator polynomial")
    p.add_argument("--check", action="store_true", help="compare formula and constructive dimension; exit 1 on mismatch")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("distance", help="minimum distance by witness, sphere packing or search")
    _add_spec_args(p)
    p.add_argument("--no-search", dest="search", action="store_false")
    p.add_argument("--message-budget", type=int, default=1 << 24)
    p.add_argument("--support-budget", type=int, default=1 << 26)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("verify", help="closed-form dimensions against constructive ones")
    p.add_argument("--theorem", help=", ".join(THEOREMS))
    p.add_argument("--q", help="range of q")
    p.add_argument("--m", help="range of m")
    p.add_argument("--max-size", type=int, default=3**8, help="largest q^m in the default sweep")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="golden example rows, or a parameter sweep")
    p.add_argument("--family")
    p.add_argument("--q", default="")
    p.add_argument("--m", default="")
    for kd in ("delta", "u", "t", "designed", "lam"):
        p.add_argument(f"--{kd}", help="range")
    p.add_argument("--b", type=int)
    p.add_argument("--side", choices=("plus", "minus"))
    p.add_argument("--distance", choices=DISTANCE_MODES, default="none")
    p.add_argument("--check", action="store_true", help="exit 1 if a golden row differs")
    p.add_argument("--conjectures", type=int, metavar="MAX_N",
                   help="report distances against the open conjectures for n <= MAX_N")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--output", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
