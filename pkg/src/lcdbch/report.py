"""One-stop analysis of a code: dimension, LCD status, distance, prediction."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bchcodes import (
    GENERATOR_LIMIT,
    CodeSpec,
    DefiningSetOnly,
    check_generator,
    defining_set,
    generator_poly,
    is_lcd,
)
from .dimensions import DimPrediction, predict
from .distance import DistanceResult, Method, bch_lower, best_known, witness_json
from .polyring import Poly, is_self_reciprocal

DISTANCE_MODES = ("none", "bounds", "auto")


@dataclass(frozen=True)
class CodeReport:
    spec: CodeSpec
    n: int
    k: int
    lcd: bool
    designed_distance: int
    bch_lower: int
    distance: DistanceResult
    prediction: DimPrediction
    generator: Poly | None = None
    witnesses: list[dict] = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def triple(self) -> str:
        d = self.distance
        if d.exact is not None:
            dist = str(d.exact)
        elif d.upper is not None:
            dist = f"{d.lower}..{d.upper}"
        else:
            dist = f">={d.lower}"
        return f"[{self.n}, {self.k}, {dist}]"

    @property
    def prediction_agrees(self) -> bool:
        return self.prediction.agrees_with(self.k)

    def to_json(self) -> dict:
        s = self.spec
        out = {
            "family": s.family.value,
            "q": s.params.q,
            "m": s.params.m,
            "n": self.n,
            "delta": s.delta,
            "b": s.b,
            "k": self.k,
            "lcd": self.lcd,
            "designed_distance": self.designed_distance,
            "bch_lower": self.bch_lower,
            "distance": self.distance.to_json(),
        }
        if self.generator is not None:
            out["generator"] = self.generator.to_json()
        out["witnesses"] = list(self.witnesses)
        out["prediction"] = self.prediction.to_json()
        if self.checks:
            out["checks"] = dict(self.checks)
        return out


def analyze(spec: CodeSpec, distance: str = "bounds", generator: bool = False,
            check: bool = False, **budgets) -> CodeReport:
    """Build the report.

    distance: "none" gives the BCH bound only, "bounds" adds witnesses and
    the sphere-packing cap, "auto" also runs the exhaustive searches.
    """
    if distance not in DISTANCE_MODES:
        raise ValueError(f"distance mode must be one of {DISTANCE_MODES}")
    ds = defining_set(spec)
    n, k = spec.n, spec.n - ds.size
    lower = bch_lower(spec)
    if distance == "none":
        dist = DistanceResult(lower)
    else:
        dist = best_known(spec, search=distance == "auto", **budgets)
    g = None
    if generator or check:
        try:
            g = generator_poly(spec)
        except DefiningSetOnly:
            g = None
    lcd = is_lcd(ds)
    pred = predict(spec)
    checks: dict = {}
    if check:
        checks["prediction"] = pred.covered and pred.agrees_with(k)
        checks["prediction_covered"] = pred.covered
        if g is not None:
            checks.update(check_generator(spec, g))
            checks["lcd_matches_reciprocity"] = is_self_reciprocal(g) == lcd
    witnesses = []
    if dist.witness is not None:
        witnesses.append({"method": dist.method.value, "weight": dist.witness.weight,
                          "support": witness_json(dist.witness)})
    return CodeReport(spec, n, k, lcd, spec.designed_distance, lower, dist, pred,
                      g if generator else None, witnesses, checks)


def check_failed(report: CodeReport) -> bool:
    """A covered prediction that disagrees, or a failed generator check."""
    c = report.checks
    if c.get("prediction_covered") and not c.get("prediction"):
        return True
    return any(c.get(key) is False for key in ("monic", "degree_matches", "divides", "lcd_matches_reciprocity"))


__all__ = ["CodeReport", "analyze", "check_failed", "DISTANCE_MODES", "GENERATOR_LIMIT", "Method"]
