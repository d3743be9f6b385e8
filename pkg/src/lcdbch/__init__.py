"""LCD BCH codes over GF(q): construction, dimensions and minimum distances."""

from .bchcodes import CodeSpec, Family, GateError, defining_set, dimension_constructive, generator_poly, is_lcd
from .cosets import CosetParams, coset, coset_leader, coset_table
from .dimensions import DimPrediction, predict
from .distance import DistanceResult, best_known, exact_distance
from .field import FieldCtx, gf, make_field
from .polyring import Poly, minimal_poly
from .report import CodeReport, analyze

__version__ = "0.1.0"

__all__ = [
    "CodeReport", "CodeSpec", "CosetParams", "DimPrediction", "DistanceResult", "FieldCtx", "Family",
    "GateError", "Poly", "analyze", "best_known", "coset", "coset_leader", "coset_table", "defining_set",
    "dimension_constructive", "exact_distance", "generator_poly", "gf", "is_lcd", "make_field",
    "minimal_poly", "predict",
]
