"""Ghost series, Newton polygons and regularity of mod-p representations."""

__version__ = "0.1.0"

from .dimdata import DimensionRow, DimensionTable, RhobarDescriptor, extend_table, ingest_family, ingest_table
from .ghost import GhostSeries, build_ghost, multiplicity_profile
from .localrep import Induced, Split, b_of, is_irregular, reduce_crystalline_small_weight, twist
from .padic import INFINITY, ArithmeticWeight, GenericWeight, Prime, vp_integer, vp_weight_difference
from .polygon import NewtonPolygon, PolygonPoint, evaluate_valuations, first_slopes, lower_hull
from .verify import (
    SlopeDataset,
    Status,
    Verdict,
    coleman_consistency,
    compare_classical,
    gouvea_mazur_check,
    ingest_slopes,
    prop33_falsifier,
    regularity_from_slopes,
)

__all__ = [
    "ArithmeticWeight", "DimensionRow", "DimensionTable", "GenericWeight", "GhostSeries",
    "INFINITY", "Induced", "NewtonPolygon", "PolygonPoint", "Prime", "RhobarDescriptor",
    "SlopeDataset", "Split", "Status", "Verdict", "b_of", "build_ghost", "coleman_consistency",
    "compare_classical", "evaluate_valuations", "extend_table", "first_slopes",
    "gouvea_mazur_check", "ingest_family", "ingest_slopes", "ingest_table", "is_irregular",
    "lower_hull", "multiplicity_profile", "prop33_falsifier", "reduce_crystalline_small_weight",
    "regularity_from_slopes", "twist", "vp_integer", "vp_weight_difference",
]
