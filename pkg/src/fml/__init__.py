"""fml: exact maximal-operator laboratory on self-similar fractal trees."""

__version__ = "0.1.0"

from .choquet import (
    CylinderFunction,
    choquet_integral,
    ess_sup_norm,
    level_set,
    llogl_functional,
    lp_choquet_norm,
    mu_integral,
    p_choquet_integral,
    restrict,
)
from .content import (
    ContentExponent,
    brute_force_content,
    cover_cost,
    hausdorff_content,
    optimal_cover,
)
from .errors import ConfigError, ResourceLimitError
from .ifs import (
    CellSet,
    IteratedFunctionSystem,
    SimilarityMap,
    Word,
    cube_measure,
    disjointify,
    generation_geometry,
    middle_fourth_cantor,
    middle_third_cantor,
    parse_word,
    sierpinski_carpet,
    solve_dimension,
)
from .maximal import (
    AncestorAverages,
    ancestor_average_trace,
    indicator_maximal_closed_form,
    maximal_operator,
    weak_type_profile,
)
from .selection import SelectionResult, certify_selection, select_subfamily

__all__ = [
    "AncestorAverages",
    "CellSet",
    "ConfigError",
    "ContentExponent",
    "CylinderFunction",
    "IteratedFunctionSystem",
    "ResourceLimitError",
    "SelectionResult",
    "SimilarityMap",
    "Word",
    "ancestor_average_trace",
    "brute_force_content",
    "choquet_integral",
    "cover_cost",
    "cube_measure",
    "disjointify",
    "ess_sup_norm",
    "generation_geometry",
    "hausdorff_content",
    "indicator_maximal_closed_form",
    "level_set",
    "llogl_functional",
    "lp_choquet_norm",
    "maximal_operator",
    "middle_fourth_cantor",
    "middle_third_cantor",
    "mu_integral",
    "optimal_cover",
    "p_choquet_integral",
    "parse_word",
    "restrict",
    "select_subfamily",
    "certify_selection",
    "sierpinski_carpet",
    "solve_dimension",
    "weak_type_profile",
]
