"""Holomorphic vector fields, the model symmetry catalog, tangency and flows."""
from .algebra import (BracketTable, GradingResult, ad_matrix, compare_ad_matrices, expected_ad_matrices,
                      grading_weights, heisenberg_check, structure_table, weight_components)
from .catalog import BASES, CATALOG, basis_f, basis_g, basis_m, catalog_field, field_from_spec, field_label
from .fields import FieldError, HoloField, HoloMap, check_inverse, coordinate_field, lie_bracket, pushforward
from .flows import (TransportError, TransportResult, flow_map, lie_series_flow, point_on_model,
                    preserves_model, pushforward_scaling, recentering_map, remove_map, scaling_for,
                    scaling_map, transport_check)
from .holbasis import HolBasis, hol_basis
from .tangency import EXACT, FAILS, VERIFIED, TangencyRangeError, TangencyVerdict, tangency_check

__all__ = [
    "BASES", "CATALOG", "EXACT", "FAILS", "VERIFIED", "BracketTable", "FieldError", "GradingResult",
    "HolBasis", "HoloField", "HoloMap", "TangencyRangeError", "TangencyVerdict", "TransportError",
    "TransportResult", "ad_matrix", "basis_f", "basis_g", "basis_m", "catalog_field", "check_inverse",
    "compare_ad_matrices", "coordinate_field", "expected_ad_matrices", "field_from_spec", "field_label",
    "flow_map", "grading_weights", "heisenberg_check", "hol_basis", "lie_bracket", "lie_series_flow",
    "point_on_model", "preserves_model", "pushforward", "pushforward_scaling", "recentering_map",
    "remove_map", "scaling_for", "scaling_map", "structure_table", "tangency_check", "transport_check",
    "weight_components",
]
