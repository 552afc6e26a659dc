"""Symmetry algebra of the planar ideal-plasticity system: generators,
brackets, flows, structure tables, infinite families and the subalgebra
catalogs."""
from .generators import (COORD_NAMES, GENERATORS, L_BASIS, S_BASIS,
                         Generator, GeneratorCombo, Point6, bracket_field,
                         eval_generator, lie_bracket)
from .structure import (AUTOMORPHISM_POINT_MAPS, AUTOMORPHISM_SIGNS,
                        ConditioningError, StructureTable, TABLE_L, TABLE_S,
                        discrete_automorphism, expand_in_basis, jacobi_check,
                        sample_points, verify_structure_table)
from .families import verify_infinite_family, x1_case, x2_case
from .flows import FlowError, flow, symmetry_check
from .catalog import (CATALOG_FILES, CatalogParseError, SubalgebraEntry,
                      default_catalog_dir, load_all_catalogs, load_catalog,
                      verify_catalog_file, verify_subalgebra_closure)

__all__ = [
    "COORD_NAMES", "GENERATORS", "L_BASIS", "S_BASIS", "Generator",
    "GeneratorCombo", "Point6", "bracket_field", "eval_generator",
    "lie_bracket",
    "AUTOMORPHISM_POINT_MAPS", "AUTOMORPHISM_SIGNS", "ConditioningError",
    "StructureTable", "TABLE_L", "TABLE_S", "discrete_automorphism",
    "expand_in_basis", "jacobi_check", "sample_points",
    "verify_structure_table",
    "verify_infinite_family", "x1_case", "x2_case",
    "FlowError", "flow", "symmetry_check",
    "CATALOG_FILES", "CatalogParseError", "SubalgebraEntry",
    "default_catalog_dir", "load_all_catalogs", "load_catalog",
    "verify_catalog_file", "verify_subalgebra_closure",
]
