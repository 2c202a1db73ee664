"""Group algebra codes: Wedderburn-Artin decompositions, group codes and CSS codes over finite fields."""

from .codes import (
    CodeParams,
    IdealSpec,
    LinearCode,
    code_dimension,
    code_from_ideal,
    count_group_codes,
    dihedral_dual_ideal,
    dual_code,
)
from .distance import min_distance, verify_distance
from .galg import AlgebraElement, build_iso, left_ideal_from_element
from .gf import GF, field_from_order
from .groups import Cyclic, Dihedral, Product, Quaternion
from .kernels import BACKEND
from .parse import format_element, parse_element, parse_group
from .quantum import CSSParams, css_build, css_check
from .wa import Decomposition, decompose_group

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GF",
    "field_from_order",
    "Cyclic",
    "Dihedral",
    "Quaternion",
    "Product",
    "Decomposition",
    "decompose_group",
    "AlgebraElement",
    "build_iso",
    "left_ideal_from_element",
    "LinearCode",
    "CodeParams",
    "IdealSpec",
    "code_dimension",
    "code_from_ideal",
    "count_group_codes",
    "dihedral_dual_ideal",
    "dual_code",
    "min_distance",
    "verify_distance",
    "CSSParams",
    "css_build",
    "css_check",
    "parse_group",
    "parse_element",
    "format_element",
]
