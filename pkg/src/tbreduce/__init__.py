"""Tail-biting convolutional codes: characteristic matrices and trellis reduction."""

from .characteristic import (
    CharacteristicPair,
    analyze_spans,
    assemble_characteristic,
    characteristic_matrix,
    compute_msf_bases,
    enumerate_variants,
    verify_characteristic,
)
from .gf2 import BinaryMatrix, cyclic_shift, minimal_span_form, null_space, rank, row_space_equal
from .oracle import build_tb_trellis, code_of, codes_equal, enumerate_code, shift_code, state_profile
from .polymatrix import (
    PolyMatrix,
    basic_equivalent,
    compute_check_matrix,
    divide_column,
    expand,
    metrics,
    multiply_column,
    parse_octal,
    parse_poly_matrix,
    reciprocal_dual,
    row_add,
    validate_canonical,
)
from .reduction import (
    dual_procedure,
    dual_selection_check,
    search_reduction,
    section_bound,
    simultaneous_reduce,
)
from .spans import Span
from .tbgm import Tbgm, build_tbgm, natural_spans, rows_to_polymatrix, verify_duality

__version__ = "0.1.0"
