"""Topological invariants of generalized real Bott manifolds from their GF(2) vector matrices."""

from .census import canonical_form, classify, enumerate_matrices
from .charclasses import (
    NotOrientable,
    NotRealBott,
    is_orientable,
    is_spin,
    real_bott_spin_C,
    spin_terms,
    total_sw,
    total_sw_recursive,
    w1_closed,
    w2_closed,
)
from .cohomology import build_ring, poincare_polynomial
from .digraph import build_digraph, orientable_via_digraph, to_dot
from .fan import build_fan, is_flag, is_smooth
from .fungroup import (
    alpha_words,
    group_properties,
    h1,
    higher_homotopy,
    is_abelian,
    racg_reduce,
    relators,
)
from .model import (
    InvalidMatrix,
    NotNormalized,
    NotTriangulable,
    VectorMatrix,
    normalize,
    remark_l_order,
    submatrix,
    tower_decomposition,
    validate,
)
from .report import Report, build_report

__version__ = "0.1.0"
