"""
Laundry surfaces of closed braid diagrams.

This package encodes braid diagrams as linking matrices of their laundry
surfaces, converts them to Gordon-Litherland forms and Seifert matrices,
carries braid and Markov moves over to matrix moves, computes link
invariants, and builds the circle-with-chords description of the surface.
"""

__version__ = "1.0.0"

from .braid_core import (
    BraidLetter,
    BraidWord,
    ClosedBraidDiagram,
    ConjugateRotate,
    ConjugateUnrotate,
    Destabilize,
    R2Delete,
    R2Insert,
    R3,
    Stabilize,
    apply_braid_move,
    b0_normal_form,
    component_count,
    parse_braid,
)
from .errors import (
    BraidParseError,
    InternalVerificationError,
    InvalidMatrixError,
    LaundryError,
    MatrixFormatError,
    PatternNotFoundError,
)
from .forms import gl_form, m_prime, restore_m_from_gl, seifert_matrix
from .invariants import alexander, alexander_oracle, determinant, invariants_of, signature
from .laundry_model import certificate_for, circle_with_chords, overlap_graph
from .linking_matrix import LinkingMatrix, decode, encode, laundry_order, validate
from .moves import apply_matrix_move, verify_commuting

__all__ = [
    "BraidLetter", "BraidWord", "ClosedBraidDiagram",
    "ConjugateRotate", "ConjugateUnrotate", "Destabilize", "R2Delete", "R2Insert", "R3", "Stabilize",
    "apply_braid_move", "b0_normal_form", "component_count", "parse_braid",
    "BraidParseError", "InternalVerificationError", "InvalidMatrixError",
    "LaundryError", "MatrixFormatError", "PatternNotFoundError",
    "gl_form", "m_prime", "restore_m_from_gl", "seifert_matrix",
    "alexander", "alexander_oracle", "determinant", "invariants_of", "signature",
    "certificate_for", "circle_with_chords", "overlap_graph",
    "LinkingMatrix", "decode", "encode", "laundry_order", "validate",
    "apply_matrix_move", "verify_commuting",
]
