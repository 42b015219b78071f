"""
Link Invariants

Determinant, signature and Alexander polynomial computed exactly from the
Seifert matrix of the laundry surface, and the Alexander polynomial computed
independently from the reduced Burau representation of the braid word.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import sympy
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from .braid_core import BraidMoveSpec, BraidWord, ClosedBraidDiagram, apply_braid_move, format_move
from .errors import InternalVerificationError
from .forms import seifert_matrix
from .linking_matrix import IntegerMatrix
from .moves import verify_commuting

logger = logging.getLogger(__name__)

t = sympy.Symbol('t')


@dataclass(frozen=True)
class LaurentPoly:
    """
    Integer Laurent polynomial sum(coefficients[k] * t^(low + k)).

    The zero polynomial has no coefficients.
    """
    coefficients: Tuple[int, ...]
    low: int = 0

    @classmethod
    def from_poly(cls, poly: sympy.Poly, low: int = 0) -> 'LaurentPoly':
        coefficients = tuple(int(c) for c in reversed(poly.all_coeffs()))
        return cls(coefficients, low).normalized()

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def normalized(self) -> 'LaurentPoly':
        """Multiply by +-t^k for a nonzero constant term and positive leading coefficient."""
        if self.is_zero:
            return LaurentPoly(())
        coefficients = list(self.coefficients)
        while coefficients[0] == 0:
            coefficients.pop(0)
        while coefficients[-1] == 0:
            coefficients.pop()
        if coefficients[-1] < 0:
            coefficients = [-c for c in coefficients]
        return LaurentPoly(tuple(coefficients))

    def evaluate(self, value: Union[int, Fraction]) -> Fraction:
        value = Fraction(value)
        return sum(
            (Fraction(c) * value ** (self.low + k) for k, c in enumerate(self.coefficients)),
            Fraction(0),
        )

    def format(self) -> str:
        """Coefficients ascending from the lowest degree; the zero polynomial is '0'."""
        if self.is_zero:
            return '0'
        return ' '.join(str(c) for c in self.coefficients)

    def __str__(self) -> str:
        return self.format()


ONE = LaurentPoly((1,))


def _symmetric(seifert: IntegerMatrix) -> List[List[int]]:
    return (seifert.array + seifert.array.T).tolist()


def determinant(seifert: IntegerMatrix) -> int:
    """|det(S + S^T)|, with 1 for the empty matrix."""
    if seifert.size == 0:
        return 1
    return abs(int(sympy.Matrix(_symmetric(seifert)).det(method='bareiss')))


def _congruence_signature(rows: List[List[Fraction]]) -> int:
    a = rows
    result = 0
    while a:
        size = len(a)
        pivot = next((k for k in range(size) if a[k][k] != 0), None)
        if pivot is not None:
            p = a[pivot][pivot]
            result += 1 if p > 0 else -1
            rest = [k for k in range(size) if k != pivot]
            a = [[a[r][s] - a[r][pivot] * a[pivot][s] / p for s in rest] for r in rest]
            continue
        pair = next(
            ((i, j) for i in range(size) for j in range(i + 1, size) if a[i][j] != 0), None
        )
        if pair is None:
            break
        # Zero diagonal: split off the block [[0, b], [b, 0]], which has signature 0.
        i, j = pair
        b = a[i][j]
        rest = [k for k in range(size) if k not in (i, j)]
        a = [
            [a[r][s] - (a[r][i] * a[j][s] + a[r][j] * a[i][s]) / b for s in rest]
            for r in rest
        ]
    return result


def alexander_at_minus_one(seifert: IntegerMatrix) -> int:
    """|Alexander polynomial at t = -1|, which equals the determinant."""
    return abs(int(alexander(seifert).evaluate(-1)))


def signature(seifert: IntegerMatrix) -> int:
    """Signature of S + S^T by rational congruence diagonalization."""
    rows = [[Fraction(v) for v in row] for row in _symmetric(seifert)]
    return _congruence_signature(rows)


def _sign_changes(coefficients: Sequence) -> int:
    signs = [1 if c > 0 else -1 for c in coefficients if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature_by_sign_changes(seifert: IntegerMatrix) -> int:
    """
    Signature from the characteristic polynomial of S + S^T.

    All roots are real, so sign changes count positive and negative roots exactly.
    """
    if seifert.size == 0:
        return 0
    x = sympy.Symbol('x')
    coefficients = sympy.Matrix(_symmetric(seifert)).charpoly(x).all_coeffs()
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    degree = len(coefficients) - 1
    mirrored = [c * (-1) ** (degree - k) for k, c in enumerate(coefficients)]
    return _sign_changes(coefficients) - _sign_changes(mirrored)


def alexander(seifert: IntegerMatrix) -> LaurentPoly:
    """Normalized det(S - t S^T), fraction-free over ZZ[t]."""
    if seifert.size == 0:
        return ONE
    s = sympy.Matrix(seifert.tolist())
    ring = ZZ[t]
    matrix = DomainMatrix.from_Matrix(s - t * s.T).convert_to(ring)
    det = ring.to_sympy(matrix.det())
    return LaurentPoly.from_poly(sympy.Poly(det, t))


def burau_matrix(word: BraidWord) -> sympy.Matrix:
    """Reduced Burau matrix of the word, over rational functions in t."""
    size = word.strands - 1
    result = sympy.eye(size)
    for letter in word.letters:
        generator = sympy.eye(size)
        r = letter.column - 1
        if letter.sign > 0:
            entries = (t, -t, 1)
        else:
            entries = (1, -1 / t, 1 / t)
        generator[r, r] = 0
        for offset, value in zip((-1, 0, 1), entries):
            if 0 <= r + offset < size:
                generator[r, r + offset] = value
        result = result * generator
    return result


def alexander_oracle(word: BraidWord) -> LaurentPoly:
    """
    Alexander polynomial of the closure from det(I - B) = D(t) (1 + t + ... + t^(n-1)).

    Raises:
        InternalVerificationError: If the division leaves a remainder
    """
    strands = word.strands
    if strands == 1:
        return ONE
    burau = burau_matrix(word)
    # The denominator is a power of t, a unit.
    det, _ = sympy.fraction(sympy.cancel((sympy.eye(strands - 1) - burau).det()))
    numerator = sympy.Poly(det, t)
    quotient, remainder = sympy.div(numerator, sympy.Poly(sum(t ** k for k in range(strands)), t))
    if not remainder.is_zero:
        logger.error("Burau division remainder for '%s': %s", word, remainder)
        raise InternalVerificationError(f"Burau determinant of '{word}' is not divisible")
    return LaurentPoly.from_poly(quotient)


@dataclass(frozen=True)
class LinkInvariants:
    determinant: int
    signature: int
    alexander: LaurentPoly

    def key(self) -> Tuple[int, int, LaurentPoly]:
        """Convention-free comparison key, using |signature|."""
        return self.determinant, abs(self.signature), self.alexander

    def format(self) -> str:
        return f"det={self.determinant} sig={self.signature} alexander={self.alexander.format()}"


def invariants_of(diagram: ClosedBraidDiagram) -> LinkInvariants:
    seifert = seifert_matrix(diagram)
    return LinkInvariants(determinant(seifert), signature(seifert), alexander(seifert))


@dataclass
class InvarianceReport:
    initial: LinkInvariants
    final: Optional[ClosedBraidDiagram] = None
    steps: List[Tuple[BraidMoveSpec, LinkInvariants]] = field(default_factory=list)
    changes: List[str] = field(default_factory=list)

    @property
    def constant(self) -> bool:
        return not self.changes


def invariance_check(
    diagram: ClosedBraidDiagram,
    moves: Sequence[BraidMoveSpec],
) -> InvarianceReport:
    """
    Apply the moves in turn, recomputing the invariants after each step and
    checking that the matrix move agrees with the braid move.

    Raises:
        PatternNotFoundError: If a move does not apply
    """
    report = InvarianceReport(invariants_of(diagram))
    current = diagram
    for move in moves:
        if not verify_commuting(current, move):
            report.changes.append(f"{format_move(move)}: matrix move disagrees with braid move")
        current = apply_braid_move(current, move)
        values = invariants_of(current)
        report.steps.append((move, values))
        if values.key() != report.initial.key():
            report.changes.append(
                f"{format_move(move)}: {report.initial.format()} became {values.format()}"
            )
    report.final = current
    logger.info("invariance check of '%s' over %d moves: %d changes", diagram, len(moves), len(report.changes))
    return report
