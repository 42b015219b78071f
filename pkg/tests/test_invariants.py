"""
Unit Tests for Link Invariants

Known values of small knots and links, the Burau oracle, and invariance
under braid and matrix moves.
"""

import random
from fractions import Fraction

import pytest

from laundry.braid_core import (
    ConjugateRotate,
    ConjugateUnrotate,
    Destabilize,
    R2Delete,
    R2Insert,
    R3,
    Stabilize,
    applicable_moves,
    apply_braid_move,
    b0_normal_form,
    is_applicable,
    parse_braid,
    random_braid,
)
from laundry.errors import PatternNotFoundError
from laundry.forms import seifert_matrix
from laundry.invariants import (
    LaurentPoly,
    alexander,
    alexander_at_minus_one,
    alexander_oracle,
    determinant,
    invariance_check,
    invariants_of,
    signature,
    signature_by_sign_changes,
)
from laundry.linking_matrix import IntegerMatrix

TREFOIL = "2: 1 1 1"
FIGURE_EIGHT = "4: 3 -2 1 -2 1"


def diagram(text):
    return b0_normal_form(parse_braid(text))


def seifert(text):
    return seifert_matrix(diagram(text))


def random_move(rng, d):
    """A random applicable braid move; stabilization always applies, so this ends"""
    while True:
        kind = rng.randrange(6)
        if kind == 0 and d.strands > 1:
            move = R2Insert(rng.randint(1, d.strands - 1), rng.randint(0, len(d)), rng.choice((1, -1)))
        elif kind == 1:
            heights = [h for h in range(1, len(d) + 1) if is_applicable(d, R2Delete(h))]
            if not heights:
                continue
            move = R2Delete(rng.choice(heights))
        elif kind == 2:
            move = Stabilize(rng.choice((1, -1)))
        elif kind == 3:
            move = Destabilize()
        elif kind == 4 and d.strands > 1 and rng.random() < 0.5:
            move = ConjugateUnrotate(rng.randint(1, d.strands - 1))
        elif kind == 4:
            move = ConjugateRotate()
        elif kind == 5 and len(d):
            move = R3(rng.randint(1, len(d)), rng.choice('lr'))
        else:
            continue
        if is_applicable(d, move):
            return move


class TestLaurentPoly:
    """Test suite for the polynomial carrier"""

    def test_normalization(self):
        """Test units +-t^k are removed"""
        assert LaurentPoly((0, 0, -1, 3, -1)).normalized() == LaurentPoly((1, -3, 1))
        assert LaurentPoly((1, -1)).normalized() == LaurentPoly((-1, 1))

    def test_zero(self):
        """Test the zero polynomial"""
        zero = LaurentPoly((0, 0)).normalized()
        assert zero.is_zero
        assert zero.format() == "0"

    def test_evaluate(self):
        """Test exact evaluation"""
        assert LaurentPoly((1, -3, 1)).evaluate(-1) == 5
        assert LaurentPoly((1, 1), low=-1).evaluate(2) == Fraction(3, 2)

    def test_format(self):
        """Test coefficients are listed from degree 0"""
        assert LaurentPoly((1, -1, 1)).format() == "1 -1 1"


class TestKnownValues:
    """Test suite for invariants of small knots and links"""

    def test_unknot(self):
        """Test the one-strand unknot"""
        s = seifert("1:")
        assert determinant(s) == 1
        assert signature(s) == 0
        assert alexander(s) == LaurentPoly((1,))

    def test_trefoil(self):
        """Test the trefoil"""
        s = seifert(TREFOIL)
        assert determinant(s) == 3
        assert abs(signature(s)) == 2
        assert alexander(s).format() == "1 -1 1"

    def test_figure_eight(self):
        """Test the stabilized figure-eight"""
        s = seifert(FIGURE_EIGHT)
        assert determinant(s) == 5
        assert signature(s) == 0
        assert alexander(s).format() == "1 -3 1"

    def test_split_link(self):
        """Test a split link has zero Alexander polynomial"""
        s = seifert("3: 1 1")
        assert alexander(s).is_zero
        assert determinant(s) == 0

    def test_split_unknot_adds_no_signature(self):
        """Test adding a split unknot keeps the signature"""
        assert signature(seifert("3: 1 1")) == signature(seifert("2: 1 1"))

    def test_empty_matrix(self):
        """Test conventions for the empty Seifert matrix"""
        empty = IntegerMatrix([])
        assert determinant(empty) == 1
        assert signature(empty) == 0
        assert signature_by_sign_changes(empty) == 0
        assert alexander(empty).format() == "1"

    def test_zero_diagonal_signature(self):
        """Test the hyperbolic plane has signature 0"""
        assert signature(IntegerMatrix([[0, 1], [0, 0]])) == 0
        assert signature(IntegerMatrix([[1, 0], [0, 1]])) == 2


class TestBurauOracle:
    """Test suite for the reduced Burau oracle"""

    @pytest.mark.parametrize("text, expected", [
        ("1:", "1"),
        (TREFOIL, "1 -1 1"),
        ("2: 1 1", "-1 1"),
        ("3: 1 1", "0"),
        ("3: -2 1 -2 1", "1 -3 1"),
        (FIGURE_EIGHT, "1 -3 1"),
    ])
    def test_known_values(self, text, expected):
        """Test oracle values of small closures"""
        assert alexander_oracle(parse_braid(text)).format() == expected

    def test_agrees_with_seifert(self):
        """Test the Seifert and Burau Alexander polynomials agree"""
        rng = random.Random(1009)
        for _ in range(500):
            d = random_braid(rng, 6, 12)
            assert alexander(seifert_matrix(d)) == alexander_oracle(d.word), d


class TestCrossChecks:
    """Test suite for identities between invariants"""

    def test_determinant_is_alexander_at_minus_one(self):
        """Test det = |Alexander(-1)|"""
        rng = random.Random(5)
        for _ in range(60):
            s = seifert_matrix(random_braid(rng, 5, 10))
            assert determinant(s) == alexander_at_minus_one(s)

    def test_signature_methods_agree(self):
        """Test congruence and sign-change signatures agree"""
        rng = random.Random(6)
        for _ in range(60):
            s = seifert_matrix(random_braid(rng, 5, 10))
            assert signature(s) == signature_by_sign_changes(s)


class TestInvariance:
    """Test suite for invariance under moves"""

    def test_unknot_moves(self):
        """Test invariants stay at those of the unknot"""
        moves = [Stabilize(1), ConjugateRotate(), R2Insert(1, 0, 1)]
        report = invariance_check(diagram("1:"), moves)
        assert report.constant, report.changes
        assert report.initial.key() == (1, 0, LaurentPoly((1,)))
        assert str(report.final) == "2: -1 1 1"

    def test_trefoil_random_moves(self):
        """Test invariants of the trefoil along seeded random moves"""
        rng = random.Random(2718)
        current = diagram(TREFOIL)
        moves = []
        for _ in range(12):
            move = rng.choice(applicable_moves(current))
            moves.append(move)
            current = apply_braid_move(current, move)
        report = invariance_check(diagram(TREFOIL), moves)
        assert report.constant, report.changes
        assert report.initial.key() == (3, 2, LaurentPoly((1, -1, 1)))

    def test_random_move_sequences(self):
        """Test 50 sequences of 10 random moves on each of 20 diagrams keep the invariants"""
        rng = random.Random(3141)
        cache = {}

        def key(d):
            text = str(d)
            if text not in cache:
                cache[text] = invariants_of(d).key()
            return cache[text]

        for _ in range(20):
            start = random_braid(rng, 4, 6)
            expected = key(start)
            for _ in range(50):
                current = start
                for _ in range(10):
                    current = apply_braid_move(current, random_move(rng, current))
                assert key(current) == expected, (start, current)

    def test_figure_eight_destabilization(self):
        """Test removing the column-3 crossing keeps the invariants"""
        report = invariance_check(diagram(FIGURE_EIGHT), [Destabilize()])
        assert report.constant
        assert report.steps[0][1].key() == (5, 0, LaurentPoly((1, -3, 1)))

    def test_inapplicable_move(self):
        """Test an inapplicable move raises"""
        with pytest.raises(PatternNotFoundError):
            invariance_check(diagram(TREFOIL), [Destabilize(), Destabilize()])

    def test_format(self):
        """Test the CLI line format"""
        line = invariants_of(diagram(FIGURE_EIGHT)).format()
        assert line == "det=5 sig=0 alexander=1 -3 1"
