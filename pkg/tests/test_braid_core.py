"""
Unit Tests for Braid Words, Normal Forms and Braid Moves
"""

import random

import pytest

from laundry.braid_core import (
    BraidWord,
    ClosedBraidDiagram,
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
    component_count,
    format_braid,
    format_move,
    parse_braid,
    parse_move,
    random_braid,
    strand_permutation,
)
from laundry.errors import BraidParseError, MoveFormatError, PatternNotFoundError


def diagram(text):
    return b0_normal_form(parse_braid(text))


def commuted(word, rng, swaps=100):
    """The word after `swaps` attempted swaps of adjacent distant letters"""
    letters = list(word.letters)
    for _ in range(swaps if len(letters) > 1 else 0):
        k = rng.randrange(len(letters) - 1)
        if abs(letters[k].column - letters[k + 1].column) >= 2:
            letters[k], letters[k + 1] = letters[k + 1], letters[k]
    return BraidWord(word.strands, tuple(letters))


class TestParseBraid:
    """Test suite for the braid text format"""

    def test_parse_figure_eight_word(self):
        """Test parsing a word with mixed signs"""
        word = parse_braid("4: 3 -2 1 -2 1")
        assert word.strands == 4
        assert word.values == (3, -2, 1, -2, 1)

    def test_parse_empty_word(self):
        """Test that '<n>:' is the empty word"""
        word = parse_braid("1:")
        assert word.strands == 1
        assert len(word) == 0

    def test_format_is_inverse(self):
        """Test formatting reproduces the canonical text"""
        assert format_braid(parse_braid("4:  3 -2   1")) == "4: 3 -2 1"
        assert format_braid(parse_braid("2:")) == "2:"

    def test_missing_colon(self):
        """Test a missing separator is rejected"""
        with pytest.raises(BraidParseError, match="missing ':'"):
            parse_braid("4 3")

    def test_malformed_token_location(self):
        """Test the offending token is located by line and column"""
        with pytest.raises(BraidParseError) as e:
            parse_braid("4: 3 x")
        assert (e.value.line, e.value.column) == (1, 6)
        assert "line 1, column 6" in str(e.value)

    def test_column_out_of_range(self):
        """Test a letter needs a column below the strand count"""
        with pytest.raises(BraidParseError, match="out of range"):
            parse_braid("3: 3")

    def test_zero_letter(self):
        """Test zero is not a letter"""
        with pytest.raises(BraidParseError, match="zero"):
            parse_braid("3: 0")

    def test_zero_strands(self):
        """Test at least one strand is required"""
        with pytest.raises(BraidParseError):
            parse_braid("0:")


class TestNormalForm:
    """Test suite for the B0 canonical form"""

    def test_distant_letters_commute_to_smaller_column_first(self):
        """Test commuting letters are ordered by column"""
        assert str(diagram("4: 3 1")) == "4: 1 3"

    def test_adjacent_letters_keep_order(self):
        """Test letters in adjacent columns never commute"""
        assert str(diagram("3: 2 1")) == "3: 2 1"

    def test_figure_eight_is_canonical(self):
        """Test the stabilized figure-eight word is already canonical"""
        assert str(diagram("4: 3 -2 1 -2 1")) == "4: 3 -2 1 -2 1"

    def test_non_canonical_word_rejected(self):
        """Test a diagram must hold a canonical word"""
        with pytest.raises(ValueError, match="normal form"):
            ClosedBraidDiagram(BraidWord.from_values(4, (3, 1)))

    def test_equivalent_words_share_normal_form(self):
        """Test words differing by distant commutation give the same diagram"""
        assert diagram("5: 1 3 4 2") == diagram("5: 3 1 4 2")

    def test_idempotent(self):
        """Test normalizing a canonical word changes nothing"""
        rng = random.Random(31)
        for _ in range(200):
            d = random_braid(rng, 6, 12)
            assert b0_normal_form(d.word) == d

    def test_invariant_under_commutation(self):
        """Test random distant swaps keep the normal form"""
        rng = random.Random(32)
        for _ in range(200):
            d = random_braid(rng, 6, 12)
            assert b0_normal_form(commuted(d.word, rng)) == d


class TestComponents:
    """Test suite for strand permutations and components"""

    @pytest.mark.parametrize("text, components", [
        ("1:", 1),
        ("2: 1 1 1", 1),
        ("2: 1 1", 2),
        ("3: 1 1", 3),
        ("3: 1 2", 1),
        ("4: 3 -2 1 -2 1", 1),
    ])
    def test_component_count(self, text, components):
        """Test component counts of small closures"""
        assert component_count(parse_braid(text)) == components

    def test_permutation_of_single_crossing(self):
        """Test a crossing swaps the two strands"""
        assert strand_permutation(parse_braid("3: 1")) == (1, 0, 2)

    def test_moves_keep_components(self):
        """Test every applicable move keeps the number of components"""
        rng = random.Random(33)
        for _ in range(200):
            d = random_braid(rng, 5, 8)
            components = component_count(d.word)
            for move in applicable_moves(d):
                assert component_count(apply_braid_move(d, move).word) == components, (d, move)


class TestBraidMoves:
    """Test suite for the braid moves"""

    def test_r2_insert_and_delete(self):
        """Test a cancelling pair is inserted and removed"""
        inserted = apply_braid_move(diagram("2: 1"), R2Insert(1, 0, 1))
        assert str(inserted) == "2: -1 1 1"
        assert str(apply_braid_move(inserted, R2Delete(1))) == "2: 1"

    def test_r2_delete_needs_cancelling_pair(self):
        """Test R2 deletion of same-sign letters fails"""
        with pytest.raises(PatternNotFoundError):
            apply_braid_move(diagram("2: 1 1"), R2Delete(1))

    def test_stabilize_and_destabilize(self):
        """Test the Markov move adds and removes a strand"""
        stabilized = apply_braid_move(diagram("1:"), Stabilize(1))
        assert str(stabilized) == "2: 1"
        assert str(apply_braid_move(stabilized, Destabilize())) == "1:"

    def test_destabilize_needs_single_last_letter(self):
        """Test destabilization requires one letter in the last column"""
        with pytest.raises(PatternNotFoundError, match="exactly one letter"):
            apply_braid_move(diagram("3: 2 2"), Destabilize())

    def test_conjugate_rotates_bottom_letter_to_top(self):
        """Test conjugation moves the lowest letter to the top"""
        assert str(apply_braid_move(diagram("3: 1 2"), ConjugateRotate())) == "3: 2 1"

    def test_conjugate_empty_word(self):
        """Test conjugation of the empty word is the identity"""
        assert apply_braid_move(diagram("3:"), ConjugateRotate()) == diagram("3:")

    @pytest.mark.parametrize("before, move, after", [
        ("3: 1 2 1", R3(1, 'r'), "3: 2 1 2"),
        ("3: 2 1 2", R3(1, 'l'), "3: 1 2 1"),
        ("3: -1 -2 -1", R3(1, 'r'), "3: -2 -1 -2"),
    ])
    def test_r3(self, before, move, after):
        """Test Reidemeister III rewrites in both directions"""
        assert str(apply_braid_move(diagram(before), move)) == after

    def test_r3_needs_equal_signs(self):
        """Test mixed signs do not form an R3 pattern"""
        with pytest.raises(PatternNotFoundError):
            apply_braid_move(diagram("3: 1 2 -1"), R3(1, 'r'))

    def test_height_out_of_range(self):
        """Test heights beyond the word are rejected"""
        with pytest.raises(PatternNotFoundError, match="out of range"):
            apply_braid_move(diagram("2: 1"), R2Delete(2))

    def test_applicable_moves_on_unknot(self):
        """Test only stabilizations apply to the one-strand unknot"""
        assert applicable_moves(diagram("1:")) == [Stabilize(1), Stabilize(-1)]

    def test_applicable_moves_apply(self):
        """Test every enumerated move applies"""
        d = diagram("4: 3 -2 1 -2 1")
        moves = applicable_moves(d)
        assert Destabilize() in moves
        assert ConjugateRotate() in moves
        for move in moves:
            apply_braid_move(d, move)


class TestInverseMoves:
    """Test suite for moves followed by their inverses"""

    def test_unrotate_undoes_rotate(self):
        """Test the rotated letter can be moved back to the bottom"""
        d = diagram("5: -1 -2 4")
        rotated = apply_braid_move(d, ConjugateRotate())
        assert str(rotated) == "5: -2 -1 4"
        assert apply_braid_move(rotated, ConjugateUnrotate(1)) == d

    def test_rotate_then_unrotate_random(self):
        """Test conjugation round trips on seeded random diagrams"""
        rng = random.Random(34)
        for _ in range(300):
            d = random_braid(rng, 6, 12)
            if not len(d):
                continue
            rotated = apply_braid_move(d, ConjugateRotate())
            column = d.letters[0].column
            assert ConjugateUnrotate(column) in applicable_moves(rotated)
            assert apply_braid_move(rotated, ConjugateUnrotate(column)) == d, d

    def test_unrotate_needs_top_letter(self):
        """Test a letter with an adjacent letter above it cannot move down"""
        with pytest.raises(PatternNotFoundError, match="above it"):
            apply_braid_move(diagram("3: 1 2"), ConjugateUnrotate(1))

    def test_unrotate_empty_column(self):
        """Test a column without letters has nothing to move"""
        with pytest.raises(PatternNotFoundError, match="no letter"):
            apply_braid_move(diagram("4: 1"), ConjugateUnrotate(3))

    def test_stabilize_then_destabilize_random(self):
        """Test destabilization undoes stabilization"""
        rng = random.Random(35)
        for _ in range(200):
            d = random_braid(rng, 6, 12)
            for sign in (1, -1):
                assert apply_braid_move(apply_braid_move(d, Stabilize(sign)), Destabilize()) == d


class TestMoveFormat:
    """Test suite for the move grammar"""

    @pytest.mark.parametrize("text, move", [
        ("r2-insert:1:0:+", R2Insert(1, 0, 1)),
        ("r2-delete:3", R2Delete(3)),
        ("stab:-", Stabilize(-1)),
        ("destab", Destabilize()),
        ("conj", ConjugateRotate()),
        ("unconj:2", ConjugateUnrotate(2)),
        ("r3:2:l", R3(2, 'l')),
    ])
    def test_parse_and_format(self, text, move):
        """Test each move kind parses and formats back"""
        assert parse_move(text) == move
        assert format_move(move) == text

    @pytest.mark.parametrize("text", ["bogus", "stab:x", "r3:1:q", "destab:1", "r2-delete:-1"])
    def test_malformed_moves(self, text):
        """Test malformed move strings are rejected"""
        with pytest.raises(MoveFormatError):
            parse_move(text)


class TestRandomBraid:
    """Test suite for seeded random diagrams"""

    def test_same_seed_same_diagram(self):
        """Test generation is deterministic"""
        first = [random_braid(random.Random(11), 6, 12) for _ in range(5)]
        second = [random_braid(random.Random(11), 6, 12) for _ in range(5)]
        assert first == second

    def test_bounds(self):
        """Test strand and crossing bounds are respected"""
        rng = random.Random(3)
        for _ in range(100):
            d = random_braid(rng, 6, 12)
            assert 1 <= d.strands <= 6
            assert len(d) <= 12
