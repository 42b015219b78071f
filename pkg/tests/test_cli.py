"""
Integration Tests for the Command-Line Interface

Tests subcommand output formats, input sources, and exit codes.
"""

import io
import re

from laundry.braid_core import b0_normal_form, parse_braid
from laundry.cli import run
from laundry.fuzz import FuzzReport
from laundry.linking_matrix import encode, format_matrix

FIGURE_EIGHT = "4: 3 -2 1 -2 1"


def invoke(argv, stdin=""):
    """Run the CLI and return (exit code, stdout, stderr)"""
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def matrix_text(braid):
    return format_matrix(encode(b0_normal_form(parse_braid(braid))))


class TestEncodeDecode:
    """Test suite for encode, decode, validate and roundtrip"""

    def test_encode(self):
        """Test encode prints the matrix text format"""
        code, out, _ = invoke(["encode", FIGURE_EIGHT])
        assert code == 0
        assert out.splitlines()[0] == "9"
        assert out.splitlines()[1] == "0 -1 1 -1 1 0 0 0 0"

    def test_decode_from_stdin(self):
        """Test decode reads '-' from standard input"""
        code, out, _ = invoke(["decode", "-"], stdin=matrix_text(FIGURE_EIGHT))
        assert code == 0
        assert out == FIGURE_EIGHT + "\n"

    def test_decode_from_file(self, tmp_path):
        """Test decode reads a file path"""
        path = tmp_path / "m.txt"
        path.write_text(matrix_text("3: 1 2 1"))
        code, out, _ = invoke(["decode", str(path)])
        assert code == 0
        assert out == "3: 1 2 1\n"

    def test_validate(self):
        """Test validate accepts linking matrices and lists violations"""
        assert invoke(["validate", "-"], stdin=matrix_text("2: 1"))[:2] == (0, "valid\n")
        code, _, err = invoke(["validate", "-"], stdin="1\n1\n")
        assert code == 1
        assert "circle rows" in err

    def test_roundtrip(self):
        """Test the decode(encode) check"""
        assert invoke(["roundtrip", FIGURE_EIGHT])[:2] == (0, "ok\n")

    def test_roundtrip_failure_is_internal(self, mocker):
        """Test a failed internal check exits with 2"""
        mocker.patch('laundry.cli.decode', return_value=b0_normal_form(parse_braid("1:")))
        code, _, err = invoke(["roundtrip", FIGURE_EIGHT])
        assert code == 2
        assert "error: decode(encode(" in err


class TestErrors:
    """Test suite for error reporting"""

    def test_braid_parse_error(self):
        """Test malformed braids exit with 1 and a location"""
        code, out, err = invoke(["encode", "4: 3 x"])
        assert code == 1
        assert out == ""
        assert err == "error: line 1, column 6: malformed token 'x'\n"

    def test_matrix_parse_error(self):
        """Test malformed matrices exit with 1"""
        code, _, err = invoke(["decode", "-"], stdin="2\n0 1\n1 x\n")
        assert code == 1
        assert "line 3, column 3" in err

    def test_matrix_entry_overflow(self):
        """Test an entry beyond 64 bits exits with 1 and a location"""
        code, out, err = invoke(["validate", "-"], stdin="1\n99999999999999999999999\n")
        assert code == 1
        assert out == ""
        assert "line 2, column 1" in err

    def test_undecodable_stdin(self):
        """Test bytes that are not UTF-8 exit with 1 and a location"""
        stdin = io.TextIOWrapper(io.BytesIO(b"1\n\xff\n"), encoding="utf-8")
        out, err = io.StringIO(), io.StringIO()
        assert run(["validate", "-"], stdin=stdin, stdout=out, stderr=err) == 1
        assert err.getvalue() == "error: line 2, column 1: input is not valid UTF-8 text\n"

    def test_undecodable_file(self, tmp_path):
        """Test an input file that is not UTF-8 exits with 1"""
        path = tmp_path / "m.txt"
        path.write_bytes(b"1\n0\xfe\n")
        code, _, err = invoke(["decode", str(path)])
        assert code == 1
        assert "line 2, column 2" in err

    def test_usage_error(self):
        """Test unknown subcommands exit with 1"""
        assert invoke(["nonsense"])[0] == 1

    def test_inapplicable_move(self):
        """Test an absent move pattern exits with 1"""
        code, _, err = invoke(["move", "--move", "destab", "2: 1 1 1"])
        assert code == 1
        assert "destabilization" in err


class TestConversions:
    """Test suite for convert and restore"""

    def test_convert_sizes(self):
        """Test each conversion prints a matrix of the right size"""
        for target, size in (("mprime", "9"), ("gl", "8"), ("seifert", "8")):
            code, out, _ = invoke(["convert", "--to", target, FIGURE_EIGHT])
            assert code == 0
            assert out.splitlines()[0] == size

    def test_unknown_conversion(self):
        """Test an unknown target is a usage error"""
        assert invoke(["convert", "--to", "jones", FIGURE_EIGHT])[0] == 1

    def test_restore(self):
        """Test restoring M from F"""
        _, gl, _ = invoke(["convert", "--to", "gl", FIGURE_EIGHT])
        code, out, _ = invoke(["restore", "-"], stdin=gl)
        assert code == 0
        assert out == matrix_text(FIGURE_EIGHT) + "\n"


class TestMoves:
    """Test suite for the move subcommand"""

    def test_braid_level(self):
        """Test a braid move prints the new word"""
        assert invoke(["move", "--move", "r3:1:r", "3: 1 2 1"])[:2] == (0, "3: 2 1 2\n")

    def test_matrix_level(self):
        """Test a matrix move prints the new matrix"""
        code, out, _ = invoke(
            ["move", "--move", "r3:1:r", "--level", "matrix", "-"], stdin=matrix_text("3: 1 2 1")
        )
        assert code == 0
        assert out == matrix_text("3: 2 1 2") + "\n"

    def test_malformed_move(self):
        """Test a malformed move exits with 1"""
        assert invoke(["move", "--move", "r9", "2: 1"])[0] == 1


class TestInvariants:
    """Test suite for the invariants subcommand"""

    def test_trefoil(self):
        """Test the trefoil line"""
        code, out, _ = invoke(["invariants", "2: 1 1 1"])
        assert code == 0
        assert re.fullmatch(r"det=3 sig=-?2 alexander=1 -1 1\n", out)

    def test_split_link(self):
        """Test a zero Alexander polynomial"""
        code, out, _ = invoke(["invariants", "3: 1 1"])
        assert code == 0
        assert out.startswith("det=0 ")
        assert out.endswith(" alexander=0\n")


class TestLaundryCommands:
    """Test suite for gauss, svg and certificate"""

    def test_gauss_reduced(self):
        """Test the reduced figure-eight chord diagram"""
        code, out, _ = invoke(["gauss", "--remove-twisted", FIGURE_EIGHT])
        assert code == 0
        assert out.splitlines() == [
            "4",
            "a0 a1 b1 a6 b6 a8 b8 a9 b9 b0",
            "overlap",
            "interior b1a6 b6a8 b8a9",
        ]

    def test_svg_to_file(self, tmp_path):
        """Test the SVG is written to --out"""
        path = tmp_path / "chords.svg"
        code, out, _ = invoke(["svg", "--out", str(path), FIGURE_EIGHT])
        assert code == 0
        assert out == f"wrote {path}\n"
        assert path.read_text().startswith("<svg")

    def test_certificate(self):
        """Test the certificate lists chords, matrix and turns"""
        code, out, _ = invoke(["certificate", "3:"])
        assert code == 0
        lines = out.splitlines()
        assert lines[:2] == ["3", "a0 a1 b1 a2 b2 a3 b3 b0"]
        assert lines[2] == "4"
        assert lines[-1] == "turns b1a2=0 b2a3=0"


class TestFuzz:
    """Test suite for the fuzz subcommand"""

    def test_small_run_passes(self):
        """Test a few seeded cases pass every property"""
        code, out, _ = invoke(["fuzz", "--seed", "7", "--cases", "4", "--workers", "1"])
        assert code == 0
        assert out == "cases=4 passed=4 failed=0\n"

    def test_deterministic(self):
        """Test identical seeds give identical reports"""
        assert invoke(["fuzz", "--seed", "3", "--cases", "2"]) == invoke(["fuzz", "--seed", "3", "--cases", "2"])

    def test_workers_do_not_change_output(self):
        """Test a run spread over worker processes prints the same bytes"""
        single = invoke(["fuzz", "--seed", "5", "--cases", "6", "--workers", "1"])
        assert invoke(["fuzz", "--seed", "5", "--cases", "6", "--workers", "2"]) == single
        assert single[0] == 0

    def test_failures_exit_with_2(self, mocker):
        """Test failing cases are reported on stdout with exit code 2"""
        report = FuzzReport(2, [(1, "2: 1", "signature methods disagree")])
        mocker.patch('laundry.cli.fuzz', return_value=report)
        code, out, _ = invoke(["fuzz", "--seed", "1", "--cases", "2"])
        assert code == 2
        assert out.splitlines() == [
            "cases=2 passed=1 failed=1",
            "case 1 '2: 1': signature methods disagree",
        ]

    def test_seed_required(self):
        """Test fuzz needs a seed"""
        assert invoke(["fuzz", "--cases", "2"])[0] == 1
