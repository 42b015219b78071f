"""
Property suite over seeded random diagrams.

Each case draws one diagram from its own derived seed, so a report depends
only on (seed, cases), not on how cases are spread over workers.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Tuple

from . import config
from .braid_core import (
    ClosedBraidDiagram,
    applicable_moves,
    apply_braid_move,
    format_move,
    random_braid,
)
from .errors import LaundryError
from .forms import correction_N, f_from_s, gl_form, m_prime, restore_m_from_gl, seifert_matrix
from .invariants import (
    alexander,
    alexander_at_minus_one,
    alexander_oracle,
    determinant,
    invariants_of,
    signature,
    signature_by_sign_changes,
)
from .laundry_model import circle_with_chords
from .linking_matrix import decode, encode, laundry_order, validate
from .moves import verify_commuting

logger = logging.getLogger(__name__)

SEED_STRIDE = 1_000_003


def case_seed(seed: int, index: int) -> int:
    return seed * SEED_STRIDE + index


def check_diagram(diagram: ClosedBraidDiagram, rng: random.Random) -> List[str]:
    """Every property of one diagram; returns the failed ones."""
    failures = []
    matrix = encode(diagram)
    order = laundry_order(diagram)

    if not validate(matrix).valid:
        failures.append("encode produced an invalid matrix")
    elif decode(matrix) != diagram:
        failures.append("decode(encode(d)) differs from d")

    mprime = m_prime(diagram)
    if not (mprime.array + mprime.array.T + correction_N(order).array == matrix.array).all():
        failures.append("M differs from M' + M'^T + N")
    seifert = seifert_matrix(diagram)
    if f_from_s(seifert, order) != gl_form(matrix):
        failures.append("F differs from S + S^T + N")
    if restore_m_from_gl(gl_form(matrix)) != matrix:
        failures.append("restoring M from F failed")

    if alexander(seifert) != alexander_oracle(diagram.word):
        failures.append("Seifert and Burau Alexander polynomials differ")
    if determinant(seifert) != alexander_at_minus_one(seifert):
        failures.append("determinant differs from |Alexander(-1)|")
    if signature(seifert) != signature_by_sign_changes(seifert):
        failures.append("signature methods disagree")

    chords = circle_with_chords(diagram)
    if chords.n != diagram.strands + len(diagram):
        failures.append("chord count differs from strands + crossings")

    moves = applicable_moves(diagram)
    if moves:
        move = rng.choice(moves)
        if not verify_commuting(diagram, move):
            failures.append(f"{format_move(move)}: matrix move disagrees with braid move")
        elif invariants_of(apply_braid_move(diagram, move)).key() != invariants_of(diagram).key():
            failures.append(f"{format_move(move)}: invariants changed")
    return failures


def run_case(seed: int, index: int) -> Tuple[int, str, List[str]]:
    rng = random.Random(case_seed(seed, index))
    diagram = random_braid(rng, config.MAX_STRANDS, config.MAX_CROSSINGS)
    try:
        failures = check_diagram(diagram, rng)
    except LaundryError as e:
        failures = [f"{type(e).__name__}: {e}"]
    return index, str(diagram), failures


@dataclass
class FuzzReport:
    cases: int
    failures: List[Tuple[int, str, str]] = field(default_factory=list)

    @property
    def failed(self) -> int:
        return len({index for index, _, _ in self.failures})

    @property
    def passed(self) -> int:
        return self.cases - self.failed

    def format(self) -> str:
        lines = [f"cases={self.cases} passed={self.passed} failed={self.failed}"]
        lines.extend(f"case {index} '{braid}': {message}" for index, braid, message in self.failures)
        return '\n'.join(lines)


def fuzz(seed: int, cases: int, workers: int = config.FUZZ_WORKERS) -> FuzzReport:
    """Run the property suite on `cases` random diagrams."""
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_case, [seed] * cases, range(cases)))
    else:
        results = [run_case(seed, index) for index in range(cases)]

    report = FuzzReport(cases)
    for index, braid, failures in sorted(results):
        report.failures.extend((index, braid, message) for message in failures)
    logger.info("fuzz seed=%d: %d of %d cases passed", seed, report.passed, cases)
    return report
