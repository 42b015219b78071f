"""
Circles with Chords

A laundry surface is a disk G with boundary J plus one band per cycle. Cutting
J open at a point gives a line on which every band leaves two endpoints;
drawing each band as a chord a_i -> b_i gives a circle with chords. Chord E_0
runs around the hole from the first point a_0 to the last point b_0.

Two laundry surfaces are equivalent exactly when their chord diagrams, linking
matrices and turns agree; EquivalenceCertificate packs these together.
"""

import logging
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx
import numpy as np

from . import config
from .braid_core import ClosedBraidDiagram
from .errors import InconsistentCertificateError, MatrixFormatError
from .linking_matrix import Band, CycleLabel, IntegerMatrix, encode, laundry_feet

logger = logging.getLogger(__name__)

_ENDPOINT_RE = re.compile(r"([ab])(\d+)")


@dataclass(frozen=True, order=True)
class Endpoint:
    """Vertex a_chord (first endpoint) or b_chord (second endpoint) on J"""
    kind: str
    chord: int

    def __str__(self) -> str:
        return f"{self.kind}{self.chord}"


JEdge = Tuple[Endpoint, Endpoint]


@dataclass(frozen=True)
class CircleWithChords:
    """
    Endpoints in order along J, from a_0 to b_0.

    Chord labels are kept when chords are removed, so they need not be
    consecutive. `twisted` holds the labels of the crossing bands.
    """
    sequence: Tuple[Endpoint, ...]
    twisted: FrozenSet[int] = frozenset()

    def __post_init__(self):
        problems = _label_problems(self.sequence)
        if problems:
            raise ValueError("; ".join(problems))

    @property
    def chords(self) -> Tuple[int, ...]:
        """Chord labels other than 0, in a-order."""
        return tuple(v.chord for v in self.sequence if v.kind == 'a' and v.chord != 0)

    @property
    def n(self) -> int:
        return len(self.chords)

    def positions(self) -> Dict[Endpoint, int]:
        return {vertex: k for k, vertex in enumerate(self.sequence)}

    def spans(self) -> Dict[int, Tuple[int, int]]:
        """(position of a_i, position of b_i) for every chord i, including 0."""
        first: Dict[int, int] = {}
        spans: Dict[int, Tuple[int, int]] = {}
        for k, vertex in enumerate(self.sequence):
            if vertex.kind == 'a':
                first[vertex.chord] = k
            else:
                spans[vertex.chord] = (first[vertex.chord], k)
        return spans

    def chord_span(self, chord: int) -> Tuple[int, int]:
        return self.spans()[chord]


def _label_problems(sequence: Tuple[Endpoint, ...]) -> List[str]:
    problems = []
    if len(set(sequence)) != len(sequence):
        problems.append("an endpoint appears more than once")
    if not sequence or sequence[0] != Endpoint('a', 0) or sequence[-1] != Endpoint('b', 0):
        problems.append("the sequence must start at a0 and end at b0")
    firsts = [v.chord for v in sequence if v.kind == 'a']
    seconds = {v.chord for v in sequence if v.kind == 'b'}
    if firsts != sorted(firsts):
        problems.append("first endpoints are not in increasing chord order")
    if set(firsts) != seconds:
        problems.append("every chord needs both endpoints")
    seen = set()
    for vertex in sequence:
        if vertex.kind == 'b' and vertex.chord not in seen:
            problems.append(f"b{vertex.chord} comes before a{vertex.chord}")
        seen.add(vertex.chord)
    return problems


@dataclass(frozen=True)
class OverlapGraph:
    graph: nx.Graph

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(self.graph.nodes))

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(tuple(sorted(edge)) for edge in self.graph.edges))


@dataclass(frozen=True)
class TurnAssignment:
    """Turn (0 or 1) of each interior first-edge, in J-order of the edges"""
    values: Tuple[Tuple[JEdge, int], ...]

    def as_dict(self) -> Dict[JEdge, int]:
        return dict(self.values)

    def flipped(self, edge: JEdge) -> 'TurnAssignment':
        return TurnAssignment(tuple((e, 1 - v if e == edge else v) for e, v in self.values))


@dataclass(frozen=True)
class EquivalenceCertificate:
    chords: CircleWithChords
    matrix: IntegerMatrix
    turns: TurnAssignment


def circle_with_chords(diagram: ClosedBraidDiagram) -> CircleWithChords:
    """
    Chord diagram of the laundry surface: first feet in laundry order, then
    second feet down the odd circles. Chords are numbered by first endpoint,
    so chord k is the k-th cycle of laundry order.
    """
    first, second = laundry_feet(diagram)
    number: Dict[CycleLabel, int] = {}
    sequence = [Endpoint('a', 0)]
    for label in first + second:
        if label not in number:
            number[label] = len(number) + 1
            sequence.append(Endpoint('a', number[label]))
        else:
            sequence.append(Endpoint('b', number[label]))
    sequence.append(Endpoint('b', 0))
    twisted = frozenset(k for label, k in number.items() if isinstance(label, Band))
    return CircleWithChords(tuple(sequence), twisted)


def remove_chords(chords: CircleWithChords, labels: Iterable[int]) -> CircleWithChords:
    """Drop chords by label, keeping the labels of the rest."""
    removed = set(labels)
    if 0 in removed:
        raise ValueError("chord 0 cannot be removed")
    sequence = tuple(v for v in chords.sequence if v.chord not in removed)
    return CircleWithChords(sequence, chords.twisted - removed)


def _interleaved(first: Tuple[int, int], second: Tuple[int, int]) -> bool:
    (ai, bi), (aj, bj) = first, second
    return ai < aj < bi < bj or aj < ai < bj < bi


def overlaps(chords: CircleWithChords, i: int, j: int) -> bool:
    """Whether the arcs I_i and I_j interleave: a_i < a_j < b_i < b_j or the reverse."""
    spans = chords.spans()
    return _interleaved(spans[i], spans[j])


def overlap_graph(chords: CircleWithChords) -> OverlapGraph:
    graph = nx.Graph()
    labels = chords.chords
    spans = chords.spans()
    graph.add_nodes_from(labels)
    for k, i in enumerate(labels):
        for j in labels[k + 1:]:
            if _interleaved(spans[i], spans[j]):
                graph.add_edge(i, j)
    return OverlapGraph(graph)


def interior_first_edges(chords: CircleWithChords) -> Tuple[JEdge, ...]:
    """
    For each component of the overlap graph without chord 1, the edge of J
    ending at a_i, where i is the least chord of the component.
    """
    graph = overlap_graph(chords).graph
    positions = chords.positions()
    edges = []
    for component in nx.connected_components(graph):
        if 1 in component:
            continue
        end = Endpoint('a', min(component))
        k = positions[end]
        edges.append((chords.sequence[k - 1], end))
    edges.sort(key=lambda edge: positions[edge[1]])
    return tuple(edges)


def braid_turns(chords: CircleWithChords) -> TurnAssignment:
    """Turns of a braid-derived surface: X_0 circles the hole, so every turn is 0."""
    return TurnAssignment(tuple((edge, 0) for edge in interior_first_edges(chords)))


def certificate(
    chords: CircleWithChords, matrix: IntegerMatrix, turns: TurnAssignment
) -> EquivalenceCertificate:
    """
    Raises:
        InconsistentCertificateError: If sizes, the X_0 row or the turn keys do not fit
    """
    if matrix.size != chords.n + 1:
        raise InconsistentCertificateError(
            f"matrix of size {matrix.size} does not fit {chords.n} chords plus X_0"
        )
    if matrix.array[0].any() or matrix.array[:, 0].any():
        raise InconsistentCertificateError("the X_0 row and column must be zero")
    keys = tuple(edge for edge, _ in turns.values)
    if keys != interior_first_edges(chords):
        raise InconsistentCertificateError("turns must be given on exactly the interior first-edges")
    if any(value not in (0, 1) for _, value in turns.values):
        raise InconsistentCertificateError("turns must be 0 or 1")
    return EquivalenceCertificate(chords, matrix, turns)


def augmented_matrix(matrix: IntegerMatrix) -> IntegerMatrix:
    """The linking matrix with a zero row and column for X_0 in front."""
    return IntegerMatrix(np.pad(matrix.array, ((1, 0), (1, 0))))


def certificate_for(diagram: ClosedBraidDiagram) -> EquivalenceCertificate:
    chords = circle_with_chords(diagram)
    return certificate(chords, augmented_matrix(encode(diagram)), braid_turns(chords))


def certificates_equal(x: EquivalenceCertificate, y: EquivalenceCertificate) -> bool:
    return (
        x.chords.sequence == y.chords.sequence
        and x.matrix == y.matrix
        and x.turns == y.turns
    )


def _semicircle(span: Tuple[int, int]) -> Tuple[Fraction, Fraction]:
    a, b = span
    return Fraction(a + b, 2), Fraction(b - a, 2)


def condition6_check(chords: CircleWithChords) -> bool:
    """
    Draw J as a line and each chord as a semicircle below it. For i < j < k
    with E_j and E_k crossing E_i, E_i must meet E_j before E_k.
    """
    labels = chords.chords
    spans = chords.spans()
    for k, i in enumerate(labels):
        center, radius = _semicircle(spans[i])
        crossings = []
        for j in labels[k + 1:]:
            if not _interleaved(spans[i], spans[j]):
                continue
            other_center, other_radius = _semicircle(spans[j])
            x = (radius ** 2 - other_radius ** 2 + other_center ** 2 - center ** 2) / (
                2 * (other_center - center)
            )
            crossings.append((x, j))
        met = [j for _, j in sorted(crossings)]
        if met != sorted(met):
            logger.debug("chord %d meets %s out of order", i, met)
            return False
    return True


def format_chords(chords: CircleWithChords) -> str:
    """Chord text format: the chord count, then the endpoints along J."""
    return f"{chords.n}\n" + ' '.join(str(v) for v in chords.sequence)


def parse_chords(text: str) -> CircleWithChords:
    """
    Raises:
        MatrixFormatError: If the count line or an endpoint token is malformed
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) != 2:
        raise MatrixFormatError(f"expected 2 lines, found {len(lines)}", max(len(lines), 1), 1)
    count = lines[0].strip()
    if not count.isdigit():
        raise MatrixFormatError(f"chord count must be a non-negative integer, got {count!r}", 1, 1)
    sequence = []
    for match in re.finditer(r"\S+", lines[1]):
        token = _ENDPOINT_RE.fullmatch(match.group())
        if token is None:
            raise MatrixFormatError(f"malformed endpoint {match.group()!r}", 2, match.start() + 1)
        sequence.append(Endpoint(token.group(1), int(token.group(2))))
    if len(sequence) != 2 * int(count) + 2:
        raise MatrixFormatError(f"expected {2 * int(count) + 2} endpoints, found {len(sequence)}", 2, 1)
    try:
        return CircleWithChords(tuple(sequence))
    except ValueError as e:
        raise MatrixFormatError(str(e), 2, 1) from e


def render_svg(chords: CircleWithChords, scale: int = config.SVG_SCALE) -> str:
    """Static drawing: J horizontal, chords as arcs in the lower half-plane."""
    count = len(chords.sequence)
    margin = scale
    width = margin * 2 + scale * max(count - 1, 0)
    height = margin * 2 + scale * count // 2
    baseline = margin

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    ET.SubElement(
        svg, "line", x1=str(margin), y1=str(baseline), x2=str(width - margin), y2=str(baseline),
        stroke="black",
    )
    group = ET.SubElement(svg, "g", fill="none")
    x = {vertex: margin + scale * k for k, vertex in enumerate(chords.sequence)}
    for chord in (0,) + chords.chords:
        start, end = x[Endpoint('a', chord)], x[Endpoint('b', chord)]
        radius = (end - start) / 2
        attributes = {"stroke": "black"}
        if chord in chords.twisted:
            attributes["stroke-dasharray"] = "4 2"
        ET.SubElement(
            group, "path",
            d=f"M {start} {baseline} A {radius} {radius} 0 0 0 {end} {baseline}",
            **attributes,
        )
    for vertex, position in x.items():
        ET.SubElement(svg, "circle", cx=str(position), cy=str(baseline), r="3", fill="black")
        label = ET.SubElement(
            svg, "text", x=str(position), y=str(baseline - 8), attrib={"text-anchor": "middle"}
        )
        label.text = str(vertex)
    return ET.tostring(svg, encoding="unicode")
