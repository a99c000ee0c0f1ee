"""Zeroth homology of the ideal complex and the homological dimension formula.

The complex sends the edge summands (multiples of ``ell**(r+1)`` inside
the bi-degree box, one per interior edge) to the vertex summands (sums of
the incident edge ideals, one per interior vertex) by
``[edge] f -> [end] f - [start] f``, with boundary endpoints dropped.
H0 is its cokernel; its dimension is ``sum dim J_vertex - rank``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dimension import euler_characteristic
from .errors import BoundaryEdge, BoundaryVertex, NotBelowBase
from .exactla import ExactMatrix, RowSpace, rank, solve
from .mesh import TMesh
from .polynomials import MonomialBox, line_power_multiples
from .smoothness import SmoothnessDistribution, is_below, vertex_smoothness


@dataclass(frozen=True)
class EdgeIdealBasis:
    edge_id: int
    exponent: int
    vectors: tuple

    @property
    def dim(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class VertexIdealSpace:
    vertex_id: int
    spanning: tuple
    space: RowSpace = field(compare=False)

    @property
    def dim(self) -> int:
        return self.space.dim


def _edge_ideal_vectors(mesh: TMesh, eid: int, order: int, box: MonomialBox) -> list[tuple]:
    e = mesh.edges[eid]
    return line_power_multiples(box, e.is_horizontal, mesh.edge_line(eid), order + 1)


def edge_ideal_basis(mesh: TMesh, dist: SmoothnessDistribution, edge_id: int, m: int, mp: int) -> EdgeIdealBasis:
    if not mesh.is_interior_edge(edge_id):
        raise BoundaryEdge(edge_id)
    r = dist[edge_id]
    return EdgeIdealBasis(edge_id, r + 1, tuple(_edge_ideal_vectors(mesh, edge_id, r, MonomialBox(m, mp))))


def vertex_ideal_dimension(r_h: int, r_v: int, m: int, mp: int) -> int:
    """Closed form for dim J_vertex: full box minus the uncovered corner block."""
    if m < 0 or mp < 0:
        return 0
    return (m + 1) * (mp + 1) - (min(r_h, m) + 1) * (min(r_v, mp) + 1)


def vertex_ideal(mesh: TMesh, dist: SmoothnessDistribution, vertex_id: int, m: int, mp: int) -> VertexIdealSpace:
    if not mesh.is_interior_vertex(vertex_id):
        raise BoundaryVertex(vertex_id)
    box = MonomialBox(m, mp)
    span = []
    for eid in mesh.edges_at(vertex_id):
        span.extend(_edge_ideal_vectors(mesh, eid, dist[eid], box))
    return VertexIdealSpace(vertex_id, tuple(span), RowSpace(span, box.dim))


class _SpanningBasis:
    """Vertex-summand basis made of a greedy subset of the spanning vectors.

    Used to check that H0 does not depend on the basis chosen per vertex.
    """

    def __init__(self, spanning, dim):
        chosen = []
        echelon = RowSpace([], dim)
        for v in spanning:
            if not echelon.contains(v):
                chosen.append(v)
                echelon = RowSpace(chosen, dim)
        self.vectors = chosen
        self._matrix = ExactMatrix.from_rows(chosen, dim).transpose() if chosen else None

    @property
    def dim(self):
        return len(self.vectors)

    def coordinates(self, v):
        return solve(self._matrix, v)


def boundary_matrix(mesh: TMesh, dist: SmoothnessDistribution, m: int, mp: int,
                    vertex_basis: str = "rref") -> tuple[ExactMatrix, int]:
    """The differential of the ideal complex and the total vertex-summand dimension."""
    box = MonomialBox(m, mp)
    offsets = {}
    spaces = {}
    total = 0
    for vid in mesh.interior_vertices:
        vi = vertex_ideal(mesh, dist, vid, m, mp)
        space = vi.space if vertex_basis == "rref" else _SpanningBasis(vi.spanning, box.dim)
        spaces[vid] = space
        offsets[vid] = total
        total += space.dim

    columns = []
    for eid in mesh.interior_edges:
        e = mesh.edges[eid]
        for f in _edge_ideal_vectors(mesh, eid, dist[eid], box):
            col = {}
            for vid, sign in ((e.end, 1), (e.start, -1)):
                if vid not in spaces:
                    continue
                off = offsets[vid]
                for k, c in enumerate(spaces[vid].coordinates(f)):
                    if c:
                        col[off + k] = sign * c
            columns.append(col)
    entries = [0] * (total * len(columns))
    ncols = len(columns)
    for j, col in enumerate(columns):
        for i, c in col.items():
            entries[i * ncols + j] = c
    return ExactMatrix(total, ncols, entries), total


def h0_dimension(mesh: TMesh, dist: SmoothnessDistribution, m: int, mp: int,
                 vertex_basis: str = "rref") -> int:
    if m < 0 or mp < 0:
        return 0
    M, total = boundary_matrix(mesh, dist, m, mp, vertex_basis)
    return total - rank(M)


# ---------------------------------------------------------------------------
# localized quotient complex


@dataclass
class QuotientComplex:
    matrix: ExactMatrix
    vertex_dim: int
    support_edges: tuple
    support_vertices: tuple
    touched: set

    @property
    def h0(self) -> int:
        return self.vertex_dim - rank(self.matrix)


def _quotient_basis(sub: RowSpace, spanning, dim) -> RowSpace:
    """Complement of ``sub`` inside the span of ``spanning``, cleared at ``sub``'s pivots."""
    return RowSpace([sub.reduce(v) for v in spanning], dim)


def quotient_complex(mesh: TMesh, dist_r: SmoothnessDistribution, dist_s: SmoothnessDistribution,
                     m: int, mp: int) -> QuotientComplex:
    """Build the complex of quotients J^s / J^r, living only where s < r.

    ``touched`` records every edge and vertex for which a summand was built.
    """
    if not is_below(dist_s, dist_r):
        raise NotBelowBase("s must be pointwise <= r")
    box = MonomialBox(m, mp)
    support_edges = tuple(e for e in mesh.interior_edges if dist_s[e] < dist_r[e])
    support_vertices = tuple(sorted({
        v for e in support_edges for v in (mesh.edges[e].start, mesh.edges[e].end)
        if mesh.is_interior_vertex(v)
    }))
    touched = set()

    vertex_spaces = {}
    offsets = {}
    total = 0
    for vid in support_vertices:
        touched.add(("vertex", vid))
        jr = vertex_ideal(mesh, dist_r, vid, m, mp).space
        js = vertex_ideal(mesh, dist_s, vid, m, mp)
        w = _quotient_basis(jr, js.spanning, box.dim)
        vertex_spaces[vid] = (jr, w)
        offsets[vid] = total
        total += w.dim

    columns = []
    for eid in support_edges:
        touched.add(("edge", eid))
        jr = RowSpace(_edge_ideal_vectors(mesh, eid, dist_r[eid], box), box.dim)
        w = _quotient_basis(jr, _edge_ideal_vectors(mesh, eid, dist_s[eid], box), box.dim)
        e = mesh.edges[eid]
        for f in w.basis:
            col = {}
            for vid, sign in ((e.end, 1), (e.start, -1)):
                if vid not in vertex_spaces:
                    continue
                vjr, vw = vertex_spaces[vid]
                off = offsets[vid]
                for k, c in enumerate(vw.coordinates(vjr.reduce(f))):
                    if c:
                        col[off + k] = sign * c
            columns.append(col)

    ncols = len(columns)
    entries = [0] * (total * ncols)
    for j, col in enumerate(columns):
        for i, c in col.items():
            entries[i * ncols + j] = c
    return QuotientComplex(ExactMatrix(total, ncols, entries), total, support_edges, support_vertices, touched)


def h0_quotient_localized(mesh: TMesh, dist_r: SmoothnessDistribution, dist_s: SmoothnessDistribution,
                          m: int, mp: int) -> int:
    """dim H0 of the quotient complex; equals ``h0_dimension(dist_s)`` when H0 of ``dist_r`` vanishes."""
    if m < 0 or mp < 0:
        return 0
    return quotient_complex(mesh, dist_r, dist_s, m, mp).h0


def spline_dimension_homological(mesh: TMesh, dist: SmoothnessDistribution, m: int, mp: int) -> int:
    return euler_characteristic(mesh, dist, m, mp).chi + h0_dimension(mesh, dist, m, mp)


__all__ = [
    "EdgeIdealBasis",
    "VertexIdealSpace",
    "QuotientComplex",
    "boundary_matrix",
    "edge_ideal_basis",
    "h0_dimension",
    "h0_quotient_localized",
    "quotient_complex",
    "spline_dimension_homological",
    "vertex_ideal",
    "vertex_ideal_dimension",
    "vertex_smoothness",
]
