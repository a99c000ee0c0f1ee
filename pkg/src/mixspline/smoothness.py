"""Smoothness distributions: one continuity order per edge.

A distribution stores orders exactly as given; clamping to the polynomial
degree happens only inside the dimension formulas.  Boundary edges always
carry order -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import InvalidDistribution, MeshMismatch, NotAReduction, UnknownVertex
from .mesh import H, V, Segment, TMesh, maximal_segments


@dataclass(frozen=True)
class VertexSmoothness:
    r_h: int
    r_v: int


class SmoothnessDistribution:
    """Immutable map edge id -> order >= -1, with -1 on every boundary edge."""

    __slots__ = ("mesh", "orders")

    def __init__(self, mesh: TMesh, orders):
        orders = tuple(int(o) for o in orders)
        if len(orders) != mesh.n1:
            raise InvalidDistribution(f"expected {mesh.n1} orders, got {len(orders)}")
        for eid, o in enumerate(orders):
            if o < -1:
                raise InvalidDistribution(f"edge {eid}: order {o} < -1")
            if o != -1 and not mesh.is_interior_edge(eid):
                raise InvalidDistribution(f"boundary edge {eid} must have order -1, got {o}")
        object.__setattr__(self, "mesh", mesh)
        object.__setattr__(self, "orders", orders)

    def __setattr__(self, name, value):
        raise AttributeError("SmoothnessDistribution is immutable")

    @classmethod
    def uniform(cls, mesh: TMesh, order: int, vertical: int | None = None):
        """Same order on all interior edges (optionally different for vertical ones)."""
        vertical = order if vertical is None else vertical
        return cls(mesh, [
            -1 if not mesh.is_interior_edge(e.id) else (order if e.is_horizontal else vertical)
            for e in mesh.edges
        ])

    @classmethod
    def from_mapping(cls, mesh: TMesh, mapping: Mapping[int, int], default: int = -1):
        orders = [-1] * mesh.n1
        for eid in mesh.interior_edges:
            orders[eid] = mapping.get(eid, default)
        for eid in mapping:
            if not (0 <= eid < mesh.n1):
                raise MeshMismatch(f"edge {eid} does not exist in the mesh")
        return cls(mesh, orders)

    def __getitem__(self, edge_id: int) -> int:
        return self.orders[edge_id]

    def __len__(self):
        return len(self.orders)

    def __eq__(self, other):
        if not isinstance(other, SmoothnessDistribution):
            return NotImplemented
        return self.mesh == other.mesh and self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)

    def __repr__(self):
        return f"SmoothnessDistribution({list(self.orders)})"

    def with_orders(self, changes: Mapping[int, int]) -> "SmoothnessDistribution":
        orders = list(self.orders)
        for eid, o in changes.items():
            orders[eid] = o
        return SmoothnessDistribution(self.mesh, orders)


def vertex_smoothness(mesh: TMesh, dist: SmoothnessDistribution, vertex_id: int) -> VertexSmoothness:
    """``r_h``: min order over vertical edges at the vertex; ``r_v``: over horizontal ones.

    A vertex with no edge of one orientation gets -1 for that component.
    """
    if not (0 <= vertex_id < mesh.n0):
        raise UnknownVertex(vertex_id)
    vert = [dist[e] for e in mesh.edges_at(vertex_id, V)]
    horz = [dist[e] for e in mesh.edges_at(vertex_id, H)]
    return VertexSmoothness(min(vert, default=-1), min(horz, default=-1))


def all_vertex_smoothness(mesh: TMesh, dist: SmoothnessDistribution) -> list[VertexSmoothness]:
    return [vertex_smoothness(mesh, dist, v.id) for v in mesh.vertices]


def _same_mesh(a: SmoothnessDistribution, b: SmoothnessDistribution):
    if a.mesh != b.mesh:
        raise MeshMismatch("distributions live on different meshes")


def compare(dist_s: SmoothnessDistribution, dist_r: SmoothnessDistribution) -> str:
    """``"le"`` if ``dist_s <= dist_r`` edgewise, else ``"incomparable"``."""
    _same_mesh(dist_s, dist_r)
    if all(a <= b for a, b in zip(dist_s.orders, dist_r.orders)):
        return "le"
    return "incomparable"


def is_below(dist_s, dist_r) -> bool:
    return compare(dist_s, dist_r) == "le"


def reduce_on_segment(dist: SmoothnessDistribution, segment: Segment, r: int) -> SmoothnessDistribution:
    """Set every edge of ``segment`` to order ``r``; all other edges keep theirs."""
    if r < -1:
        raise NotAReduction(f"order {r} < -1")
    for eid in segment.edge_ids:
        if dist[eid] < r:
            raise NotAReduction(f"edge {eid} has order {dist[eid]} < {r}")
    return dist.with_orders({eid: r for eid in segment.edge_ids})


def is_box_distribution(mesh: TMesh, dist: SmoothnessDistribution, m: int, mp: int) -> bool:
    """Horizontal orders at most (mp-1)/2, vertical orders at most (m-1)/2."""
    hb = Fraction(mp - 1, 2)
    vb = Fraction(m - 1, 2)
    return all(dist[e.id] <= (hb if e.is_horizontal else vb) for e in mesh.edges)


def is_constant_on_maximal_segments(mesh: TMesh, dist: SmoothnessDistribution) -> bool:
    return all(len({dist[e] for e in seg.edge_ids}) == 1 for seg in maximal_segments(mesh))
