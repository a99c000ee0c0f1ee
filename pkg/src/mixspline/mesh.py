"""Axis-aligned T-meshes with exact rational coordinates.

Meshes are normally produced by :func:`build_from_faces`, which takes the
face rectangles and induces vertices and edges: every rectangle corner is a
vertex, and every rectangle side is cut at each vertex lying on it, so edges
are the minimal pieces between consecutive vertices on a line.

Canonical ids: vertices sorted by ``(x, y)``, edges by ``(orientation,
start vertex)`` with horizontal edges first, faces by ``(xmin, ymin)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegenerateFace,
    DisconnectedDomain,
    NotASegment,
    OverlappingFaces,
    PointOnFaceBoundary,
    UnknownVertex,
)


class Orientation(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"

    @property
    def rank(self) -> int:
        return 0 if self is Orientation.HORIZONTAL else 1


H = Orientation.HORIZONTAL
V = Orientation.VERTICAL


def to_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("coordinates must be exact (int, Fraction or 'p/q' string)")
    return Fraction(value)


@dataclass(frozen=True)
class Vertex:
    id: int
    x: Fraction
    y: Fraction

    @property
    def point(self):
        return (self.x, self.y)


@dataclass(frozen=True)
class Edge:
    id: int
    orientation: Orientation
    start: int
    end: int
    adjacent_faces: frozenset = field(default_factory=frozenset)

    @property
    def is_horizontal(self) -> bool:
        return self.orientation is H


@dataclass(frozen=True)
class Face:
    id: int
    xmin: Fraction
    ymin: Fraction
    xmax: Fraction
    ymax: Fraction

    @property
    def rect(self):
        return (self.xmin, self.ymin, self.xmax, self.ymax)

    def contains_point(self, x, y) -> bool:
        """Closed-rectangle membership."""
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    def strictly_contains(self, x, y) -> bool:
        return self.xmin < x < self.xmax and self.ymin < y < self.ymax


@dataclass(frozen=True)
class Segment:
    """Connected run of collinear interior edges, ordered along the line."""

    edge_ids: tuple
    vertex_ids: tuple
    orientation: Orientation

    def __len__(self):
        return len(self.edge_ids)

    def __contains__(self, edge_id):
        return edge_id in self.edge_ids


class TMesh:
    """Vertices, edges and faces of a T-mesh plus incidence maps.

    Instances are treated as immutable; every operation that changes the
    mesh returns a new one.
    """

    def __init__(self, vertices: Sequence[Vertex], edges: Sequence[Edge], faces: Sequence[Face]):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.faces = tuple(faces)

        vertex_edges = defaultdict(list)
        for e in self.edges:
            vertex_edges[e.start].append(e.id)
            vertex_edges[e.end].append(e.id)
        self.vertex_edges = {v.id: tuple(vertex_edges.get(v.id, ())) for v in self.vertices}

        face_edges = defaultdict(list)
        for e in self.edges:
            for f in e.adjacent_faces:
                face_edges[f].append(e.id)
        self.face_edges = {f.id: tuple(face_edges.get(f.id, ())) for f in self.faces}

        self.vertex_faces = {
            v.id: tuple(f.id for f in self.faces if f.contains_point(v.x, v.y))
            for v in self.vertices
        }
        self._interior_vertex = {v.id: self._covers_neighbourhood(v) for v in self.vertices}
        self._interior_edge = {e.id: self._edge_has_two_sides(e) for e in self.edges}

    # -- basic counts -------------------------------------------------------
    @property
    def n0(self) -> int:
        return len(self.vertices)

    @property
    def n1(self) -> int:
        return len(self.edges)

    @property
    def n2(self) -> int:
        return len(self.faces)

    def euler_count(self) -> int:
        return self.n0 - self.n1 + self.n2

    def face_rects(self) -> list[tuple]:
        return [f.rect for f in self.faces]

    def signature(self) -> tuple:
        """Hashable description used to decide whether two meshes are the same."""
        return (
            tuple(f.rect for f in self.faces),
            tuple(v.point for v in self.vertices),
            tuple((e.orientation.rank, e.start, e.end) for e in self.edges),
        )

    def __eq__(self, other):
        if not isinstance(other, TMesh):
            return NotImplemented
        return self is other or self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"TMesh(n0={self.n0}, n1={self.n1}, n2={self.n2})"

    # -- geometry -----------------------------------------------------------
    def vertex(self, vid: int) -> Vertex:
        if not (0 <= vid < self.n0):
            raise UnknownVertex(vid)
        return self.vertices[vid]

    def edge_line(self, eid: int) -> Fraction:
        """``y`` of a horizontal edge, ``x`` of a vertical one."""
        e = self.edges[eid]
        p = self.vertices[e.start]
        return p.y if e.is_horizontal else p.x

    def edge_span(self, eid: int) -> tuple[Fraction, Fraction]:
        """Extent of the edge along its own direction."""
        e = self.edges[eid]
        a, b = self.vertices[e.start], self.vertices[e.end]
        if e.is_horizontal:
            return (min(a.x, b.x), max(a.x, b.x))
        return (min(a.y, b.y), max(a.y, b.y))

    def edge_point(self, eid: int, u) -> tuple[Fraction, Fraction]:
        """Point at parameter ``u`` in [0, 1] from start to end."""
        e = self.edges[eid]
        a, b = self.vertices[e.start], self.vertices[e.end]
        u = Fraction(u)
        return (a.x + u * (b.x - a.x), a.y + u * (b.y - a.y))

    def _covers_neighbourhood(self, v: Vertex) -> bool:
        x, y = v.x, v.y
        ne = nw = se = sw = False
        for fid in self.vertex_faces[v.id]:
            f = self.faces[fid]
            left = f.xmin < x
            right = x < f.xmax
            below = f.ymin < y
            above = y < f.ymax
            ne |= right and above
            nw |= left and above
            se |= right and below
            sw |= left and below
        return ne and nw and se and sw

    def _edge_has_two_sides(self, e: Edge) -> bool:
        mx, my = self.edge_point(e.id, Fraction(1, 2))
        side_a = side_b = False
        for f in self.faces:
            if not f.contains_point(mx, my):
                continue
            if e.is_horizontal:
                side_a |= f.ymin < my
                side_b |= my < f.ymax
            else:
                side_a |= f.xmin < mx
                side_b |= mx < f.xmax
        return side_a and side_b

    # -- classification -----------------------------------------------------
    def is_interior_edge(self, eid: int) -> bool:
        return self._interior_edge[eid]

    def is_interior_vertex(self, vid: int) -> bool:
        return self._interior_vertex[vid]

    @property
    def interior_edges(self) -> tuple:
        return tuple(e.id for e in self.edges if self._interior_edge[e.id])

    @property
    def boundary_edges(self) -> tuple:
        return tuple(e.id for e in self.edges if not self._interior_edge[e.id])

    @property
    def interior_vertices(self) -> tuple:
        return tuple(v.id for v in self.vertices if self._interior_vertex[v.id])

    @property
    def boundary_vertices(self) -> tuple:
        return tuple(v.id for v in self.vertices if not self._interior_vertex[v.id])

    def edges_at(self, vid: int, orientation: Orientation | None = None) -> tuple:
        ids = self.vertex_edges[vid]
        if orientation is None:
            return ids
        return tuple(e for e in ids if self.edges[e].orientation is orientation)


# ---------------------------------------------------------------------------
# construction


def _normalise_rect(rect) -> tuple:
    if len(rect) != 4:
        raise DegenerateFace(f"a face needs 4 coordinates, got {rect!r}")
    xmin, ymin, xmax, ymax = (to_fraction(c) for c in rect)
    if not (xmin < xmax and ymin < ymax):
        raise DegenerateFace(f"face {rect!r} has zero measure")
    return (xmin, ymin, xmax, ymax)


def _interiors_overlap(a, b) -> bool:
    return a[0] < b[2] and b[0] < a[2] and a[1] < b[3] and b[1] < a[3]


def _closures_touch(a, b) -> bool:
    return a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]


def _components(n: int, linked) -> list[list[int]]:
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if linked(i, j):
                parent[find(i)] = find(j)
    groups = defaultdict(list)
    for i in range(n):
        groups[find(i)].append(i)
    return list(groups.values())


def build_from_faces(rects: Iterable[Sequence]) -> TMesh:
    """Build a T-mesh from face rectangles ``(xmin, ymin, xmax, ymax)``.

    Raises :class:`OverlappingFaces` if two rectangles share interior area
    and :class:`DisconnectedDomain` if the closed rectangles do not form a
    single connected set.  Meshes that are connected only through corners,
    or that have holes, are built and left for :func:`validate_tmesh` to
    reject.
    """
    rects = [_normalise_rect(r) for r in rects]
    if not rects:
        raise DisconnectedDomain("a T-mesh needs at least one face")
    for i in range(len(rects)):
        for j in range(i + 1, len(rects)):
            if _interiors_overlap(rects[i], rects[j]):
                raise OverlappingFaces(f"faces {rects[i]} and {rects[j]} overlap")
    if len(_components(len(rects), lambda i, j: _closures_touch(rects[i], rects[j]))) > 1:
        raise DisconnectedDomain("the face rectangles do not form a connected set")

    rects = sorted(set(rects), key=lambda r: (r[0], r[1]))
    points = sorted({(x, y) for (x0, y0, x1, y1) in rects for x in (x0, x1) for y in (y0, y1)})
    vid = {p: i for i, p in enumerate(points)}

    by_y = defaultdict(list)
    by_x = defaultdict(list)
    for p in points:
        by_y[p[1]].append(p)
        by_x[p[0]].append(p)

    # (orientation rank, start point, end point) -> adjacent face ids
    pieces = defaultdict(set)
    for fid, (x0, y0, x1, y1) in enumerate(rects):
        for y in (y0, y1):
            cuts = sorted(p for p in by_y[y] if x0 <= p[0] <= x1)
            for a, b in zip(cuts, cuts[1:]):
                pieces[(0, a, b)].add(fid)
        for x in (x0, x1):
            cuts = sorted(p for p in by_x[x] if y0 <= p[1] <= y1)
            for a, b in zip(cuts, cuts[1:]):
                pieces[(1, a, b)].add(fid)

    keys = sorted(pieces, key=lambda k: (k[0], vid[k[1]]))
    edges = [
        Edge(i, H if k[0] == 0 else V, vid[k[1]], vid[k[2]], frozenset(pieces[k]))
        for i, k in enumerate(keys)
    ]
    vertices = [Vertex(i, p[0], p[1]) for i, p in enumerate(points)]
    faces = [Face(i, *r) for i, r in enumerate(rects)]
    return TMesh(vertices, edges, faces)


def refine_face(mesh: TMesh, face_id: int, point=None) -> TMesh:
    """Cross-split one face into four through ``point`` (default: its centre)."""
    f = mesh.faces[face_id]
    if point is None:
        px, py = (f.xmin + f.xmax) / 2, (f.ymin + f.ymax) / 2
    else:
        px, py = (to_fraction(c) for c in point)
    if not f.strictly_contains(px, py):
        raise PointOnFaceBoundary(f"({px}, {py}) is not strictly inside face {face_id}")
    rects = [g.rect for g in mesh.faces if g.id != face_id]
    rects += [
        (f.xmin, f.ymin, px, py),
        (px, f.ymin, f.xmax, py),
        (f.xmin, py, px, f.ymax),
        (px, py, f.xmax, f.ymax),
    ]
    return build_from_faces(rects)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass
class ValidationReport:
    n0: int
    n1: int
    n2: int
    violations: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def euler(self) -> int:
        return self.n0 - self.n1 + self.n2

    def codes(self) -> set:
        return {v.code for v in self.violations}

    def add(self, code, message):
        self.violations.append(Violation(code, message))


def _covers(intervals, lo, hi) -> bool:
    """Do the closed intervals tile [lo, hi] without gaps or overlaps?"""
    pos = lo
    for a, b in sorted(intervals):
        if a != pos:
            return False
        pos = b
    return pos == hi


def validate_tmesh(mesh: TMesh) -> ValidationReport:
    """Check the T-mesh conditions and simple connectedness.

    Violation codes: ``structure`` (ids, degenerate cells, adjacency
    records), ``face_boundary`` (i), ``face_intersection`` (ii),
    ``edge_intersection`` (iii), ``connectivity`` (iv) and ``euler`` (v).
    """
    rep = ValidationReport(mesh.n0, mesh.n1, mesh.n2)
    if mesh.n0 == 0 or mesh.n1 == 0 or mesh.n2 == 0:
        rep.add("structure", "mesh must have at least one vertex, edge and face")
        return rep

    for kind, cells in (("vertex", mesh.vertices), ("edge", mesh.edges), ("face", mesh.faces)):
        if [c.id for c in cells] != list(range(len(cells))):
            rep.add("structure", f"{kind} ids are not dense 0..n-1")
    for f in mesh.faces:
        if not (f.xmin < f.xmax and f.ymin < f.ymax):
            rep.add("structure", f"face {f.id} has zero measure")

    good_edges = []
    for e in mesh.edges:
        if not (0 <= e.start < mesh.n0 and 0 <= e.end < mesh.n0) or e.start == e.end:
            rep.add("structure", f"edge {e.id} has bad endpoints")
            continue
        a, b = mesh.vertices[e.start], mesh.vertices[e.end]
        if e.is_horizontal and a.y != b.y or not e.is_horizontal and a.x != b.x:
            rep.add("structure", f"edge {e.id} is not {e.orientation.value}")
            continue
        if (a.x, a.y) > (b.x, b.y):
            rep.add("structure", f"edge {e.id} start is not the smaller endpoint")
        good_edges.append(e)

    # (iii) edge-edge intersections are vertices; no vertex inside an edge
    lines = defaultdict(list)
    for e in good_edges:
        lines[(e.orientation, mesh.edge_line(e.id))].append(e.id)
    for (orient, c), ids in lines.items():
        spans = sorted((mesh.edge_span(i), i) for i in ids)
        for (s1, i1), (s2, i2) in zip(spans, spans[1:]):
            if s2[0] < s1[1]:
                rep.add("edge_intersection", f"edges {i1} and {i2} overlap")
    hs = [e for e in good_edges if e.is_horizontal]
    vs = [e for e in good_edges if not e.is_horizontal]
    for eh in hs:
        y = mesh.edge_line(eh.id)
        x0, x1 = mesh.edge_span(eh.id)
        for ev in vs:
            x = mesh.edge_line(ev.id)
            y0, y1 = mesh.edge_span(ev.id)
            if x0 <= x <= x1 and y0 <= y <= y1:
                if (x in (x0, x1)) and (y in (y0, y1)):
                    continue
                rep.add("edge_intersection",
                        f"edges {eh.id} and {ev.id} cross at ({x}, {y}), not at a shared vertex")
    for v in mesh.vertices:
        for e in good_edges:
            if v.id in (e.start, e.end):
                continue
            c = mesh.edge_line(e.id)
            lo, hi = mesh.edge_span(e.id)
            on_line = v.y == c if e.is_horizontal else v.x == c
            along = v.x if e.is_horizontal else v.y
            if on_line and lo < along < hi:
                rep.add("edge_intersection", f"vertex {v.id} lies inside edge {e.id}")

    # (i) each face boundary is a union of edges, recorded as adjacent
    for f in mesh.faces:
        sides = (
            (H, f.ymin, f.xmin, f.xmax), (H, f.ymax, f.xmin, f.xmax),
            (V, f.xmin, f.ymin, f.ymax), (V, f.xmax, f.ymin, f.ymax),
        )
        for orient, c, lo, hi in sides:
            pieces = [mesh.edge_span(i) for i in lines.get((orient, c), ())
                      if lo <= mesh.edge_span(i)[0] and mesh.edge_span(i)[1] <= hi]
            if not _covers(pieces, lo, hi):
                rep.add("face_boundary", f"a side of face {f.id} is not a union of edges")
        for i in [*lines.get((H, f.ymin), ()), *lines.get((H, f.ymax), ())]:
            lo, hi = mesh.edge_span(i)
            if f.xmin <= lo and hi <= f.xmax and f.id not in mesh.edges[i].adjacent_faces:
                rep.add("structure", f"edge {i} lies on face {f.id} but is not recorded as adjacent")
        for i in [*lines.get((V, f.xmin), ()), *lines.get((V, f.xmax), ())]:
            lo, hi = mesh.edge_span(i)
            if f.ymin <= lo and hi <= f.ymax and f.id not in mesh.edges[i].adjacent_faces:
                rep.add("structure", f"edge {i} lies on face {f.id} but is not recorded as adjacent")

    # (ii) faces meet only along shared edges and vertices
    for i, fa in enumerate(mesh.faces):
        for fb in mesh.faces[i + 1:]:
            if _interiors_overlap(fa.rect, fb.rect):
                rep.add("face_intersection", f"faces {fa.id} and {fb.id} overlap")

    for e in good_edges:
        want = 2 if mesh.is_interior_edge(e.id) else 1
        if len(e.adjacent_faces) != want:
            rep.add("structure", f"edge {e.id} has {len(e.adjacent_faces)} adjacent faces, expected {want}")

    # (iv) connectivity of the closed domain and of its interior
    rects = mesh.face_rects()
    if len(_components(len(rects), lambda a, b: _closures_touch(rects[a], rects[b]))) > 1:
        rep.add("connectivity", "domain is disconnected")
    else:
        share = defaultdict(set)
        for e in mesh.edges:
            if len(e.adjacent_faces) == 2:
                a, b = sorted(e.adjacent_faces)
                share[a].add(b)
        if len(_components(len(rects), lambda a, b: b in share[a])) > 1:
            rep.add("connectivity", "interior of the domain is disconnected")

    # (v) Euler test for simple connectedness
    if mesh.euler_count() != 1:
        rep.add("euler", f"n0 - n1 + n2 = {mesh.euler_count()} != 1; domain is not simply connected")
    return rep


# ---------------------------------------------------------------------------
# classification and segments


def classify(mesh: TMesh):
    """``(interior edges, boundary edges, interior vertices, boundary vertices)``."""
    return (mesh.interior_edges, mesh.boundary_edges, mesh.interior_vertices, mesh.boundary_vertices)


def _ordered_run(mesh: TMesh, edge_ids) -> tuple[tuple, tuple]:
    edge_ids = sorted(edge_ids, key=lambda i: mesh.edge_span(i))
    vertex_ids = [mesh.edges[edge_ids[0]].start]
    for i in edge_ids:
        e = mesh.edges[i]
        vertex_ids.append(e.end)
    return tuple(edge_ids), tuple(vertex_ids)


def make_segment(mesh: TMesh, edge_ids: Iterable[int]) -> Segment:
    """Validate ``edge_ids`` as a segment and return it ordered along its line."""
    edge_ids = list(dict.fromkeys(edge_ids))
    if not edge_ids:
        raise NotASegment("a segment must contain at least one edge")
    for i in edge_ids:
        if not (0 <= i < mesh.n1):
            raise NotASegment(f"unknown edge {i}")
        if not mesh.is_interior_edge(i):
            raise NotASegment(f"edge {i} is a boundary edge")
    orient = mesh.edges[edge_ids[0]].orientation
    line = mesh.edge_line(edge_ids[0])
    for i in edge_ids:
        if mesh.edges[i].orientation is not orient or mesh.edge_line(i) != line:
            raise NotASegment("edges of a segment must be collinear")
    ordered, verts = _ordered_run(mesh, edge_ids)
    for a, b in zip(ordered, ordered[1:]):
        if mesh.edges[a].end != mesh.edges[b].start:
            raise NotASegment("edges of a segment must form a connected run")
    return Segment(ordered, verts, orient)


def maximal_segments(mesh: TMesh) -> list[Segment]:
    """All inclusion-maximal horizontal and vertical segments of interior edges."""
    lines = defaultdict(list)
    for i in mesh.interior_edges:
        e = mesh.edges[i]
        lines[(e.orientation.rank, mesh.edge_line(i))].append(i)
    out = []
    for key in sorted(lines):
        ordered = sorted(lines[key], key=lambda i: mesh.edge_span(i))
        run = [ordered[0]]
        for i in ordered[1:]:
            if mesh.edges[run[-1]].end == mesh.edges[i].start:
                run.append(i)
            else:
                out.append(make_segment(mesh, run))
                run = [i]
        out.append(make_segment(mesh, run))
    return out


def segment_of_edge(mesh: TMesh, edge_id: int) -> Segment:
    for seg in maximal_segments(mesh):
        if edge_id in seg:
            return seg
    raise NotASegment(f"edge {edge_id} is not an interior edge")
