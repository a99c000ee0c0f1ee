"""Combinatorial side of the dimension count.

``euler_characteristic`` evaluates the four-term cell count

    n2 (m+1)(m'+1)
      - (m+1)  * sum over horizontal edges of (min(r, m') + 1)
      - (m'+1) * sum over vertical edges   of (min(r, m)  + 1)
      + sum over vertices of (min(r_h, m) + 1)(min(r_v, m') + 1)

over *all* cells; boundary cells enter with order -1 and drop out.
``segment_weight`` and ``check_reduction`` implement the two sufficient
conditions under which lowering the order on a segment keeps H0 zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotAReduction, NotASegment
from .mesh import Segment, TMesh, make_segment
from .smoothness import SmoothnessDistribution, reduce_on_segment, vertex_smoothness


@dataclass(frozen=True)
class ChiBreakdown:
    face_term: int
    horizontal_edge_term: int
    vertical_edge_term: int
    vertex_term: int
    chi: int

    def recompute(self) -> int:
        return self.face_term - self.horizontal_edge_term - self.vertical_edge_term + self.vertex_term


def euler_characteristic(mesh: TMesh, dist: SmoothnessDistribution, m: int, mp: int) -> ChiBreakdown:
    if m < 0 or mp < 0:
        return ChiBreakdown(0, 0, 0, 0, 0)
    face_term = mesh.n2 * (m + 1) * (mp + 1)
    h_sum = sum(min(dist[e.id], mp) + 1 for e in mesh.edges if e.is_horizontal)
    v_sum = sum(min(dist[e.id], m) + 1 for e in mesh.edges if not e.is_horizontal)
    vertex_term = 0
    for v in mesh.vertices:
        vs = vertex_smoothness(mesh, dist, v.id)
        vertex_term += (min(vs.r_h, m) + 1) * (min(vs.r_v, mp) + 1)
    ht = (m + 1) * h_sum
    vt = (mp + 1) * v_sum
    return ChiBreakdown(face_term, ht, vt, vertex_term, face_term - ht - vt + vertex_term)


def _check_segment(mesh: TMesh, segment: Segment) -> Segment:
    canonical = make_segment(mesh, segment.edge_ids)
    if canonical.orientation is not segment.orientation:
        raise NotASegment("segment orientation does not match its edges")
    return canonical


def segment_weight(mesh: TMesh, dist: SmoothnessDistribution, segment: Segment, m: int, mp: int) -> int:
    """Sum of clamped smoothness defects over every vertex carried by the segment.

    Horizontal segments use ``(m - r_h)+``, vertical ones ``(mp - r_v)+``;
    boundary endpoints are included.
    """
    segment = _check_segment(mesh, segment)
    total = 0
    for vid in segment.vertex_ids:
        vs = vertex_smoothness(mesh, dist, vid)
        if segment.orientation.rank == 0:
            total += max(m - vs.r_h, 0)
        else:
            total += max(mp - vs.r_v, 0)
    return total


def weight_threshold(segment: Segment, m: int, mp: int) -> int:
    return m + 1 if segment.orientation.rank == 0 else mp + 1


@dataclass(frozen=True)
class ConditionResult:
    condition_a: bool
    container: Optional[Segment]
    condition_b: bool
    weight: int
    threshold: int

    @property
    def holds(self) -> bool:
        return self.condition_a or self.condition_b

    @property
    def margin(self) -> int:
        return self.weight - self.threshold


def find_container(mesh: TMesh, dist_s: SmoothnessDistribution, segment: Segment, r: int) -> Optional[Segment]:
    """Smallest segment strictly containing ``segment`` with all orders <= r under ``dist_s``.

    Any strictly larger segment must contain an interior edge collinear with
    and adjacent to ``segment``, so it is enough to try one extra edge at
    either end.
    """
    first, last = segment.vertex_ids[0], segment.vertex_ids[-1]
    line = mesh.edge_line(segment.edge_ids[0])
    for vid, side in ((first, "before"), (last, "after")):
        for eid in mesh.edges_at(vid, segment.orientation):
            if eid in segment or not mesh.is_interior_edge(eid) or mesh.edge_line(eid) != line:
                continue
            if dist_s[eid] > r:
                continue
            ids = (eid,) + segment.edge_ids if side == "before" else segment.edge_ids + (eid,)
            return make_segment(mesh, ids)
    return None


def check_reduction(mesh: TMesh, dist_r: SmoothnessDistribution, segment: Segment, r: int,
                    m: int, mp: int) -> ConditionResult:
    """Which of the two reduction conditions holds for lowering ``segment`` to ``r``.

    Both are evaluated under the reduced distribution ``s``.  Condition (a):
    some segment strictly containing ``segment`` has every order <= r.
    Condition (b): the weight of ``segment`` under ``s`` reaches m+1
    (horizontal) or m'+1 (vertical).
    """
    segment = _check_segment(mesh, segment)
    dist_s = reduce_on_segment(dist_r, segment, r)
    container = find_container(mesh, dist_s, segment, r)
    w = segment_weight(mesh, dist_s, segment, m, mp)
    thr = weight_threshold(segment, m, mp)
    return ConditionResult(container is not None, container, w >= thr, w, thr)


__all__ = [
    "ChiBreakdown",
    "ConditionResult",
    "NotAReduction",
    "check_reduction",
    "euler_characteristic",
    "find_container",
    "segment_weight",
    "weight_threshold",
]
