"""Stability certificates: chains of justified segment reductions.

A certificate starts from a base distribution whose H0 is known to vanish
and lowers orders one segment at a time.  Each step is justified either by
a strictly larger segment that already has order <= the new order
(``container``) or by the segment weight reaching its threshold
(``weight``).  Every step keeps H0 at zero, so the final dimension is the
Euler characteristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .dimension import check_reduction, euler_characteristic, weight_threshold
from .errors import BaseNotCertified, InvalidCertificate, NotAReduction, NotASegment, NotBelowBase
from .generators import is_hierarchical
from .mesh import Segment, TMesh, make_segment, maximal_segments
from .smoothness import (
    SmoothnessDistribution,
    is_below,
    is_box_distribution,
    is_constant_on_maximal_segments,
    reduce_on_segment,
)


class Provenance(str, Enum):
    # hierarchical mesh, box distribution constant on maximal segments
    PHT = "pht"
    HOMOLOGY_VERIFIED = "homology_verified"
    USER_ASSERTED = "user_asserted"


@dataclass(frozen=True)
class Justification:
    kind: str  # "container" or "weight"
    container: Optional[tuple] = None  # edge ids of the containing segment
    weight: Optional[int] = None
    threshold: Optional[int] = None


@dataclass(frozen=True)
class ReductionStep:
    segment: Segment
    order: int
    justification: Justification


@dataclass(frozen=True)
class Certificate:
    base: SmoothnessDistribution
    provenance: Provenance
    steps: tuple
    final: SmoothnessDistribution


@dataclass
class FailureReport:
    residual_edges: tuple
    blocked: list  # (segment, order, ConditionResult) for every candidate that failed
    applied: list  # steps that did go through
    current: SmoothnessDistribution

    def residual_segments(self) -> list:
        return sorted({seg.edge_ids for seg, _, _ in self.blocked})


def check_provenance(mesh: TMesh, base: SmoothnessDistribution, m: int, mp: int, provenance) -> None:
    """Raise :class:`BaseNotCertified` unless ``provenance`` really vouches for H0 = 0."""
    provenance = Provenance(provenance)
    if provenance is Provenance.PHT:
        problems = []
        if not is_box_distribution(mesh, base, m, mp):
            problems.append("base orders exceed the (m-1)/2, (m'-1)/2 bounds")
        if not is_constant_on_maximal_segments(mesh, base):
            problems.append("base is not constant on maximal segments")
        if not is_hierarchical(mesh):
            problems.append("mesh is not hierarchical")
        if problems:
            raise BaseNotCertified("; ".join(problems))
    elif provenance is Provenance.HOMOLOGY_VERIFIED:
        from .homology import h0_dimension

        h0 = h0_dimension(mesh, base, m, mp)
        if h0 != 0:
            raise BaseNotCertified(f"H0 of the base distribution has dimension {h0}")


def _justify(result) -> Justification:
    if result.condition_a:
        return Justification("container", container=result.container.edge_ids)
    return Justification("weight", weight=result.weight, threshold=result.threshold)


def _candidates(mesh, current, target):
    """Sub-runs of pending edges along each maximal segment, with their order."""
    out = []
    for seg in maximal_segments(mesh):
        run = []
        runs = []
        for eid in seg.edge_ids:
            if current[eid] > target[eid]:
                run.append(eid)
            elif run:
                runs.append(run)
                run = []
        if run:
            runs.append(run)
        for run in runs:
            for i in range(len(run)):
                for j in range(i + 1, len(run) + 1):
                    sub = run[i:j]
                    r = max(target[e] for e in sub)
                    if any(current[e] < r for e in sub):
                        continue
                    mixed = len({target[e] for e in sub}) > 1
                    out.append((mixed, len(sub), tuple(sub), r))
    out.sort(key=lambda c: (c[0], c[1], c[2]))
    return out


def certify_stability(mesh: TMesh, base: SmoothnessDistribution, target: SmoothnessDistribution,
                      m: int, mp: int, base_provenance="pht"):
    """Search for a certificate taking ``base`` to ``target``.

    Greedy over runs of still-pending edges on each maximal segment.  Runs
    whose targets agree come before mixed ones and short runs before long
    ones; within a group a container wins, then the largest weight margin.
    All candidates are re-evaluated after every step, so a run blocked early
    can pass once its neighbours have been lowered.  Returns a
    :class:`Certificate` or a :class:`FailureReport`.
    """
    if not is_below(target, base):
        raise NotBelowBase("target is not pointwise below the base")
    provenance = Provenance(base_provenance)
    check_provenance(mesh, base, m, mp, provenance)

    current = base
    steps = []
    while current != target:
        blocked = []
        chosen = None
        by_length = {}
        for mixed, length, ids, r in _candidates(mesh, current, target):
            by_length.setdefault((mixed, length), []).append((ids, r))
        for key in sorted(by_length):
            passing = []
            for ids, r in by_length[key]:
                seg = make_segment(mesh, ids)
                res = check_reduction(mesh, current, seg, r, m, mp)
                if res.holds:
                    passing.append((-res.margin if not res.condition_a else -10**9, ids, seg, r, res))
                else:
                    blocked.append((seg, r, res))
            if passing:
                chosen = min(passing, key=lambda p: (p[0], p[1]))
                break
        if chosen is None:
            residual = tuple(e for e in mesh.interior_edges if current[e] != target[e])
            return FailureReport(residual, blocked, steps, current)
        _, _, seg, r, res = chosen
        steps.append(ReductionStep(seg, r, _justify(res)))
        current = reduce_on_segment(current, seg, r)
    return Certificate(base, provenance, tuple(steps), current)


def verify_certificate(mesh: TMesh, cert: Certificate, m: int, mp: int) -> None:
    """Replay every step; raise :class:`InvalidCertificate` on the first bad one."""
    current = cert.base
    for n, step in enumerate(cert.steps):
        try:
            seg = make_segment(mesh, step.segment.edge_ids)
            res = check_reduction(mesh, current, seg, step.order, m, mp)
        except (NotAReduction, NotASegment) as exc:
            raise InvalidCertificate(f"step {n}: {exc}") from exc
        j = step.justification
        if j.kind == "container":
            try:
                box = make_segment(mesh, j.container)
            except NotASegment as exc:
                raise InvalidCertificate(f"step {n}: bad container: {exc}") from exc
            after = reduce_on_segment(current, seg, step.order)
            if not (set(seg.edge_ids) < set(box.edge_ids)
                    and all(after[e] <= step.order for e in box.edge_ids)):
                raise InvalidCertificate(f"step {n}: container does not justify the reduction")
        elif j.kind == "weight":
            if j.weight != res.weight or j.threshold != weight_threshold(seg, m, mp):
                raise InvalidCertificate(f"step {n}: recorded weight {j.weight} recomputes to {res.weight}")
            if not res.condition_b:
                raise InvalidCertificate(f"step {n}: weight {res.weight} below threshold {res.threshold}")
        else:
            raise InvalidCertificate(f"step {n}: unknown justification {j.kind!r}")
        current = reduce_on_segment(current, seg, step.order)
    if current != cert.final:
        raise InvalidCertificate("steps do not reproduce the final distribution")


def dimension_by_certificate(mesh: TMesh, cert: Certificate, m: int, mp: int) -> int:
    verify_certificate(mesh, cert, m, mp)
    return euler_characteristic(mesh, cert.final, m, mp).chi
