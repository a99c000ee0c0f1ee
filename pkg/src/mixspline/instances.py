"""Named instances and random distribution helpers used for experiments."""

from __future__ import annotations

import random

from .generators import tensor_grid
from .mesh import H, V, maximal_segments, refine_face
from .smoothness import SmoothnessDistribution, reduce_on_segment


def weight_deficit_instance():
    """Bi-cubic instance where a 2-edge segment cannot be lowered safely.

    A 3x3 grid with the centre cell cross-split.  The new vertical segment
    ``A`` (2 edges, 3 interior vertices) starts at order 3, the horizontal
    edges through its vertices carry order 2, everything else order 1.  That
    base has H0 = 0.  Lowering ``A`` to order 2 leaves weight 3 < 4 and H0
    becomes 1.

    Returns ``(mesh, base, target, segment)``.
    """
    mesh = refine_face(tensor_grid(3, 3), 4)
    seg = next(s for s in maximal_segments(mesh) if s.orientation is V and len(s) == 2)
    orders = {e: 1 for e in mesh.interior_edges}
    for vid in seg.vertex_ids:
        for e in mesh.edges_at(vid, H):
            orders[e] = 2
    for e in seg.edge_ids:
        orders[e] = 3
    base = SmoothnessDistribution.from_mapping(mesh, orders)
    target = reduce_on_segment(base, seg, 2)
    return mesh, base, target, seg


def random_distribution(mesh, rng: random.Random, m: int, mp: int, low: int = -1):
    """Independent random orders: horizontal edges in [low, mp], vertical in [low, m]."""
    return SmoothnessDistribution.from_mapping(mesh, {
        e: rng.randint(low, mp if mesh.edges[e].is_horizontal else m) for e in mesh.interior_edges
    })


def random_pht_base(mesh, rng: random.Random, m: int, mp: int):
    """Random box distribution that is constant on every maximal segment."""
    hb = (mp - 1) // 2
    vb = (m - 1) // 2
    orders = {}
    for seg in maximal_segments(mesh):
        top = hb if seg.orientation is H else vb
        r = rng.randint(-1, top) if top >= -1 else -1
        for e in seg.edge_ids:
            orders[e] = r
    return SmoothnessDistribution.from_mapping(mesh, orders)


def random_below(dist, rng: random.Random, p_change: float = 0.5):
    """Lower a random subset of edges to a random order below the current one."""
    changes = {}
    for e in dist.mesh.interior_edges:
        if dist[e] > -1 and rng.random() < p_change:
            changes[e] = rng.randint(-1, dist[e] - 1)
    return dist.with_orders(changes)
