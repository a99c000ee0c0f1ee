import pytest
from hypothesis import given, settings, strategies as st

from mixspline.errors import InvalidDistribution, MeshMismatch, NotAReduction, UnknownVertex
from mixspline.generators import tensor_grid
from mixspline.mesh import H, V, maximal_segments
from mixspline.smoothness import (
    SmoothnessDistribution,
    VertexSmoothness,
    all_vertex_smoothness,
    compare,
    is_below,
    is_box_distribution,
    is_constant_on_maximal_segments,
    reduce_on_segment,
    vertex_smoothness,
)

from conftest import HALF, find_vertex
from strategies import meshes_with_distribution


def test_uniform_sets_boundary_to_minus_one(grid2):
    d = SmoothnessDistribution.uniform(grid2, 2)
    for e in grid2.edges:
        assert d[e.id] == (2 if grid2.is_interior_edge(e.id) else -1)


def test_uniform_by_orientation(grid2):
    d = SmoothnessDistribution.uniform(grid2, 1, 3)
    for e in grid2.interior_edges:
        assert d[e] == (1 if grid2.edges[e].orientation is H else 3)


def test_invalid_distributions(grid2):
    b = grid2.boundary_edges[0]
    orders = [-1] * grid2.n1
    orders[b] = 0
    with pytest.raises(InvalidDistribution):
        SmoothnessDistribution(grid2, orders)
    with pytest.raises(InvalidDistribution):
        SmoothnessDistribution(grid2, [-2] * grid2.n1)
    with pytest.raises(InvalidDistribution):
        SmoothnessDistribution(grid2, [-1] * (grid2.n1 - 1))
    with pytest.raises(MeshMismatch):
        SmoothnessDistribution.from_mapping(grid2, {99: 1})


def test_distribution_is_immutable(grid2):
    d = SmoothnessDistribution.uniform(grid2, 1)
    with pytest.raises(AttributeError):
        d.orders = ()
    assert d == SmoothnessDistribution.uniform(grid2, 1)
    assert hash(d) == hash(SmoothnessDistribution.uniform(grid2, 1))


def test_vertex_smoothness_on_grid(grid2):
    d = SmoothnessDistribution.uniform(grid2, 1, 2)
    centre = find_vertex(grid2, 1, 1)
    assert vertex_smoothness(grid2, d, centre) == VertexSmoothness(r_h=2, r_v=1)
    # bottom mid-side vertex: the interior vertical edge counts, the boundary horizontals force -1
    mid = find_vertex(grid2, 1, 0)
    assert vertex_smoothness(grid2, d, mid) == VertexSmoothness(r_h=2, r_v=-1)
    corner = find_vertex(grid2, 0, 0)
    assert vertex_smoothness(grid2, d, corner) == VertexSmoothness(-1, -1)
    with pytest.raises(UnknownVertex):
        vertex_smoothness(grid2, d, 100)


def test_vertex_smoothness_at_t_junction(refined_grid2):
    m = refined_grid2
    d = SmoothnessDistribution.uniform(m, 2)
    t = find_vertex(m, 1, HALF)
    # vertical edges at (1, 1/2) are interior, the horizontal one ends there
    vs = vertex_smoothness(m, d, t)
    assert vs.r_h == 2 and vs.r_v == 2
    low = d.with_orders({e: 0 for e in m.edges_at(t, H)})
    assert vertex_smoothness(m, low, t) == VertexSmoothness(2, 0)


def test_compare_examples(grid2):
    a = SmoothnessDistribution.uniform(grid2, 1)
    b = SmoothnessDistribution.uniform(grid2, 2)
    e0 = grid2.interior_edges[0]
    c = a.with_orders({e0: 3})
    assert compare(a, b) == "le" and is_below(a, b)
    assert compare(b, a) == "incomparable"
    assert compare(c, b) == "incomparable"
    with pytest.raises(MeshMismatch):
        compare(a, SmoothnessDistribution.uniform(tensor_grid(3, 3), 1))


def test_reduce_on_segment(grid2):
    d = SmoothnessDistribution.uniform(grid2, 2)
    seg = next(s for s in maximal_segments(grid2) if s.orientation is V)
    low = reduce_on_segment(d, seg, 0)
    for e in grid2.interior_edges:
        assert low[e] == (0 if e in seg.edge_ids else 2)
    assert reduce_on_segment(d, seg, 2) == d
    with pytest.raises(NotAReduction):
        reduce_on_segment(d, seg, 3)
    with pytest.raises(NotAReduction):
        reduce_on_segment(d, seg, -2)


def test_box_and_constant_checks(refined_grid2):
    m = refined_grid2
    d = SmoothnessDistribution.uniform(m, 1)
    assert is_box_distribution(m, d, 3, 3)
    assert not is_box_distribution(m, d, 2, 3)
    assert is_box_distribution(m, SmoothnessDistribution.uniform(m, 0, 1), 3, 1)
    assert is_constant_on_maximal_segments(m, d)
    long = max(maximal_segments(m), key=len)
    assert not is_constant_on_maximal_segments(m, d.with_orders({long.edge_ids[0]: 0}))


# -- properties -------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(meshes_with_distribution(), st.data())
def test_reduction_properties(pair, data):
    mesh, d = pair
    segs = maximal_segments(mesh)
    if not segs:
        return
    seg = data.draw(st.sampled_from(segs))
    top = min(d[e] for e in seg.edge_ids)
    r = data.draw(st.integers(-1, top))
    low = reduce_on_segment(d, seg, r)
    assert is_below(low, d)
    assert all(low[e.id] == -1 for e in mesh.edges if not mesh.is_interior_edge(e.id))
    assert all(low[e] == d[e] for e in mesh.interior_edges if e not in seg.edge_ids)
    assert reduce_on_segment(low, seg, r) == low


@settings(max_examples=40, deadline=None)
@given(meshes_with_distribution(), st.data())
def test_vertex_smoothness_is_monotone(pair, data):
    mesh, d = pair
    changes = {e: data.draw(st.integers(-1, d[e])) for e in mesh.interior_edges}
    low = d.with_orders(changes)
    for a, b in zip(all_vertex_smoothness(mesh, low), all_vertex_smoothness(mesh, d)):
        assert a.r_h <= b.r_h and a.r_v <= b.r_v


@settings(max_examples=30, deadline=None)
@given(meshes_with_distribution(), st.data())
def test_order_is_a_partial_order(pair, data):
    mesh, d = pair
    e = data.draw(st.lists(st.integers(-1, 3), min_size=len(mesh.interior_edges),
                           max_size=len(mesh.interior_edges)))
    other = d.with_orders(dict(zip(mesh.interior_edges, e)))
    assert is_below(d, d)
    if is_below(d, other) and is_below(other, d):
        assert d == other
