from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mixspline.dimension import (
    check_reduction,
    euler_characteristic,
    find_container,
    segment_weight,
    weight_threshold,
)
from mixspline.errors import NotAReduction, NotASegment
from mixspline.generators import tensor_grid
from mixspline.homology import h0_dimension
from mixspline.oracle import spline_dimension_oracle
from mixspline.mesh import H, V, Segment, make_segment, maximal_segments, refine_face
from mixspline.smoothness import SmoothnessDistribution, reduce_on_segment

from conftest import find_vertex
from strategies import meshes_with_distribution

Q = Fraction


def horizontal_at(mesh, y, length=None):
    segs = [s for s in maximal_segments(mesh) if s.orientation is H and mesh.edge_line(s.edge_ids[0]) == y]
    return segs[0] if length is None else next(s for s in segs if len(s) == length)


# -- chi --------------------------------------------------------------------


def test_chi_single_face(unit_square):
    b = euler_characteristic(unit_square, SmoothnessDistribution.uniform(unit_square, -1), 3, 3)
    assert b.chi == 16
    assert (b.face_term, b.horizontal_edge_term, b.vertical_edge_term, b.vertex_term) == (16, 0, 0, 0)


def test_chi_grid_uniform_c2(grid2):
    b = euler_characteristic(grid2, SmoothnessDistribution.uniform(grid2, 2), 3, 3)
    assert (b.face_term, b.horizontal_edge_term, b.vertical_edge_term, b.vertex_term) == (64, 24, 24, 9)
    assert b.chi == 25 == b.recompute()


def test_chi_grid_discontinuous(grid2):
    assert euler_characteristic(grid2, SmoothnessDistribution.uniform(grid2, -1), 3, 3).chi == 64


def test_chi_grid_mixed(grid2):
    d = SmoothnessDistribution.uniform(grid2, -1, 2)
    assert euler_characteristic(grid2, d, 3, 3).chi == 40


def test_chi_negative_degree(grid2):
    assert euler_characteristic(grid2, SmoothnessDistribution.uniform(grid2, 0), -1, 3).chi == 0


@pytest.mark.parametrize("m,mp", [(3, 3), (2, 4), (4, 1)])
@pytest.mark.parametrize("kx,ky", [(0, 0), (1, 2), (3, 1), (4, 4)])
def test_tensor_closed_form(m, mp, kx, ky):
    g = tensor_grid(kx + 1, ky + 1)
    for rh in range(-1, mp + 1):
        for rv in range(-1, m + 1):
            # horizontal lines carry rh (smoothness in t), vertical lines rv
            d = SmoothnessDistribution.uniform(g, rh, rv)
            want = (m + 1 + kx * (m - rv)) * (mp + 1 + ky * (mp - rh))
            assert euler_characteristic(g, d, m, mp).chi == want


# -- weights ----------------------------------------------------------------


def test_weight_three_edge_segment():
    base = refine_face(tensor_grid(3, 3), 4)
    sub = next(f.id for f in base.faces if f.rect == (Q(3, 2), Q(1), Q(2), Q(3, 2)))
    mesh = refine_face(base, sub)
    seg = horizontal_at(mesh, Q(3, 2))
    assert [mesh.vertices[v].x for v in seg.vertex_ids] == [1, Q(3, 2), Q(7, 4), 2]
    d = SmoothnessDistribution.uniform(mesh, 1)
    assert segment_weight(mesh, d, seg, 3, 3) == 4 * (3 - 1)


def test_weight_two_edge_segment():
    mesh = refine_face(tensor_grid(3, 3), 4)
    seg = horizontal_at(mesh, Q(3, 2))
    assert len(seg) == 2
    assert segment_weight(mesh, SmoothnessDistribution.uniform(mesh, 1), seg, 3, 3) == 3 * 2


def test_weight_clamps_at_zero(grid2):
    edge = next(e for e in grid2.interior_edges if grid2.edges[e].orientation is H)
    seg = make_segment(grid2, [edge])
    d = SmoothnessDistribution.uniform(grid2, 3)
    # one endpoint is interior (r_h = 3), the other sits on the boundary
    assert segment_weight(grid2, d, seg, 3, 3) == 0 + 4
    d5 = SmoothnessDistribution.uniform(grid2, 5)
    assert segment_weight(grid2, d5, seg, 3, 3) == 4


def test_weight_boundary_endpoint(refined_grid2):
    m = refined_grid2
    d = SmoothnessDistribution.uniform(m, 3)
    # y = 1/2 runs from the boundary to a T-junction; only (0, 1/2) has a defect, 3 - (-1)
    seg = horizontal_at(m, Q(1, 2))
    assert seg.vertex_ids[0] == find_vertex(m, 0, Q(1, 2))
    assert segment_weight(m, d, seg, 3, 3) == 4
    # y = 1 touches the boundary at both ends
    assert segment_weight(m, d, horizontal_at(m, 1), 3, 3) == 8


def test_weight_rejects_mislabelled_segment(grid2):
    e = next(e for e in grid2.interior_edges if grid2.edges[e].orientation is H)
    with pytest.raises(NotASegment):
        segment_weight(grid2, SmoothnessDistribution.uniform(grid2, 0), Segment((e,), (0, 1), V), 3, 3)


def test_threshold():
    assert weight_threshold(Segment((0,), (0, 1), H), 3, 5) == 4
    assert weight_threshold(Segment((0,), (0, 1), V), 3, 5) == 6


# -- conditions -------------------------------------------------------------


def test_condition_b_on_long_segment():
    base = refine_face(tensor_grid(3, 3), 4)
    sub = next(f.id for f in base.faces if f.rect == (Q(3, 2), Q(1), Q(2), Q(3, 2)))
    mesh = refine_face(base, sub)
    seg = horizontal_at(mesh, Q(3, 2))
    d = SmoothnessDistribution.uniform(mesh, 1).with_orders({e: 2 for e in seg.edge_ids})
    res = check_reduction(mesh, d, seg, 1, 3, 3)
    assert res.condition_b and res.weight == 8 and res.threshold == 4 and res.holds


def test_condition_a_with_container(grid2):
    d = SmoothnessDistribution.uniform(grid2, 2)
    h = horizontal_at(grid2, 1)
    left, right = h.edge_ids
    d = d.with_orders({right: 0})
    res = check_reduction(grid2, d, make_segment(grid2, [left]), 0, 3, 3)
    assert res.condition_a and res.container.edge_ids == h.edge_ids
    res = check_reduction(grid2, d, make_segment(grid2, [left]), 1, 3, 3)
    assert res.container is not None
    # the other edge has order 0 > -1, so lowering to -1 has no container
    res = check_reduction(grid2, d, make_segment(grid2, [left]), -1, 3, 3)
    assert not res.condition_a and res.container is None


def test_find_container_uses_reduced_orders(grid2):
    h = horizontal_at(grid2, 1)
    d = SmoothnessDistribution.uniform(grid2, 1)
    assert find_container(grid2, d, make_segment(grid2, [h.edge_ids[0]]), 1) == h
    assert find_container(grid2, d, make_segment(grid2, [h.edge_ids[0]]), 0) is None
    assert find_container(grid2, d, h, 5) is None


def test_witness_fails_both_conditions(witness):
    mesh, base, target, seg = witness
    assert seg.orientation is V and len(seg) == 2 and len(seg.vertex_ids) == 3
    res = check_reduction(mesh, base, seg, 2, 3, 3)
    assert (res.weight, res.threshold) == (3, 4)
    assert not res.condition_a and not res.condition_b and not res.holds


def test_check_reduction_rejects_increase(grid2):
    d = SmoothnessDistribution.uniform(grid2, 1)
    with pytest.raises(NotAReduction):
        check_reduction(grid2, d, horizontal_at(grid2, 1), 2, 3, 3)


# -- properties -------------------------------------------------------------


def test_chi_alone_is_not_monotone():
    # lowering one edge can drop chi; H0 picks up the difference and the dimension stays put
    g = tensor_grid(3, 3)
    d = SmoothnessDistribution.from_mapping(g, {1: 0, 2: 0, 5: 0, 6: 0, 9: 0, 10: 0, 15: 1, 16: 1,
                                                17: 0, 18: 0, 19: 0, 20: 0})
    low = d.with_orders({5: -1})
    assert euler_characteristic(g, d, 1, 1).chi == 13
    assert euler_characteristic(g, low, 1, 1).chi == 12
    assert h0_dimension(g, d, 1, 1) == 0 and h0_dimension(g, low, 1, 1) == 1
    assert spline_dimension_oracle(g, d, 1, 1) == spline_dimension_oracle(g, low, 1, 1) == 13


@settings(max_examples=60, deadline=None)
@given(meshes_with_distribution(max_grid=2, max_steps=2), st.integers(1, 3), st.integers(1, 3), st.data())
def test_chi_recomputes_and_dimension_is_monotone(pair, m, mp, data):
    mesh, d = pair
    b = euler_characteristic(mesh, d, m, mp)
    assert b.chi == b.recompute()
    candidates = [e for e in mesh.interior_edges if d[e] > -1]
    if not candidates:
        return
    e = data.draw(st.sampled_from(candidates))
    lower = d.with_orders({e: data.draw(st.integers(-1, d[e] - 1))})
    assert spline_dimension_oracle(mesh, lower, m, mp) >= spline_dimension_oracle(mesh, d, m, mp)


@settings(max_examples=60, deadline=None)
@given(meshes_with_distribution(), st.integers(1, 4), st.integers(1, 4), st.data())
def test_weight_is_monotone(pair, m, mp, data):
    mesh, d = pair
    segs = maximal_segments(mesh)
    if not segs:
        return
    changes = {e: data.draw(st.integers(-1, d[e])) for e in mesh.interior_edges}
    lower = d.with_orders(changes)
    for seg in segs:
        assert segment_weight(mesh, lower, seg, m, mp) >= segment_weight(mesh, d, seg, m, mp)


@settings(max_examples=40, deadline=None)
@given(meshes_with_distribution(), st.data())
def test_condition_a_is_the_same_before_and_after(pair, data):
    # only edges of A change, so the container test gives one answer under r or s
    mesh, d = pair
    segs = maximal_segments(mesh)
    if not segs:
        return
    seg = data.draw(st.sampled_from(segs))
    i = data.draw(st.integers(0, len(seg) - 1))
    j = data.draw(st.integers(i + 1, len(seg)))
    sub = make_segment(mesh, seg.edge_ids[i:j])
    r = data.draw(st.integers(-1, min(d[e] for e in sub.edge_ids)))
    s = reduce_on_segment(d, sub, r)
    assert (find_container(mesh, d, sub, r) is None) == (find_container(mesh, s, sub, r) is None)
