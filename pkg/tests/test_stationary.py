"""Exact stationary states, outflow, and the scattering theorem."""
import pytest

from grwalk.graphs import (Graph, WalkInstance, bipartition, complete_graph,
                           cycle_graph, path_graph, standard_instance,
                           star_graph)
from grwalk.ratlin import RatMatrix, rat
from grwalk.stationary import (comfortability_direct, grover_matrix,
                               internal_operator, outflow,
                               predicted_scattering, scattering,
                               source_vector, stationary_state, with_inflow)


def test_internal_operator_single_edge():
    # Degree-2 coin is free propagation: reflection entry 0, transmission 1.
    inst = standard_instance(Graph(2, [(1, 2)]), 1, 2)
    e = internal_operator(inst)
    g = inst.graph
    a12, a21 = g.arc_index((1, 2)), g.arc_index((2, 1))
    assert e.data[a12][a21] == rat(0)       # reversal of itself
    assert e.data[a21][a12] == rat(0)
    assert e.rows == e.cols == 2


def test_internal_operator_k3_weights():
    # Boundary vertices carry the tail in their degree: transmit 2/3,
    # reflect -1/3, times the global coin sign.
    inst = WalkInstance(complete_graph(3), (1, 3), (rat(9), rat(9)), -1)
    e = internal_operator(inst)
    g = inst.graph
    transmit = e.data[g.arc_index((1, 2))][g.arc_index((3, 1))]
    reflect = e.data[g.arc_index((1, 3))][g.arc_index((3, 1))]
    assert transmit == -rat(2, 3)
    assert reflect == -(rat(2, 3) - 1)
    # vertex 2 has no tail: plain degree-2 coin
    assert e.data[g.arc_index((2, 3))][g.arc_index((1, 2))] == -rat(1)


def test_internal_operator_row_weight_sums():
    # Per-arc absolute row sums recompute directly from the coin.
    inst = standard_instance(complete_graph(4), 1, 4)
    e = internal_operator(inst)
    g = inst.graph
    for i, a in enumerate(g.arcs):
        u = a[0]
        expected = sum(abs(rat(2, inst.tilde_degree(u)) -
                           (rat(1) if x == a[1] else rat(0)))
                       for x in g.neighbors(u))
        assert sum(abs(x) for x in e.data[i]) == expected


def test_source_vector_examples():
    inst = WalkInstance(complete_graph(3), (1, 3), (rat(9), rat(9)), -1)
    rho = source_vector(inst)
    g = inst.graph
    for a in g.arcs:
        want = rat(-6) if a[0] in (1, 3) else rat(0)
        assert rho[g.arc_index(a)] == want

    k4 = standard_instance(complete_graph(4), 1, 4)
    rho = source_vector(k4)
    for a in k4.graph.arcs:
        want = rat(-1, 2) if a[0] == 1 else rat(0)
        assert rho[k4.graph.arc_index(a)] == want

    zero = with_inflow(k4, (rat(0), rat(0)))
    assert all(x == 0 for x in source_vector(zero))


def test_stationary_worked_values():
    for g, u1, un, want in [
        (complete_graph(4), 1, 4, rat(5, 12)),
        (cycle_graph(4), 1, 4, rat(19, 16)),
        (path_graph(4), 1, 4, rat(3, 2)),
        (star_graph(4), 1, 2, rat(1)),
    ]:
        inst = standard_instance(g, u1, un)
        assert comfortability_direct(stationary_state(inst)) == want


def test_stationary_zero_inflow():
    inst = with_inflow(standard_instance(complete_graph(4), 1, 4),
                       (rat(0), rat(0)))
    psi = stationary_state(inst)
    assert all(v == 0 for v in psi.values.values())
    assert outflow(inst, psi) == [rat(0), rat(0)]
    assert comfortability_direct(psi) == rat(0)


def test_fixed_point_property():
    inst = standard_instance(cycle_graph(5), 2, 4)
    psi = stationary_state(inst)
    e = internal_operator(inst)
    rho = source_vector(inst)
    vec = psi.vector()
    assert [a + b for a, b in zip(e.mul_vec(vec), rho)] == vec


def test_outflow_examples():
    k4 = standard_instance(complete_graph(4), 1, 4)
    assert outflow(k4, stationary_state(k4)) == [rat(1), rat(0)]
    c4 = standard_instance(cycle_graph(4), 1, 4)
    assert outflow(c4, stationary_state(c4)) == [rat(0), rat(1)]


def test_grover_matrix():
    gr2 = grover_matrix(2)
    assert gr2.data == [[rat(0), rat(1)], [rat(1), rat(0)]]
    gr3 = grover_matrix(3)
    assert gr3.data[0][0] == rat(-1, 3) and gr3.data[0][1] == rat(2, 3)
    assert (gr3 * gr3).is_identity()


def test_predicted_scattering_cases():
    assert predicted_scattering(
        standard_instance(complete_graph(4), 1, 4)).is_identity()
    tau = predicted_scattering(standard_instance(cycle_graph(4), 1, 4))
    assert tau.data == [[rat(0), rat(1)], [rat(1), rat(0)]]
    with pytest.raises(ValueError):
        predicted_scattering(standard_instance(cycle_graph(4), 1, 4, z=1))


def test_scattering_same_side_pair():
    # Both boundary vertices on the X side (k = 2): tau = -Gr(2).
    inst = standard_instance(path_graph(4), 1, 3)
    part = bipartition(inst.graph)
    assert part.side(1) == part.side(3)
    report = scattering(inst)
    assert report.sigma.data == [[rat(0), rat(-1)], [rat(-1), rat(0)]]
    assert report.orthogonal and report.matches_prediction


def test_scattering_balanced_inflow_reflects():
    # Equal X-side and Y-side inflow totals: beta = alpha even though the
    # graph is bipartite.
    inst = WalkInstance(cycle_graph(4), (1, 4), (rat(3), rat(3)), -1)
    report = scattering(inst)
    assert report.beta == (rat(3), rat(3))
    assert report.classification == "degenerate-identity"


def test_scattering_r3():
    g = complete_graph(4)
    inst = WalkInstance(g, (1, 2, 3), (rat(1), rat(0), rat(0)), -1)
    report = scattering(inst)
    assert report.sigma.is_identity()
    assert report.orthogonal and report.matches_prediction
    inst = WalkInstance(cycle_graph(4), (1, 2, 3), (rat(1), rat(0), rat(0)), -1)
    report = scattering(inst)
    assert report.orthogonal and report.matches_prediction
    assert not report.sigma.is_identity()


def test_scattering_r1_recorded():
    # r = 1 on a bipartite internal graph: the formula gives beta = -alpha;
    # checked against the exact solver only.
    inst = WalkInstance(cycle_graph(4), (1,), (rat(1),), -1)
    report = scattering(inst)
    assert report.orthogonal
    assert report.sigma.data == [[rat(-1)]]


def test_scattering_z_plus_one():
    inst = standard_instance(complete_graph(4), 1, 4, z=1)
    report = scattering(inst)
    assert report.orthogonal
    assert report.predicted is None and report.classification is None


def test_per_vertex_constancy_of_arc_differences():
    # psi(a) - psi(rev a) is constant over the arcs leaving each vertex.
    for g, u1, un in [(complete_graph(4), 1, 4), (cycle_graph(5), 1, 3),
                      (Graph(4, [(1, 2), (1, 3), (1, 4), (2, 3)]), 4, 1)]:
        inst = standard_instance(g, u1, un)
        psi = stationary_state(inst)
        for u in range(1, g.n + 1):
            diffs = {psi[(u, x)] - psi[(x, u)] for x in g.neighbors(u)}
            assert len(diffs) == 1


def test_pseudo_kirchhoff_on_nonbipartite():
    inst = standard_instance(complete_graph(4), 1, 4)
    psi = stationary_state(inst)
    g = inst.graph
    for a in g.arcs:
        assert psi[a] == psi[(a[1], a[0])]
    for u in range(1, 5):
        total = sum((psi[(x, u)] for x in g.neighbors(u)), rat(0))
        assert total == -inst.inflow_at(u)
