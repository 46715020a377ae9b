"""Acceptance gate: the eight headline requirements, at their stated
tolerances, each reporting one pass/fail line."""
import time
from itertools import combinations

import networkx as nx
import numpy as np

from grwalk.factors import (closed_form_comfort, cycle_incidence_check,
                            odd_unicyclic_sums, spanning_tree_count,
                            two_forest_count)
from grwalk.graphs import (Graph, WalkInstance, bipartition, complete_graph,
                           cycle_graph, enumerate_connected,
                           standard_instance)
from grwalk.potential import bipartite_route, kirchhoff_audit, \
    nonbipartite_route
from grwalk.ratlin import rat
from grwalk.simulate import TruncatedState, simulate, step
from grwalk.stationary import comfortability_direct, scattering, \
    stationary_state
from grwalk.catalog import rank

TABLE1_VALUES = ["5/12", "3/4", "1/2", "19/16", "5/4", "7/4", "3/4", "1",
                 "5/4", "3/2"]
TABLE1_LABELS = list("RRRTTRRTTT")
TABLE2_Z_MINUS = ["5/4", "3/2", "5/4", "7/4", "3/4", "5/12"]
TABLE2_Z_PLUS = ["5/4", "3/2", "5/4", "17/12", "3/2", "13/8"]


def _report(num, ok, what):
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] criterion {num}: {what}")
    assert ok, f"criterion {num} failed: {what}"


def test_criterion_1_ten_value_classes():
    start = time.perf_counter()
    report = rank(4, -1)
    elapsed = time.perf_counter() - start
    values = [str(r.comfort) for r in report.rows]
    labels = [r.label for r in report.rows]
    ok = values == TABLE1_VALUES and labels == TABLE1_LABELS and elapsed < 10
    _report(1, ok, "ten n=4 value classes with R/T labels, exact, "
            f"{elapsed:.1f}s")


def test_criterion_2_class_maxima():
    start = time.perf_counter()
    minus = [str(m.comfort) for m in rank(4, -1).class_maxima]
    plus = [str(m.comfort) for m in rank(4, 1).class_maxima]
    elapsed = time.perf_counter() - start
    ok = minus == TABLE2_Z_MINUS and plus == TABLE2_Z_PLUS and elapsed < 10
    _report(2, ok, "per-shape maxima for both coin phases, exact, "
            f"{elapsed:.1f}s")


def test_criterion_3_worked_values_and_tree_formula():
    k4 = complete_graph(4)
    c4 = cycle_graph(4)
    ok = odd_unicyclic_sums(k4, 1) == (48, 20)
    ok &= comfortability_direct(
        stationary_state(standard_instance(k4, 1, 4))) == rat(5, 12)
    ok &= spanning_tree_count(c4) == 4
    ok &= two_forest_count(c4, 1, 4) == 3
    ok &= comfortability_direct(
        stationary_state(standard_instance(c4, 1, 4))) == rat(19, 16)
    checked = 0
    for n in range(2, 9):
        for shape in nx.nonisomorphic_trees(n):
            g = Graph(n, [(u + 1, v + 1) for u, v in shape.edges()])
            for u1, un in combinations(range(1, n + 1), 2):
                want = (rat(g.distance(u1, un)) + rat(n - 1)) / rat(4)
                inst = standard_instance(g, u1, un)
                got = comfortability_direct(stationary_state(inst))
                ok &= got == want
                checked += 1
    _report(3, ok, "worked factor/energy values and the tree formula on "
            f"{checked} tree configurations, exact")


def test_criterion_4_three_route_agreement(catalog_sweep):
    start = time.perf_counter()
    checked = 0
    ok = True
    for n in range(2, 6):
        for g, pair, configs, _ in catalog_sweep[n]:
            bip = bipartition(g) is not None
            for cfg in configs:
                u1, un = cfg.boundary
                inst = WalkInstance(g, cfg.boundary, (rat(1), rat(0)), -1)
                route = bipartite_route if bip else nonbipartite_route
                _, psi2, pot = route(inst)
                closed = closed_form_comfort(g, u1, un, -1)
                ok &= cfg.comfort == pot == closed
                ok &= all(psi2[a] == cfg.psi[a] for a in g.arcs)
                checked += 1
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    _report(4, ok, f"direct, potential, and closed-form energies agree on "
            f"{checked} configurations, exact, {elapsed:.1f}s")


def test_criterion_5_scattering_theorem(catalog_sweep):
    ok = True
    pairs = 0
    for n in range(2, 6):
        for g, pair, configs, report in catalog_sweep[n]:
            ok &= report.orthogonal and report.matches_prediction
            pairs += 1
            part = bipartition(g)
            if part is not None:
                # Balanced inflow: equal X-side and Y-side totals
                # reflect perfectly.
                u, v = pair
                alpha = [rat(1), rat(1) if part.side(u) != part.side(v)
                         else rat(-1)]
                beta = report.sigma.mul_vec(alpha)
                ok &= beta == alpha
    triples = 0
    for n in (4, 5):
        for i, g in enumerate(enumerate_connected(n)):
            if n == 5 and i % 16:
                continue
            for tri in combinations(range(1, n + 1), 3):
                inst = WalkInstance(g, tri, (rat(1), rat(0), rat(0)), -1)
                rep = scattering(inst)
                ok &= rep.orthogonal and rep.matches_prediction
                triples += 1
    _report(5, ok, f"sigma orthogonal and as predicted on {pairs} boundary "
            f"pairs and {triples} boundary triples; balanced bipartite "
            "inflows reflect, exact")


def test_criterion_6_kirchhoff_audits(catalog_sweep):
    ok = True
    audited = 0
    for n in range(2, 6):
        for g, pair, configs, _ in catalog_sweep[n]:
            for cfg in configs:
                inst = WalkInstance(g, cfg.boundary, (rat(1), rat(0)), -1)
                report = kirchhoff_audit(inst, cfg.psi)
                ok &= report.ok
                ok &= any(c.name == "per-vertex difference constancy"
                          and c.ok for c in report.checks)
                audited += 1
    _report(6, ok, f"Kirchhoff/pseudo-Kirchhoff laws and per-vertex arc "
            f"difference constancy on {audited} stationary states, exact")


def test_criterion_7_factor_oracles():
    ok = True
    graphs = 0
    for n in range(2, 6):
        for g in enumerate_connected(n):
            ok &= spanning_tree_count(g, "enum") == \
                spanning_tree_count(g, "det")
            for u in range(1, n + 1):
                ok &= odd_unicyclic_sums(g, u, "enum") == \
                    odd_unicyclic_sums(g, u, "det")
                for v in range(u + 1, n + 1):
                    ok &= two_forest_count(g, u, v, "enum") == \
                        two_forest_count(g, u, v, "det")
            graphs += 1
    for length in (3, 5, 7, 9):
        ok &= abs(cycle_incidence_check(length)) == rat(2)
    for length in (4, 6, 8):
        ok &= cycle_incidence_check(length) == rat(0)
    _report(7, ok, f"enumerations equal determinants on {graphs} graphs; "
            "cycle incidence determinants are +-2 (odd) and 0 (even)")


def test_criterion_8_simulator_convergence(catalog_sweep):
    start = time.perf_counter()
    inst = WalkInstance(complete_graph(3), (1, 3), (rat(9), rat(9)), -1)
    amps = step(TruncatedState.initial(inst, 4), inst).amplitudes()
    ok = all(amps[a] == (-6.0 if a[0] in (1, 3) else 0.0)
             for a in inst.graph.arcs)
    ok &= amps[(1, ("t", 0, 1))] == 3.0 and amps[(3, ("t", 1, 1))] == 3.0
    worst = 0.0
    count = 0
    for n in range(2, 5):
        for g, pair, configs, _ in catalog_sweep[n]:
            for cfg in configs:
                inst = WalkInstance(g, cfg.boundary, (rat(1), rat(0)), -1)
                trace = simulate(inst, 2000, horizon=2002, exact=cfg.psi,
                                 residual_stop=None)
                worst = max(worst, trace.final_distance)
                count += 1
    elapsed = time.perf_counter() - start
    ok &= worst < 1e-6 and elapsed < 60
    _report(8, ok, f"step-1 boundary pattern exact; {count} instances within "
            f"{worst:.1e} of the exact state at T=2000, {elapsed:.1f}s")
