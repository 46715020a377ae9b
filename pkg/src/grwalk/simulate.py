"""Float time-domain simulation of the walk on the graph plus truncated tails.

The constant-inflow dynamics is iterated in double precision: a signed
Grover coin at every internal vertex, free propagation on the tails, and
the deepest inbound tail arc refreshed to the inflow each step so the
tail feeds the graph forever.  With truncation depth L = T + 2 the
missing tail beyond the horizon cannot influence any internal arc within
T steps (amplitudes propagate at speed one), so the trace on the internal
arcs is exact up to float rounding.

Tail vertices are labelled ("t", j, d): depth d >= 1 on the tail attached
to the j-th boundary vertex.
"""
from __future__ import annotations

import csv
import functools
from dataclasses import dataclass, field

import numpy as np

from .stationary import internal_operator


@functools.lru_cache(maxsize=None)
def _float_operator(inst):
    e = internal_operator(inst)
    mat = np.array([[float(x) for x in row] for row in e.data])
    # Source of a unit inflow per tail, kept separate so the inbound tail
    # amplitude can vary during a step.
    n_arcs = 2 * inst.graph.m
    unit_sources = np.zeros((n_arcs, inst.r))
    eps = -1.0 if inst.phase == -1 else 1.0
    g = inst.graph
    for j, v in enumerate(inst.boundary):
        w = eps * 2.0 / inst.tilde_degree(v)
        for x in g.neighbors(v):
            unit_sources[g.arc_index((v, x)), j] = w
    return mat, unit_sources


@dataclass
class TruncatedState:
    """Walker amplitudes on the internal arcs plus tails cut at depth L."""

    instance: object
    horizon: int
    internal: np.ndarray            # indexed by the graph's arc order
    tails_in: list = field(default_factory=list)   # [0] = arc entering the graph
    tails_out: list = field(default_factory=list)  # [0] = arc leaving the graph

    @classmethod
    def initial(cls, inst, horizon):
        """The constant-inflow start: alpha_j on every inbound tail arc."""
        tails_in = [np.full(horizon, float(a)) for a in inst.inflow]
        tails_out = [np.zeros(horizon) for _ in inst.boundary]
        return cls(inst, horizon, np.zeros(2 * inst.graph.m),
                   tails_in, tails_out)

    def amplitudes(self):
        """Amplitude of every arc of the truncated tailed graph."""
        g = self.instance.graph
        out = {a: self.internal[i] for i, a in enumerate(g.arcs)}
        for j, v in enumerate(self.instance.boundary):
            nodes = [v] + [("t", j, d) for d in range(1, self.horizon + 1)]
            for d in range(self.horizon):
                out[(nodes[d + 1], nodes[d])] = self.tails_in[j][d]
                out[(nodes[d], nodes[d + 1])] = self.tails_out[j][d]
        return out


def step(state, inst):
    """One application of the time evolution: signed Grover coins at the
    internal vertices, pass-through on tail vertices, constant inflow
    refreshed at the horizon."""
    g = inst.graph
    mat, unit_sources = _float_operator(inst)
    entering = np.array([t[0] for t in state.tails_in])
    internal = mat @ state.internal + unit_sources @ entering
    eps = -1.0 if inst.phase == -1 else 1.0
    tails_in = []
    tails_out = []
    for j, v in enumerate(inst.boundary):
        # Outbound arc at the boundary vertex: one coin application over
        # the internal in-arcs plus the inbound tail arc.
        w = 2.0 / inst.tilde_degree(v)
        incoming = sum(state.internal[g.arc_index((x, v))]
                       for x in g.neighbors(v))
        boundary_out = eps * (w * (entering[j] + incoming) - entering[j])
        new_in = np.empty(state.horizon)
        new_in[:-1] = state.tails_in[j][1:]
        new_in[-1] = float(inst.inflow[j])
        new_out = np.empty(state.horizon)
        new_out[0] = boundary_out
        new_out[1:] = state.tails_out[j][:-1]
        tails_in.append(new_in)
        tails_out.append(new_out)
    return TruncatedState(inst, state.horizon, internal, tails_in, tails_out)


@dataclass
class SimulationTrace:
    """Per-step internal snapshots, successive-step residuals, final state."""

    instance: object
    snapshots: list                 # internal-arc vectors, snapshots[0] = step 1
    residuals: list                 # sup-norm of successive differences on A0
    final: TruncatedState
    converged_at: int               # step index, or None if T was exhausted
    final_distance: float           # sup-norm to exact psi_inf, or None

    @property
    def steps(self):
        return len(self.snapshots)


def simulate(inst, steps, horizon=None, exact=None, residual_stop=1e-10):
    """Iterate the truncated dynamics for up to ``steps`` steps.

    Stops early once the internal residual drops below ``residual_stop``
    (pass None to always run the full count).  When ``exact`` (an exact
    stationary ArcField) is given, the final sup-norm distance to it is
    reported.
    """
    if steps < 1:
        raise ValueError("need at least one step")
    if horizon is None:
        horizon = steps + 2
    state = TruncatedState.initial(inst, horizon)
    snapshots = []
    residuals = []
    converged_at = None
    for k in range(1, steps + 1):
        new = step(state, inst)
        snapshots.append(new.internal.copy())
        residuals.append(float(np.max(np.abs(new.internal - state.internal))))
        state = new
        if residual_stop is not None and residuals[-1] < residual_stop:
            converged_at = k
            break
    distance = None
    if exact is not None:
        target = np.array([float(x) for x in exact.vector()])
        distance = float(np.max(np.abs(state.internal - target)))
    return SimulationTrace(inst, snapshots, residuals, state,
                           converged_at, distance)


def write_trace_csv(trace, path):
    """Trace export: one row per (step, internal arc), lexicographic arc
    order, with the step's residual repeated per row."""
    arcs = trace.instance.graph.arcs
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "arc_origin", "arc_terminus",
                         "amplitude", "residual"])
        for k, (snap, res) in enumerate(zip(trace.snapshots, trace.residuals),
                                        start=1):
            for i, (o, t) in enumerate(arcs):
                writer.writerow([k, o, t, repr(float(snap[i])), repr(res)])
