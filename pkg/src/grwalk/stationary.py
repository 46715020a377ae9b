"""Exact stationary states on internal arcs, scattering and comfortability.

The walk restricted to the internal arc set satisfies a linear fixed-point
equation psi = E psi + rho, where E applies one step of the (signed, for
phase -1) Grover coin at every internal vertex and rho injects the constant
tail inflow.  Everything here is exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graphs import bipartition
from .ratlin import RAT_ONE, RAT_ZERO, RatMatrix, SingularMatrixError, rat


@dataclass
class ArcField:
    """A rational amplitude on every internal symmetric arc."""

    graph: object
    values: dict

    def __post_init__(self):
        if set(self.values) != set(self.graph.arcs):
            raise ValueError("arc field must cover exactly the internal arcs")

    @classmethod
    def from_vector(cls, graph, vec):
        return cls(graph, dict(zip(graph.arcs, vec)))

    def vector(self):
        return [self.values[a] for a in self.graph.arcs]

    def __getitem__(self, arc):
        return self.values[arc]

    def items(self):
        return self.values.items()

    def __eq__(self, other):
        if not isinstance(other, ArcField):
            return NotImplemented
        return self.graph == other.graph and self.values == other.values


def coin_sign(phase):
    """The global sign applied by the internal coin: -1 for phase -1."""
    return rat(-1) if phase == -1 else RAT_ONE


def grover_matrix(r):
    """Gr(r) = (2/r) J - I, the degree-r Grover coin."""
    w = rat(2, r)
    return RatMatrix([[w - (RAT_ONE if i == j else RAT_ZERO) for j in range(r)]
                      for i in range(r)])


def internal_operator(inst):
    """E on C^{A0}: entry (a, b) = eps (2/deg~(o(a)) - delta_{a, rev b})
    whenever o(a) = t(b), with the phase sign eps folded in."""
    g = inst.graph
    eps = coin_sign(inst.phase)
    arcs = g.arcs
    mat = RatMatrix.zeros(len(arcs), len(arcs))
    for i, (u, t) in enumerate(arcs):
        w = rat(2, inst.tilde_degree(u))
        for x in g.neighbors(u):
            b = (x, u)
            j = g.arc_index(b)
            val = w - (RAT_ONE if x == t else RAT_ZERO)
            if val != 0:
                mat.data[i][j] = eps * val
    return mat


def source_vector(inst):
    """rho = one coin application to the constant inflow, on internal arcs."""
    g = inst.graph
    eps = coin_sign(inst.phase)
    rho = [RAT_ZERO] * len(g.arcs)
    for j, v in enumerate(inst.boundary):
        w = eps * rat(2, inst.tilde_degree(v)) * inst.inflow[j]
        for x in g.neighbors(v):
            rho[g.arc_index((v, x))] = w
    return rho


def _fixed_point_matrix(inst):
    return RatMatrix.identity(2 * inst.graph.m) - internal_operator(inst)


def stationary_state(inst):
    """The exact stationary state psi on A0, via (I - E) psi = rho.

    I - E may have a kernel: confined eigenstates supported on internal
    cycles that the tail inflow never excites.  Starting from the zero
    state the dynamics stays orthogonal to that kernel, so the limit is
    the minimum-norm solution; that is what is returned.  An inconsistent
    source (no stationary state at all) raises SingularMatrixError,
    surfaced to the caller, never handled silently.
    """
    a = _fixed_point_matrix(inst)
    psi = a.solve_min_norm(source_vector(inst))
    return ArcField.from_vector(inst.graph, psi)


def outflow(inst, psi, inflow=None):
    """The outflow vector beta: one coin application at each boundary vertex,
    including the inbound tail amplitude."""
    g = inst.graph
    eps = coin_sign(inst.phase)
    alpha = inst.inflow if inflow is None else tuple(rat(a) for a in inflow)
    beta = []
    for j, v in enumerate(inst.boundary):
        incoming = sum((psi[(x, v)] for x in g.neighbors(v)), RAT_ZERO)
        w = rat(2, inst.tilde_degree(v))
        beta.append(eps * (w * (alpha[j] + incoming) - alpha[j]))
    return beta


def comfortability_direct(psi):
    """Half the squared amplitude mass of psi over all internal arcs."""
    return rat(1, 2) * sum((v * v for v in psi.values.values()), RAT_ZERO)


def boundary_sort_order(inst, part=None):
    """Boundary indices reordered X-side first (stable), for a bipartite
    internal graph; identity order when non-bipartite."""
    if part is None:
        part = bipartition(inst.graph)
    if part is None:
        return list(range(inst.r))
    xs = [j for j, v in enumerate(inst.boundary) if v in part.X]
    ys = [j for j, v in enumerate(inst.boundary) if v in part.Y]
    return xs + ys


def predicted_scattering(inst):
    """The scattering matrix predicted by the surface theorem (phase -1 only).

    Identity for a non-bipartite internal graph; otherwise the conjugated
    Grover matrix tau = -S Gr(r) S with S = diag(I_k, -I_{r-k}), stated in
    the basis with the X-side boundary vertices first.
    """
    if inst.phase != -1:
        raise ValueError("the surface scattering theorem applies to phase -1")
    part = bipartition(inst.graph)
    r = inst.r
    if part is None:
        return RatMatrix.identity(r)
    k = sum(1 for v in inst.boundary if v in part.X)
    s = RatMatrix.zeros(r, r)
    for i in range(r):
        s.data[i][i] = RAT_ONE if i < k else rat(-1)
    return (s * grover_matrix(r) * s).scale(-1)


@dataclass
class ScatteringReport:
    """Scattering matrix, outflow, and the surface-theorem comparison."""

    alpha: tuple
    beta: tuple
    sigma: RatMatrix          # in the user-declared boundary order
    sigma_sorted: RatMatrix   # conjugated into the X-side-first basis
    predicted: RatMatrix      # None when phase is +1
    sort_order: list
    orthogonal: bool
    matches_prediction: bool  # None when phase is +1
    classification: str       # None when phase is +1


def unit_stationary_states(inst):
    """Stationary states for each standard-basis inflow, sharing one
    matrix reduction; entry k is the state for inflow e_k."""
    r = inst.r
    a = _fixed_point_matrix(inst)
    columns = []
    for k in range(r):
        unit = [RAT_ONE if j == k else RAT_ZERO for j in range(r)]
        columns.append(source_vector(with_inflow(inst, unit)))
    return [ArcField.from_vector(inst.graph, sol)
            for sol in a.solve_min_norm_many(columns)]


def scattering(inst, unit_states=None):
    """Assemble sigma column-by-column from unit-inflow stationary solves."""
    g = inst.graph
    r = inst.r
    if unit_states is None:
        unit_states = unit_stationary_states(inst)
    sigma = RatMatrix.zeros(r, r)
    for k, psi in enumerate(unit_states):
        unit = [RAT_ONE if j == k else RAT_ZERO for j in range(r)]
        col = outflow(inst, psi, inflow=unit)
        for j in range(r):
            sigma.data[j][k] = col[j]
    beta = tuple(sigma.mul_vec(list(inst.inflow)))
    orth = (sigma.transpose() * sigma).is_identity()
    part = bipartition(g)
    order = boundary_sort_order(inst, part)
    perm = RatMatrix.zeros(r, r)
    for new, old in enumerate(order):
        perm.data[new][old] = RAT_ONE
    sigma_sorted = perm * sigma * perm.transpose()
    if inst.phase == -1:
        predicted = predicted_scattering(inst)
        matches = sigma_sorted == predicted
        if part is None:
            classification = "perfect-reflection"
        elif predicted.mul_vec([inst.inflow[j] for j in order]) == \
                [inst.inflow[j] for j in order]:
            classification = "degenerate-identity"
        else:
            classification = "bipartite-tau"
    else:
        predicted = None
        matches = None
        classification = None
    return ScatteringReport(tuple(inst.inflow), beta, sigma, sigma_sorted,
                            predicted, order, orth, matches, classification)


def with_inflow(inst, inflow):
    """The same tailed graph with a different inflow vector."""
    from .graphs import WalkInstance
    return WalkInstance(inst.graph, inst.boundary, tuple(inflow), inst.phase)
