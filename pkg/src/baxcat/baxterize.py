"""Tensor-product graphs and the linear conserved-current constraint solver.

For channels a, b of rho x rho joined by the current object phi, the
admissible Boltzmann-weight ratio is

    A_b / A_a = (W_b + mu W_a) / (W_a + mu W_b),   W_x = Omega_rho^{rho x},

a Moebius function of mu built purely from twist data.  A spanning tree of
the tensor-product graph fixes every amplitude relative to the reference
channel; each extra edge closes a cycle whose consistency is checked by
polynomial-identity sampling.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .category import CategoryData, fusion_product, twist_edge_ratio
from .errors import DomainError, PoleError
from .ratfunc import RationalFunction
from .report import fmt_float

SOLVER_TOL = 1e-9

TREE_UNIQUE = "TREE_UNIQUE"
CYCLE_CONSISTENT = "CYCLE_CONSISTENT"
UNDERDETERMINED = "UNDERDETERMINED"
INCONSISTENT = "INCONSISTENT"


@dataclass(frozen=True)
class TensorProductGraph:
    """Channels of rho x rho as vertices, phi-fusion adjacency as edges.

    Self-loops are never stored (an a = b edge forces ratio 1 identically).
    `edges` are canonical undirected pairs (a < b unless only the reversed
    direction is admissible); `directed` holds the admissibility witnesses
    N_{a phi}^b != 0 as ordered pairs.
    """

    rho: int
    phi: int
    vertices: tuple
    edges: tuple
    directed: tuple
    oriented: bool

    def neighbours(self, a):
        out = []
        for x, y in self.edges:
            if x == a:
                out.append(y)
            elif y == a:
                out.append(x)
        return sorted(set(out))


@dataclass(frozen=True)
class CycleCheck:
    vertices: tuple          # cycle vertex list, closing edge last
    closing_edge: tuple
    residual: float
    samples: int


@dataclass
class AmplitudeSolution:
    cat: CategoryData
    graph: TensorProductGraph
    reference: int
    channels: tuple
    funcs: dict                      # channel -> RationalFunction
    verdict: str
    components: tuple
    cycles: tuple = ()
    tolerance: float = SOLVER_TOL

    @property
    def rho(self):
        return self.graph.rho

    @property
    def phi(self):
        return self.graph.phi

    def poles(self):
        out = []
        for ch in self.channels:
            out.extend(self.funcs[ch].poles())
        return out

    def to_dict(self) -> dict:
        def cpair(z):
            return [fmt_float(z.real), fmt_float(z.imag)]
        return {
            "family": self.cat.name,
            "rho": self.cat.display(self.graph.rho),
            "phi": self.cat.display(self.graph.phi),
            "verdict": self.verdict,
            "reference": self.cat.display(self.reference),
            "channels": [
                {"label": self.cat.display(ch),
                 "num": [cpair(z) for z in self.funcs[ch].num],
                 "den": [cpair(z) for z in self.funcs[ch].den]}
                for ch in self.channels
            ],
            "poles": [cpair(z) for z in sorted(self.poles(), key=lambda z: (z.real, z.imag))],
            "cycles": [
                {"vertices": [self.cat.display(v) for v in c.vertices],
                 "edge": [self.cat.display(c.closing_edge[0]), self.cat.display(c.closing_edge[1])],
                 "residual": fmt_float(c.residual),
                 "samples": c.samples}
                for c in self.cycles
            ],
            "components": [[self.cat.display(v) for v in comp] for comp in self.components],
        }


def _channels_of(cat: CategoryData, rho: int):
    if cat.rules is not None:
        return tuple(fusion_product(cat, rho, rho))
    if cat.channels is not None and rho == cat.rho_declared:
        return tuple(cat.channels)
    raise DomainError(f"{cat.name}: channels of {rho} x {rho} are not declared")


def build_tp_graph(cat: CategoryData, rho, phi) -> TensorProductGraph:
    """Vertices = channels of rho x rho; edge (a, b) when N_{a phi}^b != 0."""
    rho, phi = cat.check_label(rho), cat.check_label(phi)
    if cat.rules is not None:
        if not cat.rules.N[phi, rho, rho]:
            raise DomainError(
                f"current termination fails: {cat.display(rho)} is not in "
                f"{cat.display(phi)} x {cat.display(rho)}")
        verts = _channels_of(cat, rho)
        directed = tuple((a, b) for a, b in itertools.product(verts, repeat=2)
                         if a != b and cat.rules.N[a, phi, b])
        oriented = any((b, a) not in directed for a, b in directed)
    else:
        if cat.tp_adjacency is None or phi not in cat.tp_adjacency:
            raise DomainError(f"{cat.name}: no declared tensor-product graph for phi="
                              f"{cat.display(phi)}")
        verts = _channels_of(cat, rho)
        directed = tuple(cat.tp_adjacency[phi])
        oriented = False
    # canonical edge list: (min, max) unless only the reverse is admissible
    keys = sorted({frozenset(e) for e in directed}, key=lambda s: tuple(sorted(s)))
    canon = []
    for key in keys:
        a, b = sorted(key)
        canon.append((a, b) if (a, b) in directed else (b, a))
    return TensorProductGraph(rho, phi, verts, tuple(canon), directed, oriented)


def edge_ratio(cat: CategoryData, rho, a, b, mu) -> complex:
    """A_b/A_a on an edge: (x + mu)/(1 + mu x) with x the twist-edge ratio.

    Degenerate edges with x = +-1 give the constant +-1 (the linear factors
    share their root there).
    """
    x = twist_edge_ratio(cat, rho, a, b)
    mu = complex(mu)
    if abs(x - 1.0) < 1e-14:
        return 1.0 + 0j
    if abs(x + 1.0) < 1e-14:
        return -1.0 + 0j
    den = 1 + mu * x
    if abs(den) < 1e-12 * max(1.0, abs(mu)):
        raise PoleError(f"edge ratio pole at mu={mu}", pole=-1 / x)
    return (x + mu) / den


def _edge_ratio_func(cat, rho, a, b) -> RationalFunction:
    return RationalFunction.linear_ratio(twist_edge_ratio(cat, rho, a, b))


def _sample_points(funcs, need: int):
    """Deterministic off-pole sample points: golden-angle phases on a small
    set of radii, rejecting near-pole candidates."""
    golden = (math.sqrt(5) - 1) / 2
    radii = (0.47, 0.83, 1.31, 2.17, 3.59)
    pts = []
    j = 0
    while len(pts) < need and j < 200 * need:
        mu = radii[j % len(radii)] * np.exp(2j * math.pi * ((j * golden) % 1.0))
        j += 1
        try:
            for fn in funcs:
                fn.evaluate(mu, pole_tol=1e-8)
        except PoleError:
            continue
        pts.append(complex(mu))
    return pts


def solve_central(cat: CategoryData, rho, phi, tol: float = SOLVER_TOL,
                  tree: str = "bfs") -> AmplitudeSolution:
    """Propagate amplitude ratios over a spanning tree and classify the rest.

    Every non-tree edge closes a cycle; the closing constraint is a rational
    identity of degree bounded by the edge count, so agreement at 2E+1
    off-pole sample points decides it exactly up to fp noise.
    """
    graph = build_tp_graph(cat, rho, phi)
    verts = graph.vertices
    adj = {v: graph.neighbours(v) for v in verts}

    if tree not in ("bfs", "dfs"):
        raise DomainError(f"unknown spanning-tree strategy {tree!r}")
    funcs = {}
    parent = {}
    components = []
    for start in verts:
        if start in funcs:
            continue
        comp = [start]
        funcs[start] = RationalFunction.one()
        pending = [start]
        while pending:
            v = pending.pop(0) if tree == "bfs" else pending.pop()
            for w in adj[v]:
                if w in funcs:
                    continue
                funcs[w] = funcs[v] * _edge_ratio_func(cat, graph.rho, v, w)
                parent[w] = v
                comp.append(w)
                pending.append(w)
        components.append(tuple(sorted(comp)))
    components = tuple(sorted(components))

    def tree_path(a, b):
        def root_path(v):
            path = [v]
            while v in parent:
                v = parent[v]
                path.append(v)
            return path
        pa, pb = root_path(a), root_path(b)
        sa, sb = set(pa), set(pb)
        meet = next(v for v in pa if v in sb)
        return pa[: pa.index(meet) + 1] + list(reversed(pb[: pb.index(meet)]))

    tree_edges = {frozenset((v, parent[v])) for v in parent}
    closing = [e for e in graph.edges if frozenset(e) not in tree_edges]
    nsamp = 2 * max(1, len(graph.edges)) + 1
    cycles = []
    for a, b in closing:
        ratio = _edge_ratio_func(cat, graph.rho, a, b)
        pts = _sample_points([funcs[a], funcs[b], ratio], nsamp)
        res = 0.0
        for mu in pts:
            res = max(res, abs(funcs[b].evaluate(mu) - funcs[a].evaluate(mu) * ratio.evaluate(mu)))
        cyc = tree_path(a, b) if parent else [a, b]
        cycles.append(CycleCheck(tuple(sorted(set(cyc))), (a, b), res, len(pts)))

    if any(c.residual >= tol for c in cycles):
        verdict = INCONSISTENT
    elif len(components) > 1:
        verdict = UNDERDETERMINED
    elif cycles:
        verdict = CYCLE_CONSISTENT
    else:
        verdict = TREE_UNIQUE

    reference = 0 if 0 in verts else min(verts)
    if funcs[reference].degree > 0 or abs(funcs[reference].evaluate(1.0) - 1.0) > 1e-12:
        # renormalise so the reference channel is exactly 1 (it already is
        # when the reference seeds its component)
        ref = funcs[reference]
        funcs = {ch: fn * ref.inverse() for ch, fn in funcs.items()}
        funcs[reference] = RationalFunction.one()
    return AmplitudeSolution(cat, graph, reference, verts, funcs, verdict,
                             components, tuple(cycles), tol)


def amplitude_at(solution: AmplitudeSolution, chi, mu) -> complex:
    """A_chi(mu) relative to the reference channel."""
    if chi not in solution.funcs:
        raise DomainError(f"{chi} is not a channel of the solution")
    if chi == solution.reference:
        return 1.0 + 0j
    return solution.funcs[chi].evaluate(mu)


@dataclass(frozen=True)
class ClassifyRow:
    rho: int
    phi: int
    verdict: str
    n_vertices: int
    n_edges: int
    n_cycles: int


def classify_pairs(cat: CategoryData):
    """Verdict of solve_central for every simple rho and admissible phi != 0."""
    rows = []
    if cat.rules is not None:
        rhos = range(cat.n_objects)
    else:
        rhos = [cat.rho_declared]
    for rho in rhos:
        if cat.rules is not None:
            phis = [p for p in range(1, cat.n_objects) if cat.rules.N[p, rho, rho]]
        else:
            phis = sorted(cat.tp_adjacency)
        for phi in phis:
            sol = solve_central(cat, rho, phi)
            g = sol.graph
            ncyc = len(g.edges) - (len(g.vertices) - len(sol.components))
            rows.append(ClassifyRow(rho, phi, sol.verdict,
                                    len(g.vertices), len(g.edges), ncyc))
    return rows
