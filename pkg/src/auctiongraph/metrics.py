"""Quality metrics for a sparsified selection.

Degree statistics use the projected undirected convention: both orientations
of a pair collapse to one edge, counted once per endpoint.  The
complementary-slackness residual is only computed when a price state is
available (the 1-matching and engine paths); the round-based and greedy
methods carry no coherent global dual state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import BipartiteProblem, WeightedGraph


@dataclass
class MetricsReport:
    total_selected_weight: float
    degree_histogram: dict
    degree_mean: float
    degree_variance: float
    is_symmetric: bool
    iterations: int
    wall_time_seconds: float
    epsilon_used: float | None
    cs_residual_max: float | None

    def to_text(self):
        lines = [
            f"total_selected_weight: {self.total_selected_weight!r}",
            f"degree_mean: {self.degree_mean!r}",
            f"degree_variance: {self.degree_variance!r}",
            f"is_symmetric: {self.is_symmetric}",
            f"iterations: {self.iterations}",
            f"wall_time_seconds: {self.wall_time_seconds!r}",
            f"epsilon_used: {self.epsilon_used!r}",
            f"cs_residual_max: {self.cs_residual_max!r}",
        ]
        for d in sorted(self.degree_histogram):
            lines.append(f"degree_histogram.{d}: {self.degree_histogram[d]}")
        return "\n".join(lines) + "\n"


def _weight_lookup(source):
    if isinstance(source, BipartiteProblem):
        return source.weight_of, source.buyer_count + source.object_count
    return source.weight_of, source.node_count


def evaluate(source, selection, prices=None, iterations=0,
             wall_time_seconds=0.0, epsilon_used=None):
    """Build a MetricsReport for a selection over a graph or bipartite problem.

    For a WeightedGraph source (the shadow-conversion case), degrees are the
    projected undirected degrees.  For a genuinely bipartite source, buyers
    and objects are separate nodes and the pairs are counted as-is.
    """
    if isinstance(source, BipartiteProblem) and source.source_graph is not None:
        source_graph = source.source_graph
    else:
        source_graph = source

    if isinstance(source_graph, WeightedGraph):
        n = source_graph.node_count
        pairs = selection.projected_pairs()
        deg = np.zeros(n, dtype=np.int64)
        total = 0.0
        for i, j in pairs:
            deg[i] += 1
            deg[j] += 1
            total += source_graph.weight_of(i, j)
    else:
        # bipartite instance: no projection, two disjoint node populations
        n = source_graph.buyer_count + source_graph.object_count
        deg = np.concatenate([selection.buyer_degree, selection.object_degree])
        total = sum(source_graph.weight_of(i, j) for i, j in selection.pairs)

    hist = {}
    for d in deg:
        hist[int(d)] = hist.get(int(d), 0) + 1
    mean = float(deg.mean()) if n else 0.0
    var = float(((deg - mean) ** 2).mean()) if n else 0.0  # population variance

    residual = None
    eps = epsilon_used
    if prices is not None:
        residual = cs_residual_max(source, selection, prices)
        if eps is None:
            eps = prices.epsilon

    return MetricsReport(
        total_selected_weight=float(total),
        degree_histogram=hist,
        degree_mean=mean,
        degree_variance=var,
        is_symmetric=selection.is_symmetric(),
        iterations=int(iterations),
        wall_time_seconds=float(wall_time_seconds),
        epsilon_used=eps,
        cs_residual_max=residual,
    )


def cs_residual_max(source, selection, prices):
    """Largest violation of epsilon-complementary slackness.

    For each selected pair (i, j): max over i's adjacent objects k of
    (a_ik - p_k) minus (a_ij - p_j), where k ranges over objects the buyer
    does not already hold (swapping onto an object it holds is not a move).
    A terminated auction keeps this at or below epsilon.
    """
    if isinstance(source, BipartiteProblem):
        problem = source
    else:
        from .graph import to_bipartite_shadow
        problem = to_bipartite_shadow(source)
    p = prices.prices
    held = {}
    for i, j in selection.pairs:
        held.setdefault(i, set()).add(j)
    worst = 0.0
    for i, j in selection.pairs:
        objs, wts = problem.adj(i)
        best = -np.inf
        for o, w in zip(objs, wts):
            if int(o) != j and int(o) in held[i]:
                continue
            best = max(best, float(w) - float(p[o]))
        worst = max(worst, best - (problem.weight_of(i, j) - float(p[j])))
    return worst
