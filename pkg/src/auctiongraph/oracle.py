"""Exact small-instance solvers used to verify the auction heuristics.

These are deliberately independent of the auction code paths: the assignment
oracle goes through SciPy's Hungarian solver (with an exhaustive-search
cross-check for tiny instances) and the b-matching oracle enumerates edge
subsets or, above the enumeration guard, reduces to maximum-weight matching
via the standard node-splitting gadget.
"""

from __future__ import annotations

import itertools

import networkx as nx
import numpy as np
from scipy.optimize import linear_sum_assignment

MAX_ENUM_BUYERS = 10
MAX_ENUM_EDGES = 20
MAX_GADGET_NODES = 64


class OracleSizeError(ValueError):
    """Instance exceeds what the exact solver is willing to chew through."""


def exact_assignment(problem):
    """Maximum-weight assignment restricted to existing edges.

    Maximizes cardinality first (a perfect matching when one exists), then
    weight.  Returns (optimal weight, list of (buyer, object) pairs).
    """
    n_b, n_o = problem.buyer_count, problem.object_count
    if n_b > MAX_ENUM_BUYERS:
        raise OracleSizeError(f"buyer count {n_b} exceeds {MAX_ENUM_BUYERS}")
    top = problem.max_weight()
    forbidden = -(top + 1.0) * (max(n_b, n_o) + 1)
    cost = np.full((n_b, n_o), forbidden, dtype=np.float64)
    for b, o, w in zip(problem.buyers, problem.objects, problem.weights):
        cost[b, o] = w
    rows, cols = linear_sum_assignment(cost, maximize=True)
    pairs = [(int(r), int(c)) for r, c in zip(rows, cols)
             if problem.has_edge(int(r), int(c))]
    weight = sum(problem.weight_of(r, c) for r, c in pairs)
    return weight, pairs


def exact_assignment_bruteforce(problem):
    """Exhaustive search over injective buyer -> object maps (tiny instances).

    Used in tests to validate :func:`exact_assignment`; enumerates every
    partial assignment restricted to existing edges and keeps the
    (cardinality, weight)-lexicographic maximum.
    """
    n_b = problem.buyer_count
    if n_b > 8:
        raise OracleSizeError("brute force limited to 8 buyers")
    adj = [list(zip(*problem.adj(i))) if problem.degree(i) else []
           for i in range(n_b)]
    best = (-1, -1.0)

    def recurse(i, used, card, weight):
        nonlocal best
        if i == n_b:
            if (card, weight) > best:
                best = (card, weight)
            return
        recurse(i + 1, used, card, weight)  # leave buyer i unmatched
        for obj, w in adj[i]:
            if obj not in used:
                used.add(obj)
                recurse(i + 1, used, card + 1, weight + w)
                used.remove(obj)

    recurse(0, set(), 0, 0.0)
    return best[1]


def exact_bmatching(graph, b):
    """Maximum total weight over edge subsets with every degree <= b.

    Enumerates all subsets up to the edge guard; larger instances (bounded
    by the gadget node guard) use the node-splitting reduction to a
    maximum-weight matching solved by networkx.
    """
    if b < 1:
        raise ValueError("b must be >= 1")
    m = graph.edge_count
    if m <= MAX_ENUM_EDGES:
        return _bmatching_enumerate(graph, b)
    if graph.node_count <= MAX_GADGET_NODES:
        return _bmatching_gadget(graph, b)
    raise OracleSizeError(
        f"{m} edges / {graph.node_count} nodes beyond exact-solver guards")


def _bmatching_enumerate(graph, b):
    edges = list(graph.edges())
    n = graph.node_count
    best = 0.0
    for mask in range(1 << len(edges)):
        deg = [0] * n
        total = 0.0
        ok = True
        k = mask
        idx = 0
        while k:
            if k & 1:
                i, j, w = edges[idx]
                deg[i] += 1
                deg[j] += 1
                if deg[i] > b or deg[j] > b:
                    ok = False
                    break
                total += w
            k >>= 1
            idx += 1
        if ok and total > best:
            best = total
    return best


def _bmatching_gadget(graph, b):
    # Split node v into b copies; edge {u, v} with weight w becomes the path
    # gadget u_i - e_uv (w), e_uv - e_vu (w), e_vu - v_j (w).  A max-weight
    # matching picks either the middle edge (edge unselected, +w) or both
    # outer edges (edge selected, +2w), so matching weight = W_total +
    # selected weight and node copies enforce the degree cap.
    g = nx.Graph()
    for k, (i, j, w) in enumerate(graph.edges()):
        eu = ("e", k, 0)
        ev = ("e", k, 1)
        g.add_edge(eu, ev, weight=w)
        for c in range(b):
            g.add_edge(("v", i, c), eu, weight=w)
            g.add_edge(("v", j, c), ev, weight=w)
    matching = nx.max_weight_matching(g)
    matched = {}
    for a, c in matching:
        matched[a] = c
        matched[c] = a
    total = 0.0
    for k, (i, j, w) in enumerate(graph.edges()):
        eu = ("e", k, 0)
        ev = ("e", k, 1)
        u_side = matched.get(eu, (None,))[0] == "v"
        v_side = matched.get(ev, (None,))[0] == "v"
        if u_side and v_side:
            total += w
    return total


def exact_bmatching_edges(graph, b):
    """Like :func:`exact_bmatching` but also returns one optimal edge set.

    Enumeration-only; used for fixture generation via the CLI.
    """
    edges = list(graph.edges())
    if len(edges) > MAX_ENUM_EDGES:
        raise OracleSizeError("edge set enumeration limited to "
                              f"{MAX_ENUM_EDGES} edges")
    n = graph.node_count
    best = (0.0, ())
    for subset_size in range(len(edges) + 1):
        for combo in itertools.combinations(range(len(edges)), subset_size):
            deg = [0] * n
            total = 0.0
            ok = True
            for idx in combo:
                i, j, w = edges[idx]
                deg[i] += 1
                deg[j] += 1
                if deg[i] > b or deg[j] > b:
                    ok = False
                    break
                total += w
            if ok and total > best[0]:
                best = (total, combo)
    return best[0], [edges[idx][:2] for idx in best[1]]
