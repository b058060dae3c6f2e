"""Core graph data types: weighted graphs, bipartite auction problems, edge selections.

Node ids are dense 0-based integers.  Undirected graphs store each edge once
under the canonical (min, max) key; directed views are synthesized on demand.
"""

from __future__ import annotations

import numpy as np


class GraphError(ValueError):
    """Invalid graph structure (bad ids, self-loop, duplicate or negative edge)."""


class SelectionError(ValueError):
    """Edge selection refers to a pair with no corresponding source edge."""


class DegreeCapError(ValueError):
    """Adding a pair would push a node past its degree cap."""


class WeightedGraph:
    """Node-indexed weighted adjacency.

    Weights must be non-negative and finite; self-loops are rejected.  A
    weight-0 edge is a real edge (it exists and can be selected), distinct
    from an absent edge.
    """

    def __init__(self, node_count, src, dst, weight, directed=False):
        if node_count < 1:
            raise GraphError("node_count must be >= 1")
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        weight = np.asarray(weight, dtype=np.float64)
        if not (len(src) == len(dst) == len(weight)):
            raise GraphError("src/dst/weight length mismatch")
        if len(src):
            if src.min(initial=0) < 0 or dst.min(initial=0) < 0:
                raise GraphError("negative node id")
            if src.max(initial=0) >= node_count or dst.max(initial=0) >= node_count:
                raise GraphError("node id out of range")
            if np.any(src == dst):
                raise GraphError("self-loops are not allowed")
            if not np.all(np.isfinite(weight)):
                raise GraphError("non-finite edge weight")
            if np.any(weight < 0):
                raise GraphError("negative edge weight")
        if not directed:
            # canonical storage: src < dst
            lo = np.minimum(src, dst)
            hi = np.maximum(src, dst)
            src, dst = lo, hi
        keys = src * node_count + dst
        if len(np.unique(keys)) != len(keys):
            raise GraphError("duplicate edge")
        order = np.argsort(keys, kind="stable")
        self.node_count = int(node_count)
        self.directed = bool(directed)
        self.src = src[order]
        self.dst = dst[order]
        self.weight = weight[order]
        self._indptr = None
        self._nbr = None
        self._nw = None
        self._wmap = None

    @classmethod
    def from_edges(cls, node_count, edges, directed=False):
        """Build from an iterable of (src, dst, weight) triples."""
        if edges:
            src, dst, w = zip(*edges)
        else:
            src, dst, w = (), (), ()
        return cls(node_count, src, dst, w, directed=directed)

    @property
    def edge_count(self):
        """Number of stored edges (undirected edges counted once)."""
        return len(self.src)

    @property
    def directed_edge_count(self):
        """Adjacency-matrix nonzero count: each undirected edge counts twice."""
        return self.edge_count if self.directed else 2 * self.edge_count

    def edges(self):
        """Iterate stored (src, dst, weight) triples."""
        for i in range(len(self.src)):
            yield int(self.src[i]), int(self.dst[i]), float(self.weight[i])

    def _build_adjacency(self):
        n = self.node_count
        if self.directed:
            s, d, w = self.src, self.dst, self.weight
        else:
            s = np.concatenate([self.src, self.dst])
            d = np.concatenate([self.dst, self.src])
            w = np.concatenate([self.weight, self.weight])
        order = np.lexsort((d, s))
        s, d, w = s[order], d[order], w[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, s + 1, 1)
        np.cumsum(indptr, out=indptr)
        self._indptr, self._nbr, self._nw = indptr, d, w

    def neighbors(self, i):
        """Return (neighbor ids, weights) arrays for node i, ids ascending."""
        if self._indptr is None:
            self._build_adjacency()
        lo, hi = self._indptr[i], self._indptr[i + 1]
        return self._nbr[lo:hi], self._nw[lo:hi]

    def degree(self, i):
        if self._indptr is None:
            self._build_adjacency()
        return int(self._indptr[i + 1] - self._indptr[i])

    def weight_of(self, i, j):
        """Weight of edge (i, j); raises KeyError if absent."""
        if self._wmap is None:
            wmap = {}
            for s, d, w in self.edges():
                wmap[(s, d)] = w
                if not self.directed:
                    wmap[(d, s)] = w
            self._wmap = wmap
        return self._wmap[(i, j)]

    def has_edge(self, i, j):
        try:
            self.weight_of(i, j)
            return True
        except KeyError:
            return False

    def max_weight(self):
        return float(self.weight.max()) if len(self.weight) else 0.0

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"WeightedGraph(n={self.node_count}, edges={self.edge_count}, {kind})"


class BipartiteProblem:
    """Buyers, objects and weighted buyer->object edges: the auction's operand.

    Buyer and object id spaces are disjoint by construction (an id means a
    buyer or an object depending on position).  When built from a unipartite
    graph via :func:`to_bipartite_shadow`, object j is the shadow of node j,
    so ids coincide across the two spaces and no offset arithmetic is needed.
    """

    def __init__(self, buyer_count, object_count, buyers, objects, weights,
                 source_graph=None):
        if buyer_count < 1 or object_count < 1:
            raise GraphError("buyer_count and object_count must be >= 1")
        buyers = np.asarray(buyers, dtype=np.int64)
        objects = np.asarray(objects, dtype=np.int64)
        weights = np.asarray(weights, dtype=np.float64)
        if len(buyers):
            if buyers.min() < 0 or buyers.max() >= buyer_count:
                raise GraphError("buyer id out of range")
            if objects.min() < 0 or objects.max() >= object_count:
                raise GraphError("object id out of range")
            if not np.all(np.isfinite(weights)) or np.any(weights < 0):
                raise GraphError("weights must be finite and non-negative")
        keys = buyers * object_count + objects
        if len(np.unique(keys)) != len(keys):
            raise GraphError("duplicate bipartite edge")
        order = np.argsort(keys, kind="stable")
        self.buyer_count = int(buyer_count)
        self.object_count = int(object_count)
        self.buyers = buyers[order]
        self.objects = objects[order]
        self.weights = weights[order]
        # source_graph is set when this problem is a shadow conversion; it
        # carries the shadow_origin mapping (ids coincide, so origin of a
        # bipartite pair (i, j) is the unipartite edge {i, j}).
        self.source_graph = source_graph
        indptr = np.zeros(buyer_count + 1, dtype=np.int64)
        np.add.at(indptr, self.buyers + 1, 1)
        np.cumsum(indptr, out=indptr)
        self.indptr = indptr
        self._wmap = None

    @classmethod
    def from_edges(cls, buyer_count, object_count, edges, source_graph=None):
        if edges:
            b, o, w = zip(*edges)
        else:
            b, o, w = (), (), ()
        return cls(buyer_count, object_count, b, o, w, source_graph=source_graph)

    @property
    def edge_count(self):
        return len(self.buyers)

    @property
    def directed_edge_count(self):
        """Nonzero count of the symmetric union adjacency (each pair twice)."""
        return 2 * self.edge_count

    def adj(self, buyer):
        """Return (object ids, weights) for one buyer, object ids ascending."""
        lo, hi = self.indptr[buyer], self.indptr[buyer + 1]
        return self.objects[lo:hi], self.weights[lo:hi]

    def degree(self, buyer):
        return int(self.indptr[buyer + 1] - self.indptr[buyer])

    def weight_of(self, buyer, obj):
        if self._wmap is None:
            self._wmap = {
                (int(b), int(o)): float(w)
                for b, o, w in zip(self.buyers, self.objects, self.weights)
            }
        return self._wmap[(buyer, obj)]

    def has_edge(self, buyer, obj):
        try:
            self.weight_of(buyer, obj)
            return True
        except KeyError:
            return False

    def max_weight(self):
        return float(self.weights.max()) if len(self.weights) else 0.0

    def shadow_origin(self, buyer, obj):
        """Map a bipartite pair back to the original unipartite edge (i, j)."""
        if self.source_graph is None:
            return None
        return (buyer, obj)

    def without_pairs(self, pairs):
        """Copy of this problem with the given (buyer, object) pairs removed."""
        if not pairs:
            return self
        keep = np.ones(len(self.buyers), dtype=bool)
        pairset = set(pairs)
        for k, (b, o) in enumerate(zip(self.buyers, self.objects)):
            if (int(b), int(o)) in pairset:
                keep[k] = False
        return BipartiteProblem(
            self.buyer_count, self.object_count,
            self.buyers[keep], self.objects[keep], self.weights[keep],
            source_graph=self.source_graph)

    def __repr__(self):
        return (f"BipartiteProblem(buyers={self.buyer_count}, "
                f"objects={self.object_count}, edges={self.edge_count})")


class EdgeSelection:
    """Set of selected (buyer, object) pairs with per-node degree bookkeeping.

    Symmetric (undirected) selections are represented by containing both
    orientations of every kept edge, so buyer-side degree equals the
    undirected degree.  ``enforce_object_cap=False`` is used for raw kNN-style
    selections where the greedy process caps only the picking side.
    """

    def __init__(self, buyer_count, object_count, degree_cap,
                 enforce_object_cap=True):
        if degree_cap < 1:
            raise ValueError("degree_cap must be >= 1")
        self.buyer_count = int(buyer_count)
        self.object_count = int(object_count)
        self.degree_cap = int(degree_cap)
        self.enforce_object_cap = bool(enforce_object_cap)
        self.pairs = set()
        self.buyer_degree = np.zeros(buyer_count, dtype=np.int64)
        self.object_degree = np.zeros(object_count, dtype=np.int64)

    def __contains__(self, pair):
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def add(self, buyer, obj):
        pair = (int(buyer), int(obj))
        if pair in self.pairs:
            raise SelectionError(f"duplicate pair {pair}")
        if self.buyer_degree[pair[0]] >= self.degree_cap:
            raise DegreeCapError(f"buyer {pair[0]} at cap {self.degree_cap}")
        if self.enforce_object_cap and self.object_degree[pair[1]] >= self.degree_cap:
            raise DegreeCapError(f"object {pair[1]} at cap {self.degree_cap}")
        self.pairs.add(pair)
        self.buyer_degree[pair[0]] += 1
        self.object_degree[pair[1]] += 1

    def discard(self, buyer, obj):
        pair = (int(buyer), int(obj))
        if pair in self.pairs:
            self.pairs.remove(pair)
            self.buyer_degree[pair[0]] -= 1
            self.object_degree[pair[1]] -= 1

    def is_symmetric(self):
        """True iff (i, j) selected implies (j, i) selected."""
        if self.buyer_count != self.object_count:
            return False
        return all((j, i) in self.pairs for i, j in self.pairs)

    def projected_pairs(self):
        """Canonical undirected pairs: both orientations collapse to one edge."""
        return {(min(i, j), max(i, j)) for i, j in self.pairs}

    def projected_degrees(self, node_count=None):
        """Distinct-neighbor degree per node over the projected undirected edges."""
        n = node_count if node_count is not None else max(
            self.buyer_count, self.object_count)
        deg = np.zeros(n, dtype=np.int64)
        for i, j in self.projected_pairs():
            deg[i] += 1
            deg[j] += 1
        return deg

    def multiplicity_degrees(self):
        """Row-plus-column degree: a reciprocal pair counts twice per endpoint."""
        n = max(self.buyer_count, self.object_count)
        deg = np.zeros(n, dtype=np.int64)
        deg[: self.buyer_count] += self.buyer_degree
        deg[: self.object_count] += self.object_degree
        return deg

    def pair_weight_total(self, problem):
        """Sum of weights over selected pairs (each pair counted once)."""
        return sum(problem.weight_of(i, j) for i, j in self.pairs)

    def copy(self):
        out = EdgeSelection(self.buyer_count, self.object_count, self.degree_cap,
                            enforce_object_cap=self.enforce_object_cap)
        out.pairs = set(self.pairs)
        out.buyer_degree = self.buyer_degree.copy()
        out.object_degree = self.object_degree.copy()
        return out

    def __repr__(self):
        return (f"EdgeSelection(pairs={len(self.pairs)}, cap={self.degree_cap})")


def _unchecked_selection(buyer_count, object_count, degree_cap, pairs,
                         enforce_object_cap=True):
    """Internal: build a selection without cap enforcement during fill."""
    sel = EdgeSelection(buyer_count, object_count, degree_cap,
                        enforce_object_cap=enforce_object_cap)
    for i, j in pairs:
        pair = (int(i), int(j))
        if pair in sel.pairs:
            continue
        sel.pairs.add(pair)
        sel.buyer_degree[pair[0]] += 1
        sel.object_degree[pair[1]] += 1
    return sel


def to_bipartite_shadow(graph):
    """Convert a graph to a bipartite problem via shadow objects.

    Every source edge (i, j) yields buyer i -> object j; for undirected
    sources both orientations are emitted.  Object ids equal source node ids.
    """
    n = graph.node_count
    if graph.directed:
        b, o, w = graph.src, graph.dst, graph.weight
    else:
        b = np.concatenate([graph.src, graph.dst])
        o = np.concatenate([graph.dst, graph.src])
        w = np.concatenate([graph.weight, graph.weight])
    return BipartiteProblem(n, n, b, o, w, source_graph=graph)


def apply_selection(graph, selection):
    """Element-wise mask: keep exactly the selected edges with source weights.

    Selection pairs over a shadow problem project through the identity id
    mapping; both orientations of an undirected edge collapse to one edge.
    """
    edges = []
    for i, j in sorted(selection.projected_pairs()):
        try:
            w = graph.weight_of(i, j)
        except KeyError:
            raise SelectionError(f"selected pair ({i}, {j}) has no source edge")
        edges.append((i, j, w))
    return WeightedGraph.from_edges(graph.node_count, edges, directed=graph.directed)
