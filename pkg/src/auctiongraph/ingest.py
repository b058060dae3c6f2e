"""Input/output and instance generation.

Covers Matrix Market coordinate files (hand parser so that errors can name
the offending line), uniform random benchmark instances, Gaussian-kernel
adjacency from feature vectors, two-moon toy point clouds, plain edge lists
and metrics report documents.

All generators are seeded with NumPy's default PCG64 generator, so a fixed
(n, seed) pair reproduces the same instance on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import BipartiteProblem, GraphError, WeightedGraph


class MatrixMarketError(ValueError):
    """Malformed Matrix Market input; message names the offending line."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


@dataclass
class MatrixMarketResult:
    """Parsed graph plus bookkeeping that does not fit on the graph itself."""
    graph: WeightedGraph
    dropped_self_loops: int
    symmetric: bool
    pattern: bool


def parse_matrix_market(path):
    """Parse a Matrix Market coordinate file into a WeightedGraph.

    Accepts real or pattern fields with general or symmetric layout.
    1-based indices become 0-based; symmetric files are expanded to an
    undirected graph; general files produce a directed graph.  Pattern
    entries get weight 1; explicit zeros stay as weight-0 edges; self-loops
    (diagonal entries) are dropped and counted.
    """
    with open(path) as fh:
        lines = fh.readlines()
    if not lines:
        raise MatrixMarketError("empty file", 1)

    header = lines[0].strip().split()
    if (len(header) != 5 or header[0] != "%%MatrixMarket"
            or header[1].lower() != "matrix"
            or header[2].lower() != "coordinate"):
        raise MatrixMarketError(
            "expected header '%%MatrixMarket matrix coordinate ...'", 1)
    field = header[3].lower()
    layout = header[4].lower()
    if field not in ("real", "pattern", "integer"):
        raise MatrixMarketError(f"unsupported field {field!r}", 1)
    if layout not in ("general", "symmetric"):
        raise MatrixMarketError(f"unsupported symmetry {layout!r}", 1)
    pattern = field == "pattern"
    symmetric = layout == "symmetric"

    k = 1
    while k < len(lines) and (lines[k].startswith("%") or not lines[k].strip()):
        k += 1
    if k == len(lines):
        raise MatrixMarketError("missing size line", k)
    size = lines[k].split()
    if len(size) != 3:
        raise MatrixMarketError("size line must be 'rows cols nnz'", k + 1)
    try:
        rows, cols, nnz = (int(t) for t in size)
    except ValueError:
        raise MatrixMarketError("non-integer size entry", k + 1)
    if rows != cols:
        raise MatrixMarketError("only square matrices describe graphs", k + 1)
    if rows < 1:
        raise MatrixMarketError("matrix must have at least one row", k + 1)

    want = 2 if pattern else 3
    edges = []
    dropped = 0
    count = 0
    for ln in range(k + 1, len(lines)):
        text = lines[ln].strip()
        if not text or text.startswith("%"):
            continue
        parts = text.split()
        if len(parts) != want:
            raise MatrixMarketError(
                f"expected {want} fields, got {len(parts)}", ln + 1)
        try:
            i = int(parts[0])
            j = int(parts[1])
        except ValueError:
            raise MatrixMarketError("non-integer index", ln + 1)
        if not (1 <= i <= rows) or not (1 <= j <= cols):
            raise MatrixMarketError(
                f"index ({i}, {j}) out of declared bounds {rows}x{cols}", ln + 1)
        if pattern:
            w = 1.0
        else:
            try:
                w = float(parts[2])
            except ValueError:
                raise MatrixMarketError(f"bad value {parts[2]!r}", ln + 1)
            if not math.isfinite(w):
                raise MatrixMarketError(f"non-finite value {w}", ln + 1)
        count += 1
        if i == j:
            dropped += 1
            continue
        edges.append((i - 1, j - 1, w))
    if count != nnz:
        raise MatrixMarketError(
            f"declared {nnz} entries but found {count}", len(lines))

    try:
        graph = WeightedGraph.from_edges(rows, edges, directed=not symmetric)
    except GraphError as exc:
        raise MatrixMarketError(str(exc)) from exc
    return MatrixMarketResult(graph=graph, dropped_self_loops=dropped,
                              symmetric=symmetric, pattern=pattern)


def load_matrix_market(path):
    """Load a Matrix Market coordinate file as a WeightedGraph."""
    return parse_matrix_market(path).graph


def save_matrix_market(graph, path):
    """Write a graph in Matrix Market coordinate real format.

    Undirected graphs use symmetric layout with lower-triangular entries
    (row > col), so load -> save -> load is a fixed point.
    """
    layout = "general" if graph.directed else "symmetric"
    n = graph.node_count
    with open(path, "w") as fh:
        fh.write(f"%%MatrixMarket matrix coordinate real {layout}\n")
        fh.write(f"{n} {n} {graph.edge_count}\n")
        for i, j, w in graph.edges():
            if graph.directed:
                fh.write(f"{i + 1} {j + 1} {w!r}\n")
            else:
                # canonical storage has i < j; symmetric layout wants row >= col
                fh.write(f"{j + 1} {i + 1} {w!r}\n")


def gen_uniform_bipartite(n, seed):
    """Complete bipartite problem on n/2 buyers x n/2 objects, weights U(0,1).

    The reported nonzero count follows the symmetric adjacency convention,
    i.e. 2 * (n/2)^2 for the complete problem.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError("n must be an even integer >= 2")
    half = n // 2
    rng = np.random.default_rng(seed)
    w = rng.uniform(0.0, 1.0, size=(half, half))
    buyers = np.repeat(np.arange(half), half)
    objects = np.tile(np.arange(half), half)
    return BipartiteProblem(half, half, buyers, objects, w.ravel())


def gen_uniform_unipartite(n, seed):
    """Complete undirected graph on n nodes, weights i.i.d. U(0,1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    w = rng.uniform(0.0, 1.0, size=len(iu))
    return WeightedGraph(n, iu, ju, w, directed=False)


def build_gaussian_adjacency(points, bandwidth):
    """Complete graph weighted by exp(-||x_i - x_j||^2 / (2 * bandwidth^2))."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise ValueError("need a 2-D array with at least 2 points")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    if bandwidth <= 0:
        raise ValueError("bandwidth must be positive")
    sq = np.sum(pts ** 2, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * pts @ pts.T
    np.maximum(d2, 0.0, out=d2)
    if not np.all(np.isfinite(d2)):
        raise ValueError("non-finite pairwise distance")
    w = np.exp(-d2 / (2.0 * bandwidth ** 2))
    iu, ju = np.triu_indices(len(pts), k=1)
    return WeightedGraph(len(pts), iu, ju, w[iu, ju], directed=False)


def gen_two_moons(n, seed, noise=0.07):
    """Two interleaved half-moon point clouds, n points total, seeded."""
    if n < 4:
        raise ValueError("n must be >= 4")
    rng = np.random.default_rng(seed)
    n_up = n // 2
    n_dn = n - n_up
    t_up = rng.uniform(0.0, np.pi, n_up)
    t_dn = rng.uniform(0.0, np.pi, n_dn)
    upper = np.column_stack([np.cos(t_up), np.sin(t_up)])
    lower = np.column_stack([1.0 - np.cos(t_dn), 0.5 - np.sin(t_dn)])
    pts = np.vstack([upper, lower])
    pts += rng.normal(scale=noise, size=pts.shape)
    # scale into roughly the unit square so a 0.1 kernel bandwidth is meaningful
    pts -= pts.min(axis=0)
    pts /= pts.max()
    return pts


def save_points(points, path):
    """Write a point cloud as whitespace-separated rows."""
    pts = np.asarray(points, dtype=np.float64)
    with open(path, "w") as fh:
        fh.write(f"# points {pts.shape[0]} dims {pts.shape[1]}\n")
        for row in pts:
            fh.write(" ".join(repr(v) for v in row) + "\n")


def save_edge_list(graph, path):
    """Write `src dst weight` lines, undirected edges once with src < dst."""
    with open(path, "w") as fh:
        fh.write(f"# nodes {graph.node_count} "
                 f"directed {int(graph.directed)}\n")
        for i, j, w in graph.edges():
            fh.write(f"{i} {j} {w!r}\n")


def load_edge_list(path):
    """Read a file written by :func:`save_edge_list`."""
    with open(path) as fh:
        lines = fh.readlines()
    if not lines or not lines[0].startswith("# nodes"):
        raise ValueError("missing '# nodes' header line")
    head = lines[0].split()
    n = int(head[2])
    directed = bool(int(head[4])) if len(head) >= 5 else False
    edges = []
    for text in lines[1:]:
        text = text.strip()
        if not text or text.startswith("#"):
            continue
        i, j, w = text.split()
        edges.append((int(i), int(j), float(w)))
    return WeightedGraph.from_edges(n, edges, directed=directed)


def save_report(report, path):
    """Write a MetricsReport as a key/value text document."""
    with open(path, "w") as fh:
        fh.write(report.to_text())
