"""Row-partitioned parallel auction engine.

Buyers are split into L contiguous ranges; each range runs the top-b auction
sweep against a private copy of the price vector, and a barrier then
max-reduces prices and resolves object-side conflicts globally.  With L = 1
this is bitwise identical to the serial multibid sparsifier (same kernel).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _multibid
from .graph import BipartiteProblem


@dataclass
class PartitionPlan:
    """L contiguous, disjoint buyer-id ranges covering all buyers."""
    L: int
    row_ranges: list  # list of (start, stop) pairs
    problem: BipartiteProblem

    def partition_of(self, buyer):
        for l, (lo, hi) in enumerate(self.row_ranges):
            if lo <= buyer < hi:
                return l
        raise ValueError(f"buyer {buyer} not covered")

    def edge_counts(self):
        """Edges per partition (every edge belongs to its buyer's range)."""
        counts = []
        for lo, hi in self.row_ranges:
            counts.append(int(self.problem.indptr[hi] - self.problem.indptr[lo]))
        return counts


def partition_rows(problem, L):
    """Split buyers into L contiguous ranges with sizes differing by <= 1."""
    if L < 1:
        raise ValueError("L must be >= 1")
    if L > problem.buyer_count:
        raise ValueError(f"L = {L} exceeds buyer count {problem.buyer_count}")
    starts, stops = _multibid.partition_ranges(problem.buyer_count, L)
    return PartitionPlan(L=L, row_ranges=list(zip(starts, stops)),
                         problem=problem)


def run_parallel_auction(problem, config, threaded=True):
    """Run the partitioned top-b auction.

    Returns (selection, price state, outer iteration count).  ``threaded``
    selects real worker threads; with False the L partitions are multiplexed
    on the calling thread with identical results.
    """
    sel, prices, iterations = _multibid.run_multibid(
        problem, config.b, epsilon=config.epsilon,
        max_rounds=config.max_rounds, partitions=config.partitions,
        threaded=threaded)
    sel.price_state = prices
    sel.iterations = iterations
    return sel, prices, iterations
