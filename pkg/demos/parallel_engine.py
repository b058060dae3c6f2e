"""Row-partitioned parallel auction: consistency across partition counts.

The engine splits buyers into L contiguous partitions that bid on private
price copies, then synchronizes at a barrier by taking the per-object
maximum and re-arbitrating conflicting holders.  L = 1 reproduces the
serial path bit for bit; larger L changes the bidding order but total
weight stays within n * b * epsilon of serial.
"""

import time

import numpy as np

from auctiongraph.engine import partition_rows, run_parallel_auction
from auctiongraph.graph import to_bipartite_shadow
from auctiongraph.ingest import gen_uniform_unipartite
from auctiongraph.sparsify import SparsifyConfig, auction_multibid


def main():
    n, b, eps = 200, 2, 0.01
    g = gen_uniform_unipartite(n, 0)
    prob = to_bipartite_shadow(g)

    plan = partition_rows(prob, 4)
    print(f"{n}-node complete graph, b = {b}, epsilon = {eps}")
    print(f"partition plan for L = 4: rows {plan.row_ranges}, "
          f"edges per partition {plan.edge_counts()}")

    serial = auction_multibid(prob, SparsifyConfig(b=b, epsilon=eps))
    base = serial.pair_weight_total(prob)
    print(f"\nserial total weight: {base:.3f} "
          f"({serial.iterations} outer rounds)")

    for L in (1, 2, 4):
        config = SparsifyConfig(b=b, epsilon=eps, partitions=L)
        t0 = time.perf_counter()
        sel, prices, iterations = run_parallel_auction(prob, config)
        dt = time.perf_counter() - t0
        w = sel.pair_weight_total(prob)
        note = ""
        if L == 1:
            identical = (sel.pairs == serial.pairs and np.array_equal(
                prices.prices, serial.price_state.prices))
            note = "  (bitwise identical to serial)" if identical else ""
        print(f"L = {L}: weight {w:.3f}, gap {abs(w - base):.4f} "
              f"<= {n * b * eps:.1f}, {iterations} rounds, "
              f"{dt * 1e3:.1f} ms{note}")

    print("\nbarrier conflicts make larger L take more rounds; wall-time "
          "gains require the partitions to run on separate cores.")


if __name__ == "__main__":
    main()
