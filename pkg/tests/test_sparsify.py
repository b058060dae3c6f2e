import numpy as np
import pytest

from auctiongraph.auction import auction_assign, matched_weight
from auctiongraph.graph import WeightedGraph, to_bipartite_shadow
from auctiongraph.ingest import gen_uniform_unipartite
from auctiongraph.oracle import exact_bmatching
from auctiongraph.sparsify import (SparsifyConfig, auction_b_rounds,
                                   auction_multibid, knn_select,
                                   percentile_repair, symmetrize_max,
                                   symmetrize_min)


def test_config_validation():
    with pytest.raises(ValueError):
        SparsifyConfig(b=0)
    with pytest.raises(ValueError):
        SparsifyConfig(method="hungarian")
    with pytest.raises(ValueError):
        SparsifyConfig(symmetrize="xor")
    with pytest.raises(ValueError):
        SparsifyConfig(epsilon=-0.5)
    with pytest.raises(ValueError):
        SparsifyConfig(partitions=0)


def test_knn_triangle_top2_keeps_everything(triangle_graph):
    sel = knn_select(triangle_graph, 2)
    assert sel.projected_pairs() == {(0, 1), (0, 2), (1, 2)}
    merged = symmetrize_max(sel)
    assert merged.is_symmetric()
    assert merged.projected_pairs() == {(0, 1), (0, 2), (1, 2)}


def test_knn_asymmetry_and_min_max(triangle_graph):
    sel = knn_select(triangle_graph, 1)
    # each node picks its heaviest neighbor: 0->1, 1->0, 2->0
    assert sel.pairs == {(0, 1), (1, 0), (2, 0)}
    assert not sel.is_symmetric()
    assert symmetrize_min(sel).projected_pairs() == {(0, 1)}
    assert symmetrize_max(sel).projected_pairs() == {(0, 1), (0, 2)}


def test_knn_object_side_uncapped():
    # star: every leaf picks the hub
    g = WeightedGraph.from_edges(5, [(0, i, 1.0) for i in range(1, 5)])
    sel = knn_select(g, 1)
    assert sel.object_degree[0] == 4


def test_percentile_repair_symmetric_and_capped():
    for seed in range(6):
        g = gen_uniform_unipartite(12, seed)
        b = 3
        sel = knn_select(g, b)
        rep = percentile_repair(g, sel)
        assert rep.is_symmetric()
        assert rep.projected_degrees(12).max() <= b


def test_percentile_repair_keeps_mutual_picks(triangle_graph):
    sel = knn_select(triangle_graph, 1)
    rep = percentile_repair(triangle_graph, sel)
    # 0 and 1 picked each other; edge (0,1) must survive arbitration
    assert (0, 1) in rep.projected_pairs()


def test_multibid_b1_matches_serial_auction():
    for seed in range(5):
        g = gen_uniform_unipartite(10, seed)
        prob = to_bipartite_shadow(g)
        eps = 0.01
        mb = auction_multibid(prob, SparsifyConfig(b=1, epsilon=eps))
        sel, _ = auction_assign(prob, eps)
        assert mb.pair_weight_total(prob) == pytest.approx(
            matched_weight(prob, sel))


def test_multibid_k6_quality_bound():
    # frozen oracle optimum for the seed-5 complete 6-node graph, b = 2
    g = gen_uniform_unipartite(6, 5)
    oracle = 4.545649831857665
    assert exact_bmatching(g, 2) == pytest.approx(oracle)
    prob = to_bipartite_shadow(g)
    eps = 0.005
    sel = auction_multibid(prob, SparsifyConfig(b=2, epsilon=eps))
    assert sel.pair_weight_total(prob) >= oracle - 6 * 2 * eps
    assert sel.buyer_degree.max() <= 2
    assert sel.object_degree.max() <= 2


def test_b_rounds_quality_bound():
    for seed in range(5):
        g = gen_uniform_unipartite(8, seed)
        prob = to_bipartite_shadow(g)
        eps = 0.01
        sel = auction_b_rounds(prob, SparsifyConfig(b=2, epsilon=eps))
        oracle = exact_bmatching(g, 2)
        assert sel.pair_weight_total(prob) >= oracle - 8 * 2 * eps
        assert sel.multiplicity_degrees().max() <= 2


def test_b_rounds_odd_b_trims_to_cap():
    for seed in range(4):
        g = gen_uniform_unipartite(9, seed)
        prob = to_bipartite_shadow(g)
        sel = auction_b_rounds(prob, SparsifyConfig(b=3, epsilon=0.01))
        assert sel.multiplicity_degrees().max() <= 3


def test_multibid_degree_caps_hold_on_sparse_instances():
    rng = np.random.default_rng(0)
    for _ in range(10):
        n = int(rng.integers(4, 16))
        edges = [(i, j, float(rng.uniform()))
                 for i in range(n) for j in range(i + 1, n)
                 if rng.uniform() < 0.4]
        if not edges:
            continue
        g = WeightedGraph.from_edges(n, edges)
        prob = to_bipartite_shadow(g)
        b = int(rng.integers(1, 5))
        sel = auction_multibid(prob, SparsifyConfig(b=b, epsilon=0.02))
        assert sel.buyer_degree.max() <= b
        assert sel.object_degree.max() <= b
        for i, j in sel.pairs:
            assert prob.has_edge(i, j)
