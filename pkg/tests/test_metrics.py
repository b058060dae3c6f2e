import numpy as np
import pytest

from auctiongraph.auction import auction_assign
from auctiongraph.graph import (EdgeSelection, WeightedGraph,
                                to_bipartite_shadow)
from auctiongraph.ingest import gen_uniform_unipartite
from auctiongraph.metrics import cs_residual_max, evaluate
from auctiongraph.sparsify import SparsifyConfig, auction_multibid

from conftest import complete_bipartite


def test_regular_selection_zero_variance():
    g = WeightedGraph.from_edges(4, [(0, 1, 1.0), (1, 2, 1.0),
                                     (2, 3, 1.0), (0, 3, 1.0)])
    sel = EdgeSelection(4, 4, 2)
    for i, j in ((0, 1), (1, 2), (2, 3), (0, 3)):
        sel.add(i, j)
        sel.add(j, i)
    report = evaluate(g, sel)
    assert report.degree_variance == 0.0
    assert report.degree_histogram == {2: 4}
    assert report.is_symmetric
    assert report.total_selected_weight == pytest.approx(4.0)


def test_empty_selection():
    g = WeightedGraph.from_edges(3, [(0, 1, 1.0)])
    sel = EdgeSelection(3, 3, 1)
    report = evaluate(g, sel)
    assert report.total_selected_weight == 0.0
    assert report.degree_histogram == {0: 3}


def test_handshake_identity():
    for seed in range(5):
        g = gen_uniform_unipartite(10, seed)
        prob = to_bipartite_shadow(g)
        sel = auction_multibid(prob, SparsifyConfig(b=2, epsilon=0.01))
        report = evaluate(g, sel)
        edges = len(sel.projected_pairs())
        assert report.degree_mean * g.node_count == pytest.approx(2 * edges)


def test_bipartite_source_counts_both_sides():
    prob = complete_bipartite([[2.0, 1.0], [1.0, 2.0]])
    sel, prices = auction_assign(prob, 0.01)
    report = evaluate(prob, sel, prices=prices, iterations=sel.iterations)
    assert report.total_selected_weight == pytest.approx(4.0)
    assert sum(report.degree_histogram.values()) == 4  # 2 buyers + 2 objects
    assert report.epsilon_used == pytest.approx(0.01)
    assert report.cs_residual_max <= 0.01 + 1e-12


def test_cs_residual_small_on_terminated_runs():
    for seed in range(5):
        g = gen_uniform_unipartite(9, seed)
        prob = to_bipartite_shadow(g)
        eps = 0.02
        sel, prices = auction_assign(prob, eps)
        assert cs_residual_max(prob, sel, prices) <= eps + 1e-9
        # the cascading multi-bid offers admit residuals up to b * eps
        mb = auction_multibid(prob, SparsifyConfig(b=2, epsilon=eps))
        assert cs_residual_max(prob, mb, mb.price_state) <= 2 * eps + 1e-9


def test_report_to_text_round_trips_keys():
    g = gen_uniform_unipartite(6, 0)
    prob = to_bipartite_shadow(g)
    sel = auction_multibid(prob, SparsifyConfig(b=1, epsilon=0.05))
    text = evaluate(g, sel, epsilon_used=0.05).to_text()
    fields = dict(line.split(": ", 1) for line in text.strip().splitlines())
    assert float(fields["total_selected_weight"]) >= 0.0
    assert fields["epsilon_used"] == "0.05"
    assert any(k.startswith("degree_histogram.") for k in fields)
