"""Serial single-edge auction: bidding, price updates and termination.

Buyers bid for their best-profit object; the winning object's price rises by
the gap to the second-best profit plus a minimum increment ``epsilon``, which
breaks price wars between tied buyers.  A smaller epsilon yields a matching
closer to optimal; a larger one converges faster.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .graph import BipartiteProblem, EdgeSelection


@dataclass
class PriceState:
    """Per-object dual prices and the minimum increment used to set them.

    Prices start at zero and never decrease during a run.  The buyer-side
    dual (profit) is implicit: weight(i, j) - prices[j] for an assigned pair.
    """
    prices: np.ndarray
    epsilon: float

    def profit(self, problem: BipartiteProblem, buyer: int, obj: int) -> float:
        return problem.weight_of(buyer, obj) - float(self.prices[obj])


class Bid(NamedTuple):
    buyer: int
    obj: int
    increment: float


class AuctionNonTermination(RuntimeError):
    """Raised when the round cap is hit; carries the partial result."""

    def __init__(self, message, selection=None, prices=None, rounds=0):
        super().__init__(message)
        self.selection = selection
        self.prices = prices
        self.rounds = rounds


def default_epsilon(problem, degree_target=1):
    """Data-dependent default: max weight / (4 n)."""
    n = max(problem.buyer_count, problem.object_count)
    top = problem.max_weight()
    if top <= 0.0:
        return 1.0 / (4.0 * n)
    return top / (4.0 * n)


def default_max_rounds(problem, epsilon):
    """Safety cutoff derived from the minimum-increment progress bound."""
    top = problem.max_weight()
    return 10 * (1 + math.ceil(top / epsilon))


def resolve_epsilon(problem, epsilon):
    """Turn an 'auto' policy or explicit value into a concrete epsilon."""
    if epsilon is None or epsilon == "auto":
        return default_epsilon(problem)
    eps = float(epsilon)
    if eps <= 0.0:
        raise ValueError("epsilon must be positive")
    return eps


def compute_bid(buyer, problem, prices):
    """Best-profit bid for one buyer, or None if the buyer has no edges.

    Ties go to the lowest object id.  With a single adjacent object the
    second-best profit is taken as 0.  The increment is clamped to at least
    epsilon so every assignment makes progress.
    """
    objs, wts = problem.adj(buyer)
    if len(objs) == 0:
        return None
    profits = wts - prices.prices[objs]
    k = int(np.argmax(profits))  # first max = lowest object id (ids ascending)
    best = float(profits[k])
    if len(objs) == 1:
        second = 0.0
    else:
        rest = np.delete(profits, k)
        second = float(rest.max())
    increment = max(best - second, 0.0) + prices.epsilon
    return Bid(int(buyer), int(objs[k]), increment)


def auction_assign(problem, epsilon, max_rounds=None):
    """Run the 1-matching auction to epsilon-complementary slackness.

    Buyers are processed in ascending id order (Gauss-Seidel); a buyer outbid
    by another loses its object and re-enters the pool.  Terminates once no
    unmatched buyer with any adjacent object remains.  Raises
    :class:`AuctionNonTermination` (with the partial result attached) if the
    round cap is reached first, which happens on instances admitting no
    perfect matching.

    Returns (selection with cap 1, price state).  The number of assignment
    events is available as ``selection.iterations``.
    """
    eps = resolve_epsilon(problem, epsilon)
    if max_rounds is None:
        max_rounds = default_max_rounds(problem, eps)
    n_b, n_o = problem.buyer_count, problem.object_count
    prices = PriceState(prices=np.zeros(n_o, dtype=np.float64), epsilon=eps)
    owner = np.full(n_o, -1, dtype=np.int64)      # object -> buyer
    held = np.full(n_b, -1, dtype=np.int64)       # buyer -> object
    events = 0
    rounds = 0
    while True:
        pending = [i for i in range(n_b)
                   if held[i] < 0 and problem.degree(i) > 0]
        if not pending:
            break
        if rounds >= max_rounds:
            sel = _selection_from_held(problem, held)
            sel.iterations = events
            raise AuctionNonTermination(
                f"auction did not terminate within {max_rounds} rounds",
                selection=sel, prices=prices, rounds=rounds)
        rounds += 1
        for i in pending:
            if held[i] >= 0:
                continue  # matched earlier in this same pass
            bid = compute_bid(i, problem, prices)
            if bid is None:
                continue
            j = bid.obj
            prices.prices[j] += bid.increment
            prev = owner[j]
            if prev >= 0:
                held[prev] = -1
            owner[j] = i
            held[i] = j
            events += 1
    sel = _selection_from_held(problem, held)
    sel.iterations = events
    sel.rounds = rounds
    return sel, prices


def _selection_from_held(problem, held):
    sel = EdgeSelection(problem.buyer_count, problem.object_count, 1)
    for i, j in enumerate(held):
        if j >= 0:
            sel.add(int(i), int(j))
    return sel


def matched_weight(problem, selection):
    """Total weight over the selected (buyer, object) pairs."""
    return selection.pair_weight_total(problem)
