"""Shared top-b auction engine used by both the serial multibid sparsifier
and the partition-parallel engine.

One numba kernel performs a full Gauss-Seidel sweep over one partition's
buyers against that partition's private price copy; a second kernel performs
the barrier work: element-wise max price synchronization and global
object-side conflict resolution.  The serial method is exactly the L = 1
case of the same code path, so serial/parallel L = 1 outputs are bitwise
identical by construction.

Kernels are compiled with ``nogil=True`` so partitions can run concurrently
on a thread pool inside one process.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit

from .auction import AuctionNonTermination, PriceState, resolve_epsilon
from .graph import EdgeSelection


@njit(cache=True, nogil=True)
def _remove_from_hold(hold_obj, hold_cnt, buyer, obj, b):
    for s in range(b):
        if hold_obj[buyer, s] == obj:
            hold_obj[buyer, s] = -1
            hold_cnt[buyer] -= 1
            return


@njit(cache=True, nogil=True)
def _sweep(l, lo, hi, indptr, cols, wts, b, eps,
           prices, hold_obj, hold_cnt, obj_holder, obj_paid, obj_cnt,
           active, want, ds, dsw, offv, inner_cap):
    """Up to inner_cap passes over partition l's active buyers, stopping
    early at local quiescence.  Returns True if anything happened.

    Batching many passes between barriers keeps the long tail of
    single-buyer eviction chains inside the compiled loop instead of paying
    a barrier per chain link."""
    changed = False
    for _ in range(inner_cap):
        pass_active = False
        for i in range(lo, hi):
            if not active[i]:
                continue
            pass_active = True
            _bid_one(l, i, indptr, cols, wts, b, eps, prices, hold_obj,
                     hold_cnt, obj_holder, obj_paid, obj_cnt, active, want,
                     ds, dsw, offv)
            changed = True
        if not pass_active:
            break
    return changed


@njit(cache=True, nogil=True)
def _bid_one(l, i, indptr, cols, wts, b, eps,
             prices, hold_obj, hold_cnt, obj_holder, obj_paid, obj_cnt,
             active, want, ds, dsw, offv):
    """One buyer's top-b bid against partition l's price copy."""
    s0 = indptr[i]
    s1 = indptr[i + 1]
    deg = s1 - s0
    avail = deg - hold_cnt[i]
    need = b - hold_cnt[i]
    if need > avail:
        need = avail
    if need <= 0:
        active[i] = False
        return

    # exclude current holdings, then pick the top need+1 unheld objects
    # by profit, ties broken by lowest object id (ids ascend within the
    # row, so strict > keeps the first max)
    for s in range(b):
        if hold_obj[i, s] >= 0:
            want[l, hold_obj[i, s]] = True
    n_sel = 0
    for t in range(need + 1):
        if t >= avail:
            break
        best_j = np.int64(-1)
        best_w = 0.0
        best_pf = -1.0e300
        for k in range(s0, s1):
            j = cols[k]
            if want[l, j]:
                continue
            pf = wts[k] - prices[l, j]
            if pf > best_pf:
                best_pf = pf
                best_j = j
                best_w = wts[k]
        if best_j < 0:
            break
        ds[l, t] = best_j
        dsw[l, t] = best_w
        want[l, best_j] = True
        n_sel += 1
    for s in range(b):
        if hold_obj[i, s] >= 0:
            want[l, hold_obj[i, s]] = False
    has_extra = n_sel > need
    if has_extra:
        want[l, ds[l, need]] = False  # the extra is only a price anchor

    # cascading offer computation from the weakest pick upward, each step
    # using the already-updated next-best profit; a missing next-best
    # profit counts as 0; clamped so every offer tops the posted price by
    # at least eps
    if has_extra:
        profit_next = dsw[l, need] - prices[l, ds[l, need]]
    else:
        profit_next = 0.0
    for t in range(need - 1, -1, -1):
        j = ds[l, t]
        p_new = dsw[l, t] - profit_next + eps
        floor = prices[l, j] + eps
        if p_new < floor:
            p_new = floor
        offv[l, t] = p_new
        profit_next = dsw[l, t] - p_new

    # acquire the chosen objects at the offered prices
    for t in range(need):
        j = ds[l, t]
        want[l, j] = False
        c = obj_cnt[l, j]
        obj_holder[l, j, c] = i
        obj_paid[l, j, c] = offv[l, t]
        obj_cnt[l, j] = c + 1
        for s in range(b):
            if hold_obj[i, s] < 0:
                hold_obj[i, s] = j
                break
        hold_cnt[i] += 1
        if obj_cnt[l, j] > b:
            # over-subscribed: drop the lowest-paid holder, ties against
            # the higher buyer id (lower id wins)
            v = 0
            for q in range(1, obj_cnt[l, j]):
                worse = (obj_paid[l, j, q] < obj_paid[l, j, v]
                         or (obj_paid[l, j, q] == obj_paid[l, j, v]
                             and obj_holder[l, j, q] > obj_holder[l, j, v]))
                if worse:
                    v = q
            victim = obj_holder[l, j, v]
            last = obj_cnt[l, j] - 1
            obj_holder[l, j, v] = obj_holder[l, j, last]
            obj_paid[l, j, v] = obj_paid[l, j, last]
            obj_holder[l, j, last] = -1
            obj_cnt[l, j] = last
            _remove_from_hold(hold_obj, hold_cnt, victim, j, b)
            active[victim] = True
        # marginal pricing: once the object holds b bids locally, the
        # posted price is the lowest standing paid price (what a newcomer
        # must beat); below capacity a slot stays available at the old
        # price.  Every holder therefore pays at least the posted price,
        # which is what keeps epsilon-complementary slackness intact.
        if obj_cnt[l, j] == b:
            m = obj_paid[l, j, 0]
            for q in range(1, b):
                if obj_paid[l, j, q] < m:
                    m = obj_paid[l, j, q]
            if m > prices[l, j]:
                prices[l, j] = m
    # the buyer now holds everything it needs (or its whole adjacency);
    # it re-enters only via eviction
    active[i] = False


@njit(cache=True, nogil=True)
def _barrier(prices, hold_obj, hold_cnt, obj_holder, obj_paid, obj_cnt,
             active, b):
    """Max-synchronize prices and resolve cross-partition object conflicts.

    Objects are visited in ascending id; an over-subscribed object keeps its
    top-b bidders ordered by (paid price descending, buyer id ascending).
    Returns True if any holder was evicted.
    """
    L = prices.shape[0]
    n = prices.shape[1]
    evicted = False
    cap = L * (b + 1)
    cand_paid = np.empty(cap, dtype=np.float64)
    cand_buyer = np.empty(cap, dtype=np.int64)
    cand_l = np.empty(cap, dtype=np.int64)
    keep = np.empty(cap, dtype=np.bool_)
    for j in range(n):
        g = prices[0, j]
        for l in range(1, L):
            if prices[l, j] > g:
                g = prices[l, j]
        total = 0
        for l in range(L):
            total += obj_cnt[l, j]
        if total > b:
            nc = 0
            for l in range(L):
                for q in range(obj_cnt[l, j]):
                    cand_paid[nc] = obj_paid[l, j, q]
                    cand_buyer[nc] = obj_holder[l, j, q]
                    cand_l[nc] = l
                    nc += 1
            for q in range(nc):
                keep[q] = False
            for _ in range(b):
                best = -1
                for q in range(nc):
                    if keep[q]:
                        continue
                    if best < 0:
                        best = q
                        continue
                    better = (cand_paid[q] > cand_paid[best]
                              or (cand_paid[q] == cand_paid[best]
                                  and cand_buyer[q] < cand_buyer[best]))
                    if better:
                        best = q
                if best < 0:
                    break
                keep[best] = True
            for l in range(L):
                obj_cnt[l, j] = 0
            for q in range(nc):
                l = cand_l[q]
                if keep[q]:
                    c = obj_cnt[l, j]
                    obj_holder[l, j, c] = cand_buyer[q]
                    obj_paid[l, j, c] = cand_paid[q]
                    obj_cnt[l, j] = c + 1
                else:
                    _remove_from_hold(hold_obj, hold_cnt, cand_buyer[q], j, b)
                    active[cand_buyer[q]] = True
                    evicted = True
            for l in range(L):
                for q in range(obj_cnt[l, j], b + 1):
                    obj_holder[l, j, q] = -1
            total = b
        # marginal pricing at global scope: if the object is full across all
        # partitions, the posted price is the lowest surviving paid price
        if total == b:
            m = 1.0e300
            for l in range(L):
                for q in range(obj_cnt[l, j]):
                    if obj_paid[l, j, q] < m:
                        m = obj_paid[l, j, q]
            if m > g:
                g = m
        for l in range(L):
            prices[l, j] = g
    return evicted


def partition_ranges(n, L):
    """Contiguous ranges of sizes differing by at most one, covering [0, n)."""
    base = n // L
    extra = n % L
    starts = []
    stops = []
    pos = 0
    for l in range(L):
        size = base + (1 if l < extra else 0)
        starts.append(pos)
        stops.append(pos + size)
        pos += size
    return starts, stops


def run_multibid(problem, b, epsilon="auto", max_rounds=None, partitions=1,
                 threaded=True):
    """Run the top-b auction over L row partitions with barrier price sync.

    Returns (selection, price state, outer iteration count).  Raises
    AuctionNonTermination with the partial result when max_rounds is hit.
    """
    if b < 1:
        raise ValueError("b must be >= 1")
    L = int(partitions)
    if L < 1:
        raise ValueError("partitions must be >= 1")
    if L > problem.buyer_count:
        raise ValueError(
            f"partitions {L} exceeds buyer count {problem.buyer_count}")
    eps = resolve_epsilon(problem, epsilon)
    if max_rounds is None:
        max_rounds = 10 * (1 + math.ceil(problem.max_weight() / eps))

    n_b = problem.buyer_count
    n_o = problem.object_count
    indptr = np.ascontiguousarray(problem.indptr, dtype=np.int64)
    cols = np.ascontiguousarray(problem.objects, dtype=np.int64)
    wts = np.ascontiguousarray(problem.weights, dtype=np.float64)

    prices = np.zeros((L, n_o), dtype=np.float64)
    hold_obj = np.full((n_b, b), -1, dtype=np.int64)
    hold_cnt = np.zeros(n_b, dtype=np.int64)
    obj_holder = np.full((L, n_o, b + 1), -1, dtype=np.int64)
    obj_paid = np.zeros((L, n_o, b + 1), dtype=np.float64)
    obj_cnt = np.zeros((L, n_o), dtype=np.int64)
    active = (indptr[1:] - indptr[:-1]) > 0
    active = np.ascontiguousarray(active)
    want = np.zeros((L, n_o), dtype=np.bool_)
    ds = np.zeros((L, b + 1), dtype=np.int64)
    dsw = np.zeros((L, b + 1), dtype=np.float64)
    offv = np.zeros((L, b + 1), dtype=np.float64)

    starts, stops = partition_ranges(n_b, L)
    inner_cap = 4096  # local passes between barriers; tames eviction chains
    # a feasible instance never drives any dual price past this bound, so
    # crossing it means the remaining demand cannot be satisfied
    price_cap = (problem.max_weight() + eps) * (n_o + 1)

    def sweep_one(l):
        return _sweep(l, starts[l], stops[l], indptr, cols, wts, b, eps,
                      prices, hold_obj, hold_cnt, obj_holder, obj_paid,
                      obj_cnt, active, want, ds, dsw, offv, inner_cap)

    pool = ThreadPoolExecutor(max_workers=L) if (threaded and L > 1) else None
    try:
        iterations = 0
        while True:
            if iterations >= max_rounds or float(prices.max()) > price_cap:
                sel = _extract_selection(problem, b, hold_obj)
                state = PriceState(prices=prices[0].copy(), epsilon=eps)
                reason = ("price divergence (no feasible completion)"
                          if iterations < max_rounds
                          else f"the {max_rounds}-round cap")
                raise AuctionNonTermination(
                    f"multibid auction hit {reason}",
                    selection=sel, prices=state, rounds=iterations)
            iterations += 1
            # partitions with no active buyer have nothing to do; dispatching
            # them (or spinning up the pool for a single busy partition in
            # the eviction-chain tail) would only add overhead
            busy = [l for l in range(L)
                    if bool(active[starts[l]:stops[l]].any())]
            if pool is not None and len(busy) > 1:
                flags = list(pool.map(sweep_one, busy))
            else:
                flags = [sweep_one(l) for l in busy]
            evicted = _barrier(prices, hold_obj, hold_cnt, obj_holder,
                               obj_paid, obj_cnt, active, b)
            if not (any(flags) or evicted):
                break
    finally:
        if pool is not None:
            pool.shutdown(wait=False)

    sel = _extract_selection(problem, b, hold_obj)
    state = PriceState(prices=prices[0].copy(), epsilon=eps)
    return sel, state, iterations


def _extract_selection(problem, b, hold_obj):
    sel = EdgeSelection(problem.buyer_count, problem.object_count, b)
    for i in range(hold_obj.shape[0]):
        for s in range(b):
            j = hold_obj[i, s]
            if j >= 0:
                sel.add(int(i), int(j))
    return sel
