"""Depth-bounded two-layer recursion and the counting loop built on it.

The estimate of ``R(G, u)`` steps from a left vertex ``u`` through each live
right neighbour ``v_i`` to that neighbour's live left neighbours ``u_ij``.
Stepping through a right vertex of live degree ``w`` costs
``ceil(log_45(w + 1))`` units of the depth budget, so high-degree right
vertices are paid for in proportion to the height of a 45-ary tree over
their children.  At budget 0 the estimate is the trivial lower bound
``2^-deg(u)``.

Numerics: every combining step multiplies or inverts numbers in ``[1, 2]``
or ``[1/2, 1]``, so each float operation adds at most half an ulp of
relative error and the accumulated relative error stays within a few
hundred ulps even at depth 20.  That is far below the decay envelope
``12 * 0.9616^L``, so plain doubles are used throughout.
"""

from __future__ import annotations

import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .decay import ALPHA, M
from .errors import DegreeTooLarge, InvalidEpsilon, NodeBudgetExceeded, SideMismatch, RemovedVertex
from .graph import BipartiteGraph, ResidualView, Side, VertexRef, as_view, left, max_degrees, orient

MAX_SAFE_DEGREE = 5
ERROR_CONSTANT = 24 * math.log(2)
PHI_ERROR_CONSTANT = 12.0
# non-base nodes per root: a unit of budget fans out at most 4 * 44 ways below
# the root and 5 * 44 at it, so 1 + 220 * 180^(L-1) <= (5/4) * 180^L
NODE_ENVELOPE_C = 1.25
BRANCHING = 4 * M


@dataclass
class RecursionStats:
    """Node counters filled in by :func:`estimate_ratio`."""

    internal: int = 0  # calls with L > 0 and at least one live neighbour
    base: int = 0  # calls answered by 2^-deg at L = 0
    trivial: int = 0  # calls on isolated vertices at L > 0

    @property
    def total(self) -> int:
        return self.internal + self.base + self.trivial

    def add(self, other: "RecursionStats") -> None:
        self.internal += other.internal
        self.base += other.base
        self.trivial += other.trivial


@dataclass(frozen=True)
class LogCount:
    """Estimate of ``ln Z`` for an (oriented) graph."""

    ln_Z: float
    n_ratios: int
    depth_used: int
    swapped: bool = False
    ratios: tuple[float, ...] = field(default=(), repr=False)
    stats: RecursionStats = field(default_factory=RecursionStats, repr=False, compare=False)


def _ensure_stack(n: int) -> None:
    # each recursion level consumes one left vertex
    need = 3 * n + 1000
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def _depth_cost_table(limit: int) -> list[int]:
    """``ceil(log_45(w + 1))`` for ``w`` in ``[0, limit]``, in integer arithmetic."""
    table = []
    k, p = 0, 1
    for w in range(limit + 1):
        while p < w + 1:
            p *= M
            k += 1
        table.append(k)
    return table


def _ratio(lmask, rmask, cost, rem_l, rem_r, u, L, stats):
    nb = lmask[u] & ~rem_r
    if L == 0:
        stats.base += 1
        return math.ldexp(1.0, -nb.bit_count())
    if not nb:
        stats.trivial += 1
        return 1.0
    stats.internal += 1
    rem_l |= 1 << u
    out = 1.0
    while nb:
        low = nb & -nb
        nb ^= low
        v = low.bit_length() - 1
        # second-layer neighbours of v_i in G_i; u and earlier u_ij are gone
        second = rmask[v] & ~rem_l
        rem_r |= low
        if not second:
            out *= 0.5
            continue
        child_l = L - cost[second.bit_count()]
        if child_l < 0:
            child_l = 0
        inner = 1.0
        child_rem_l = rem_l
        while second:
            low2 = second & -second
            second ^= low2
            r = _ratio(lmask, rmask, cost, child_rem_l, rem_r, low2.bit_length() - 1, child_l, stats)
            inner /= 1.0 + r
            child_rem_l |= low2
        out /= 1.0 + inner
    return out


def estimate_ratio(g: BipartiteGraph | ResidualView, u: VertexRef, L: int,
                   stats: RecursionStats | None = None) -> float:
    """Depth-``L`` estimate of ``R(G, u)`` for a live left vertex ``u``.

    The result lies in ``[2^-deg(u), 1]``.  Neighbours are taken in ascending
    index order, which makes the floating-point result reproducible bit for
    bit.  Pass a :class:`RecursionStats` to count visited nodes.
    """
    view = as_view(g)
    if u.side is not Side.LEFT:
        raise SideMismatch("ratios are estimated for left vertices only")
    if not view.is_live(u):
        raise RemovedVertex(f"{u!r} has been removed")
    if L < 0:
        raise ValueError("depth budget must be non-negative")
    base = view.base
    if stats is None:
        stats = RecursionStats()
    cost = _depth_cost_table(base.n)
    _ensure_stack(base.n)
    return _ratio(base.left_masks, base.right_masks, cost,
                  view.removed_left, view.removed_right, u.index, L, stats)


def _full_depth(lmask, rmask, cost, rem_l, rem_r, u):
    nb = lmask[u] & ~rem_r
    if not nb:
        return 0
    rem_l |= 1 << u
    deepest = 1
    while nb:
        low = nb & -nb
        nb ^= low
        second = rmask[low.bit_length() - 1] & ~rem_l
        rem_r |= low
        step = cost[second.bit_count()] if second else 0
        child_rem_l = rem_l
        while second:
            low2 = second & -second
            second ^= low2
            sub = _full_depth(lmask, rmask, cost, child_rem_l, rem_r, low2.bit_length() - 1)
            if sub:
                deepest = max(deepest, step + sub)
            child_rem_l |= low2
    return deepest


def full_depth(g: BipartiteGraph | ResidualView, u: VertexRef) -> int:
    """Smallest budget at which the recursion never stops early.

    From this budget on, every leaf is an isolated vertex, so the estimate
    equals ``R(G, u)`` up to rounding.  Costs a full traversal of the tree.
    """
    view = as_view(g)
    if u.side is not Side.LEFT:
        raise SideMismatch("ratios are estimated for left vertices only")
    base = view.base
    _ensure_stack(base.n)
    return _full_depth(base.left_masks, base.right_masks, _depth_cost_table(base.n),
                       view.removed_left, view.removed_right, u.index)


def depth_for_epsilon(n: int, epsilon: float, alpha: float = ALPHA) -> int:
    """Smallest ``L`` with ``24 ln 2 * alpha^L <= epsilon / (2n)``.

    That per-ratio accuracy gives a ``(1 +- epsilon)`` approximation of ``Z``
    over ``n`` ratios.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 < epsilon < 1:
        raise InvalidEpsilon(f"epsilon must lie in (0, 1), got {epsilon}")
    target = epsilon / (2 * n)
    L = max(0, math.ceil(math.log(target / ERROR_CONSTANT) / math.log(alpha)))
    # the float ceil can land one off at the boundary; settle it directly
    while L > 0 and ERROR_CONSTANT * alpha ** (L - 1) <= target:
        L -= 1
    while ERROR_CONSTANT * alpha ** L > target:
        L += 1
    return L


def node_envelope(L: int) -> float:
    """Frozen upper bound on non-base recursion nodes for one root at depth ``L``."""
    try:
        return NODE_ENVELOPE_C * float(BRANCHING) ** L
    except OverflowError:
        return math.inf


def _root_ratios(args):
    g, L, indices = args
    lmask, rmask = g.left_masks, g.right_masks
    cost = _depth_cost_table(g.n)
    _ensure_stack(g.n)
    stats = RecursionStats()
    # G_i drops the roots that precede u_i in ascending order
    out = []
    for i in indices:
        out.append(_ratio(lmask, rmask, cost, (1 << i) - 1, 0, i, L, stats))
    return out, stats


def _workers(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("BIS_THREADS")
        threads = int(env) if env else 1
    return max(1, threads)


def root_ratios(g: BipartiteGraph, L: int, threads: int | None = None
                ) -> tuple[list[float], RecursionStats]:
    """Estimates of ``R(G_i, u_i)`` for every left vertex, ascending order.

    With more than one worker (``threads`` or the ``BIS_THREADS`` environment
    variable) the roots are split into contiguous blocks computed in separate
    processes; each ratio depends only on its own prefix, so the values do
    not depend on scheduling.
    """
    workers = _workers(threads)
    if workers == 1 or g.n < 2 * workers:
        return _root_ratios((g, L, range(g.n)))
    step = -(-g.n // (4 * workers))
    blocks = [range(a, min(a + step, g.n)) for a in range(0, g.n, step)]
    ratios: list[float] = []
    stats = RecursionStats()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part, st in pool.map(_root_ratios, [(g, L, b) for b in blocks]):
            ratios.extend(part)
            stats.add(st)
    return ratios, stats


def estimate_log_count(g: BipartiteGraph, L: int, threads: int | None = None,
                       swapped: bool = False) -> LogCount:
    """``m ln 2 + sum_i ln(1 + R(G_i, u_i, L))`` over left vertices in index order.

    ``g`` should already be oriented (see :func:`bisfptas.graph.orient`).
    """
    ratios, stats = root_ratios(g, L, threads)
    # fsum is exactly rounded, so the total is independent of grouping
    ln_z = math.fsum([g.m * math.log(2)] + [math.log1p(r) for r in ratios])
    return LogCount(ln_z, len(ratios), L, swapped, tuple(ratios), stats)


def check_degree_guard(g: BipartiteGraph) -> None:
    du, dv = max_degrees(g)
    if min(du, dv) > MAX_SAFE_DEGREE:
        raise DegreeTooLarge(
            f"max degrees ({du}, {dv}): both sides exceed {MAX_SAFE_DEGREE}; no guarantee applies")


def count_with_epsilon(g: BipartiteGraph, epsilon: float, unsafe: bool = False,
                       max_nodes: float | None = None, threads: int | None = None) -> LogCount:
    """``(1 +- epsilon)``-approximation of ``ln Z`` when one side has degree <= 5.

    Orients the graph, picks the depth from :func:`depth_for_epsilon` and runs
    the counting loop.  ``max_nodes`` aborts before starting when the
    worst-case size ``n * C * 180^L`` exceeds it.
    """
    if not unsafe:
        check_degree_guard(g)
    og, swapped = orient(g)
    if og.n == 0:
        return LogCount(og.m * math.log(2), 0, 0, swapped)
    L = depth_for_epsilon(og.n, epsilon)
    if max_nodes is not None:
        predicted = og.n * node_envelope(L)
        if predicted > max_nodes:
            raise NodeBudgetExceeded(
                f"depth {L} predicts up to {predicted:.3g} nodes (limit {max_nodes:.3g}); "
                "use an explicit depth instead")
    return estimate_log_count(og, L, threads, swapped)


def count_with_depth(g: BipartiteGraph, L: int, unsafe: bool = False,
                     threads: int | None = None) -> LogCount:
    """Orient and run the counting loop at a fixed depth; no a priori guarantee."""
    if not unsafe:
        check_degree_guard(g)
    og, swapped = orient(g)
    return estimate_log_count(og, L, threads, swapped)


def ratio_bounds(g: BipartiteGraph | ResidualView, u: VertexRef) -> tuple[float, float]:
    """``(2^-deg(u), 1)``, the range every exact and estimated ratio lies in."""
    return math.ldexp(1.0, -as_view(g).live_degree(u)), 1.0


def prefix_view(g: BipartiteGraph, i: int) -> ResidualView:
    """``G_i``: the graph with left vertices ``0..i-1`` removed."""
    return ResidualView(g, (1 << i) - 1, 0)


__all__ = [
    "RecursionStats", "LogCount", "estimate_ratio", "full_depth", "depth_for_epsilon",
    "estimate_log_count", "count_with_epsilon", "count_with_depth", "root_ratios",
    "node_envelope", "ratio_bounds", "prefix_view", "check_degree_guard", "left",
]
