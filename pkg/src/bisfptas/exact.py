"""Exact independent-set counts and likelihood ratios for small instances.

This is the ground truth the approximate counter is checked against, so
everything here stays in Python integers / :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import TooLarge
from .graph import BipartiteGraph, ResidualView, Side, VertexRef, as_view, iter_bits, left

DEFAULT_CAP = 30


@dataclass(frozen=True)
class ExactRatio:
    """``Z(G - N[u]) / Z(G - u)`` kept as an unreduced integer pair."""

    numerator: int
    denominator: int

    def __eq__(self, other):
        if isinstance(other, ExactRatio):
            return self.numerator * other.denominator == other.numerator * self.denominator
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.as_fraction())

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self):
        # int / int is correctly rounded, even for huge operands
        return self.numerator / self.denominator


def _side_sum(sources: list[int], free_mask: int) -> int:
    """Sum of 2^(free vertices untouched by S) over subsets S of ``sources``.

    ``sources`` holds neighbourhood bitmasks (restricted to ``free_mask``) of
    the enumerated side.
    """
    total = 0
    # iterative DFS over include/exclude decisions
    stack = [(0, free_mask)]
    k = len(sources)
    while stack:
        i, free = stack.pop()
        if i == k:
            total += 1 << free.bit_count()
            continue
        stack.append((i + 1, free))
        stack.append((i + 1, free & ~sources[i]))
    return total


def exact_count(g: BipartiteGraph | ResidualView, cap: int = DEFAULT_CAP) -> int:
    """Number of independent sets of the live part of ``g``.

    Enumerates subsets of whichever live side is smaller; every vertex of the
    other side that has no chosen neighbour can be added freely.  Raises
    :class:`TooLarge` when the enumerated side exceeds ``cap`` vertices.
    """
    view = as_view(g)
    base = view.base
    live_l = view.live_mask(Side.LEFT)
    live_r = view.live_mask(Side.RIGHT)
    if live_l.bit_count() <= live_r.bit_count():
        enum_mask, free_mask, masks = live_l, live_r, base.left_masks
    else:
        enum_mask, free_mask, masks = live_r, live_l, base.right_masks
    k = enum_mask.bit_count()
    if k > cap:
        raise TooLarge(f"{k} live vertices on the smaller side exceeds the cap of {cap}")
    sources = [masks[i] & free_mask for i in iter_bits(enum_mask)]
    return _side_sum(sources, free_mask)


def exact_ratio(g: BipartiteGraph | ResidualView, u: VertexRef, cap: int = DEFAULT_CAP) -> ExactRatio:
    """Exact ``R(G, u)`` for a live vertex ``u`` on either side."""
    view = as_view(g)
    num = exact_count(view.remove_closed_neighborhood(u), cap)
    den = exact_count(view.remove([u]), cap)
    return ExactRatio(num, den)


def exact_count_via_ratios(
    g: BipartiteGraph, ordering: Sequence[int] | None = None, cap: int = DEFAULT_CAP
) -> int:
    """Recover ``Z(G)`` as ``2^m * prod(1 + R(G_i, u_i))`` in exact arithmetic.

    ``ordering`` is a permutation of the left indices (ascending by default);
    ``G_i`` is ``G`` with the first ``i-1`` of them removed.
    """
    if ordering is None:
        ordering = range(g.n)
    ordering = list(ordering)
    if sorted(ordering) != list(range(g.n)):
        raise ValueError("ordering must be a permutation of the left indices")
    view = ResidualView(g)
    z = Fraction(2 ** g.m)
    for i in ordering:
        u = left(i)
        z *= 1 + exact_ratio(view, u, cap).as_fraction()
        view = view.remove([u])
    assert z.denominator == 1, z
    return z.numerator
