"""Bipartite graphs and cheap removal overlays.

Vertices live on two sides, ``Side.LEFT`` (indices ``0..n-1``) and
``Side.RIGHT`` (indices ``0..m-1``).  Besides the sorted adjacency tuples,
each graph caches one Python-int bitmask per vertex; a :class:`ResidualView`
stores the removed vertices as two more bitmasks, so forking a view is O(1)
in the number of vertices touched and the base graph is never copied.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import DuplicateEdge, IndexOutOfRange, RemovedVertex


class Side(enum.Enum):
    LEFT = "L"
    RIGHT = "R"

    @property
    def other(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


@functools.total_ordering
@dataclass(frozen=True)
class VertexRef:
    side: Side
    index: int

    def __lt__(self, other):
        # enum members are not orderable; left sorts before right
        return (self.side.value, self.index) < (other.side.value, other.index)

    def __repr__(self):
        return f"{self.side.value}{self.index}"


def left(i: int) -> VertexRef:
    return VertexRef(Side.LEFT, i)


def right(j: int) -> VertexRef:
    return VertexRef(Side.RIGHT, j)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class BipartiteGraph:
    """Immutable bipartite graph with mirror-consistent sorted adjacency.

    Use :func:`build` rather than the constructor; it validates the edge
    list and produces the canonical form.
    """

    left_count: int
    right_count: int
    left_adj: tuple[tuple[int, ...], ...]
    right_adj: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.left_count

    @property
    def m(self) -> int:
        return self.right_count

    @cached_property
    def left_masks(self) -> tuple[int, ...]:
        """Right-side neighbourhood of each left vertex, as a bitmask."""
        return tuple(mask_of(a) for a in self.left_adj)

    @cached_property
    def right_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(a) for a in self.right_adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.left_adj) for v in nbrs]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.left_adj)

    def adjacency(self, side: Side) -> tuple[tuple[int, ...], ...]:
        return self.left_adj if side is Side.LEFT else self.right_adj

    def count(self, side: Side) -> int:
        return self.left_count if side is Side.LEFT else self.right_count

    def degree(self, v: VertexRef) -> int:
        return len(self.adjacency(v.side)[v.index])

    def check_vertex(self, v: VertexRef) -> None:
        if not 0 <= v.index < self.count(v.side):
            raise IndexOutOfRange(f"{v!r} is not a vertex of a {self.n}+{self.m} graph")

    def view(self) -> "ResidualView":
        return ResidualView(self)

    def __repr__(self):
        return f"BipartiteGraph(n={self.n}, m={self.m}, edges={self.edge_count})"


def build(n: int, m: int, edges: Iterable[Sequence[int]]) -> BipartiteGraph:
    """Build the canonical graph on ``n`` left and ``m`` right vertices.

    Raises :class:`IndexOutOfRange` for a bad endpoint and
    :class:`DuplicateEdge` if a pair occurs twice.
    """
    if n < 0 or m < 0:
        raise IndexOutOfRange(f"side sizes must be non-negative, got n={n}, m={m}")
    left_adj: list[list[int]] = [[] for _ in range(n)]
    right_adj: list[list[int]] = [[] for _ in range(m)]
    seen = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if not 0 <= u < n:
            raise IndexOutOfRange(f"left endpoint {u} not in [0, {n})")
        if not 0 <= v < m:
            raise IndexOutOfRange(f"right endpoint {v} not in [0, {m})")
        if (u, v) in seen:
            raise DuplicateEdge(f"edge ({u}, {v}) given twice")
        seen.add((u, v))
        left_adj[u].append(v)
        right_adj[v].append(u)
    return BipartiteGraph(
        n, m,
        tuple(tuple(sorted(a)) for a in left_adj),
        tuple(tuple(sorted(a)) for a in right_adj),
    )


def max_degrees(g: BipartiteGraph) -> tuple[int, int]:
    """Return ``(max left degree, max right degree)``, 0 for an empty side."""
    du = max((len(a) for a in g.left_adj), default=0)
    dv = max((len(a) for a in g.right_adj), default=0)
    return du, dv


def swap_sides(g: BipartiteGraph) -> BipartiteGraph:
    return BipartiteGraph(g.right_count, g.left_count, g.right_adj, g.left_adj)


def orient(g: BipartiteGraph) -> tuple[BipartiteGraph, bool]:
    """Put the side with the smaller maximum degree on the left.

    Ties keep the input orientation.  The flag says whether sides were swapped.
    """
    du, dv = max_degrees(g)
    if du > dv:
        return swap_sides(g), True
    return g, False


@dataclass(frozen=True)
class ResidualView:
    """``base`` with the vertices in two bitmasks treated as deleted."""

    base: BipartiteGraph
    removed_left: int = 0
    removed_right: int = 0

    def _removed_mask(self, side: Side) -> int:
        return self.removed_left if side is Side.LEFT else self.removed_right

    @property
    def removed(self) -> frozenset[VertexRef]:
        return frozenset(
            [left(i) for i in iter_bits(self.removed_left)]
            + [right(j) for j in iter_bits(self.removed_right)]
        )

    def is_live(self, v: VertexRef) -> bool:
        self.base.check_vertex(v)
        return not (self._removed_mask(v.side) >> v.index) & 1

    def live_mask(self, side: Side) -> int:
        return ((1 << self.base.count(side)) - 1) & ~self._removed_mask(side)

    def live(self, side: Side) -> list[VertexRef]:
        return [VertexRef(side, i) for i in iter_bits(self.live_mask(side))]

    def live_count(self, side: Side) -> int:
        return self.live_mask(side).bit_count()

    def _live_neighbor_mask(self, v: VertexRef) -> int:
        if not self.is_live(v):
            raise RemovedVertex(f"{v!r} has been removed")
        if v.side is Side.LEFT:
            return self.base.left_masks[v.index] & ~self.removed_right
        return self.base.right_masks[v.index] & ~self.removed_left

    def live_neighbors(self, v: VertexRef) -> list[VertexRef]:
        """Neighbours of ``v`` that are still present, ascending by index."""
        other = v.side.other
        return [VertexRef(other, i) for i in iter_bits(self._live_neighbor_mask(v))]

    def live_degree(self, v: VertexRef) -> int:
        return self._live_neighbor_mask(v).bit_count()

    def remove(self, vs: Iterable[VertexRef]) -> "ResidualView":
        """Return a child view with ``vs`` also removed; ``self`` is unchanged."""
        rl, rr = self.removed_left, self.removed_right
        for v in vs:
            self.base.check_vertex(v)
            bit = 1 << v.index
            if v.side is Side.LEFT:
                if rl & bit:
                    raise RemovedVertex(f"{v!r} removed twice")
                rl |= bit
            else:
                if rr & bit:
                    raise RemovedVertex(f"{v!r} removed twice")
                rr |= bit
        return ResidualView(self.base, rl, rr)

    def remove_closed_neighborhood(self, v: VertexRef) -> "ResidualView":
        return self.remove([v] + self.live_neighbors(v))


def as_view(g: BipartiteGraph | ResidualView) -> ResidualView:
    return g if isinstance(g, ResidualView) else ResidualView(g)
