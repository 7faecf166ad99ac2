"""Graph text format and instance generators.

The format follows DIMACS habits::

    c optional comment lines
    p bis <n> <m> <e>
    e <u> <v>          (e lines, 0-based, u < n, v < m)
"""

from __future__ import annotations

import hashlib
import random
from typing import Iterable

from .errors import BISError, InvalidParams, ParseError
from .graph import BipartiteGraph, build

MAX_LEFT_DEGREE = 5
HEAVY_RETRIES = 20


def parse(text: str) -> BipartiteGraph:
    header = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if header is not None:
                raise ParseError("second header line", lineno)
            if len(parts) != 5 or parts[1] != "bis":
                raise ParseError(f"expected 'p bis <n> <m> <e>', got {line!r}", lineno)
            header = tuple(_nonneg(p, lineno) for p in parts[2:])
        elif tag == "e":
            if header is None:
                raise ParseError("edge before header", lineno)
            if len(parts) != 3:
                raise ParseError(f"expected 'e <u> <v>', got {line!r}", lineno)
            u, v = _nonneg(parts[1], lineno), _nonneg(parts[2], lineno)
            n, m, _ = header
            if u >= n or v >= m:
                raise ParseError(f"edge ({u}, {v}) outside a {n}+{m} graph", lineno)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if header is None:
        raise ParseError("missing 'p bis' header")
    n, m, e = header
    if len(edges) != e:
        raise ParseError(f"header promises {e} edges, found {len(edges)}")
    try:
        return build(n, m, edges)
    except BISError as exc:
        raise ParseError(str(exc)) from exc


def _nonneg(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", lineno) from None
    if value < 0:
        raise ParseError(f"negative value {value}", lineno)
    return value


def serialize(g: BipartiteGraph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p bis {g.n} {g.m} {g.edge_count}")
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(path) -> BipartiteGraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_graph(g: BipartiteGraph, path, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(g, comments))


def digest(g: BipartiteGraph) -> str:
    """SHA-256 of the canonical serialization, comments excluded."""
    return hashlib.sha256(serialize(g).encode()).hexdigest()


# ---------------------------------------------------------------- generators

def gen_complete(a: int, b: int) -> BipartiteGraph:
    if a < 0 or b < 0:
        raise InvalidParams("sizes must be non-negative")
    return build(a, b, [(u, v) for u in range(a) for v in range(b)])


def gen_path(k: int) -> BipartiteGraph:
    """Path on ``k`` vertices, alternating left, right, left, ..."""
    if k < 0:
        raise InvalidParams("path length must be non-negative")
    n, m = (k + 1) // 2, k // 2
    edges = [(i, i) for i in range(m)] + [(i + 1, i) for i in range(m) if i + 1 < n]
    return build(n, m, edges)


def gen_cycle(length: int) -> BipartiteGraph:
    """Even cycle with ``length / 2`` vertices on each side."""
    if length < 4 or length % 2:
        raise InvalidParams(f"a bipartite cycle needs even length >= 4, got {length}")
    k = length // 2
    return build(k, k, [(i, i) for i in range(k)] + [((i + 1) % k, i) for i in range(k)])


def gen_random(n: int, m: int, delta_u_max: int = MAX_LEFT_DEGREE, style: str = "bounded",
               k: int | None = None, seed: int = 0) -> BipartiteGraph:
    """Random graph with left degrees uniform in ``[0, delta_u_max]``.

    ``style="bounded"`` caps right degrees at ``k`` (no cap when ``k`` is
    None).  ``style="heavy"`` routes roughly three quarters of the left
    vertices through one of at most two right hubs, so right degrees grow
    linearly in ``n``; draws are repeated (with derived seeds) until some right
    vertex reaches degree ``max(1, n // 5)``.
    """
    if not 0 <= delta_u_max <= MAX_LEFT_DEGREE:
        raise InvalidParams(f"delta_u_max must be in [0, {MAX_LEFT_DEGREE}], got {delta_u_max}")
    if n < 0 or m < 0:
        raise InvalidParams("sizes must be non-negative")
    if style == "bounded":
        if k is not None and k < 0:
            raise InvalidParams("right degree cap must be non-negative")
        return _draw(n, m, delta_u_max, k, 0, random.Random(seed))
    if style != "heavy":
        raise InvalidParams(f"unknown style {style!r}")
    if m == 0 or n == 0 or delta_u_max == 0:
        return build(n, m, [])
    hubs = min(2, m)
    target = max(1, n // 5)
    for attempt in range(HEAVY_RETRIES):
        rng = random.Random(f"{seed}:{attempt}")
        g = _draw(n, m, delta_u_max, None, hubs, rng)
        if max(len(a) for a in g.right_adj) >= target:
            return g
    raise InvalidParams(f"no hub of degree {target} after {HEAVY_RETRIES} draws")


def _draw(n, m, delta, cap, hubs, rng):
    right_deg = [0] * m
    edges = []
    for u in range(n):
        d = rng.randint(0, min(delta, m))
        chosen = []
        if hubs and d and rng.random() < 0.75:
            chosen.append(rng.randrange(hubs))
        open_ = [v for v in range(m) if v not in chosen and (cap is None or right_deg[v] < cap)]
        extra = min(d - len(chosen), len(open_))
        chosen.extend(rng.sample(open_, extra))
        for v in chosen:
            right_deg[v] += 1
            edges.append((u, v))
    return build(n, m, edges)
