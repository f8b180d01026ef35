"""Replayable multi-pass edge streams, edge-list ingestion and graph generators."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Malformed edge-list input. ``line`` is 1-based, or None for whole-file problems."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class EdgeList:
    """A simple undirected graph on vertices ``0..n-1``.

    Edges keep the order they were given in; that order is the stream's
    file order.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        seen: set[Edge] = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {u} {v} out of range for n={self.n}")
            key = edge_key(u, v)
            if key in seen:
                raise ValueError(f"duplicate edge {u} {v}")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(edge_key(u, v) for u, v in self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def parse_edge_list(text: str) -> EdgeList:
    """Parse the ``n m`` header followed by ``m`` lines of ``u v``.

    Blank lines and lines starting with ``#`` are ignored. Errors name the
    offending 1-based line.
    """
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    seen: dict[Edge, int] = {}
    n = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative count in header", lineno)
            header = (a, b)
            n = a
            continue
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", lineno)
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}: {a} {b}", lineno)
        key = edge_key(a, b)
        if key in seen:
            raise GraphFormatError(f"duplicate edge {a} {b} (first seen on line {seen[key]})", lineno)
        seen[key] = lineno
        edges.append((a, b))
    if header is None:
        raise GraphFormatError("missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} edges, found {len(edges)}")
    return EdgeList(n, tuple(edges))


def read_edge_list(path: str) -> EdgeList:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: EdgeList) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


class OrderPolicy(str, Enum):
    FILE = "file"
    PERMUTATION = "perm"
    RESEED = "reseed"


@dataclass
class EdgeStream:
    """Multi-pass view over an :class:`EdgeList`.

    The order of every pass is a pure function of ``(policy, seed, pass_index)``,
    so any run can be replayed exactly.
    """

    base: EdgeList
    policy: OrderPolicy = OrderPolicy.FILE
    seed: int = 0
    passes_taken: int = 0
    _fixed: tuple[Edge, ...] | None = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        self.policy = OrderPolicy(self.policy)

    def pass_order(self, pass_index: int) -> tuple[Edge, ...]:
        if pass_index < 1:
            raise ValueError("pass_index starts at 1")
        edges = self.base.edges
        if self.policy is OrderPolicy.FILE:
            return edges
        if self.policy is OrderPolicy.PERMUTATION:
            if self._fixed is None:
                order = list(edges)
                random.Random(self.seed).shuffle(order)
                self._fixed = tuple(order)
            return self._fixed
        order = list(edges)
        random.Random(f"{self.seed}:{pass_index}").shuffle(order)
        return tuple(order)

    def scan(self) -> Iterator[Edge]:
        """Yield one full pass; the pass is counted once it is exhausted."""
        yield from self.pass_order(self.passes_taken + 1)
        self.passes_taken += 1


# -- generators ---------------------------------------------------------------

GENERATOR_KINDS = ("path", "cycle", "random", "two-greedy-trap")

# path a-b-c-d-e-f-g streamed so that greedy keeps {b,c} and {e,f}
_TRAP_ORDER: tuple[Edge, ...] = ((1, 2), (4, 5), (0, 1), (2, 3), (3, 4), (5, 6))


def generate(kind: str, n: int, seed: int = 0, m: int | None = None) -> EdgeList:
    if kind == "two-greedy-trap":
        return EdgeList(7, _TRAP_ORDER)
    if n < 1:
        raise ValueError("n must be at least 1")
    if kind == "path":
        return EdgeList(n, tuple((i, i + 1) for i in range(n - 1)))
    if kind == "cycle":
        if n < 3:
            raise ValueError("a simple cycle needs n >= 3")
        return EdgeList(n, tuple((i, (i + 1) % n) for i in range(n)))
    if kind == "random":
        max_m = n * (n - 1) // 2
        if m is None or not 0 <= m <= max_m:
            raise ValueError(f"random graph needs 0 <= m <= {max_m}, got {m}")
        return random_graph(n, m, seed)
    raise ValueError(f"unknown generator kind {kind!r}; choose from {', '.join(GENERATOR_KINDS)}")


def random_graph(n: int, m: int, seed: int) -> EdgeList:
    """``m`` distinct pairs drawn uniformly from the seed (G(n, m) model)."""
    rng = random.Random(seed)
    max_m = n * (n - 1) // 2
    if 2 * m > max_m:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        chosen = rng.sample(pairs, m)
    else:
        picked: set[Edge] = set()
        chosen = []
        while len(chosen) < m:
            u, v = rng.randrange(n), rng.randrange(n)
            if u == v:
                continue
            key = edge_key(u, v)
            if key not in picked:
                picked.add(key)
                chosen.append(key)
    return EdgeList(n, tuple(chosen))


def parse_generator_spec(spec: str, seed: int = 0) -> EdgeList:
    """``path:N``, ``cycle:N``, ``random:N:M`` or ``two-greedy-trap``."""
    kind, _, rest = spec.partition(":")
    args = [int(x) for x in rest.split(":")] if rest else []
    if kind == "two-greedy-trap":
        return generate(kind, 7, seed)
    if kind in ("path", "cycle") and len(args) == 1:
        return generate(kind, args[0], seed)
    if kind == "random" and len(args) == 2:
        return generate(kind, args[0], seed, m=args[1])
    raise ValueError(f"bad generator spec {spec!r}")


def from_pairs(n: int, pairs: Iterable[Sequence[int]]) -> EdgeList:
    return EdgeList(n, tuple((int(u), int(v)) for u, v in pairs))
