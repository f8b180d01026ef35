"""Matchings, matched arcs, augmenting paths and the greedy starting matching."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .stream import Edge, EdgeList, edge_key

Arc = tuple[int, int]


def reverse(arc: Arc) -> Arc:
    return (arc[1], arc[0])


class MatchingError(ValueError):
    pass


class Matching:
    """A matching kept as a symmetric mate array (``-1`` marks a free vertex)."""

    __slots__ = ("mate", "size")

    def __init__(self, n: int):
        self.mate = [-1] * n
        self.size = 0

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Matching":
        m = cls(n)
        for u, v in edges:
            if m.mate[u] != -1 or m.mate[v] != -1:
                raise MatchingError(f"edge {u} {v} shares a vertex with an earlier edge")
            m.add(u, v)
        return m

    @property
    def n(self) -> int:
        return len(self.mate)

    def is_free(self, v: int) -> bool:
        return self.mate[v] == -1

    def is_matched_edge(self, u: int, v: int) -> bool:
        return self.mate[u] == v

    def add(self, u: int, v: int) -> None:
        self.mate[u] = v
        self.mate[v] = u
        self.size += 1

    def free_vertices(self) -> list[int]:
        return [v for v, w in enumerate(self.mate) if w == -1]

    def edges(self) -> list[Edge]:
        return [(u, w) for u, w in enumerate(self.mate) if u < w]

    def copy(self) -> "Matching":
        m = Matching(0)
        m.mate = list(self.mate)
        m.size = self.size
        return m

    def serialize(self) -> str:
        """Sorted ``u v`` lines, one per matched edge."""
        return "".join(f"{u} {v}\n" for u, v in self.edges())

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"Matching(size={self.size}, edges={self.edges()})"


@dataclass(frozen=True)
class AugPath:
    """Free vertex ``start``, matched arcs in traversal order, free vertex ``end``.

    The unmatched connectors are implicit: ``start``-tail(arcs[0]),
    head(arcs[i])-tail(arcs[i+1]) and head(arcs[-1])-``end``.
    """

    start: int
    arcs: tuple[Arc, ...]
    end: int

    def vertices(self) -> list[int]:
        out = [self.start]
        for t, h in self.arcs:
            out += (t, h)
        out.append(self.end)
        return out

    def unmatched_edges(self) -> list[Edge]:
        vs = self.vertices()
        return [edge_key(vs[i], vs[i + 1]) for i in range(0, len(vs), 2)]

    def __len__(self) -> int:
        return len(self.arcs)


def greedy_maximal(n: int, edges: Iterable[Edge]) -> Matching:
    """One pass of the greedy algorithm: keep an edge iff both ends are still free."""
    m = Matching(n)
    mate = m.mate
    for u, v in edges:
        if mate[u] == -1 and mate[v] == -1:
            m.add(u, v)
    return m


def check_aug_path(m: Matching, p: AugPath, edge_set: frozenset[Edge] | set[Edge] | None = None) -> None:
    """Raise :class:`MatchingError` unless ``p`` augments ``m``."""
    if p.start == p.end:
        raise MatchingError("augmenting path must join two distinct free vertices")
    for end in (p.start, p.end):
        if not m.is_free(end):
            raise MatchingError(f"endpoint {end} is not free")
    for t, h in p.arcs:
        if m.mate[t] != h:
            raise MatchingError(f"arc ({t},{h}) is not matched")
    vs = p.vertices()
    if len(set(vs)) != len(vs):
        raise MatchingError(f"path revisits a vertex: {vs}")
    if edge_set is not None:
        for e in p.unmatched_edges():
            if e not in edge_set:
                raise MatchingError(f"connector {e[0]} {e[1]} is not a graph edge")


def augment_along(m: Matching, p: AugPath, edge_set: frozenset[Edge] | set[Edge] | None = None) -> Matching:
    """Flip ``p`` in place and return ``m``; the size grows by exactly one."""
    check_aug_path(m, p, edge_set)
    vs = p.vertices()
    mate = m.mate
    for i in range(0, len(vs), 2):
        a, b = vs[i], vs[i + 1]
        mate[a] = b
        mate[b] = a
    m.size += 1
    return m


def validate_matching(g: EdgeList, m: Matching | Iterable[Edge]) -> str | None:
    """Return a description of the first violation, or None when ``m`` is a matching of ``g``.

    ``m`` may also be a plain collection of edges, which is how vertex reuse
    can be expressed at all.
    """
    if not isinstance(m, Matching):
        return validate_edge_set(g, m)
    if m.n != g.n:
        return f"mate table has {m.n} entries for {g.n} vertices"
    es = g.edge_set()
    count = 0
    for u, w in enumerate(m.mate):
        if w == -1:
            continue
        if not 0 <= w < g.n:
            return f"vertex {u} mated to out-of-range {w}"
        if m.mate[w] != u:
            return f"asymmetric mate: {u}->{w} but {w}->{m.mate[w]}"
        if u < w:
            if edge_key(u, w) not in es:
                return f"matched edge {u} {w} not in graph"
            count += 1
    if count != m.size:
        return f"size field {m.size} disagrees with {count} matched edges"
    return None


def validate_edge_set(g: EdgeList, edges: Iterable[Edge]) -> str | None:
    """Check a raw edge collection: graph membership and vertex reuse."""
    es = g.edge_set()
    used: dict[int, Edge] = {}
    for u, v in edges:
        if edge_key(u, v) not in es:
            return f"edge {u} {v} not in graph"
        for x in (u, v):
            if x in used:
                return f"vertex {x} reused by {u} {v} and {used[x][0]} {used[x][1]}"
            used[x] = (u, v)
    return None


def is_maximal(g: EdgeList, m: Matching) -> bool:
    return all(not (m.is_free(u) and m.is_free(v)) for u, v in g.edges)
