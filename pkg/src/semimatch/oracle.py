"""Exact ground truth for small graphs.

Nothing here shares code with the streaming algorithm beyond the
:class:`~semimatch.matching.Matching` container.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matching import Matching
from .stream import EdgeList

EDGE_BUDGET = 48


class OracleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    opt_size: int
    witness: Matching
    nodes_explored: int


def max_matching_exact(g: EdgeList, budget: int = EDGE_BUDGET) -> OracleResult:
    """Maximum matching by exhaustive branch and bound.

    Branches on the lowest-numbered undecided vertex: leave it unmatched, or
    include one of its edges to a still-unmatched neighbour. A branch is cut
    when even matching every remaining non-isolated vertex in pairs could not
    beat the incumbent.
    """
    if g.m > budget:
        raise OracleBudgetExceeded(f"{g.m} edges exceeds the oracle budget of {budget}")
    n = g.n
    adj = [sorted(nb) for nb in g.adjacency()]
    used = [False] * n
    chosen: list[tuple[int, int]] = []
    best: list[tuple[int, int]] = []
    explored = 0

    # incumbent from a greedy pass so pruning bites early
    for u, v in g.edges:
        if not used[u] and not used[v]:
            used[u] = used[v] = True
            best.append((u, v))
    used = [False] * n

    def bound(start: int) -> int:
        live = 0
        for x in range(start, n):
            if not used[x] and any(not used[y] for y in adj[x]):
                live += 1
        return live // 2

    def search(v: int) -> None:
        nonlocal best, explored
        explored += 1
        while v < n and (used[v] or not adj[v]):
            v += 1
        if len(chosen) + bound(v) <= len(best):
            return
        if v >= n:
            best = list(chosen)
            return
        used[v] = True
        for w in adj[v]:
            if not used[w]:
                used[w] = True
                chosen.append((v, w))
                search(v + 1)
                chosen.pop()
                used[w] = False
        used[v] = False
        # leave v unmatched; mark it so the bound ignores it
        used[v] = True
        search(v + 1)
        used[v] = False

    search(0)
    return OracleResult(len(best), Matching.from_edges(n, best), explored)


def _search_paths(g: EdgeList, m: Matching, k: int, blocked: set[int] | None = None):
    """Yield augmenting paths (as vertex lists) with at most ``k`` matched edges."""
    adj = [sorted(nb) for nb in g.adjacency()]
    mate = m.mate
    blocked = blocked or set()
    for a in range(g.n):
        if mate[a] != -1 or a in blocked:
            continue
        path = [a]
        on = {a}

        def dfs(x: int, matched: int):
            for y in adj[x]:
                if y in on or y in blocked or mate[x] == y:
                    continue
                if mate[y] == -1:
                    yield path + [y]
                    continue
                if matched == k:
                    continue
                z = mate[y]
                if z in on or z in blocked:
                    continue
                path.extend((y, z))
                on.update((y, z))
                yield from dfs(z, matched + 1)
                on.difference_update((y, z))
                del path[-2:]

        yield from dfs(a, 0)


def find_short_aug_path(g: EdgeList, m: Matching, k: int, blocked: set[int] | None = None) -> list[int] | None:
    return next(_search_paths(g, m, k, blocked), None)


def short_aug_path_exists(g: EdgeList, m: Matching, k: int) -> bool:
    """True iff some augmenting path uses at most ``k`` matched edges."""
    return find_short_aug_path(g, m, k) is not None


def delta(k: int | Fraction) -> Fraction:
    k = Fraction(k)
    return 1 / (2 * k * (k + 2))


def certificate_check(g: EdgeList, m: Matching, k: int) -> tuple[int, Fraction]:
    """Size of a greedily packed maximal set of disjoint short augmenting paths,
    and the threshold ``2 * delta(k) * |M|`` below which it certifies a
    ``1 + 2/k`` approximation."""
    blocked: set[int] = set()
    count = 0
    while True:
        p = find_short_aug_path(g, m, k, blocked)
        if p is None:
            break
        count += 1
        blocked.update(p)
    return count, 2 * delta(k) * m.size
