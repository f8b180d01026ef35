"""Per-phase structure forest grown from the free vertices.

Every free vertex owns a *structure*: a set of matched arcs, each reachable
from the root by an alternating path. That path is recorded per arc
(``path_to``): a simple alternating path from the root whose arcs all belong to
the same structure and whose unmatched connectors are stored edges. Paths of
different arcs need not share prefixes, which is what lets a structure route
around odd cycles. The active path is kept separately.

Labels map a matched arc to the shortest active-path position at which it has
been reached in the current phase; a missing key means infinity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator

from .matching import Arc, AugPath, Matching, augment_along, reverse
from .stream import Edge, edge_key

INF = math.inf


class InvariantViolation(AssertionError):
    """A structural invariant failed; ``trace`` holds the recent event log."""

    def __init__(self, message: str, trace: list[str] | None = None):
        self.trace = list(trace or [])
        super().__init__(message)


class CheckLevel(str, enum.Enum):
    OFF = "off"
    BOUNDARY = "boundary"
    FULL = "full"


@dataclass(eq=False)
class Structure:
    root: int
    arcs: set[Arc] = field(default_factory=set)
    path: list[Arc] = field(default_factory=list)
    active: bool = True
    on_hold: bool = False
    pause: int = 0
    alive: bool = True
    # bookkeeping for the current ExtendStructures pass / bundle
    extended: bool = False
    overtaken: bool = False
    paused_now: bool = False

    def vertex_count(self) -> int:
        """Vertices including the root; both orientations of an edge count once."""
        edges = {edge_key(*a) for a in self.arcs}
        return 1 + 2 * len(edges)


class Outcome(enum.Enum):
    NONE = "none"
    EXTENDED = "extended"
    JUMPED = "jumped"
    AUGMENTATION = "augmentation"


@dataclass(frozen=True)
class ExtendOutcome:
    kind: Outcome
    target: Arc | None = None
    jumped: tuple[Arc, ...] = ()
    path: AugPath | None = None
    overtook_from: int | None = None


NO_EXTENSION = ExtendOutcome(Outcome.NONE)


@dataclass
class Counters:
    extensions: int = 0
    jumps: int = 0
    overtakes: int = 0
    active_overtakes: int = 0
    backtracks: int = 0
    merges: int = 0
    orphaned: int = 0
    invariant_checks: int = 0
    max_structure_vertices: int = 1


class PhaseState:
    """All mutable state of one phase: structures, labels, ownership and stored edges."""

    def __init__(
        self,
        matching: Matching,
        max_len: int,
        limit: int,
        *,
        check: CheckLevel | str = CheckLevel.OFF,
        edge_set: frozenset[Edge] | None = None,
        trace: bool = False,
    ):
        self.matching = matching
        self.mate = matching.mate
        self.max_len = max_len
        self.limit = limit
        self.check = CheckLevel(check)
        self.edge_set = edge_set
        self.tracing = trace
        self.events: list[str] = []

        n = matching.n
        self.labels: dict[Arc, int] = {}
        self.owner: dict[Arc, int] = {}
        self.path_to: dict[Arc, tuple[Arc, ...]] = {}
        self.stored: set[Edge] = set()
        self.stored_adj: dict[int, set[int]] = {}
        self.removed = bytearray(n)
        self.holds_suspended = False
        self.augmentations: list[AugPath] = []
        self.counters = Counters()
        self.structures: dict[int, Structure] = {
            v: Structure(v) for v in range(n) if self.mate[v] == -1
        }

    # -- queries --------------------------------------------------------------

    def label(self, arc: Arc) -> float:
        return self.labels.get(arc, INF)

    def alive_structures(self) -> Iterator[Structure]:
        for r in sorted(self.structures):
            s = self.structures[r]
            if s.alive:
                yield s

    def vertex_owner(self, x: int) -> int | None:
        if self.removed[x]:
            return None
        w = self.mate[x]
        if w == -1:
            s = self.structures.get(x)
            return x if s is not None and s.alive else None
        r = self.owner.get((x, w))
        return r if r is not None else self.owner.get((w, x))

    def outer(self, x: int) -> tuple[int, Arc | None] | None:
        """``(root, arc)`` if some structure reaches ``x`` at an even position.

        ``arc`` is the owned matched arc ending at ``x``; it is None when ``x``
        is itself the root.
        """
        if self.removed[x]:
            return None
        w = self.mate[x]
        if w == -1:
            s = self.structures.get(x)
            return (x, None) if s is not None and s.alive else None
        arc = (w, x)
        r = self.owner.get(arc)
        return (r, arc) if r is not None else None

    def alternating_path_to(self, arc: Arc) -> tuple[int, list[Arc]]:
        """Root and the alternating path (matched arcs) from it to ``arc``."""
        r = self.owner.get(arc)
        if r is None:
            raise KeyError(f"arc {arc} is not owned by any structure")
        return r, list(self.path_to[arc])

    def active_free_vertices(self) -> list[int]:
        return [s.root for s in self.alive_structures() if s.active]

    def eligible(self, s: Structure) -> bool:
        held = s.on_hold and not self.holds_suspended
        return s.alive and s.active and not held and not s.paused_now and s.pause == 0

    def words(self) -> int:
        """Resident words: matched edges, label records, arc records, recorded paths, stored edges."""
        paths = sum(len(p) for p in self.path_to.values())
        return self.matching.size + len(self.labels) + len(self.owner) + paths + len(self.stored)

    # -- mutation helpers -----------------------------------------------------

    def _log(self, msg: str) -> None:
        if self.tracing:
            self.events.append(msg)

    def _set_label(self, arc: Arc, value: int) -> None:
        old = self.labels.get(arc, INF)
        if self.check is not CheckLevel.OFF and not value < old:
            self._fail(f"label of {arc} would not decrease: {old} -> {value}")
        if not 1 <= value <= self.max_len:
            self._fail(f"label {value} of {arc} outside 1..{self.max_len}")
        self.labels[arc] = value

    def _store(self, u: int, v: int) -> None:
        key = edge_key(u, v)
        if key in self.stored:
            return
        self.stored.add(key)
        if self.mate[u] != v:
            self.stored_adj.setdefault(u, set()).add(v)
            self.stored_adj.setdefault(v, set()).add(u)

    def _fail(self, message: str) -> None:
        raise InvariantViolation(message, self.events[-50:])

    # -- ExtendStructures -----------------------------------------------------

    def _segment(self, s: Structure, src: int) -> list[Arc] | None:
        """Shortest run of owned arcs b_1..b_h leading from the active head to ``src``.

        Consecutive arcs are joined by stored edges, none of them touches the
        active path, and ``b_i`` must carry a label of at most ``k + i``.
        """
        k = len(s.path)
        if src == s.root:
            return [] if k == 0 else None
        w = self.mate[src]
        last = (w, src)
        if self.owner.get(last) != s.root:
            return None
        if k and s.path[-1] == last:
            return []
        budget = self.max_len - k
        lab = self.labels.get(last, INF)
        if lab > k + budget:
            return None
        used = {s.root}
        for t, h in s.path:
            used.add(t)
            used.add(h)
        if src in used:
            return None
        start = s.path[-1][1] if k else s.root
        mate, owner, labels, root = self.mate, self.owner, self.labels, s.root
        seg: list[Arc] = []

        def dfs(x: int, depth: int) -> bool:
            # depth = number of arcs still to place
            for y in sorted(self.stored_adj.get(x, ())):
                if y in used:
                    continue
                z = mate[y]
                if z == -1 or z in used:
                    continue
                b = (y, z)
                if owner.get(b) != root or labels.get(b, INF) > k + len(seg) + 1:
                    continue
                if depth == 1:
                    if b == last:
                        seg.append(b)
                        return True
                    continue
                if b == last:
                    continue
                seg.append(b)
                used.add(y)
                used.add(z)
                if dfs(z, depth - 1):
                    return True
                used.discard(y)
                used.discard(z)
                seg.pop()
            return False

        for h in range(max(1, lab - k), budget + 1):
            if dfs(start, h):
                return seg
        return None

    def try_extend(self, root: int, src: int, dst: int) -> ExtendOutcome:
        """Attempt to grow ``root``'s active path over the unmatched edge ``src``-``dst``."""
        s = self.structures[root]
        if not self.eligible(s) or self.removed[dst] or self.mate[src] == dst:
            return NO_EXTENSION
        seg = self._segment(s, src)
        if seg is None:
            return NO_EXTENSION
        new_path = s.path + seg
        on_path = {root}
        for t, h in new_path:
            on_path.add(t)
            on_path.add(h)
        if dst in on_path:
            return NO_EXTENSION

        w = self.mate[dst]
        if w == -1:
            p = AugPath(root, tuple(new_path), dst)
            self._log(f"augment-free {root}->{dst} len={len(p)}")
            self._merge(p, root, dst, (src, dst))
            return ExtendOutcome(Outcome.AUGMENTATION, path=p)

        target = (dst, w)
        back = (w, dst)
        other = self.owner.get(back)
        if other is not None and other != root:
            tail = [reverse(c) for c in reversed(self.path_to[back])]
            p = AugPath(root, tuple(new_path + tail), other)
            self._log(f"augment-outer {root}->{other} via {src}-{dst} len={len(p)}")
            self._merge(p, root, other, (src, dst))
            return ExtendOutcome(Outcome.AUGMENTATION, path=p)

        pos = len(new_path) + 1
        if pos > self.max_len or self.labels.get(target, INF) <= pos:
            return NO_EXTENSION

        holder = self.owner.get(target)
        if holder is not None and holder != root:
            return self._overtake(root, holder, target, new_path, seg, (src, dst))

        if holder is None:
            self.owner[target] = root
            s.arcs.add(target)
        self._store(src, dst)
        self._store(dst, w)
        self.path_to[target] = tuple(new_path) + (target,)
        self._set_label(target, pos)
        s.path = new_path + [target]
        s.extended = True
        self.counters.extensions += 1
        if seg:
            self.counters.jumps += 1
        self._log(f"{'jump' if seg else 'extend'} {root} {target} pos={pos} over={seg}")
        self._after_mutation()
        kind = Outcome.JUMPED if seg else Outcome.EXTENDED
        return ExtendOutcome(kind, target=target, jumped=tuple(seg))

    # -- Overtaking -----------------------------------------------------------

    def _overtake(
        self,
        taker: int,
        giver: int,
        target: Arc,
        new_path: list[Arc],
        seg: list[Arc],
        via: Edge,
    ) -> ExtendOutcome:
        """Hand ``target`` (and whatever can only be reached through it) to ``taker``.

        When ``target`` sits on the giver's active path the whole suffix from
        ``target`` on moves and the giver's path is cut before it.
        """
        t_struct = self.structures[taker]
        g_struct = self.structures[giver]
        src, dst = via
        self._store(src, dst)
        self._store(*target)
        if target in g_struct.path:
            j = g_struct.path.index(target)
            suffix = g_struct.path[j:]
        else:
            j = None
            suffix = [target]
        plan = self._plan_overtake(taker, giver, suffix, new_path)
        if isinstance(plan, AugPath):
            self._log(f"overtake-merge {taker}<-{giver} at {target} len={len(plan)}")
            self._merge(plan, taker, giver, via)
            return ExtendOutcome(Outcome.AUGMENTATION, path=plan)
        stay, moved, orphans = plan

        for a in orphans:
            del self.owner[a]
            del self.path_to[a]
            g_struct.arcs.discard(a)
        for a, p in moved.items():
            self.owner[a] = taker
            self.path_to[a] = p
            g_struct.arcs.discard(a)
            t_struct.arcs.add(a)
        for a, p in stay.items():
            self.path_to[a] = p
        self.counters.orphaned += len(orphans)

        pos = len(new_path) + 1
        self._set_label(target, pos)
        if j is not None:
            g_struct.path = g_struct.path[:j]
            g_struct.overtaken = True
            for i, a in enumerate(suffix[1:], start=1):
                if self.labels.get(a, INF) > pos + i:
                    self._set_label(a, pos + i)
            t_struct.path = new_path + suffix
            t_struct.pause = len(suffix)
            self.counters.active_overtakes += 1
        else:
            t_struct.path = new_path + [target]
        t_struct.extended = True
        self.counters.overtakes += 1
        self.counters.extensions += 1
        if seg:
            self.counters.jumps += 1
        self._log(
            f"overtake {taker}<-{giver} {target} pos={pos} moved={len(moved)} "
            f"orphaned={len(orphans)} pause={t_struct.pause}"
        )
        if self.check is CheckLevel.FULL:
            self.check_overtake_postconditions(taker, giver)
        self._after_mutation()
        return ExtendOutcome(Outcome.JUMPED if seg else Outcome.EXTENDED, target=target,
                             jumped=tuple(seg), overtook_from=giver)

    def _plan_overtake(self, taker: int, giver: int, suffix: list[Arc], new_path: list[Arc]):
        """Split the giver's arcs into those still reachable without ``suffix``
        and those that follow the suffix to the taker.

        Returns an augmenting path if the split exposes one, otherwise
        ``(stay, moved, orphans)`` with a fresh path for every arc in the first
        two and the arcs that could be given no path at all.
        """
        g_struct = self.structures[giver]
        avoid = set(suffix)
        stay: dict[Arc, tuple[Arc, ...]] = {}

        def keep(p: tuple[Arc, ...]) -> None:
            for i, c in enumerate(p):
                if c not in stay:
                    own = self.path_to[c]
                    stay[c] = own if avoid.isdisjoint(own) else p[: i + 1]

        for a in sorted(g_struct.arcs):
            if avoid.isdisjoint(self.path_to[a]):
                keep(self.path_to[a])
        for i in range(len(g_struct.path)):
            if g_struct.path[i] in avoid:
                break
            keep(tuple(g_struct.path[: i + 1]))

        base = tuple(new_path)
        moved: dict[Arc, tuple[Arc, ...]] = {}
        for d in sorted(g_struct.arcs):
            if d in stay:
                continue
            p = self.path_to[d]
            t = max(i for i, c in enumerate(p) if c in avoid)
            moved[d] = base + tuple(suffix[: suffix.index(p[t]) + 1]) + p[t + 1:]
        orphans: list[Arc] = []
        t_arcs = self.structures[taker].arcs

        changed = True
        while changed:
            changed = False
            for d in sorted(moved):
                tp = moved[d]
                ok = _simple(tp) and all(c in moved or c in t_arcs for c in tp)
                if ok:
                    continue
                changed = True
                del moved[d]
                cut = next((i for i, c in enumerate(tp) if c not in t_arcs), len(tp))
                rescue = self._rescue(tp, cut, stay, avoid, giver, taker)
                if isinstance(rescue, AugPath):
                    return rescue
                if rescue is not None:
                    keep(rescue)
                    continue
                allowed = set(g_struct.arcs) - avoid - set(orphans)
                p = self._search_path(giver, d, allowed)
                if p is not None:
                    keep(p)
                    continue
                allowed = set(t_arcs) | set(moved) | {d}
                p = self._search_path(taker, d, allowed)
                if p is not None:
                    moved[d] = p
                else:
                    orphans.append(d)
            for a in list(moved):
                if a in stay:
                    del moved[a]
                    changed = True

        return self._overtake_merge(taker, giver, stay, moved) or (stay, moved, orphans)

    def _rescue(self, tp: tuple[Arc, ...], cut: int, stay, avoid, giver: int, taker: int):
        """Reroute the last arc of ``tp`` through an arc that stays with the giver.

        ``tp`` is a taker path that failed because it runs through such an
        arc; its first ``cut`` arcs already belong to the taker. Walk that arc's path until it first meets the moved part of
        ``tp``: meeting in the same direction gives the giver a path to ``d``,
        meeting in the opposite direction is an augmenting path.
        """
        tail = tp[cut:]
        hit = next((c for c in tail if c in stay), None)
        if hit is None:
            return None
        q = stay[hit]
        where = {edge_key(*c): i for i, c in enumerate(tail)}
        for i, c in enumerate(q):
            jx = where.get(edge_key(*c))
            if jx is None:
                continue
            if tail[jx] == c:
                p = q[: i + 1] + tail[jx + 1:]
                if _simple(p) and avoid.isdisjoint(p):
                    return p
                return None
            back = tuple(reverse(x) for x in reversed(tp[: cut + jx]))
            return AugPath(giver, q[: i + 1] + back, taker)
        return None

    def _search_path(self, root: int, target: Arc, allowed: set[Arc]) -> tuple[Arc, ...] | None:
        """Exhaustive search for a simple alternating path from ``root`` to
        ``target`` over stored edges and the ``allowed`` arcs."""
        mate = self.mate
        used = {root}
        path: list[Arc] = []

        def dfs(x: int) -> bool:
            for y in sorted(self.stored_adj.get(x, ())):
                if y in used:
                    continue
                z = mate[y]
                if z == -1 or z in used or (y, z) not in allowed:
                    continue
                path.append((y, z))
                if (y, z) == target:
                    return True
                used.add(y)
                used.add(z)
                if dfs(z):
                    return True
                used.discard(y)
                used.discard(z)
                path.pop()
            return False

        return tuple(path) if dfs(root) else None

    def _overtake_merge(self, taker, giver, stay, moved) -> AugPath | None:
        """An augmenting path between taker and giver that the split would expose."""
        # an edge split between the two structures in opposite orientations
        for d in sorted(moved):
            rd = reverse(d)
            if rd in stay:
                return _crossing_path(giver, list(stay[rd]), taker, list(moved[d]))
        # a stored edge joining an even vertex of the moved part to one left behind
        for d in sorted(moved):
            x = d[1]
            for y in sorted(self.stored_adj.get(x, ())):
                if self.removed[y]:
                    continue
                if y == giver:
                    return AugPath(taker, moved[d], giver)
                wy = self.mate[y]
                if wy == -1:
                    continue
                arc_y = (wy, y)
                if arc_y in stay:
                    tail = tuple(reverse(c) for c in reversed(stay[arc_y]))
                    return AugPath(taker, moved[d] + tail, giver)
        return None

    # -- backtracking, merging, storing --------------------------------------

    def backtrack(self, root: int) -> None:
        s = self.structures[root]
        if s.path:
            arc = s.path.pop()
            self._log(f"backtrack {root} {arc}")
        else:
            s.active = False
            self._log(f"inactive {root}")
        self.counters.backtracks += 1
        self._after_mutation()

    def detect_merge(self, u: int, v: int) -> tuple[AugPath, int, int] | None:
        """Augmenting path across the unmatched edge ``u``-``v`` joining two structures."""
        if self.mate[u] == v:
            return None
        ou, ov = self.outer(u), self.outer(v)
        if ou is None or ov is None or ou[0] == ov[0]:
            return None
        (ru, au), (rv, av) = ou, ov
        head = list(self.path_to[au]) if au is not None else []
        tail = [reverse(c) for c in reversed(self.path_to[av])] if av is not None else []
        return AugPath(ru, tuple(head + tail), rv), ru, rv

    def merge_over(self, u: int, v: int) -> AugPath | None:
        found = self.detect_merge(u, v)
        if found is None:
            return None
        p, ru, rv = found
        self._log(f"edge-merge {ru}-{rv} via {u}-{v} len={len(p)}")
        self._merge(p, ru, rv, (u, v))
        return p

    def record_structure_edge(self, u: int, v: int) -> bool:
        if self.mate[u] == v:
            return False
        ru = self.vertex_owner(u)
        if ru is None or ru != self.vertex_owner(v):
            return False
        before = len(self.stored)
        self._store(u, v)
        return len(self.stored) > before

    def _merge(self, p: AugPath, r1: int, r2: int, via: Edge) -> None:
        self._store(*via)
        edge_set = self.edge_set if self.check is not CheckLevel.OFF else None
        augment_along(self.matching, p, edge_set)
        self.augmentations.append(p)
        self.counters.merges += 1
        for r in (r1, r2):
            s = self.structures[r]
            s.alive = False
            s.active = False
            self.removed[r] = 1
            for a in s.arcs:
                self.removed[a[0]] = 1
                self.removed[a[1]] = 1
                self.owner.pop(a, None)
                self.path_to.pop(a, None)
                self.labels.pop(a, None)
            s.arcs.clear()
            s.path = []
        # path vertices are all inside the two structures
        for x in p.vertices():
            self.removed[x] = 1
        self._after_mutation()

    # -- bundle boundary ------------------------------------------------------

    def begin_bundle(self) -> None:
        for s in self.alive_structures():
            s.paused_now = s.pause > 0

    def end_bundle(self) -> None:
        for s in self.alive_structures():
            if s.paused_now:
                s.pause -= 1
                s.paused_now = False
            s.on_hold = s.vertex_count() - 1 >= self.limit
        if self.check is CheckLevel.BOUNDARY:
            self.check_invariants()
        self._track_size()

    def suspend_holds(self) -> None:
        self.holds_suspended = True
        self._log("holds suspended")

    def _track_size(self) -> None:
        c = self.counters
        for s in self.alive_structures():
            vc = s.vertex_count()
            if vc > c.max_structure_vertices:
                c.max_structure_vertices = vc

    def _after_mutation(self) -> None:
        if self.check is CheckLevel.FULL:
            self.check_invariants()
            self._track_size()

    # -- invariant checking ---------------------------------------------------

    def check_invariants(self) -> None:
        self.counters.invariant_checks += 1
        seen_vertex: dict[int, int] = {}
        for s in self.alive_structures():
            r = s.root
            if self.removed[r]:
                self._fail(f"alive structure {r} has a removed root")
            for v in self._structure_vertices(s):
                if seen_vertex.setdefault(v, r) != r:
                    self._fail(f"vertex {v} in structures {seen_vertex[v]} and {r}")
            for a in s.arcs:
                if self.owner.get(a) != r:
                    self._fail(f"arc {a} in structure {r} but owner is {self.owner.get(a)}")
                ro = self.owner.get(reverse(a))
                if ro is not None and ro != r:
                    self._fail(f"arc {a} in {r} while its reverse is in {ro}")
                self._check_path(r, a)
            self._check_active_path(s)

    def _structure_vertices(self, s: Structure) -> set[int]:
        vs = {s.root}
        for t, h in s.arcs:
            vs.add(t)
            vs.add(h)
        return vs

    def _check_path(self, r: int, arc: Arc) -> None:
        p = self.path_to.get(arc)
        if not p or p[-1] != arc:
            self._fail(f"arc {arc} of {r} has no recorded path ending at it")
        self._check_alternating(r, p, f"path of {arc}")

    def _check_alternating(self, r: int, p, what: str) -> None:
        prev = r
        seen = {r}
        for t, h in p:
            if self.owner.get((t, h)) != r:
                self._fail(f"{what} leaves structure {r} at {(t, h)}")
            if self.mate[t] != h:
                self._fail(f"{what} contains unmatched arc {(t, h)}")
            if t in seen or h in seen:
                self._fail(f"{what} is not simple at {(t, h)}")
            seen.add(t)
            seen.add(h)
            if edge_key(prev, t) not in self.stored:
                self._fail(f"connector {prev}-{t} on {what} is not stored")
            prev = h

    def _check_active_path(self, s: Structure) -> None:
        p = s.path
        if len(p) > self.max_len:
            self._fail(f"active path of {s.root} has length {len(p)} > {self.max_len}")
        self._check_alternating(s.root, p, f"active path of {s.root}")
        for i, a in enumerate(p, start=1):
            lab = self.labels.get(a, INF)
            if lab > i:
                self._fail(f"active arc {a} of {s.root} at position {i} has label {lab}")
            if i > lab and not self._reverse_reached(s, a):
                self._fail(f"jumping invariant: {a} at position {i} > label {lab} "
                           f"but reverse unreached")

    def _reverse_reached(self, s: Structure, a: Arc) -> bool:
        ra = reverse(a)
        if ra in self.labels or self.owner.get(ra) == s.root:
            return True
        return self._reachable_within(s, ra)

    def _reachable_within(self, s: Structure, target: Arc) -> bool:
        """Exhaustive search for a simple alternating path to ``target`` over the
        structure's vertices and stored edges."""
        members = self._structure_vertices(s)
        mate = self.mate
        used = {s.root}

        def dfs(x: int) -> bool:
            for y in sorted(self.stored_adj.get(x, ())):
                if y in used or y not in members:
                    continue
                w = mate[y]
                if w == -1 or w in used:
                    continue
                if (y, w) == target:
                    return True
                used.add(y)
                used.add(w)
                if dfs(w):
                    return True
                used.discard(y)
                used.discard(w)
            return False

        return dfs(s.root)

    def check_overtake_postconditions(self, taker: int, giver: int) -> None:
        for r in (taker, giver):
            s = self.structures[r]
            for a in s.arcs:
                self._check_path(r, a)
            if len(s.path) > self.max_len:
                self._fail(f"after overtake, active path of {r} exceeds {self.max_len}")
        t_arcs = self.structures[taker].arcs
        for a in self.structures[giver].arcs:
            if a in t_arcs or reverse(a) in t_arcs:
                self._fail(f"after overtake, {a} shared by {giver} and {taker}")

    # -- debug dump -----------------------------------------------------------

    def dump(self) -> str:
        """One line per structure: root | active-path | owned-arcs | on_hold | pause."""
        lines = []
        for r in sorted(self.structures):
            s = self.structures[r]
            if not s.alive:
                continue
            path = " ".join(f"({t},{h})" for t, h in s.path) or "-"
            owned = " ".join(f"({t},{h})" for t, h in sorted(s.arcs)) or "-"
            state = "" if s.active else " inactive"
            lines.append(f"{r}{state} | {path} | {owned} | {int(s.on_hold)} | {s.pause}")
        return "\n".join(lines)


def _crossing_path(q_root: int, q: list[Arc], p_root: int, p: list[Arc]) -> AugPath:
    """Join two alternating paths that use some edge in opposite directions.

    Walks ``q`` until the first arc whose reverse lies on ``p`` and returns to
    ``p_root`` backwards along ``p``.
    """
    where = {a: i for i, a in enumerate(p)}
    for i, c in enumerate(q):
        j = where.get(reverse(c))
        if j is not None:
            back = [reverse(x) for x in reversed(p[:j])]
            return AugPath(q_root, tuple(q[: i + 1] + back), p_root)
    raise ValueError("paths do not cross")


def _simple(p) -> bool:
    vs = [x for a in p for x in a]
    return len(set(vs)) == len(vs)
