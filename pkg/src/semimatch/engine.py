"""Parameters, PassBundles, phases and the full multi-phase run."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .matching import Matching, greedy_maximal
from .stream import EdgeStream
from .structures import CheckLevel, InvariantViolation, PhaseState


class Mode(str, enum.Enum):
    QUIESCENT = "quiescent"
    BUDGET = "budget"


def as_fraction(eps: float | str | Fraction) -> Fraction:
    if isinstance(eps, Fraction):
        return eps
    if isinstance(eps, str):
        return Fraction(eps)
    return Fraction(eps).limit_denominator(10**6)


def delta(k: Fraction | int) -> Fraction:
    """Density threshold of short augmenting paths: 1 / (2k(k+2))."""
    k = Fraction(k)
    return 1 / (2 * k * (k + 2))


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


@dataclass(frozen=True)
class Params:
    eps: Fraction
    max_len: int
    limit: int
    tau: int
    phases: int | None  # None: no finite phase budget, stop once a phase finds nothing
    delta_k: Fraction
    h: Fraction
    mode: Mode = Mode.QUIESCENT

    @property
    def structure_bound(self) -> int:
        """Largest structure (in vertices) any phase may build."""
        return self.tau * (self.max_len + 1) * self.limit

    @property
    def bundle_budget(self) -> int | None:
        return None if self.phases is None else self.phases * self.tau

    @property
    def pass_bound(self) -> int | None:
        b = self.bundle_budget
        return None if b is None else 1 + 3 * b


def compute_params(
    eps: float | str | Fraction,
    mode: Mode | str = Mode.QUIESCENT,
    *,
    tau: int | None = None,
    max_len: int | None = None,
    limit: int | None = None,
    phases: int | None = None,
) -> Params:
    e = as_fraction(eps)
    if not 0 < e <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    lim = limit if limit is not None else _ceil(1 / e**4)
    t = tau if tau is not None else _ceil(1 / e**6)
    ml = max_len if max_len is not None else _ceil(2 / e)
    if lim < 1 or t < 1 or ml < 1:
        raise ValueError("limit, tau and max_len must all be at least 1")
    dk = delta(2 / e)
    h = (2 + 1 / e) / (e * t) + Fraction(2, lim)
    if phases is None:
        denom = 2 * dk - h / e
        if denom > 0:
            s_size = t * (ml + 1) * lim
            phases = _ceil((1 + 2 * s_size) / denom)
    elif phases < 1:
        raise ValueError("phase budget must be at least 1")
    return Params(e, ml, lim, t, phases, dk, h, Mode(mode))


@dataclass
class BundleReport:
    augmentations: int
    backtracks: int
    stored: int


@dataclass
class PhaseReport:
    augmentations: int
    bundles: int
    active_at_end: int
    free_at_start: int
    max_structure_vertices: int


@dataclass
class RunStats:
    n: int
    m: int
    passes: int = 0
    bundles: int = 0
    phases: int = 0
    peak_words: int = 0
    greedy_size: int = 0
    final_size: int = 0
    augmentations_per_phase: list[int] = field(default_factory=list)
    active_at_phase_end: list[int] = field(default_factory=list)
    bundles_per_phase: list[int] = field(default_factory=list)
    max_structure_vertices: int = 1
    extensions: int = 0
    jumps: int = 0
    overtakes: int = 0
    backtracks: int = 0
    orphaned: int = 0


class RunEnv:
    """Per-run context shared by the phases: stream, params and checking options."""

    def __init__(self, stream: EdgeStream, params: Params, check: CheckLevel | str = CheckLevel.OFF,
                 trace: bool = False, max_bundles: int | None = None):
        self.stream = stream
        self.params = params
        self.check = CheckLevel(check)
        self.trace = trace
        self.edge_set = stream.base.edge_set() if self.check is not CheckLevel.OFF else None
        self.max_bundles = max_bundles
        self.log: list[str] = []
        self.peak_words = 0

    def note_words(self, words: int) -> None:
        if words > self.peak_words:
            self.peak_words = words


def extend_structures(state: PhaseState, stream: EdgeStream) -> None:
    mate = state.mate
    removed = state.removed
    for s in state.alive_structures():
        s.extended = False
        s.overtaken = False
    for u, v in stream.scan():
        if mate[u] == v or removed[u] or removed[v]:
            continue
        cands = []
        for src, dst in ((u, v), (v, u)):
            o = state.outer(src)
            if o is not None and state.eligible(state.structures[o[0]]):
                cands.append((o[0], src, dst))
        if not cands:
            continue
        cands.sort()
        acted: set[int] = set()
        for root, src, dst in cands:
            if root in acted:
                continue
            o = state.outer(src)
            if o is None or o[0] != root:
                continue
            out = state.try_extend(root, src, dst)
            if out.kind.value != "none":
                acted.add(root)
    for s in state.alive_structures():
        if state.eligible(s) and not s.extended and not s.overtaken:
            state.backtrack(s.root)


def edge_merge(state: PhaseState, stream: EdgeStream) -> int:
    mate = state.mate
    removed = state.removed
    found = 0
    for u, v in stream.scan():
        if mate[u] == v or removed[u] or removed[v]:
            continue
        if state.merge_over(u, v) is not None:
            found += 1
    return found


def augment_structures(state: PhaseState, stream: EdgeStream) -> int:
    mate = state.mate
    removed = state.removed
    added = 0
    for u, v in stream.scan():
        if mate[u] == v or removed[u] or removed[v]:
            continue
        if state.record_structure_edge(u, v):
            added += 1
    return added


def run_pass_bundle(state: PhaseState, env: RunEnv) -> BundleReport:
    """ExtendStructures, EdgeMerge and AugmentStructures: exactly three passes."""
    before_aug = len(state.augmentations)
    before_bt = state.counters.backtracks
    state.begin_bundle()
    extend_structures(state, env.stream)
    env.note_words(state.words())
    edge_merge(state, env.stream)
    env.note_words(state.words())
    stored = augment_structures(state, env.stream)
    env.note_words(state.words())
    state.end_bundle()
    if env.trace:
        env.log.append(state.dump())
    return BundleReport(len(state.augmentations) - before_aug, state.counters.backtracks - before_bt, stored)


def run_phase(env: RunEnv, m: Matching) -> tuple[PhaseReport, PhaseState]:
    """One phase: fresh structures and labels, then PassBundles until done."""
    p = env.params
    state = PhaseState(
        m, p.max_len, p.limit,
        check=env.check, edge_set=env.edge_set, trace=env.trace,
    )
    free_at_start = len(state.structures)
    cap = env.max_bundles if env.max_bundles is not None else _default_bundle_cap(m.n, p)
    bundles = 0
    while True:
        active = [s for s in state.alive_structures() if s.active]
        if not active:
            break
        if p.mode is Mode.BUDGET:
            if bundles >= p.tau:
                break
        elif not state.holds_suspended and all(
            s.on_hold and s.pause == 0 for s in active
        ):
            # every remaining active structure is on hold: nothing else can move
            state.suspend_holds()
        if bundles >= cap:
            raise InvariantViolation(
                f"phase did not quiesce within {cap} bundles", state.events[-50:]
            )
        run_pass_bundle(state, env)
        bundles += 1
    if env.trace:
        env.log.extend(state.events)
        state.events.clear()
    report = PhaseReport(
        augmentations=len(state.augmentations),
        bundles=bundles,
        active_at_end=len(state.active_free_vertices()),
        free_at_start=free_at_start,
        max_structure_vertices=state.counters.max_structure_vertices,
    )
    return report, state


def _default_bundle_cap(n: int, p: Params) -> int:
    # labels only decrease and each backtrack retires an arc position, so a
    # phase needs at most O(n * max_len^2) bundles
    return 50 + 4 * (n + 1) * (p.max_len + 2) ** 2


def run(
    stream: EdgeStream,
    eps: float | str | Fraction = Fraction(1, 2),
    mode: Mode | str = Mode.QUIESCENT,
    *,
    params: Params | None = None,
    check: CheckLevel | str = CheckLevel.OFF,
    trace: bool = False,
    env: RunEnv | None = None,
) -> tuple[Matching, RunStats]:
    """Greedy pass, then phases until the stopping rule of the mode fires.

    ``params`` (or ``env.params``) overrides ``eps`` and ``mode``.
    """
    if env is None:
        params = params or compute_params(eps, mode)
        env = RunEnv(stream, params, check, trace)
    params = env.params
    g = stream.base
    stats = RunStats(n=g.n, m=g.m)
    start_passes = stream.passes_taken

    m = greedy_maximal(g.n, stream.scan())
    stats.greedy_size = m.size
    env.note_words(m.size)
    if env.trace:
        env.log.append(f"greedy {m.serialize().strip()!r}".replace("\\n", ","))

    max_phases = g.n + 2
    while True:
        if params.mode is Mode.BUDGET and params.phases is not None and stats.phases >= params.phases:
            break
        if stats.phases > max_phases:
            raise InvariantViolation(f"run did not stop within {max_phases} phases")
        size_before = m.size
        report, state = run_phase(env, m)
        stats.phases += 1
        stats.bundles += report.bundles
        stats.augmentations_per_phase.append(report.augmentations)
        stats.active_at_phase_end.append(report.active_at_end)
        stats.bundles_per_phase.append(report.bundles)
        stats.max_structure_vertices = max(stats.max_structure_vertices, report.max_structure_vertices)
        c = state.counters
        stats.extensions += c.extensions
        stats.jumps += c.jumps
        stats.overtakes += c.overtakes
        stats.backtracks += c.backtracks
        stats.orphaned += c.orphaned
        if m.size != size_before + report.augmentations:
            raise InvariantViolation("matching size does not match the augmentation count")
        if env.trace:
            env.log.append(f"phase {stats.phases} augmentations={report.augmentations} "
                           f"bundles={report.bundles} size={m.size}")
        if report.augmentations == 0 and (params.mode is Mode.BUDGET or report.active_at_end == 0):
            break

    stats.passes = stream.passes_taken - start_passes
    stats.final_size = m.size
    stats.peak_words = env.peak_words
    if stats.passes != 1 + 3 * stats.bundles:
        raise InvariantViolation(f"pass count {stats.passes} != 1 + 3 * {stats.bundles}")
    return m, stats
