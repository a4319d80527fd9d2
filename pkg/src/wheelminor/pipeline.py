"""Desk-scale wheel hunting.

The proof loop builds BFS levelings, descends into a level of large
chromatic number, stacks (X, Y, Z) triples, and finishes with a patched
cycle fed to :func:`~wheelminor.extractors.wheel_from_patched_config`.
Because the thresholds that make that loop complete are astronomically
large, the hunt also runs cheaper stages first.  Every stage only proposes
traces; a trace is reported as found only after it replays to W_n.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .errors import InputError, ResourceError, SearchFailure, TraceError
from .extractors import (
    Builder,
    _partial_wheel,
    finish_wheel,
    rim_order,
    shrink_wheel,
    wheel_from_patched_config,
)
from .graph_core import (
    Graph,
    components,
    delete,
    induced,
    induced_copy,
    is_connected,
    label_key,
    sorted_labels,
    wheel,
)
from .ramsey_tools import find_clique, rectangle_or_clique
from .structures import (
    Leveling,
    PatchedConfig,
    PatchedCycle,
    bfs_leveling,
    root_path_holds,
    validate_patched_cycle,
)
from .vm_oracle import OrbitBudget, Trace, has_vertex_minor, replay, trace_to_dict, wheel_order

SCHEMA = 1


# chromatic number


def greedy_coloring(g: Graph) -> dict:
    """DSATUR colouring; an upper bound for the chromatic number."""
    color: dict = {}
    order = sorted_labels(g)
    while len(color) < len(g):
        def sat(v):
            return (len({color[u] for u in g.neighbors(v) if u in color}), g.degree(v))

        v = max((x for x in order if x not in color), key=sat)
        used = {color[u] for u in g.neighbors(v) if u in color}
        color[v] = next(c for c in range(len(g)) if c not in used)
    return color


def _colorable(g: Graph, k: int) -> bool:
    verts = sorted(g, key=lambda v: -g.degree(v))
    color: dict = {}

    def pick():
        best, key = None, None
        for v in verts:
            if v in color:
                continue
            sat = len({color[u] for u in g.neighbors(v) if u in color})
            cand = (sat, g.degree(v))
            if key is None or cand > key:
                best, key = v, cand
        return best

    def go() -> bool:
        v = pick()
        if v is None:
            return True
        used = {color[u] for u in g.neighbors(v) if u in color}
        top = max(color.values(), default=-1)
        for c in range(min(k, top + 2)):
            if c not in used:
                color[v] = c
                if go():
                    return True
                del color[v]
        return False

    return go()


def clique_number(g: Graph) -> int:
    k = 1 if len(g) else 0
    while find_clique(g, list(g), k + 1) is not None:
        k += 1
    return k


def chromatic_number(g: Graph, cap: int = 30) -> int:
    """Exact chromatic number by branch and bound between the clique and DSATUR bounds."""
    if len(g) > cap:
        raise ResourceError(f"graph has {len(g)} vertices, exact colouring is capped at {cap}")
    if not len(g):
        return 0
    hi = max(greedy_coloring(g).values()) + 1
    lo = clique_number(g)
    for k in range(lo, hi):
        if _colorable(g, k):
            return k
    return hi


def chromatic_estimate(g: Graph, cap: int = 30) -> tuple[int, bool]:
    """(chi, exact) with the DSATUR bound beyond ``cap``."""
    if len(g) <= cap:
        return chromatic_number(g, cap), True
    return max(greedy_coloring(g).values()) + 1, False


# induced cycles


def induced_cycles(g: Graph, min_len: int = 3, budget: int = 200_000):
    """Yield every induced cycle of length at least ``min_len`` once.

    A cycle is reported from its lowest vertex, in the direction whose
    second vertex is lower than its last.  Raises ResourceError when more
    than ``budget`` path extensions are needed.
    """
    order = sorted_labels(g)
    rank = {v: i for i, v in enumerate(order)}
    steps = 0
    for s in order:
        stack = [[s]]
        while stack:
            path = stack.pop()
            last = path[-1]
            inside = set(path)
            for y in sorted(g.neighbors(last), key=label_key, reverse=True):
                if rank[y] <= rank[s] or y in inside:
                    continue
                steps += 1
                if steps > budget:
                    raise ResourceError(f"induced cycle search exceeded {budget} steps")
                touch = g.neighbors(y) & inside
                if touch == {last}:
                    stack.append(path + [y])
                elif touch == {last, s} and len(path) >= 2:
                    cyc = path + [y]
                    if len(cyc) >= min_len and rank[cyc[1]] < rank[cyc[-1]]:
                        yield cyc


def find_induced_cycle(g: Graph, r: int, budget: int = 200_000) -> list | None:
    """An induced cycle of length at least ``r`` if the search finds one."""
    for cyc in induced_cycles(g, max(r, 3), budget):
        return cyc
    return None


# patched cycles


def _greedy_anchors(g: Graph, cycle: list, positions: list, pool) -> tuple[list, list]:
    """Greedy chain over ``positions``: next anchor is the first cycle vertex free of chosen patch vertices."""
    pool = set(pool)
    chosen, anchors = [], []
    for k in positions:
        q = cycle[k - 1]
        if any(g.has_edge(q, s) for s in chosen):
            continue
        cands = sorted((g.neighbors(q) & pool) - set(chosen), key=label_key)
        if not cands:
            continue
        chosen.append(cands[0])
        anchors.append(k)
    return anchors, chosen


def build_patched_cycle(g: Graph, cycle: list, pools: list, ell: int, n: int | None = None) -> PatchedCycle:
    """A (k, ell)-patched cycle with patch i inside ``pools[i]``.

    Patches are added one pool at a time; each new greedy pass runs over the
    anchors kept so far, and earlier patches are restricted to the anchors
    it selects.  ``n`` only bounds the neighbor counts checked up front.
    """
    if not pools:
        raise InputError("need at least one vertex pool")
    cyc = set(cycle)
    if n is not None:
        for pool in pools:
            for v in pool:
                if len(g.neighbors(v) & cyc) > n - 1:
                    raise InputError(f"{v!r} has more than {n - 1} cycle-neighbors")
    positions = list(range(1, len(cycle) + 1))
    patches: list[list] = []
    for pool in pools:
        anchors, chosen = _greedy_anchors(g, cycle, positions, pool)
        keep = {k: i for i, k in enumerate(positions)}
        patches = [[p[keep[k]] for k in anchors] for p in patches] + [chosen]
        positions = anchors
    if len(positions) < ell:
        raise SearchFailure("build_patched_cycle", f"greedy reached length {len(positions)} < {ell}")
    pc = PatchedCycle(g, list(cycle), [p[:ell] for p in patches], positions[:ell])
    bad = validate_patched_cycle(pc)
    if bad:  # pragma: no cover - the greedy maintains the invariant
        raise SearchFailure("build_patched_cycle", "; ".join(bad))
    return pc


def simplify_patched_cycle(pc: PatchedCycle, a: int, b: int, k: int):
    """A simple (a, b)-patched cycle on chosen patches/columns, or ("clique", vertices)."""
    cells = {(i, j): s for i, patch in enumerate(pc.patches) for j, s in enumerate(patch)}
    back = {s: c for c, s in cells.items()}
    grid = Graph(list(cells), [(back[x], back[y]) for x, y in induced(pc.graph, cells.values()).edges()])
    got = rectangle_or_clique(grid, a, b, k)
    if got is None:
        raise SearchFailure("simplify_patched_cycle", f"no {a}x{b} independent rectangle and no {k}-clique")
    if got[0] == "clique":
        return ("clique", [cells[c] for c in got[1]])
    _, rows, cols = got
    patches = [[pc.patches[i][j] for j in cols] for i in rows]
    out = PatchedCycle(pc.graph, pc.cycle, patches, [pc.anchors[j] for j in cols])
    out.rows = list(rows)
    return out


# hunting


@dataclass
class HuntConfig:
    n: int
    min_cycle: int | None = None
    max_depth: int = 4
    cycle_budget: int = 200_000
    chi_cap: int = 30
    max_candidates: int = 400
    lookahead_max_vertices: int = 14
    stages: tuple = ("direct", "cycle_hub", "chorded_hub", "lookahead", "proof_loop")
    oracle_budget: OrbitBudget = field(default_factory=lambda: OrbitBudget(50_000, 12))

    def __post_init__(self):
        if self.n < 3:
            raise InputError("wheel size must be at least 3")
        if min(self.max_depth, self.cycle_budget, self.chi_cap, self.max_candidates) <= 0:
            raise InputError("budgets must be positive")
        unknown = set(self.stages) - set(STAGES)
        if unknown:
            raise InputError(f"unknown stages {sorted(unknown)}")


@dataclass
class WitnessReport:
    outcome: str
    n: int
    trace: Trace | None = None
    stage: str | None = None
    reason: str | None = None
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.outcome == "found"

    def to_dict(self) -> dict:
        out = {"schema": SCHEMA, "outcome": self.outcome, "n": self.n, "stage": self.stage, "reason": self.reason, "stats": self.stats}
        if self.trace is not None:
            out["trace"] = trace_to_dict(self.trace)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, default=str)


def _cycle_hub(b: Builder, hub, n: int):
    """W_n from a hub over an induced cycle, for every size the helpers can handle."""
    while True:
        order = rim_order(b.g, hub)
        s, t = len(order), b.g.degree(hub)
        nb = b.g.neighbors(hub)
        if t < n:
            b.fail(f"hub has {t} < {n} cycle-neighbors")
        if t == n:
            for x in order:
                if x not in nb:
                    b.smooth(x)
            return
        if s >= n + 3:
            _partial_wheel(b, hub, n)
            return
        if s == t:
            shrink_wheel(b, n)
            return
        b.smooth(next(x for x in order if x not in nb))


def _hub_candidates(g: Graph, n: int, cfg: HuntConfig, stats: dict):
    for h in sorted_labels(g):
        if g.degree(h) < n:
            continue
        rest = delete(g, [h])
        for cyc in induced_cycles(rest, n, cfg.cycle_budget):
            if len(g.neighbors(h) & set(cyc)) >= n:
                stats["cycle_hub_candidates"] = stats.get("cycle_hub_candidates", 0) + 1
                yield h, cyc


def _stage_direct(g: Graph, cfg: HuntConfig, stats: dict):
    if len(g) > 48:
        return None
    m = induced_copy(g, wheel(cfg.n))
    if m is None:
        return None
    b = Builder(g)
    b.keep(m.values())
    return b


def _stage_cycle_hub(g: Graph, cfg: HuntConfig, stats: dict):
    tried = 0
    for h, cyc in _hub_candidates(g, cfg.n, cfg, stats):
        tried += 1
        if tried > cfg.max_candidates:
            break
        b = Builder(g)
        try:
            b.keep(set(cyc) | {h})
            _cycle_hub(b, h, cfg.n)
            return b
        except SearchFailure:
            continue
    return None


def _chord_makers(g: Graph, cyc: list, hub) -> list:
    """Vertices whose cycle-neighborhood is two non-consecutive cycle vertices, independent greedily."""
    on = set(cyc)
    pos = {x: i for i, x in enumerate(cyc)}
    out = []
    for x in sorted_labels(g):
        if x in on or x == hub:
            continue
        hits = g.neighbors(x) & on
        if len(hits) != 2:
            continue
        i, j = sorted(pos[y] for y in hits)
        if j - i in (1, len(cyc) - 1):
            continue
        if any(g.has_edge(x, y) for y in out):
            continue
        out.append(x)
    return out


def _stage_chorded_hub(g: Graph, cfg: HuntConfig, stats: dict):
    """Hub far from a long cycle, joined through two-legged vertices that also create chords."""
    tried = 0
    for h in sorted_labels(g):
        closed = g.neighbors(h) | {h}
        rest = delete(g, closed)
        try:
            cycles = sorted(induced_cycles(rest, max(cfg.n, 4), cfg.cycle_budget), key=lambda c: -len(c))
        except ResourceError:
            stats["chorded_hub_budget"] = stats.get("chorded_hub_budget", 0) + 1
            continue
        for cyc in cycles:
            tried += 1
            if tried > cfg.max_candidates:
                return None
            makers = _chord_makers(g, cyc, h)
            if not any(g.has_edge(h, x) for x in makers):
                continue
            b = Builder(g)
            try:
                b.enter("chorded_hub")
                b.keep(set(cyc) | {h} | set(makers))
                for x in makers:
                    b.lc(x)
                b.delete(makers)
                nb = b.g.neighbors(h)
                chords = [(x, y) for i, x in enumerate(cyc) for y in cyc[i + 2:] if b.g.has_edge(x, y) and {x, y} != {cyc[0], cyc[-1]}]
                for x, y in chords:
                    if x in b.g and y in b.g and x not in nb and y not in nb and b.g.has_edge(x, y):
                        b.pivot(x, y)
                        b.delete([x, y])
                if wheel_order(b.g) is None:
                    finish_wheel(b, None)
                m = wheel_order(b.g)
                if m is None or m < cfg.n:
                    continue
                shrink_wheel(b, cfg.n)
                return b
            except (SearchFailure, InputError):
                continue
    return None


def _lookahead_moves(g: Graph):
    for x in sorted_labels(g):
        if g.degree(x) >= 2:
            yield ("lc", (x,))
    for x, y in sorted(g.edges(), key=lambda e: (label_key(e[0]), label_key(e[1]))):
        yield ("pivot", (x, y))


def _stage_lookahead(g: Graph, cfg: HuntConfig, stats: dict):
    """One local complementation or pivot, optionally deleting its vertices, then the cheap stages."""
    if len(g) > cfg.lookahead_max_vertices:
        return None
    for op, args in _lookahead_moves(g):
        for drop in (False, True):
            b = Builder(g)
            b.lc(*args) if op == "lc" else b.pivot(*args)
            if drop:
                b.delete(args)
            for stage in (_stage_direct, _stage_cycle_hub):
                got = stage(b.g, cfg, stats)
                if got is not None:
                    for step in got.steps:
                        b.do(step)
                    return b
    return None


# the proof loop


@dataclass
class Triple:
    X: frozenset
    Y: frozenset
    Z: frozenset
    root: object


def validate_stack(g: Graph, stack: list[Triple]) -> list[str]:
    """Failing stack conditions for the innermost X."""
    bad = []
    if not stack:
        return bad
    X = stack[-1].X
    for k, tr in enumerate(stack):
        if any(not g.neighbors(v) & tr.Y for v in X):
            bad.append(f"level {k + 1}: a vertex of X has no neighbor in Y")
        if any(g.neighbors(v) & tr.Z for v in X):
            bad.append(f"level {k + 1}: a vertex of X has a neighbor in Z")
        if any(not g.neighbors(y) & tr.Z for y in tr.Y):
            bad.append(f"level {k + 1}: a vertex of Y has no neighbor in Z")
        if not root_path_holds(g, tr.Y, tr.Z, tr.root):
            bad.append(f"level {k + 1}: root-path condition fails")
        for later in stack[k + 1:]:
            if any(g.neighbors(z) & (later.Y | later.Z) for z in tr.Z):
                bad.append(f"levels {k + 1}<later: edges between Z and a later Y or Z")
    return bad


def _best_level(g: Graph, lev: Leveling, cap: int, stats: dict) -> int | None:
    best, key = None, None
    for t, level in enumerate(lev.levels):
        if t == 0 or not level:
            continue
        chi, exact = chromatic_estimate(induced(g, level), cap)
        if not exact:
            stats["chi_estimated"] = stats.get("chi_estimated", 0) + 1
        if key is None or chi > key:
            best, key = t, chi
    return best


def _level_triples(g: Graph, region, cfg: HuntConfig, stats: dict):
    """Candidate (X, Y, Z, root) splits of ``region`` from each root, best level first."""
    sub = induced(g, region)
    for comp in sorted(components(sub), key=lambda c: -len(c)):
        csub = induced(g, comp)
        for root in sorted_labels(comp):
            lev = bfs_leveling(csub, root)
            t = _best_level(g, lev, cfg.chi_cap, stats)
            if t is None:
                continue
            yield t, lev, root


def _stage_proof_loop(g: Graph, cfg: HuntConfig, stats: dict):
    n = cfg.n
    r = cfg.min_cycle or n + 3
    stack: list[Triple] = []
    region = frozenset(g)
    for depth in range(cfg.max_depth):
        pushed = False
        for t, lev, root in _level_triples(g, region, cfg, stats):
            level = frozenset(lev.levels[t])
            if t == 1:
                cyc = find_induced_cycle(induced(g, level), r, cfg.cycle_budget)
                if cyc is not None:
                    b = Builder(g)
                    b.enter("proof_loop:first_level")
                    b.keep(set(cyc) | {root})
                    _partial_wheel(b, root, n)
                    return b
                continue
            tr = Triple(level, frozenset(lev.levels[t - 1]), frozenset(x for lv in lev.levels[: t - 1] for x in lv), root)
            bad = validate_stack(g, stack + [tr])
            if bad:
                stats.setdefault("stack_violations", []).extend(bad[:3])
                continue
            stack.append(tr)
            region = level
            pushed = True
            stats["depth"] = len(stack)
            break
        if not pushed:
            break
        if len(stack) >= 2:
            got = _finish_from_stack(g, stack, cfg, stats)
            if got is not None:
                return got
    return None


def _finish_from_stack(g: Graph, stack: list[Triple], cfg: HuntConfig, stats: dict):
    n = cfg.n
    X = stack[-1].X
    try:
        cycles = list(induced_cycles(induced(g, X), max(n + 3, cfg.min_cycle or 0), cfg.cycle_budget))
    except ResourceError:
        stats["finish_budget"] = stats.get("finish_budget", 0) + 1
        return None
    for cyc in sorted(cycles, key=lambda c: -len(c))[: cfg.max_candidates]:
        pools = [tr.Y for tr in stack]
        try:
            pc = build_patched_cycle(g, cyc, pools, 2)
        except (SearchFailure, InputError):
            continue
        for ell in range(pc.length, 1, -1):
            try:
                simple = simplify_patched_cycle(pc, 2, ell, len(g) + 1)
            except SearchFailure:
                continue
            a, bb = simple.rows
            cfg2 = PatchedConfig(
                PatchedCycle(g, simple.cycle, [simple.patches[1], simple.patches[0]], simple.anchors),
                (sorted(stack[bb].Z, key=label_key), sorted(stack[a].Z, key=label_key)),
                (stack[bb].root, stack[a].root),
            )
            try:
                wanted = set(simple.cycle) | set(simple.patches[0]) | set(simple.patches[1]) | stack[a].Z | stack[bb].Z
                sub_cfg = PatchedConfig(
                    PatchedCycle(induced(g, wanted), cfg2.pc.cycle, cfg2.pc.patches, cfg2.pc.anchors), cfg2.tails, cfg2.roots
                )
                t = wheel_from_patched_config(sub_cfg, n)
            except (SearchFailure, InputError) as exc:
                stats["finish_failures"] = stats.get("finish_failures", 0) + 1
                stats["finish_last"] = str(exc)
                break
            b = Builder(g)
            b.keep(wanted)
            for step in t.steps:
                b.do(step)
            return b
    return None


def _stage_oracle(g: Graph, cfg: HuntConfig, stats: dict):
    res = has_vertex_minor(g, wheel(cfg.n), cfg.oracle_budget)
    if res.status == "indeterminate":
        raise ResourceError("oracle budget exhausted")
    if res.status != "yes":
        return None
    b = Builder(g)
    for step in res.trace.steps:
        b.do(step)
    return b


STAGES = {
    "direct": _stage_direct,
    "cycle_hub": _stage_cycle_hub,
    "chorded_hub": _stage_chorded_hub,
    "lookahead": _stage_lookahead,
    "proof_loop": _stage_proof_loop,
    "oracle": _stage_oracle,
}


def hunt_wheel(g: Graph, cfg: HuntConfig) -> WitnessReport:
    """Search for a W_n vertex-minor; a found trace always replays to W_n."""
    n = cfg.n
    stats: dict = {"vertices": len(g), "edges": g.num_edges()}
    deepest = None
    budget_hit = None
    for name in cfg.stages:
        stats[f"{name}_ran"] = True
        try:
            b = STAGES[name](g, cfg, stats)
        except ResourceError as exc:
            budget_hit = (name, str(exc))
            continue
        except SearchFailure as exc:
            deepest = (exc.stage, exc.reason)
            continue
        if b is None:
            continue
        t = b.trace(wheel(n), target=f"W{n}", stage=name)
        try:
            final = replay(t)
        except TraceError as exc:
            stats.setdefault("rejected", []).append(f"{name}: {exc}")
            continue
        if wheel_order(final) != n:  # pragma: no cover - replay already checks the claim
            stats.setdefault("rejected", []).append(f"{name}: not W_{n}")
            continue
        return WitnessReport("found", n, t, name, None, stats)
    if budget_hit is not None:
        return WitnessReport("indeterminate", n, None, budget_hit[0], budget_hit[1], stats)
    stage, reason = deepest or (cfg.stages[-1] if cfg.stages else None, "no stage produced a wheel")
    return WitnessReport("not_found", n, None, stage, reason, stats)
