"""Traces and the brute-force vertex-minor oracle.

A :class:`Trace` is the certificate every extractor emits: a start graph,
a list of operations and the graph the operations are claimed to reach
(up to isomorphism).  The oracle side decides containment by exploring the
local-equivalence orbit exhaustively, which is only feasible for small
graphs but never relies on any of the constructions it is used to check.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .errors import InputError, ResourceError, TraceError
from .graph_core import (
    Graph,
    Label,
    delete,
    from_graph6,
    induced_copy,
    invariant,
    is_isomorphic,
    is_smoothable,
    isomorphism,
    label_key,
    local_complement,
    pivot,
    smooth,
    sorted_labels,
    to_graph6,
    wheel,
)

OPS = ("lc", "pivot", "delete", "smooth")
SCHEMA = 1


@dataclass(frozen=True)
class Step:
    op: str
    args: tuple

    def __post_init__(self):
        if self.op not in OPS:
            raise InputError(f"unknown operation {self.op!r}")
        arity = {"lc": 1, "pivot": 2, "smooth": 1}.get(self.op)
        if arity is not None and len(self.args) != arity:
            raise InputError(f"{self.op} takes {arity} argument(s)")

    def apply(self, g: Graph) -> Graph:
        """Apply this step, raising InputError if its precondition fails."""
        if self.op == "lc":
            return local_complement(g, self.args[0])
        if self.op == "pivot":
            return pivot(g, *self.args)
        if self.op == "smooth":
            return smooth(g, self.args[0])
        missing = [x for x in self.args if x not in g]
        if missing:
            raise InputError(f"cannot delete absent vertices {missing!r}")
        return delete(g, self.args)

    def __str__(self) -> str:
        return f"{self.op}({', '.join(map(str, self.args))})"


def lc(v: Label) -> Step:
    return Step("lc", (v,))


def piv(u: Label, v: Label) -> Step:
    return Step("pivot", (u, v))


def rm(vs) -> Step:
    return Step("delete", tuple(vs))


def sm(v: Label) -> Step:
    return Step("smooth", (v,))


@dataclass(frozen=True)
class Trace:
    """Operations taking ``initial`` to a graph isomorphic to ``claimed``."""

    initial: Graph
    steps: tuple = ()
    claimed: Graph | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def final(self) -> Graph:
        """Apply all steps without checking the claim."""
        g = self.initial
        for i, step in enumerate(self.steps):
            try:
                g = step.apply(g)
            except InputError as exc:
                raise TraceError(i, str(exc)) from None
        return g

    def then(self, steps, claimed: Graph | None = None, **meta) -> Trace:
        return Trace(self.initial, self.steps + tuple(steps), claimed, {**self.meta, **meta})


def replay(t: Trace) -> Graph:
    """Replay ``t``; raise TraceError on a failed step or a false claim."""
    g = t.final()
    if t.claimed is not None and not is_isomorphic(g, t.claimed, max_vertices=max(len(g), 64)):
        raise TraceError(-1, "result is not isomorphic to the claimed graph")
    return g


def run_steps(g: Graph, steps) -> Graph:
    for i, step in enumerate(steps):
        try:
            g = step.apply(g)
        except InputError as exc:
            raise TraceError(i, str(exc)) from None
    return g


# serialization


def trace_to_dict(t: Trace) -> dict:
    names = [str(x) for x in t.initial]
    if len(set(names)) != len(names):
        raise InputError("vertex labels collide when written as strings")
    out = {
        "schema": SCHEMA,
        "initial": to_graph6(t.initial),
        "labels": names,
        "steps": [{"op": s.op, "args": [str(a) for a in s.args]} for s in t.steps],
        "claims": to_graph6(t.claimed) if t.claimed is not None else None,
    }
    if t.meta:
        out["meta"] = {k: v for k, v in t.meta.items() if isinstance(v, (str, int, float, bool, list, type(None)))}
    return out


def trace_from_dict(d: dict) -> Trace:
    if d.get("schema", SCHEMA) != SCHEMA:
        raise InputError(f"unsupported trace schema {d.get('schema')!r}")
    g6 = d["initial"]
    n = len(from_graph6(g6))
    labels = d.get("labels") or [str(i) for i in range(n)]
    initial = from_graph6(g6, labels)
    steps = tuple(Step(s["op"], tuple(s["args"])) for s in d["steps"])
    claimed = from_graph6(d["claims"]) if d.get("claims") else None
    return Trace(initial, steps, claimed, dict(d.get("meta", {})))


def trace_to_json(t: Trace) -> str:
    return json.dumps(trace_to_dict(t), indent=1)


def trace_from_json(text: str) -> Trace:
    return trace_from_dict(json.loads(text))


# smoothing and subdivisions


def smooth_sequence(g: Graph) -> tuple[Graph, list]:
    """Smooth suppressible degree-2 vertices to a fixpoint.

    Vertices are scanned in ascending label order, rescanning until nothing
    changes.  Returns the core and the smoothed vertices in order.
    """
    done = []
    changed = True
    while changed:
        changed = False
        for v in sorted_labels(g):
            if v in g and is_smoothable(g, v):
                g = smooth(g, v)
                done.append(v)
                changed = True
    return g, done


def smooth_to_core(g: Graph) -> Graph:
    return smooth_sequence(g)[0]


def is_subdivision_of(h: Graph, g: Graph) -> tuple[bool, list]:
    """Whether smoothing ``h`` reaches a graph isomorphic to ``g``."""
    core, seq = smooth_sequence(h)
    if len(core) != len(g):
        return False, []
    ok = is_isomorphic(core, g, max_vertices=max(len(g), 64))
    return ok, seq if ok else []


def wheel_order(g: Graph) -> int | None:
    """``n`` if ``g`` is exactly a wheel W_n (n ≥ 3), else None."""
    n = len(g) - 1
    if n < 3:
        return None
    if n == 3:
        return 3 if g.num_edges() == 6 else None
    hubs = [v for v in g if g.degree(v) == n]
    if len(hubs) != 1 or g.num_edges() != 2 * n:
        return None
    rim = delete(g, hubs)
    if any(rim.degree(v) != 2 for v in rim):
        return None
    from .graph_core import is_connected

    return n if is_connected(rim) else None


def core_wheel_order(g: Graph) -> int | None:
    """The ``n`` for which ``g`` is a subdivision of W_n, if any."""
    return wheel_order(smooth_to_core(g))


def finish_with_smoothing(t: Trace, g: Graph | None = None, **meta) -> Trace:
    """Append the smoothings that bring the trace's result to its core."""
    g = t.final() if g is None else g
    core, seq = smooth_sequence(g)
    return t.then([sm(v) for v in seq], core, **meta)


# orbit search


@dataclass(frozen=True)
class OrbitBudget:
    max_graphs: int = 50_000
    max_vertices: int = 12

    def __post_init__(self):
        if self.max_graphs <= 0 or self.max_vertices <= 0:
            raise InputError("budgets must be positive")


class OrbitExceeded(ResourceError):
    def __init__(self, partial: int):
        super().__init__(f"orbit budget exhausted after {partial} graphs")
        self.partial = partial


class _IsoSet:
    """Graphs deduplicated up to isomorphism."""

    def __init__(self):
        self.buckets: dict[tuple, list[Graph]] = {}
        self.count = 0

    def add(self, g: Graph) -> bool:
        bucket = self.buckets.setdefault(invariant(g), [])
        if any(is_isomorphic(g, h) for h in bucket):
            return False
        bucket.append(g)
        self.count += 1
        return True

    def __contains__(self, g: Graph) -> bool:
        return any(is_isomorphic(g, h) for h in self.buckets.get(invariant(g), ()))


def _orbit_walk(g: Graph, budget: OrbitBudget):
    """Yield (graph, lc path) for one representative of each class in the orbit."""
    if len(g) > budget.max_vertices:
        raise ResourceError(f"graph has {len(g)} vertices, budget allows {budget.max_vertices}")
    seen = _IsoSet()
    seen.add(g)
    queue = deque([(g, ())])
    while queue:
        cur, path = queue.popleft()
        yield cur, path
        for v in cur:
            if cur.degree(v) < 2:
                continue
            nxt = local_complement(cur, v)
            if seen.add(nxt):
                if seen.count > budget.max_graphs:
                    raise OrbitExceeded(seen.count)
                queue.append((nxt, path + (v,)))


def local_equivalence_orbit(g: Graph, budget: OrbitBudget = OrbitBudget()) -> list[Graph]:
    """Representatives of every isomorphism class locally equivalent to ``g``."""
    return [x for x, _ in _orbit_walk(g, budget)]


def locally_equivalent(g: Graph, h: Graph, budget: OrbitBudget = OrbitBudget()) -> tuple[bool, tuple]:
    """Whether ``h`` is isomorphic to a graph locally equivalent to ``g``."""
    if len(g) != len(h):
        return False, ()
    for x, path in _orbit_walk(g, budget):
        if is_isomorphic(x, h):
            return True, path
    return False, ()


@dataclass(frozen=True)
class Containment:
    """Outcome of a containment query: yes, no, or indeterminate."""

    status: str
    trace: Trace | None = None
    explored: int = 0

    @property
    def found(self) -> bool | None:
        return {"yes": True, "no": False}.get(self.status)


def has_vertex_minor(g: Graph, h: Graph, budget: OrbitBudget = OrbitBudget()) -> Containment:
    """Decide whether ``g`` has a vertex-minor isomorphic to ``h``.

    Walks the orbit of ``g`` up to isomorphism and looks for an induced copy
    of ``h`` in each representative.  Budget exhaustion yields status
    "indeterminate", never "no".
    """
    if len(h) > len(g):
        return Containment("no")
    if len(g) > budget.max_vertices:
        return Containment("indeterminate")
    explored = 0
    try:
        for x, path in _orbit_walk(g, budget):
            explored += 1
            m = induced_copy(x, h)
            if m is not None:
                image = set(m.values())
                steps = [lc(v) for v in path]
                rest = [v for v in g if v not in image]
                if rest:
                    steps.append(rm(rest))
                return Containment("yes", Trace(g, tuple(steps), h), explored)
    except OrbitExceeded:
        return Containment("indeterminate", None, explored)
    return Containment("no", None, explored)


def confirms_wheel(g: Graph, n: int, budget: OrbitBudget = OrbitBudget()) -> bool | None:
    """Oracle check that ``g`` has a W_n vertex-minor (None if out of budget)."""
    return has_vertex_minor(g, wheel(n), budget).found


__all__ = [
    "Containment",
    "OrbitBudget",
    "OrbitExceeded",
    "Step",
    "Trace",
    "confirms_wheel",
    "core_wheel_order",
    "finish_with_smoothing",
    "has_vertex_minor",
    "is_subdivision_of",
    "isomorphism",
    "label_key",
    "lc",
    "local_equivalence_orbit",
    "locally_equivalent",
    "piv",
    "replay",
    "rm",
    "run_steps",
    "sm",
    "smooth_sequence",
    "smooth_to_core",
    "trace_from_dict",
    "trace_from_json",
    "trace_to_dict",
    "trace_to_json",
    "wheel_order",
]
