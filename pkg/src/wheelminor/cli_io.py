"""Command-line interface: gen, apply, replay, check-vm, extract, hunt, bounds.

Exit codes: 0 success, 1 honest search failure or invalid trace, 2 usage
error, 3 budget exhausted.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import extractors as ex
from .errors import InputError, ResourceError, SearchFailure, TraceError
from .graph_core import (
    Graph,
    complete_graph,
    cycle_graph,
    from_adjlist,
    from_graph6,
    isomorphism,
    path_graph,
    to_adjlist,
    to_dot,
    to_graph6,
    wheel,
)
from .pipeline import STAGES, HuntConfig, hunt_wheel
from .ramsey_tools import cascade, ramsey_diagonal, regular_partition_bounds
from .structures import StructureSpec, canonical_kind, make
from .vm_oracle import (
    OrbitBudget,
    Step,
    Trace,
    core_wheel_order,
    has_vertex_minor,
    replay,
    trace_from_json,
    trace_to_dict,
    trace_to_json,
)

log = logging.getLogger("wheelminor")

EXTRACTORS = {
    "Drum": ex.wheel_from_drum,
    "Clam": ex.wheel_from_clam,
    "HangingLadder": ex.wheel_from_hanging_ladder,
    "ExtendedDrum": ex.wheel_from_extended_drum,
    "ExtendedClam": ex.wheel_from_extended_clam,
    "SimpleExtendedClam": ex.wheel_from_simple_extended_clam,
    "SimpleExtendedHangingLadder": ex.wheel_from_simple_ext_ladder,
    "NExtendedHangingLadder": ex.wheel_from_n_ext_ladder,
}


# graph input and output


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def parse_graph(text: str, labels=None) -> Graph:
    """Graph from graph6, an adjacency list, or a JSON object with "graph6" and "labels"."""
    text = text.strip()
    if not text:
        raise InputError("empty graph input")
    if text.startswith("{"):
        d = json.loads(text)
        return from_graph6(d["graph6"], labels or d.get("labels"))
    if ":" in text:
        return from_adjlist(text)
    return from_graph6(text.splitlines()[0].strip(), labels)


def _labels_from_sidecar(path: str | None):
    if path is None:
        return None
    d = json.loads(_read(path))
    return d["labels"] if isinstance(d, dict) else d


def load_graph(path: str | None, roles: str | None = None) -> Graph:
    return parse_graph(_read(path), _labels_from_sidecar(roles))


def format_graph(g: Graph, fmt: str, extra: dict | None = None) -> str:
    if fmt == "g6":
        return to_graph6(g) + "\n"
    if fmt == "dot":
        return to_dot(g)
    if fmt == "adj":
        return to_adjlist(g)
    return json.dumps({"graph6": to_graph6(g), "labels": [str(v) for v in g], **(extra or {})}, indent=1) + "\n"


def parse_target(text: str) -> Graph:
    """W5, C4, K4, P3 or a graph6 string."""
    kinds = {"W": wheel, "C": lambda k: cycle_graph(range(k)), "K": lambda k: complete_graph(range(k)), "P": lambda k: path_graph(range(k))}
    head, tail = text[:1].upper(), text[1:]
    if head in kinds and tail.isdigit():
        return kinds[head](int(tail))
    return from_graph6(text)


def parse_step(text: str) -> Step:
    """``lc:v``, ``pivot:u,v``, ``delete:a,b,c`` or ``smooth:v``."""
    op, _, args = text.partition(":")
    if not args:
        raise InputError(f"step {text!r} needs arguments after ':'")
    return Step(op, tuple(a for a in args.split(",") if a))


def _params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"parameter {item!r} is not key=value")
        try:
            out[key] = json.loads(value)
        except json.JSONDecodeError:
            out[key] = value
    return out


def _with_structure_labels(g: Graph, kind: str, order: int | None, params: dict) -> Graph:
    """Relabel an unlabeled graph by matching it to the generated structure."""
    if any(not str(v).isdigit() for v in g):
        return g
    orders = [order] if order else range(1, 200)
    for k in orders:
        try:
            ref = make(StructureSpec(kind, {**params, "order": k})).graph
        except InputError:
            continue
        if len(ref) != len(g):
            continue
        if to_graph6(ref) == to_graph6(g):
            return Graph._raw(tuple(ref), g._rows)
        m = isomorphism(g, ref, max_vertices=max(len(g), 64))
        if m is not None:
            return Graph(list(ref), [(m[a], m[b]) for a, b in g.edges()])
    raise InputError(f"input does not match a generated {kind}; pass --roles with its labels")


# subcommands


def cmd_gen(a, out) -> int:
    params = _params(a.param)
    if a.order is not None:
        params["order"] = a.order
    s = make(StructureSpec(a.kind, params))
    extra = {"spec": json.loads(s.spec.to_json()), "roles": s.role_map()}
    if a.roles_out:
        with open(a.roles_out, "w") as fh:
            json.dump({"labels": [str(v) for v in s.graph], **extra}, fh, indent=1)
    out.write(format_graph(s.graph, a.format, extra))
    return 0


def resolve_step(g: Graph, step: Step) -> Step:
    """Map string arguments onto the graph's labels."""
    names = {str(v): v for v in g}
    return Step(step.op, tuple(names.get(x, x) for x in step.args))


def cmd_apply(a, out) -> int:
    g = load_graph(a.graph, a.roles)
    steps = []
    cur = g
    for text in a.step:
        step = resolve_step(cur, parse_step(text))
        cur = step.apply(cur)
        steps.append(step)
    steps = tuple(steps)
    final = cur
    if a.format == "trace":
        out.write(trace_to_json(Trace(g, steps, final)) + "\n")
    else:
        out.write(format_graph(final, a.format))
    return 0


def cmd_replay(a, out) -> int:
    t = trace_from_json(_read(a.trace))
    try:
        final = replay(t)
    except TraceError as exc:
        out.write(json.dumps({"valid": False, "step": exc.step, "error": str(exc)}) + "\n")
        return 1
    out.write(json.dumps({"valid": True, "final": to_graph6(final), "core_wheel": core_wheel_order(final)}) + "\n")
    return 0


def cmd_check_vm(a, out) -> int:
    g = load_graph(a.graph, a.roles)
    res = has_vertex_minor(g, parse_target(a.target), OrbitBudget(a.max_graphs, a.max_vertices))
    d = {"schema": 1, "status": res.status, "explored": res.explored}
    if res.trace is not None:
        d["trace"] = trace_to_dict(res.trace)
    out.write(json.dumps(d, indent=1) + "\n")
    return {"yes": 0, "no": 1}.get(res.status, 3)


def cmd_extract(a, out) -> int:
    kind = canonical_kind(a.kind)
    g = _with_structure_labels(load_graph(a.graph, a.roles), kind, a.order, _params(a.param))
    t = EXTRACTORS[kind](g, a.n)
    replay(t)
    out.write(trace_to_json(t) + "\n")
    return 0


def cmd_hunt(a, out) -> int:
    g = load_graph(a.graph, a.roles)
    stages = tuple(a.stages.split(",")) if a.stages else HuntConfig.__dataclass_fields__["stages"].default
    cfg = HuntConfig(
        a.n,
        min_cycle=a.min_cycle,
        max_depth=a.max_depth,
        cycle_budget=a.budget,
        max_candidates=a.max_candidates,
        stages=stages,
        oracle_budget=OrbitBudget(a.max_graphs, a.max_vertices),
    )
    rep = hunt_wheel(g, cfg)
    if a.format == "text":
        out.write(f"{rep.outcome} stage={rep.stage} reason={rep.reason}\n")
    else:
        out.write(rep.to_json() + "\n")
    return {"found": 0, "not_found": 1}.get(rep.outcome, 3)


def bounds_lines(n: int, q: int | None = None, ell: int | None = None) -> list[str]:
    c = cascade(n)
    big = 2 * n + 2
    r_big, exact = ramsey_diagonal(big)
    lines = [
        f"n = {n}",
        f"mu({n}) = {c['mu']}",
        f"m2 = {c['m2']}",
        f"m4 = {c['m4']}",
        f"mu({big}) = {c['m3']}" + ("" if exact else f"  [upper bound: R({big},{big}) <= C({2 * big - 2},{big - 1}) = {r_big}]"),
        f"L({n}) = (mu({big}) - 1) * {c['m4']} + {(c['m4'] + c['mu'] + 1) // 2} = {c['L']}",
        f"M1 = {c['M1']}",
        f"M2 = {c['M2']}",
        f"M = {c['M']}",
        "r = R2(2, M, q+1) * n^R1(2, M, q+1)  [symbolic: no formula for R1, R2]",
    ]
    if q is not None:
        lines[-1] = f"r = R2(2, M, {q + 1}) * {n}^R1(2, M, {q + 1})  [symbolic: no formula for R1, R2]"
    if ell is not None:
        b = regular_partition_bounds(n, ell)
        lines += [f"t({n},{ell}) = {b['t']}", f"M({n},{ell}) = {b['M']}", f"N({n},{ell}) = {b['N']}"]
    return lines


def cmd_bounds(a, out) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    if a.format == "json":
        c = cascade(a.n)
        out.write(json.dumps({k: str(v) if isinstance(v, int) and not isinstance(v, bool) else v for k, v in c.items()}, indent=1) + "\n")
    else:
        out.write("\n".join(bounds_lines(a.n, a.q, a.ell)) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wheelminor", description="Wheel vertex-minor toolkit")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="cmd", required=True)

    def graph_args(sp, required=False):
        sp.add_argument("--graph", default=None if not required else "-", help="graph file (graph6, adjacency list or JSON); '-' for stdin")
        sp.add_argument("--roles", help="sidecar JSON with vertex labels")

    sp = sub.add_parser("gen", help="generate a structure")
    sp.add_argument("--kind", required=True)
    sp.add_argument("--order", type=int)
    sp.add_argument("--param", action="append", help="extra structure parameter key=value")
    sp.add_argument("--roles-out", help="write the labels and role map here")
    sp.add_argument("--format", choices=("g6", "json", "dot", "adj"), default="g6")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("apply", help="apply operations to a graph")
    graph_args(sp)
    sp.add_argument("--step", action="append", required=True, help="lc:v, pivot:u,v, delete:a,b or smooth:v")
    sp.add_argument("--format", choices=("g6", "json", "dot", "adj", "trace"), default="g6")
    sp.set_defaults(func=cmd_apply)

    sp = sub.add_parser("replay", help="replay and validate a trace")
    sp.add_argument("trace", nargs="?", default="-")
    sp.set_defaults(func=cmd_replay)

    sp = sub.add_parser("check-vm", help="brute-force vertex-minor containment")
    graph_args(sp)
    sp.add_argument("--target", required=True, help="W5, C4, K4, P3 or graph6")
    sp.add_argument("--max-graphs", type=int, default=50_000)
    sp.add_argument("--max-vertices", type=int, default=12)
    sp.set_defaults(func=cmd_check_vm)

    sp = sub.add_parser("extract", help="extract a wheel from a structure")
    graph_args(sp)
    sp.add_argument("--kind", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--order", type=int, help="structure order, used to recover labels")
    sp.add_argument("--param", action="append", help="structure parameter key=value, used to recover labels")
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("hunt", help="search a graph for a W_n vertex-minor")
    graph_args(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--budget", type=int, default=200_000, help="induced-cycle search steps")
    sp.add_argument("--min-cycle", type=int)
    sp.add_argument("--max-depth", type=int, default=4)
    sp.add_argument("--max-candidates", type=int, default=400)
    sp.add_argument("--stages", help=f"comma-separated subset of {','.join(STAGES)}")
    sp.add_argument("--max-graphs", type=int, default=50_000, help="oracle stage budget")
    sp.add_argument("--max-vertices", type=int, default=12, help="oracle stage budget")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_hunt)

    sp = sub.add_parser("bounds", help="print the bound cascade exactly")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, help="clique number bound, shown in the symbolic r")
    sp.add_argument("--ell", type=int, help="also print the regular partition bounds")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_bounds)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        a = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return a.func(a, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SearchFailure, TraceError) as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return 1
    except ResourceError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
