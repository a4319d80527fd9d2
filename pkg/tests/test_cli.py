import io
import json
import subprocess
import sys

import pytest

from graphs import chorded_cycle_example
from wheelminor.cli_io import parse_graph, parse_step, parse_target, run
from wheelminor.errors import InputError
from wheelminor.graph_core import cycle_graph, to_adjlist, to_graph6, wheel


def call(argv, stdin=""):
    old = sys.stdin
    sys.stdin = io.StringIO(stdin)
    out = io.StringIO()
    try:
        code = run(argv, out)
    finally:
        sys.stdin = old
    return code, out.getvalue()


def test_gen_extract_replay(tmp_path):
    code, g6 = call(["gen", "--kind", "drum", "--order", "5"])
    assert code == 0 and len(parse_graph(g6)) == 15
    code, text = call(["extract", "--kind", "drum", "--n", "3"], g6)
    assert code == 0
    path = tmp_path / "t.json"
    path.write_text(text)
    code, out = call(["replay", str(path)])
    assert code == 0 and json.loads(out) == {"valid": True, "final": "C~", "core_wheel": 3}


def test_gen_roles_sidecar(tmp_path):
    roles = tmp_path / "roles.json"
    code, g6 = call(["gen", "--kind", "extended_drum", "--order", "6", "--param", 'tail={"shape": "single"}', "--roles-out", str(roles)])
    assert code == 0
    graph = tmp_path / "g.g6"
    graph.write_text(g6)
    code, text = call(["extract", "--kind", "extended_drum", "--n", "3", "--graph", str(graph), "--roles", str(roles)])
    assert code == 0 and json.loads(text)["schema"] == 1


@pytest.mark.parametrize("fmt", ["json", "dot", "adj"])
def test_gen_formats(fmt):
    code, out = call(["gen", "--kind", "clam", "--order", "7", "--format", fmt])
    assert code == 0 and out
    if fmt != "dot":
        assert len(parse_graph(out)) == 7


def test_graph6_round_trip_through_cli():
    code, g6 = call(["gen", "--kind", "hanging_ladder", "--param", "n=2"])
    assert to_graph6(parse_graph(g6)) == g6.strip()


def test_apply_and_trace_output():
    code, out = call(["apply", "--step", "lc:0", "--step", "delete:4", "--format", "trace"], to_graph6(wheel(4)))
    assert code == 0
    code, rep = call(["replay"], out)
    assert code == 0 and json.loads(rep)["valid"]


def test_replay_rejects_bad_trace():
    t = {"schema": 1, "initial": to_graph6(wheel(3)), "steps": [{"op": "smooth", "args": ["0"]}], "claims": None}
    code, out = call(["replay"], json.dumps(t))
    assert code == 1 and not json.loads(out)["valid"]


def test_check_vm_exit_codes():
    assert call(["check-vm", "--target", "W3"], "C~")[0] == 0
    assert call(["check-vm", "--target", "W5"], to_adjlist(wheel(4)))[0] == 1
    assert call(["check-vm", "--target", "W4", "--max-graphs", "1"], to_graph6(wheel(6)))[0] == 3


def test_hunt_json_and_exit_codes():
    g, _ = chorded_cycle_example()
    code, out = call(["hunt", "--n", "8"], to_adjlist(g))
    rep = json.loads(out)
    assert code == 0 and rep["outcome"] == "found" and rep["schema"] == 1
    code, out = call(["hunt", "--n", "5", "--format", "text"], to_graph6(cycle_graph(range(8))))
    assert code == 1 and out.startswith("not_found")


def test_bounds_output():
    code, out = call(["bounds", "--n", "3"])
    assert code == 0 and "mu(3) = 434" in out and "m4 = 484" in out and "upper bound" in out
    code, out = call(["bounds", "--n", "3", "--format", "json", "--ell", "2"])
    assert json.loads(out)["mu"] == "434"
    code, out = call(["bounds", "--n", "3", "--q", "4", "--ell", "2"])
    assert code == 0 and "t(3,2) = " in out and "R1(2, M, 5)" in out
    assert call(["bounds", "--n", "2"])[0] == 2


def test_usage_errors():
    assert call(["nonsense"])[0] == 2
    assert call(["hunt"])[0] == 2
    assert call(["gen", "--kind", "torus"])[0] == 2
    assert call(["apply", "--step", "lc:99"], "C~")[0] == 2
    assert call(["hunt", "--n", "2"], "C~")[0] == 2


def test_parsers():
    assert parse_step("pivot:a,b").args == ("a", "b")
    with pytest.raises(InputError):
        parse_step("lc")
    assert len(parse_target("K4")) == 4 and len(parse_target("C~")) == 4


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "wheelminor", "bounds", "--n", "3"], capture_output=True, text=True)
    assert out.returncode == 0 and "L(3)" in out.stdout
