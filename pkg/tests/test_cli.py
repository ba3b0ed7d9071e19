import io
import json
import math

import pytest

from bondskein.bonded import InvariantElement, rigid_invariant
from bondskein.bpd import from_json, parse_bpd, serialize_bpd
from bondskein.cli import EXIT_COMPUTE, EXIT_INPUT, EXIT_OK, EXIT_USAGE, run
from bondskein.moves import random_isotopy
from bondskein.reference import data_path, load_data


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def path(name):
    return str(data_path(name))


def test_compute_nonrigid_knot_b():
    code, out, _ = call("compute", "--basis", "nonrigid", "examples/knotB.bpd")
    assert code == EXIT_OK
    assert out.strip() == "(1) * [Theta_1]"


def test_homfly_trefoil():
    code, out, _ = call("homfly", "examples/trefoil.bpd")
    assert (code, out.strip()) == (EXIT_OK, "l^-2*m^2 - 2*l^-2 - l^-4")


def test_validate_broken():
    code, out, err = call("validate", "examples/broken.bpd")
    assert code == EXIT_INPUT and out == ""
    assert "e2.0" in err
    code, _, err = call("validate", "--format", "json", path("broken"))
    payload = json.loads(err)
    assert payload["error"]["code"] == EXIT_INPUT
    assert any("e2.0" in line for line in payload["error"]["details"])


def test_validate_ok():
    assert call("validate", path("knotA"))[:2] == (EXIT_OK, "ok\n")


def test_compute_json_round_trips():
    code, out, _ = call("compute", "--basis", "rigid", "--format", "json", path("knotA"))
    assert code == EXIT_OK
    assert InvariantElement.from_json(out) == rigid_invariant(load_data("knotA"))


def test_compute_latex():
    _, out, _ = call("compute", "--basis", "rigid", "--format", "latex", path("knotB"))
    assert out.startswith(r"\left(") and r"\bar{H}_{1}" in out


def test_output_is_deterministic():
    args = ("compute", "--basis", "rigid", path("threebond"))
    assert call(*args) == call(*args)


def test_contact_distance_coloring_flag():
    code, out, _ = call("compute", "--basis", "nonrigid", "--coloring", "contact-distance", path("threechords"))
    assert code == EXIT_OK and "[Theta_2 Theta_2 Theta_3]" in out
    _, shifted, _ = call(
        "compute", "--basis", "nonrigid", "--coloring", "contact-distance", "--count-destination", path("threechords")
    )
    assert "[Theta_3 Theta_3 Theta_4]" in shifted


def test_color_table():
    code, out, _ = call("color", path("fourbond"))
    assert code == EXIT_OK
    assert out.splitlines() == ["bond\tcolor", "a\t1", "b\t2", "c\t3", "d\t2"]
    _, out, _ = call("color", "--format", "json", "--count-destination", path("fourbond"))
    assert json.loads(out)["coloring"] == {"a": 2, "b": 3, "c": 4, "d": 3}


def test_isolate_outputs_crossing_free_bonds():
    code, out, _ = call("isolate", path("knotB"))
    assert code == EXIT_OK
    assert parse_bpd(out).is_crossing_free("s")
    code, out, _ = call("isolate", "--format", "json", path("knotB"))
    assert from_json(out).is_crossing_free("s")


def test_apply_moves(tmp_path):
    d = load_data("knotA")
    trace = []
    want = random_isotopy(d, 5, 12, trace=trace)
    script = tmp_path / "moves.txt"
    script.write_text("# generated\n" + "\n".join(map(str, trace)) + "\n")
    code, out, _ = call("apply-moves", path("knotA"), str(script))
    assert code == EXIT_OK
    assert out == serialize_bpd(want)


def test_apply_moves_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("IV forward v1\n")
    assert call("apply-moves", path("knotA"), str(bad))[0] == EXIT_INPUT
    wrong = tmp_path / "wrong.txt"
    wrong.write_text("I backward at c1\n")
    assert call("apply-moves", path("knotA"), str(wrong))[0] == EXIT_COMPUTE


def test_gmap():
    assert call("gmap", "--kind", "gInf", "--bond", "s", path("knotB"))[1].strip() == "zero"
    code, out, _ = call("gmap", "--kind", "gMinus", "--bond", "s", path("knotB"))
    assert code == EXIT_OK and parse_bpd(out).n_bonds == 0
    assert call("gmap", "--kind", "g0", "--bond", "nope", path("knotB"))[0] == EXIT_INPUT


def test_project(tmp_path):
    pts = [(math.cos(2 * math.pi * k / 9), math.sin(2 * math.pi * k / 9), 0) for k in range(9)]
    scene = tmp_path / "circle.txt"
    scene.write_text("link k\n" + "\n".join(f"{x} {y} {z}" for x, y, z in pts) + "\n")
    code, out, _ = call("project", str(scene), "--direction", "0,0,1")
    assert code == EXIT_OK and parse_bpd(out).free_loops == 1
    assert call("project", str(scene), "--direction", "1,0")[0] == EXIT_USAGE
    assert call("project", str(scene), "--direction", "1,0,0")[0] == EXIT_COMPUTE
    scene.write_text("link k\n0 0\n")
    assert call("project", str(scene))[0] == EXIT_INPUT


def test_stdin_input():
    text = data_path("hopf").read_text()
    code, out, _ = call("homfly", "-", stdin=text)
    assert (code, out.strip()) == (EXIT_OK, "-l^-1*m + l^-1*m^-1 + l^-3*m^-1")


def test_json_diagram_input(tmp_path):
    _, out, _ = call("isolate", "--format", "json", path("trefoil"))
    f = tmp_path / "t.json"
    f.write_text(out)
    assert call("homfly", str(f))[1].strip() == "l^-2*m^2 - 2*l^-2 - l^-4"


@pytest.mark.parametrize(
    "argv, code",
    [
        ([], EXIT_USAGE),
        (["frobnicate"], EXIT_USAGE),
        (["compute", "x.bpd"], EXIT_USAGE),
        (["homfly", "no/such/file.bpd"], EXIT_USAGE),
        (["homfly", "--format", "yaml", "x"], EXIT_USAGE),
    ],
)
def test_usage_errors(argv, code):
    assert call(*argv)[0] == code


def test_parse_error_exit_code(tmp_path):
    f = tmp_path / "bad.bpd"
    f.write_text("comp k : e1\nwhat is this\n")
    code, _, err = call("homfly", "--format", "json", str(f))
    assert code == EXIT_INPUT
    assert "line 2" in json.loads(err)["error"]["message"]


def test_computation_error_exit_code():
    code, _, err = call("homfly", path("knotA"))
    assert code == EXIT_COMPUTE and "bonds" in err
    assert call("color", path("hopf"))[0] == EXIT_COMPUTE


def test_selftest():
    code, out, _ = call("selftest", "--quick")
    assert code == EXIT_OK
    assert out.count("[PASS]") == len(out.splitlines())


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == EXIT_OK
