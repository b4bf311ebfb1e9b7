import io
import subprocess
import sys

import pytest

from hdakit import fixtures as fx
from hdakit.cli import run
from hdakit.formats import parse_hda, serialize_hda
from hdakit.hda import subdivided_cube_hda


def data(name):
    return str(fx.data_path(name))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


FIG1 = [data("fig1_a.hda"), data("fig1_b.hda"), data("wm_f.wm")]
EX29_INCL = [data("ex29_b.hda"), data("ex29_a.hda"), data("ex29_incl.wm")]


def test_validate():
    code, out, _ = call("validate", data("fig1_a.hda"))
    assert code == 0 and out.strip().endswith("fig1_a: valid")


def test_validate_broken(tmp_path):
    bad = tmp_path / "bad.hda"
    bad.write_text("hda bad\ncube 0 v w\ncube 1 e\nface e 1 0 v\nface e 1 1 w\nlabel e z\n")
    code, out, _ = call("validate", str(bad))
    assert code == 1
    assert "INVALID" in out and "alphabet" in out


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.hda"
    bad.write_text("cube 0 v\n")
    code, _, err = call("validate", str(bad))
    assert code == 2
    assert "line 1, column 1: missing hda header" in err
    code, _, err = call("info", str(tmp_path / "absent.hda"))
    assert code == 2
    assert call("no-such-command")[0] == 2


def test_info_and_languages():
    code, out, _ = call("info", data("fig1_b.hda"))
    assert code == 0 and "dimension: 2" in out and "acyclic: YES" in out
    code, out, _ = call("language", data("fig1_b.hda"))
    assert out.split() == ["a.b.c", "a.c.b", "c.a.b"]
    code, out, _ = call("trace-language", data("fig1_b.hda"))
    assert out.strip() == "[a.b.c] a.b.c a.c.b c.a.b"
    code, out, _ = call("independence", data("fig1_b.hda"))
    assert out.split("\n")[0] in ("a c", "b c")


@pytest.mark.parametrize("prop,name,code", [
    ("deterministic", "ex29_a.hda", 1),
    ("deterministic", "ex29_b.hda", 0),
    ("stable", "fig1_b.hda", 0),
    ("acyclic", "fig1_a.hda", 0),
    ("weakly-regular", "fig1_a.hda", 0),
    ("accessible", "fig1_b.hda", 0),
])
def test_check(prop, name, code):
    rc, out, _ = call("check", prop, data(name))
    assert rc == code
    assert out.strip().endswith("YES" if code == 0 else "NO")


def test_dihomotopic():
    code, out, _ = call("dihomotopic", data("fig1_a.hda"), "--path", "ab_bot,c_right", "--path", "c_left,ab_top")
    assert code == 0 and "YES" in out
    code, _, _ = call("dihomotopic", data("fig1_a.hda"), "--path", "ab_bot", "--path", "c_left")
    assert code == 1
    code, _, _ = call("dihomotopic", data("fig1_a.hda"), "--path", "c_right,ab_bot", "--path", "@a00")
    assert code == 2


@pytest.mark.parametrize("relation,files,code", [
    ("weak", FIG1, 0),
    ("subdivision", FIG1, 0),
    ("homeo", FIG1, 0),
    ("trace-equiv", FIG1, 0),
    ("weak", EX29_INCL, 0),
    ("homeo", EX29_INCL, 1),
    ("trace-equiv", EX29_INCL, 1),
])
def test_relate(relation, files, code):
    rc, out, _ = call("relate", relation, *files)
    assert rc == code
    assert out.strip().endswith("YES" if code == 0 else "NO")


def test_theorem():
    code, out, _ = call("theorem", "homeo-implies-trace", *FIG1)
    assert code == 0 and out.startswith("status: holds")
    code, out, _ = call("theorem", "homeo-implies-trace", *EX29_INCL)
    assert code == 1 and out.startswith("status: hypotheses-fail")


def test_trace_category_dot(tmp_path):
    dot = tmp_path / "tc.dot"
    code, out, _ = call("trace-category", data("fig1_b.hda"), "--dot", str(dot))
    assert code == 0
    assert "objects: b00 b21" in out
    text = dot.read_text()
    assert text.startswith('digraph "fig1_b" {')
    assert text.count("->") == 1 and 'label="a.b.c"' in text


def test_gen_grid(tmp_path):
    target = tmp_path / "g.hda"
    assert call("gen", "grid", "2", "1", "-o", str(target))[0] == 0
    A = parse_hda(target.read_text())
    assert A.same_as(subdivided_cube_hda(2, 1))
    code, out, _ = call("gen", "grid", "2", "1")
    assert out == target.read_text() == serialize_hda(A)
    assert call("gen", "grid", "0")[0] == 2


def test_wm_commands():
    code, out, _ = call("wm", "validate", *FIG1)
    assert code == 0 and "weak HDA morphism fig1_a -> fig1_b: YES" in out
    code, out, _ = call("wm", "map-path", *FIG1, "--path", "ab_bot,c_right")
    assert code == 0 and out.strip() == "ab_bot·c_right -> aL·bR·c2"
    assert call("wm", "validate", data("wm_f.wm"))[0] == 2


def test_output_is_deterministic():
    runs = [call("trace-category", data("ex29_a.hda"))[1] for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]
    runs = [
        subprocess.run([sys.executable, "-m", "hdakit.cli", "language", data("fig1_b.hda")],
                       capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    assert runs[0] == runs[1] == b"a.b.c\na.c.b\nc.a.b\n"
