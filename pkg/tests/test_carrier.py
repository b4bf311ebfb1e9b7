import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdakit import fixtures as fx
from hdakit.carrier import (
    carrier,
    carrier_sequence,
    check_extremal_preservation,
    check_stage_regularity,
    gamma,
    hat_d,
    is_homeomorphism,
    retract_path,
    validate_cube_path,
)
from hdakit.errors import InvalidArgument, PreconditionViolated
from hdakit.paths import Path, all_paths, concat, dihomotopic, make_path, partition_classes
from hdakit.precubical import PrecubicalMorphism, PrecubicalSet, cube, interval, top_cell
from hdakit.weakmor import compose, from_morphism, grid_refinement, identity

from conftest import circle_set

FIG1 = fx.fig1()


def test_hat_d_small():
    C = cube(2)
    z = top_cell(2)
    assert hat_d(C, z, 1) == C.face(z, 2, 0) == "0:1;0"
    assert hat_d(C, z, 2) == C.face(z, 1, 0) == "0;0:1"
    assert hat_d(interval(0, 1), "0:1", 1) == "0:1"
    with pytest.raises(InvalidArgument):
        hat_d(C, z, 3)
    with pytest.raises(InvalidArgument):
        hat_d(C, "0;0", 1)


def test_hat_d_endpoints():
    for n in range(1, 5):
        C = cube(n)
        b = top_cell(n)
        for r in range(1, n + 1):
            e = hat_d(C, b, r)
            assert C.degree(e) == 1
            assert C.src(e) == C.iterated_face(b, 0)
            target = C.iterated_face(C.face(b, r, 1), 0) if n > 1 else C.face(b, 1, 1)
            assert C.tgt(e) == target


def test_validate_cube_path():
    A = FIG1[0]
    assert validate_cube_path(A.P, ["a00", "c_left", "sqA", "c_right"]).ok
    assert validate_cube_path(A.P, ["sqA", "sqA", "sqA"]).ok
    report = validate_cube_path(A.P, ["a00", "a11"])
    assert [v.where for v in report.violations] == [(1,)]
    # faces change degree by exactly one, so a vertex cannot step into a square
    assert not validate_cube_path(A.P, ["a00", "sqA", "c_right"]).ok


def test_gamma_examples():
    A = FIG1[0]
    assert gamma(A.P, ["a10"]) == Path.at("a10")
    assert gamma(A.P, ["sqA"]) == Path.at("a00")
    assert str(gamma(A.P, ["a00", "c_left", "sqA", "c_right"])) == "ab_bot"
    assert str(gamma(A.P, ["sqA", "ab_top"])) == "c_left"
    with pytest.raises(InvalidArgument):
        gamma(A.P, ["a00", "a11"])


def test_gamma_least_r():
    C = circle_set()
    sq = PrecubicalSet({"v": 0, "e": 1, "s": 2}, {"e": [("v", "v")], "s": [("e", "e"), ("e", "e")]})
    assert str(gamma(sq, ["s", "e"])) == "e"
    with pytest.raises(PreconditionViolated):
        gamma(sq, ["s", "e"], check_unique=True)
    assert gamma(C, ["e", "v"]) == make_path(C, ["e"])


def test_homeomorphism():
    A, B, f = FIG1
    assert is_homeomorphism(f)
    interior = sum(len(v) for v in f.interior_index().values())
    assert interior == len(B.P) == 15
    assert is_homeomorphism(identity(A.P))
    P = PrecubicalSet({"u": 0, "v": 0, "e1": 1, "e2": 1}, {"e1": [("u", "v")], "e2": [("u", "v")]})
    fold = from_morphism(PrecubicalMorphism(P, interval(0, 1), {"u": "0", "v": "1", "e1": "0:1", "e2": "0:1"}))
    assert not is_homeomorphism(fold)
    with pytest.raises(PreconditionViolated):
        carrier(fold, "0:1")
    EA, EB, incl, fold29 = fx.ex29()
    assert not is_homeomorphism(incl)
    assert not is_homeomorphism(fold29)


def test_carriers():
    A, B, f = FIG1
    assert carrier(f, "b10") == "ab_bot"
    assert carrier(f, "c1") == "sqA"
    assert carrier(f, "sq2") == "sqA"
    for a in A.P.vertices:
        assert carrier(f, f.vertex(a)) == a
    with pytest.raises(InvalidArgument):
        carrier(f, "nope")


def test_carrier_sequences():
    A, B, f = FIG1
    P = B.P
    assert carrier_sequence(f, make_path(P, ["aL", "bR"])) == ("a00", "ab_bot", "ab_bot", "ab_bot", "a10")
    assert carrier_sequence(f, Path.at("b00")) == ("a00",)
    assert carrier_sequence(f, make_path(P, ["aL", "c1"])) == ("a00", "ab_bot", "ab_bot", "sqA", "ab_top")
    for nu in all_paths(P):
        assert validate_cube_path(A.P, carrier_sequence(f, nu)).ok


def test_retract_examples():
    A, B, f = FIG1
    w = make_path(A.P, ["ab_bot", "c_right"])
    assert retract_path(f, f.map_path(w)) == w
    assert str(retract_path(f, make_path(B.P, ["aL", "bR"]))) == "ab_bot"
    i = identity(B.P)
    for nu in all_paths(B.P):
        assert retract_path(i, nu) == nu


def test_composite_carriers():
    f = compose(grid_refinement((1, 1), (2, 1)), grid_refinement((2, 1), (4, 2)))
    assert is_homeomorphism(f)
    assert carrier(f, "1;1") == top_cell(2)
    assert carrier(f, "0:1;0") == "0:1;0"
    for p in all_paths(f.source):
        assert retract_path(f, f.map_path(p)) == p
    assert check_stage_regularity(f).ok


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_gamma_concatenation(data):
    A, B, f = FIG1
    nu = data.draw(st.sampled_from([p for p in all_paths(B.P) if p.length >= 1]))
    c = carrier_sequence(f, nu)
    cut = data.draw(st.integers(0, len(c) - 1))
    left, right = c[: cut + 1], c[cut:]
    assert gamma(A.P, c) == concat(gamma(A.P, left), gamma(A.P, right))


def test_extremal_preservation():
    A, B, f = FIG1
    assert check_extremal_preservation(f).ok
    assert check_extremal_preservation(grid_refinement((1, 2), (3, 2))).ok


@pytest.mark.parametrize("name,ms,ks", [
    ("wm_f", None, None),
    ("square", (1, 1), (2, 3)),
    ("cube", (1, 1, 1), (2, 2, 1)),
    ("chain", (1, 2), (2, 4)),
])
def test_retraction_preserves_dihomotopy(name, ms, ks):
    f = FIG1[2] if ms is None else grid_refinement(ms, ks)
    P = f.target
    for cls in partition_classes(P, all_paths(P, 5)):
        images = {retract_path(f, nu) for nu in cls.members}
        first = next(iter(images))
        assert all(dihomotopic(f.source, first, r) for r in images), (name, cls.representative)
