"""Acceptance criteria 1-12.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary (see conftest.py) and when this file is run as a script.
"""

import functools
import itertools
import random

import pytest

from hdakit import fixtures as fx
from hdakit.carrier import check_extremal_preservation, is_homeomorphism, retract_path, validate_cube_path
from hdakit.cli import run
from hdakit.errors import ParseError, ValidationError
from hdakit.formats import parse_hda
from hdakit.hda import (
    Hda,
    congruence_class,
    congruent,
    extended_label,
    independence_relation,
    independent,
    is_accessible,
    is_deterministic,
    is_stable,
    language,
    subdivided_cube_hda,
    trace_language,
    validate_hda,
    word,
)
from hdakit.paths import all_paths, concat, dihomotopic, dihomotopy_class, make_path
from hdakit.precubical import (
    PrecubicalMorphism,
    PrecubicalSet,
    extremal_vertices,
    is_weakly_regular,
    validate_morphism,
    validate_precubical,
)
from hdakit.relations import (
    check_language_inclusion,
    check_trace_language_bijection,
    theorem_homeo_implies_trace,
)
from hdakit.weakmor import (
    Subdivision,
    SubdivisionData,
    check_subdivision_hda,
    check_weak_hda_morphism,
    compose,
    grid_refinement,
    identity,
    make_subdivision,
    refinement_hdas,
)

RESULTS: dict[int, str] = {}
MAX_LEN = 6


def criterion(n, title):
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                RESULTS[n] = f"criterion {n:2d}: FAIL  {title}"
                raise
            RESULTS[n] = f"criterion {n:2d}: PASS  {title}"
        return inner
    return wrap


W = word
FIG1_A, FIG1_B, WM_F = fx.fig1()
EX29_A, EX29_B, EX29_INCL, EX29_FOLD = fx.ex29()
GRID22 = subdivided_cube_hda(2, 2)


def random_subdivisions(count=10, seed=20261015):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, 3)
        ks = tuple(rng.randint(1, 3) for _ in range(n))
        out.append(grid_refinement((1,) * n, ks))
    return out


RANDOM_SUBDIVISIONS = random_subdivisions()
WITNESSES = [WM_F] + RANDOM_SUBDIVISIONS


def call(*argv):
    import io
    return run(list(argv), io.StringIO(), io.StringIO())


@criterion(1, "fixture languages and inclusion")
def test_c01_fixture_languages():
    assert language(FIG1_A) == {W("a.b.c"), W("c.a.b")}
    assert language(FIG1_B) == {W("a.b.c"), W("a.c.b"), W("c.a.b")}
    assert language(FIG1_A) <= language(FIG1_B)
    assert check_language_inclusion(FIG1_A, FIG1_B, WM_F).ok


@criterion(2, "relations of the one-square example through the CLI")
def test_c02_fig1_relations():
    files = [str(fx.data_path(n)) for n in ("fig1_a.hda", "fig1_b.hda", "wm_f.wm")]
    for relation in ("weak", "trace-equiv", "homeo"):
        assert call("relate", relation, *files) == 0, relation


@criterion(3, "homeomorphic abstraction implies trace equivalence")
def test_c03_theorem_replay():
    assert is_weakly_regular(FIG1_A.P)
    verdict = theorem_homeo_implies_trace(FIG1_A, FIG1_B, WM_F)
    assert verdict.status == "holds"
    assert verdict.hypotheses.ok and verdict.conclusion.ok
    for ms, ks in (((1, 1), (2, 2)), ((1,), (3,))):
        A, B, f = refinement_hdas(ms, ks)
        v = theorem_homeo_implies_trace(A, B, f)
        assert v.status == "holds", (ms, ks, v.lines())


@criterion(4, "trace language bijection")
def test_c04_trace_language_bijection():
    assert len(trace_language(FIG1_A)) == len(trace_language(FIG1_B)) == 1
    res = check_trace_language_bijection(FIG1_A, FIG1_B, WM_F)
    assert res.ok
    assert res.pairs == [(W("a.b.c"), W("a.b.c"))]


@criterion(5, "retraction undoes the path map")
def test_c05_retraction():
    for f in WITNESSES:
        assert is_homeomorphism(f)
        for p in all_paths(f.source, MAX_LEN):
            assert retract_path(f, f.map_path(p), check_unique=True) == p, (f.name, p)


@criterion(6, "path map is a section of the retraction up to dihomotopy")
def test_c06_section_up_to_dihomotopy():
    for f in WITNESSES:
        images = {f.vertex(v) for v in f.source.vertices}
        for nu in all_paths(f.target, MAX_LEN):
            if nu.start in images and nu.end in images:
                back = f.map_path(retract_path(f, nu))
                assert dihomotopic(f.target, back, nu), (f.name, nu, back)


@criterion(7, "subdivided cube HDAs")
def test_c07_grid_properties():
    for ks in ((2, 1), (2, 2)):
        G = subdivided_cube_hda(*ks)
        assert is_stable(G) and is_deterministic(G)
        paths = all_paths(G.P)
        for p, q in itertools.combinations(paths, 2):
            if (p.start, p.end) == (q.start, q.end):
                assert dihomotopic(G.P, p, q), (p, q)
                assert congruent(G, extended_label(G, p), extended_label(G, q))


@criterion(8, "label lemmas")
def test_c08_lemma_suite():
    for X in (FIG1_A, FIG1_B, EX29_A, EX29_B, GRID22):
        rel = independence_relation(X)
        paths = all_paths(X.P)
        # a dihomotopic path realizes every congruent label
        for p in paths:
            labels = {extended_label(X, q) for q in dihomotopy_class(X.P, p).members}
            assert congruence_class(X, extended_label(X, p), rel) <= labels, (X.name, p)
        # the language is saturated by congruence
        words = set().union(*(c.words for c in trace_language(X))) if trace_language(X) else set()
        assert words == language(X), X.name
        # dihomotopic paths have congruent labels on stable HDAs
        if is_stable(X):
            for p in paths:
                labels = [extended_label(X, q) for q in dihomotopy_class(X.P, p).members]
                assert all(congruent(X, labels[0], w, rel) for w in labels), (X.name, p)
        # on deterministic HDAs congruent labels from one vertex force dihomotopy
        if is_deterministic(X):
            for p, q in itertools.combinations(paths, 2):
                if p.start == q.start and congruent(X, extended_label(X, p), extended_label(X, q), rel):
                    assert dihomotopic(X.P, p, q), (X.name, p, q)


def _functor_cases():
    chains = [
        (WM_F, identity(FIG1_B.P)),
        (identity(FIG1_A.P), WM_F),
        (EX29_INCL, EX29_FOLD),
        (EX29_FOLD, EX29_INCL),
        (grid_refinement((1, 1), (2, 2)), grid_refinement((2, 2), (4, 2))),
        (grid_refinement((1,), (2,)), grid_refinement((2,), (6,))),
    ]
    rng = random.Random(7)
    cases = []
    for _ in range(200):
        f, g = rng.choice(chains)
        paths = all_paths(f.source, 4)
        p = rng.choice(paths)
        q = rng.choice([r for r in paths if r.start == p.end])
        cases.append((f, g, p, q))
    return chains, cases


@criterion(9, "functor laws of the path map")
def test_c09_functor_laws():
    chains, cases = _functor_cases()
    assert len(cases) == 200
    for f, g, p, q in cases:
        h = compose(f, g)
        pq = concat(p, q)
        assert f.map_path(pq) == concat(f.map_path(p), f.map_path(q))
        assert h.map_path(pq) == g.map_path(f.map_path(pq))
    for f, g in chains:
        h = compose(f, g)
        assert all(h.vertex(v) == g.vertex(f.vertex(v)) for v in f.source.vertices)


@criterion(10, "homeomorphisms preserve extremal vertices")
def test_c10_extremal_preservation():
    witnesses = WITNESSES + [identity(X.P) for X in (FIG1_A, FIG1_B, EX29_A, EX29_B)]
    witnesses += [refinement_hdas(ms, ks)[2] for ms, ks in (((1, 1), (2, 2)), ((1,), (3,)))]
    for f in witnesses:
        assert is_homeomorphism(f)
        assert check_extremal_preservation(f).ok, f.name
        m, M = extremal_vertices(f.source)
        m2, M2 = extremal_vertices(f.target)
        assert sorted(map(f.vertex, m)) == sorted(m2) and sorted(map(f.vertex, M)) == sorted(M2)


@criterion(11, "equal languages without trace equivalence")
def test_c11_ex29():
    assert language(EX29_A) == language(EX29_B) == {W("a.b")}
    assert not is_deterministic(EX29_A)
    assert is_deterministic(EX29_B)
    xy = make_path(EX29_A.P, ["x", "y"])
    z = make_path(EX29_A.P, ["z"])
    assert not dihomotopic(EX29_A.P, xy, z)
    assert check_weak_hda_morphism(EX29_INCL, EX29_B, EX29_A).ok


# -- constructed negatives --------------------------------------------------


def neg_broken_identity():
    cubes = {"p": 0, "q": 0, "r": 0, "s": 0, "t": 0, "left": 1, "right": 1, "bot": 1, "top": 1, "sq": 2}
    faces = {"left": [("p", "r")], "right": [("q", "s")], "bot": [("t", "q")],
             "top": [("r", "s")], "sq": [("left", "right"), ("bot", "top")]}
    report = validate_precubical(PrecubicalSet(cubes, faces))
    assert [v.where for v in report.violations] == [("sq", 1, 2, 0, 0)]


def neg_inconsistent_morphism():
    P = FIG1_A.P
    bad = {x: x for x in P.cubes()}
    bad["c_right"] = "c_left"
    assert "boundary" in validate_morphism(PrecubicalMorphism(P, P, bad)).kinds()


def neg_square_label():
    B = FIG1_B.with_changes(labels={**FIG1_B.labels, "bRt": ("b",), "aLt": ("b",)})
    report = validate_hda(B)
    assert ("sq1", 2) in [v.where for v in report.violations if v.kind == "square"]


def neg_isolated_vertex():
    P = FIG1_A.P
    degrees = {**P.degrees(), "lost": 0}
    A = FIG1_A.with_changes(P=PrecubicalSet(degrees, P.face_table()))
    assert not is_accessible(A)


def neg_ex29_nondeterministic():
    assert not is_deterministic(EX29_A)


def neg_unstable_pair():
    cubes = {"p00": 0, "p10": 0, "p01": 0, "p11": 0, "q0": 0, "q1": 0, "q2": 0,
             "ea0": 1, "ea1": 1, "eb0": 1, "eb1": 1, "s": 2, "x": 1, "y": 1}
    faces = {"ea0": [("p00", "p10")], "ea1": [("p01", "p11")], "eb0": [("p00", "p01")],
             "eb1": [("p10", "p11")], "s": [("eb0", "eb1"), ("ea0", "ea1")],
             "x": [("q0", "q1")], "y": [("q1", "q2")]}
    labels = {"ea0": "a", "ea1": "a", "eb0": "b", "eb1": "b", "x": "a", "y": "b"}
    A = Hda(PrecubicalSet(cubes, faces), ("a", "b"), {"p00", "q0"}, {"p11", "q2"}, labels, "unstable")
    assert not independent(A, "a", "b")
    assert not is_stable(A)


def neg_face_incompatible_cell():
    d = WM_F.data
    data = SubdivisionData(dict(d.vertex_map), dict(d.shape), {x: dict(m) for x, m in d.cells.items()})
    data.cells["sqA"][(1, (0, 1))] = "c0"
    with pytest.raises(ValidationError) as info:
        make_subdivision(FIG1_A.P, FIG1_B.P, data)
    assert "face" in info.value.report.kinds()


def neg_label_mismatch():
    B = FIG1_B.with_changes(labels={**FIG1_B.labels, "bR": ("c",)})
    assert check_weak_hda_morphism(WM_F, FIG1_A, B).kinds() == {"label"}


def neg_final_enlarged():
    B = FIG1_B.with_changes(final={"b21", "b20"})
    assert check_weak_hda_morphism(WM_F, FIG1_A, B).ok
    assert check_subdivision_hda(WM_F, FIG1_A, B).kinds() == {"final-eq"}


def neg_cube_path_gap():
    report = validate_cube_path(FIG1_A.P, ["a00", "a11"])
    assert [v.where for v in report.violations] == [(1,)]


def neg_broken_determinism():
    P = FIG1_B.P
    twin_P = PrecubicalSet({**P.degrees(), "aX": 1}, {**P.face_table(), "aX": (("b00", "b10"),)})
    twin = FIG1_B.with_changes(P=twin_P, labels={**FIG1_B.labels, "aX": ("a",)})
    f = Subdivision(FIG1_A.P, twin_P, WM_F.data, WM_F.cell_maps, WM_F.name)
    res = check_trace_language_bijection(FIG1_A, twin, f)
    assert not res.hypotheses.ok and not res.ok


def neg_duplicate_cube_id():
    with pytest.raises(ParseError, match="'v'.*first declared on line 2") as info:
        parse_hda("hda d\ncube 0 v w\ncube 1 v\n")
    assert info.value.line == 3


NEGATIVES = [
    neg_broken_identity,
    neg_inconsistent_morphism,
    neg_square_label,
    neg_isolated_vertex,
    neg_ex29_nondeterministic,
    neg_unstable_pair,
    neg_face_incompatible_cell,
    neg_label_mismatch,
    neg_final_enlarged,
    neg_cube_path_gap,
    neg_broken_determinism,
    neg_duplicate_cube_id,
]


@criterion(12, "validation negatives")
def test_c12_negatives():
    assert len(NEGATIVES) == 12
    failed = []
    for check in NEGATIVES:
        try:
            check()
        except AssertionError as exc:
            failed.append(f"{check.__name__}: {exc}")
    assert not failed, failed


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c")]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
