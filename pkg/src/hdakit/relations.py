"""Witness-based checks of the HDA preorders and the final theorem harness."""

from __future__ import annotations

from dataclasses import dataclass, field

from .carrier import check_extremal_preservation, check_homeomorphism, check_stage_regularity
from .errors import CyclicInputError, NotATraceFunctor, Report
from .hda import (
    Hda,
    fmt_word,
    is_accessible,
    is_deterministic,
    is_stable,
    language,
    trace_category,
    trace_category_objects,
    trace_class,
    trace_language,
    independence_relation,
)
from .paths import FiniteCategory, Path, all_paths, is_acyclic
from .precubical import extremal_vertices, is_weakly_regular
from .weakmor import CellularWeakMorphism, check_weak_hda_morphism


@dataclass
class FunctorData:
    source: FiniteCategory
    target: FiniteCategory
    object_map: dict[str, str]
    hom_map: dict[Path, Path]

    def iso_report(self) -> Report:
        report = Report()
        images = list(self.object_map.values())
        if len(set(images)) != len(images) or set(images) != set(self.target.objects):
            report.add("objects", (), f"object map {self.object_map} is not a bijection onto {list(self.target.objects)}")
            return report
        for v in self.source.objects:
            for w in self.source.objects:
                src = self.source.hom(v, w)
                tgt = self.target.hom(self.object_map[v], self.object_map[w])
                got = [self.hom_map[h] for h in src]
                if len(set(got)) != len(got) or set(got) != set(tgt):
                    report.add("hom", (v, w), f"hom({v},{w}) has {len(src)} classes, "
                               f"image covers {len(set(got))} of {len(tgt)}")
        return report

    @property
    def is_isomorphism(self) -> bool:
        return self.iso_report().ok


def trace_functor(f: CellularWeakMorphism, A: Hda, B: Hda) -> FunctorData:
    """The functor induced on trace categories.

    Raises :class:`NotATraceFunctor` when an object of ``TC(A)`` is not sent
    to an object of ``TC(B)``.
    """
    if not is_acyclic(A.P) or not is_acyclic(B.P):
        raise CyclicInputError("trace categories need acyclic HDAs")
    m, M = extremal_vertices(A.P)
    targets = trace_category_objects(B)
    bad = sorted(v for v in (m | M | A.initial | A.final) if f.vertex(v) not in targets)
    if bad:
        raise NotATraceFunctor(f"vertices {bad} map outside I' u F' u m(P') u M(P')")
    TA, TB = trace_category(A), trace_category(B)
    object_map = {v: f.vertex(v) for v in TA.objects}
    hom_map: dict[Path, Path] = {}
    for h in TA.morphisms():
        image = TB.classify(f.map_path(h))
        if image is None:
            raise NotATraceFunctor(f"image of {h} is not a morphism of TC(B)")
        hom_map[h] = image
    data = FunctorData(TA, TB, object_map, hom_map)
    for v, idv in TA.identities.items():
        if hom_map.get(idv, TB.identities[object_map[v]]) != TB.identities[object_map[v]]:
            raise NotATraceFunctor(f"identity of {v} is not preserved")
    for (g, h), gh in TA.compose.items():
        if hom_map[gh] != TB.compose.get((hom_map[g], hom_map[h])):
            raise NotATraceFunctor(f"composition {g} then {h} is not preserved")
    return data


def _vertex_set_eq(report: Report, kind: str, f, src, tgt) -> None:
    image = {f.vertex(v) for v in src}
    if image != set(tgt):
        report.add(kind, (), f"f0 maps {sorted(src)} to {sorted(image)}, expected {sorted(tgt)}")


def check_trace_equivalence(A: Hda, B: Hda, f: CellularWeakMorphism) -> Report:
    report = check_weak_hda_morphism(f, A, B)
    if "endpoints" in report.kinds():
        return report
    m, M = extremal_vertices(A.P)
    m2, M2 = extremal_vertices(B.P)
    _vertex_set_eq(report, "initial-eq", f, A.initial, B.initial)
    _vertex_set_eq(report, "final-eq", f, A.final, B.final)
    _vertex_set_eq(report, "minimal", f, m, m2)
    _vertex_set_eq(report, "maximal", f, M, M2)
    try:
        functor = trace_functor(f, A, B)
    except NotATraceFunctor as exc:
        report.add("functor", (), str(exc))
        return report
    report.extend(functor.iso_report())
    return report


def check_homeomorphic_abstraction(A: Hda, B: Hda, f: CellularWeakMorphism) -> Report:
    report = check_weak_hda_morphism(f, A, B)
    if "endpoints" in report.kinds():
        return report
    _vertex_set_eq(report, "initial-eq", f, A.initial, B.initial)
    _vertex_set_eq(report, "final-eq", f, A.final, B.final)
    report.extend(check_homeomorphism(f))
    return report


def check_language_inclusion(A: Hda, B: Hda, f: CellularWeakMorphism, max_len: int | None = None) -> Report:
    """Recompute both languages and compare; a failure here means a bug, not a counterexample."""
    report = Report()
    LA = language(A, max_len)
    if max_len is None:
        LB = language(B)
    else:
        stretch = max((len(f.map_path(Path((e,), A.P.src(e), A.P.tgt(e)))) for e in A.P.edges), default=1)
        LB = language(B, max_len * stretch)
    for w in sorted(LA - LB):
        report.add("inclusion", (w,), f"{fmt_word(w)} is accepted by {A.name} but not by {B.name}")
    return report


@dataclass
class BijectionResult:
    report: Report
    hypotheses: Report
    pairs: list[tuple[tuple, tuple]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.report.ok and self.hypotheses.ok


def check_trace_language_bijection(A: Hda, B: Hda, f: CellularWeakMorphism) -> BijectionResult:
    """The map ``tr_A(l) -> tr_B(l)`` on trace languages, checked for bijectivity."""
    hyp = Report()
    if not is_stable(A):
        hyp.add("hypothesis", ("A",), f"{A.name} is not stable")
    if not is_stable(B):
        hyp.add("hypothesis", ("B",), f"{B.name} is not stable")
    if not is_deterministic(B):
        hyp.add("hypothesis", ("B",), f"{B.name} is not deterministic")
    te = check_trace_equivalence(A, B, f)
    if not te.ok:
        hyp.add("hypothesis", ("f",), "witness is not a trace equivalence: " + "; ".join(te.lines()))
    report = Report()
    if not hyp.ok:
        return BijectionResult(report, hyp)
    TA = trace_language(A)
    TB = trace_language(B)
    rel_b = independence_relation(B)
    mapping: dict[tuple, tuple] = {}
    for cls in TA:
        images = {trace_class(B, w, rel_b).representative for w in cls.words if w in language(A)}
        if len(images) != 1:
            report.add("well-defined", (cls.representative,),
                       f"class of {fmt_word(cls.representative)} has images {sorted(map(fmt_word, images))}")
            continue
        mapping[cls.representative] = images.pop()
    targets = list(mapping.values())
    if len(set(targets)) != len(targets):
        report.add("injective", (), "two trace classes of A share an image")
    missing = {c.representative for c in TB} - set(targets)
    for r in sorted(missing, key=B.word_key):
        report.add("surjective", (r,), f"class of {fmt_word(r)} in TL(B) is not hit")
    return BijectionResult(report, hyp, sorted(mapping.items(), key=lambda kv: A.word_key(kv[0])))


@dataclass
class TheoremVerdict:
    status: str  # holds, hypotheses-fail, not-applicable, violation
    hypotheses: Report
    conclusion: Report
    notes: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"status: {self.status}"]
        out.append("hypotheses: " + ("hold" if self.hypotheses.ok else "fail"))
        out += ["  " + line for line in self.hypotheses.lines()]
        if self.status in ("holds", "violation"):
            out.append("conclusion: " + ("holds" if self.conclusion.ok else "FAILS"))
            out += ["  " + line for line in self.conclusion.lines()]
        out += [f"note: {n}" for n in self.notes]
        return out


def theorem_homeo_implies_trace(A: Hda, B: Hda, f: CellularWeakMorphism) -> TheoremVerdict:
    """Weakly regular ``A`` with a homeomorphic abstraction witness must give a trace equivalence."""
    hyp = Report()
    if not is_acyclic(A.P) or not is_acyclic(B.P):
        return TheoremVerdict("not-applicable", hyp, Report(),
                              ["trace categories of cyclic HDAs have infinite hom-sets; nothing is checked"])
    if not is_weakly_regular(A.P):
        hyp.add("weak-regularity", (A.name,), f"{A.name} is not weakly regular")
    hyp.extend(check_homeomorphic_abstraction(A, B, f))
    notes = []
    regularity = check_stage_regularity(f)
    if not regularity.ok:
        notes.extend(regularity.lines())
    if not hyp.ok:
        return TheoremVerdict("hypotheses-fail", hyp, Report(), notes)
    conclusion = check_trace_equivalence(A, B, f)
    if conclusion.ok:
        return TheoremVerdict("holds", hyp, conclusion, notes)
    dump = [f"witness {f.name}: {A.name} -> {B.name}"]
    dump += [f"f0({v}) = {f.vertex(v)}" for v in A.P.vertices]
    dump += [f"f({e}) = {f.map_path(Path((e,), A.P.src(e), A.P.tgt(e)))}" for e in A.P.edges]
    return TheoremVerdict("violation", hyp, conclusion, notes + dump)


def check_mutual_witnesses(A: Hda, B: Hda, f: CellularWeakMorphism, g: CellularWeakMorphism,
                           max_len: int | None = None) -> Report:
    """Given ``f: A -> B`` and ``g: B -> A`` between accessible deterministic HDAs,
    the vertex maps and path maps must be inverse bijections that respect
    extremal vertices."""
    report = Report()
    for X in (A, B):
        if not is_accessible(X):
            report.add("hypothesis", (X.name,), f"{X.name} is not accessible")
        if not is_deterministic(X, max_len):
            report.add("hypothesis", (X.name,), f"{X.name} is not deterministic")
    for h, X, Y in ((f, A, B), (g, B, A)):
        r = check_weak_hda_morphism(h, X, Y)
        if not r.ok:
            report.add("hypothesis", (h.name,), f"{h.name} is not a weak morphism: " + "; ".join(r.lines()))
    if not report.ok:
        return report
    for v in A.P.vertices:
        if g.vertex(f.vertex(v)) != v:
            report.add("vertices", (v,), f"g0(f0({v})) = {g.vertex(f.vertex(v))}")
    for v in B.P.vertices:
        if f.vertex(g.vertex(v)) != v:
            report.add("vertices", (v,), f"f0(g0({v})) = {f.vertex(g.vertex(v))}")
    for h, k, X in ((f, g, A), (g, f, B)):
        for p in all_paths(X.P, max_len):
            if k.map_path(h.map_path(p)) != p:
                report.add("paths", (str(p),), f"path {p} does not come back to itself")
    for h, X, Y in ((f, A, B), (g, B, A)):
        m, M = extremal_vertices(X.P)
        m2, M2 = extremal_vertices(Y.P)
        if {h.vertex(v) for v in m} != set(m2) or {h.vertex(v) for v in M} != set(M2):
            report.add("extremal", (h.name,), f"{h.name} does not preserve extremal vertices")
    return report


__all__ = [
    "FunctorData",
    "trace_functor",
    "check_trace_equivalence",
    "check_homeomorphic_abstraction",
    "check_language_inclusion",
    "check_trace_language_bijection",
    "BijectionResult",
    "TheoremVerdict",
    "theorem_homeo_implies_trace",
    "check_mutual_witnesses",
    "check_extremal_preservation",
]
