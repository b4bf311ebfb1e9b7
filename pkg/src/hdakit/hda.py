"""Higher dimensional automata over a finitely generated free monoid.

Labels are words, stored as tuples of alphabet symbols; the empty tuple is the
monoid unit.  Edge labels must be nonempty.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import CyclicInputError, InvalidArgument, Report, UnsupportedInput
from .paths import (
    FiniteCategory,
    Path,
    all_paths,
    dihomotopy_class,
    enumerate_paths,
    fundamental_category,
    is_acyclic,
    iter_paths_from,
)
from .precubical import PrecubicalSet, cell_name, extremal_vertices, grid, grid_cells

Word = tuple


def word(text: str | Sequence[str]) -> Word:
    """``"a.b"`` -> ``("a", "b")``; ``""`` is the empty word."""
    if isinstance(text, str):
        return tuple(text.split(".")) if text else ()
    return tuple(text)


def fmt_word(w: Word) -> str:
    return ".".join(w) if w else "ε"


@dataclass(frozen=True, eq=False)
class Hda:
    P: PrecubicalSet
    alphabet: tuple[str, ...]
    initial: frozenset[str]
    final: frozenset[str]
    labels: Mapping[str, Word]
    name: str = "hda"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "labels", {e: word(w) for e, w in self.labels.items()})

    def label(self, e: str) -> Word:
        try:
            return self.labels[e]
        except KeyError:
            raise InvalidArgument(f"edge {e!r} has no label") from None

    def word_key(self, w: Word) -> tuple:
        """Sort key: lexicographic in the declared alphabet order."""
        order = {s: i for i, s in enumerate(self.alphabet)}
        return tuple(order.get(s, len(order)) for s in w)

    def edge_labels(self) -> list[Word]:
        return sorted(set(self.labels[e] for e in self.P.edges), key=lambda w: (len(w), self.word_key(w)))

    def same_as(self, other: "Hda") -> bool:
        return (self.P == other.P and self.alphabet == other.alphabet and self.initial == other.initial
                and self.final == other.final and dict(self.labels) == dict(other.labels))

    def with_changes(self, **kw) -> "Hda":
        data = dict(P=self.P, alphabet=self.alphabet, initial=self.initial, final=self.final,
                    labels=dict(self.labels), name=self.name)
        data.update(kw)
        return Hda(**data)


def validate_hda(A: Hda) -> Report:
    report = Report()
    P = A.P
    for v in sorted(A.initial):
        if v not in P or P.degree(v) != 0:
            report.add("initial", (v,), f"initial state {v} is not a vertex")
    for v in sorted(A.final):
        if v not in P or P.degree(v) != 0:
            report.add("final", (v,), f"final state {v} is not a vertex")
    alpha = set(A.alphabet)
    for e in P.edges:
        if e not in A.labels:
            report.add("label", (e,), f"edge {e} has no label")
            continue
        w = A.labels[e]
        if not w:
            report.add("label", (e,), f"edge {e} has the empty label")
        for s in w:
            if s not in alpha:
                report.add("alphabet", (e,), f"label symbol {s!r} of {e} is not in the alphabet")
    for e in sorted(set(A.labels) - set(P.edges)):
        report.add("label", (e,), f"label given for {e}, which is not an edge")
    for z in P.cubes(2):
        for i in (1, 2):
            lo, hi = P.face(z, i, 0), P.face(z, i, 1)
            if A.labels.get(lo) != A.labels.get(hi):
                report.add(
                    "square",
                    (z, i),
                    f"label of d_{i}^0 {z} = {lo} is {fmt_word(A.labels.get(lo, ()))}, "
                    f"label of d_{i}^1 {z} = {hi} is {fmt_word(A.labels.get(hi, ()))}",
                )
    return report


def extended_label(A: Hda, path: Path) -> Word:
    out: list[str] = []
    for e in path.edges:
        out.extend(A.label(e))
    return tuple(out)


def accepted_paths(A: Hda, max_len: int | None = None) -> list[Path]:
    out = []
    for v in sorted(A.initial):
        out.extend(p for p in enumerate_paths(A.P, v, max_len=max_len) if p.end in A.final)
    return out


def language(A: Hda, max_len: int | None = None) -> set[Word]:
    """Labels of accepted paths; ``max_len`` bounds the path length."""
    return {extended_label(A, p) for p in accepted_paths(A, max_len)}


def is_accessible(A: Hda) -> bool:
    seen = set(A.initial)
    queue = deque(sorted(A.initial))
    while queue:
        v = queue.popleft()
        for e in A.P.out_edges(v):
            w = A.P.tgt(e)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen >= set(A.P.vertices)


def is_deterministic(A: Hda, max_len: int | None = None) -> bool:
    """One initial state, and no two distinct same-source paths share a label."""
    if len(A.initial) != 1:
        return False
    if max_len is None and not is_acyclic(A.P):
        raise CyclicInputError("determinism without a length bound needs an acyclic HDA")
    for v in A.P.vertices:
        seen: set[Word] = set()
        for p in iter_paths_from(A.P, v, max_len):
            lab = extended_label(A, p)
            if lab in seen:
                return False
            seen.add(lab)
    return True


# -- independence -----------------------------------------------------------


def _class_labels(A: Hda, path: Path) -> frozenset[Word]:
    cache = A._cache.setdefault("class_labels", {})
    cls = dihomotopy_class(A.P, path)
    hit = cache.get(cls.representative)
    if hit is None:
        hit = frozenset(extended_label(A, p) for p in cls.members)
        cache[cls.representative] = hit
    return hit


def _occurrences(w: Word, factor: Word) -> list[int]:
    n = len(factor)
    return [i for i in range(len(w) - n + 1) if w[i:i + n] == factor]


def _single_symbol_labels(A: Hda) -> bool:
    return all(len(A.labels[e]) == 1 for e in A.P.edges)


def _independent_exact(A: Hda, a: Word, b: Word) -> tuple[bool, bool]:
    """Condition (3) over every path; returns (holds, vacuous)."""
    cache = A._cache.setdefault("all_paths", None)
    if cache is None:
        cache = [(p, extended_label(A, p)) for p in all_paths(A.P)]
        A._cache["all_paths"] = cache
    ab, ba = a + b, b + a
    vacuous = True
    for p, lab in cache:
        for first, second in ((ab, ba), (ba, ab)):
            for i in _occurrences(lab, first):
                vacuous = False
                wanted = lab[:i] + second + lab[i + len(first):]
                if wanted == lab:
                    continue
                if wanted not in _class_labels(A, p):
                    return False, False
    return True, vacuous


def _independent_local(A: Hda, a: Word, b: Word) -> tuple[bool, bool]:
    """Single-symbol criterion: every a/b edge pair spans a 2-cube."""
    P = A.P
    pair = {a, b}
    moves = {}
    for z in P.cubes(2):
        moves.setdefault((P.face(z, 1, 0), P.face(z, 2, 1)), True)
        moves.setdefault((P.face(z, 2, 0), P.face(z, 1, 1)), True)
    vacuous = True
    for x1 in P.edges:
        for x2 in P.out_edges(P.tgt(x1)):
            if {A.labels[x1], A.labels[x2]} == pair:
                vacuous = False
                if (x1, x2) not in moves:
                    return False, False
    return True, vacuous


def independent(A: Hda, a: Word | str, b: Word | str, method: str = "auto") -> bool:
    """Whether labels ``a`` and ``b`` are independent in ``A``.

    ``method`` is ``"exact"`` (quantify over all paths; acyclic only),
    ``"local"`` (the length-2 criterion; single-symbol labels only) or
    ``"auto"`` (exact when acyclic, else local).
    """
    return _independence_verdict(A, word(a), word(b), method)[0]


def _independence_verdict(A: Hda, a: Word, b: Word, method: str = "auto") -> tuple[bool, bool]:
    labels = set(A.labels[e] for e in A.P.edges)
    if a not in labels or b not in labels or a == b:
        return False, False
    key = (method, frozenset((a, b)))
    cache = A._cache.setdefault("independent", {})
    if key in cache:
        return cache[key]
    acyclic = is_acyclic(A.P)
    single = _single_symbol_labels(A)
    if method == "auto":
        method = "exact" if acyclic else "local"
    if method == "exact":
        if not acyclic:
            raise UnsupportedInput("the exact independence test needs an acyclic HDA")
        verdict = _independent_exact(A, a, b)
    elif method == "local":
        if not single:
            raise UnsupportedInput("the local independence test needs single-symbol edge labels")
        verdict = _independent_local(A, a, b)
    else:
        raise InvalidArgument(f"unknown method {method!r}")
    cache[key] = verdict
    return verdict


@dataclass(frozen=True)
class IndependenceRelation:
    pairs: frozenset[frozenset]
    vacuous: frozenset[frozenset] = frozenset()

    def __contains__(self, pair) -> bool:
        return frozenset(pair) in self.pairs

    def sorted_pairs(self, A: Hda) -> list[tuple[Word, Word]]:
        out = []
        for p in self.pairs:
            a, b = sorted(p, key=lambda w: (len(w), A.word_key(w)))
            out.append((a, b))
        return sorted(out, key=lambda ab: (A.word_key(ab[0]), A.word_key(ab[1])))


def independence_relation(A: Hda, method: str = "auto") -> IndependenceRelation:
    """All unordered independent pairs of edge labels.

    Pairs that hold only because no path label contains ``ab`` or ``ba`` are
    also listed in ``vacuous``.
    """
    cached = A._cache.get(("relation", method))
    if cached is not None:
        return cached
    pairs, vac = set(), set()
    for a, b in combinations(A.edge_labels(), 2):
        ok, vacuous = _independence_verdict(A, a, b, method)
        if ok:
            pairs.add(frozenset((a, b)))
            if vacuous:
                vac.add(frozenset((a, b)))
    rel = IndependenceRelation(frozenset(pairs), frozenset(vac))
    A._cache[("relation", method)] = rel
    return rel


# -- congruence and trace language -----------------------------------------


def _swaps(rel: IndependenceRelation) -> list[tuple[Word, Word]]:
    out = []
    for p in rel.pairs:
        a, b = tuple(p)
        out.append((a + b, b + a))
        out.append((b + a, a + b))
    return out


def congruence_class(A: Hda, w: Word, rel: IndependenceRelation | None = None) -> frozenset[Word]:
    """Closure of ``w`` under swapping adjacent independent factors."""
    rel = rel if rel is not None else independence_relation(A)
    cache = A._cache.setdefault(("congruence", rel), {})
    w = word(w)
    if w in cache:
        return cache[w]
    swaps = _swaps(rel)
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for src, dst in swaps:
            for i in _occurrences(x, src):
                y = x[:i] + dst + x[i + len(src):]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    out = frozenset(seen)
    for x in seen:
        cache[x] = out
    return out


def congruent(A: Hda, w1: Word | str, w2: Word | str, rel: IndependenceRelation | None = None) -> bool:
    w1, w2 = word(w1), word(w2)
    if len(w1) != len(w2):
        return False
    return w1 == w2 or w2 in congruence_class(A, w1, rel)


@dataclass(frozen=True)
class TraceClass:
    representative: Word
    words: frozenset[Word] = field(compare=False)

    def __contains__(self, w) -> bool:
        return word(w) in self.words


def trace_class(A: Hda, w: Word, rel: IndependenceRelation | None = None) -> TraceClass:
    ws = congruence_class(A, w, rel)
    return TraceClass(min(ws, key=A.word_key), ws)


def trace_language(A: Hda, max_len: int | None = None, method: str = "auto") -> list[TraceClass]:
    """Partition of the language into trace classes, sorted by representative."""
    rel = independence_relation(A, method)
    classes: dict[Word, TraceClass] = {}
    for w in language(A, max_len):
        tc = trace_class(A, w, rel)
        classes[tc.representative] = tc
    return [classes[r] for r in sorted(classes, key=lambda r: (len(r), A.word_key(r)))]


def is_stable(A: Hda, method: str = "auto") -> bool:
    return not unstable_squares(A, method)


def unstable_squares(A: Hda, method: str = "auto") -> list[str]:
    P = A.P
    bad = []
    for z in P.cubes(2):
        a, b = A.labels[P.face(z, 1, 0)], A.labels[P.face(z, 2, 0)]
        if a == b:
            continue
        if not _independence_verdict(A, a, b, method)[0]:
            bad.append(z)
    return bad


def trace_category_objects(A: Hda) -> frozenset[str]:
    minimal, maximal = extremal_vertices(A.P)
    return frozenset(A.initial | A.final | minimal | maximal)


def trace_category(A: Hda) -> FiniteCategory:
    cached = A._cache.get("trace_category")
    if cached is None:
        cached = fundamental_category(A.P, trace_category_objects(A))
        A._cache["trace_category"] = cached
    return cached


def subdivided_cube_hda(*ks: int, name: str | None = None, labels: Sequence[str] | None = None) -> Hda:
    """``[0,k1] (x) ... (x) [0,kn]`` with axis p labelled by its own letter.

    Letters default to ``l1 .. ln``; initial is the origin and final the far
    corner.
    """
    if not ks:
        raise InvalidArgument("a subdivided cube needs at least one axis")
    if any(k < 1 for k in ks):
        raise InvalidArgument(f"all grid sizes must be >= 1, got {ks}")
    letters = tuple(labels) if labels is not None else tuple(f"l{p + 1}" for p in range(len(ks)))
    P = grid(*ks)
    lab = {}
    for cell in grid_cells(ks):
        edge_axes = [p for p, c in enumerate(cell) if isinstance(c, tuple)]
        if len(edge_axes) == 1:
            lab[cell_name(cell)] = (letters[edge_axes[0]],)
    origin = cell_name(tuple(0 for _ in ks))
    corner = cell_name(tuple(ks))
    return Hda(P, letters, {origin}, {corner}, lab, name or "grid_" + "_".join(map(str, ks)))


def restrict_labels(labels: Mapping[str, Word], names: Iterable[str]) -> dict[str, Word]:
    keep = set(names)
    return {e: w for e, w in labels.items() if e in keep}
