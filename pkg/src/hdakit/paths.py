"""Paths in precubical sets, dihomotopy classes and fundamental categories."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import CyclicInputError, InvalidArgument, Report
from .precubical import PrecubicalSet


@dataclass(frozen=True, order=True)
class Path:
    """A vertex ``start`` followed by a compatible sequence of edges.

    Build with :func:`make_path` or :meth:`Path.at`; the dataclass constructor
    does not check compatibility.
    """

    edges: tuple[str, ...]
    start: str
    end: str

    @classmethod
    def at(cls, v: str) -> "Path":
        return cls((), v, v)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def length(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        if not self.edges:
            return f"@{self.start}"
        return "·".join(self.edges)


def make_path(P: PrecubicalSet, edges: Sequence[str], start: str | None = None) -> Path:
    edges = tuple(edges)
    if not edges:
        if start is None or start not in P or P.degree(start) != 0:
            raise InvalidArgument(f"length-0 path needs a vertex, got {start!r}")
        return Path.at(start)
    for e in edges:
        if e not in P or P.degree(e) != 1:
            raise InvalidArgument(f"{e!r} is not an edge")
    for a, b in zip(edges, edges[1:]):
        if P.tgt(a) != P.src(b):
            raise InvalidArgument(f"edges {a} and {b} do not compose")
    if start is not None and start != P.src(edges[0]):
        raise InvalidArgument(f"path {'·'.join(edges)} does not start at {start}")
    return Path(edges, P.src(edges[0]), P.tgt(edges[-1]))


def vertices_of(P: PrecubicalSet, path: Path) -> list[str]:
    return [path.start] + [P.tgt(e) for e in path.edges]


def concat(w: Path, v: Path) -> Path:
    if w.end != v.start:
        raise InvalidArgument(f"cannot concatenate: {w} ends at {w.end}, {v} starts at {v.start}")
    return Path(w.edges + v.edges, w.start, v.end)


def concat_all(paths: Iterable[Path]) -> Path:
    it = iter(paths)
    out = next(it)
    for p in it:
        out = concat(out, p)
    return out


def is_acyclic(P: PrecubicalSet) -> bool:
    """Kahn's algorithm on the 1-skeleton."""
    indeg = {v: len(P.in_edges(v)) for v in P.vertices}
    queue = deque(v for v, d in indeg.items() if d == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for e in P.out_edges(v):
            w = P.tgt(e)
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(P.vertices)


def _require_finite(P: PrecubicalSet, max_len: int | None, what: str) -> None:
    if max_len is None and not is_acyclic(P):
        raise CyclicInputError(f"{what} without a length bound needs an acyclic precubical set")


def iter_paths_from(P: PrecubicalSet, start: str, max_len: int | None = None) -> Iterator[Path]:
    """All paths starting at ``start`` (depth first, edges in name order)."""
    _require_finite(P, max_len, "path enumeration")
    stack: list[tuple[str, tuple[str, ...]]] = [(start, ())]
    while stack:
        v, edges = stack.pop()
        yield Path(edges, start, v) if edges else Path.at(start)
        if max_len is not None and len(edges) >= max_len:
            continue
        for e in reversed(P.out_edges(v)):
            stack.append((P.tgt(e), edges + (e,)))


def enumerate_paths(P: PrecubicalSet, start: str, end: str | None = None, max_len: int | None = None) -> list[Path]:
    """Every path from ``start`` (to ``end`` if given), sorted by (length, edges)."""
    if start not in P or P.degree(start) != 0:
        raise InvalidArgument(f"{start!r} is not a vertex")
    out = [p for p in iter_paths_from(P, start, max_len) if end is None or p.end == end]
    out.sort(key=lambda p: (p.length, p.edges))
    return out


def all_paths(P: PrecubicalSet, max_len: int | None = None) -> list[Path]:
    out: list[Path] = []
    for v in P.vertices:
        out.extend(enumerate_paths(P, v, max_len=max_len))
    return out


# -- dihomotopy -------------------------------------------------------------


def _move_index(P: PrecubicalSet) -> dict[tuple[str, str], tuple[tuple[str, str], ...]]:
    cached = P.__dict__.get("_hdakit_moves")
    if cached is not None:
        return cached
    index: dict[tuple[str, str], set[tuple[str, str]]] = {}
    for z in P.cubes(2):
        a = (P.face(z, 1, 0), P.face(z, 2, 1))
        b = (P.face(z, 2, 0), P.face(z, 1, 1))
        index.setdefault(a, set()).add(b)
        index.setdefault(b, set()).add(a)
    frozen = {k: tuple(sorted(v)) for k, v in index.items()}
    P.__dict__["_hdakit_moves"] = frozen
    return frozen


def elementary_moves(P: PrecubicalSet, path: Path) -> Iterator[Path]:
    """Paths obtained by one elementary dihomotopy (swap around one 2-cube)."""
    index = _move_index(P)
    e = path.edges
    for j in range(len(e) - 1):
        for alt in index.get((e[j], e[j + 1]), ()):
            yield Path(e[:j] + alt + e[j + 2:], path.start, path.end)


@dataclass(frozen=True)
class DihomotopyClass:
    representative: Path
    members: frozenset[Path] = field(compare=False)

    def __contains__(self, p: object) -> bool:
        return p in self.members

    def __len__(self) -> int:
        return len(self.members)


def _class_cache(P: PrecubicalSet) -> dict[Path, DihomotopyClass]:
    return P.__dict__.setdefault("_hdakit_classes", {})


def dihomotopy_class(P: PrecubicalSet, path: Path) -> DihomotopyClass:
    """Breadth-first closure under elementary moves; representative is the least edge sequence."""
    cache = _class_cache(P)
    hit = cache.get(path)
    if hit is not None:
        return hit
    seen = {path}
    queue = deque([path])
    while queue:
        p = queue.popleft()
        for q in elementary_moves(P, p):
            if q not in seen:
                seen.add(q)
                queue.append(q)
    cls = DihomotopyClass(min(seen, key=lambda p: p.edges), frozenset(seen))
    for p in seen:
        cache[p] = cls
    return cls


def dihomotopic(P: PrecubicalSet, w: Path, v: Path) -> bool:
    if (w.start, w.end, w.length) != (v.start, v.end, v.length):
        return False
    if w == v:
        return True
    return v in dihomotopy_class(P, w)


def partition_classes(P: PrecubicalSet, paths: Iterable[Path]) -> list[DihomotopyClass]:
    classes: dict[Path, DihomotopyClass] = {}
    for p in paths:
        c = dihomotopy_class(P, p)
        classes[c.representative] = c
    return [classes[r] for r in sorted(classes, key=lambda r: (r.length, r.edges))]


# -- fundamental category ---------------------------------------------------


@dataclass
class FiniteCategory:
    """Objects, hom-sets of class representatives and the composition table.

    Morphisms are identified by their class representative (a :class:`Path`).
    ``compose[(f, g)]`` is "f then g".  ``approximate`` marks categories built
    with a path-length bound, whose hom-sets may be truncated.
    """

    objects: tuple[str, ...]
    homs: dict[tuple[str, str], tuple[Path, ...]]
    compose: dict[tuple[Path, Path], Path]
    identities: dict[str, Path]
    classes: dict[Path, DihomotopyClass]
    approximate: bool = False

    def hom(self, v: str, w: str) -> tuple[Path, ...]:
        return self.homs.get((v, w), ())

    def classify(self, path: Path) -> Path | None:
        """Representative of the hom class containing ``path``, if any."""
        for rep in self.hom(path.start, path.end):
            if path in self.classes[rep]:
                return rep
        return None

    def morphisms(self) -> list[Path]:
        return [f for key in sorted(self.homs) for f in self.homs[key]]

    def check_laws(self) -> Report:
        report = Report()
        for v, idv in self.identities.items():
            for f in self.morphisms():
                if f.start == v and self.compose.get((idv, f)) != f:
                    report.add("identity", (v, str(f)), f"id_{v} then {f} != {f}")
                if f.end == v and self.compose.get((f, idv)) != f:
                    report.add("identity", (v, str(f)), f"{f} then id_{v} != {f}")
        ms = self.morphisms()
        for f, g, h in product(ms, ms, ms):
            if f.end != g.start or g.end != h.start:
                continue
            left = self.compose.get((self.compose[(f, g)], h))
            right = self.compose.get((f, self.compose[(g, h)]))
            if left != right:
                report.add("associativity", (str(f), str(g), str(h)), "composition is not associative")
        return report


def fundamental_category(P: PrecubicalSet, objects: Iterable[str], max_len: int | None = None) -> FiniteCategory:
    """Full subcategory of the fundamental category on ``objects``.

    Refuses cyclic inputs unless ``max_len`` is given, in which case the result
    is flagged ``approximate``.
    """
    objs = tuple(sorted(set(objects)))
    for v in objs:
        if v not in P or P.degree(v) != 0:
            raise InvalidArgument(f"{v!r} is not a vertex")
    approximate = max_len is not None
    if not approximate and not is_acyclic(P):
        raise CyclicInputError("fundamental category of a cyclic precubical set has infinite hom-sets")
    obj_set = set(objs)
    homs: dict[tuple[str, str], tuple[Path, ...]] = {}
    classes: dict[Path, DihomotopyClass] = {}
    for v in objs:
        by_end: dict[str, list[Path]] = {}
        for p in iter_paths_from(P, v, max_len):
            if p.end in obj_set:
                by_end.setdefault(p.end, []).append(p)
        for w in objs:
            cls = partition_classes(P, by_end.get(w, []))
            homs[(v, w)] = tuple(c.representative for c in cls)
            for c in cls:
                classes[c.representative] = c
    identities = {v: Path.at(v) for v in objs}
    rep_of: dict[Path, Path] = {}
    for rep, c in classes.items():
        for m in c.members:
            rep_of[m] = rep
    compose: dict[tuple[Path, Path], Path] = {}
    for (u, v), fs in homs.items():
        for w in objs:
            for f in fs:
                for g in homs.get((v, w), ()):
                    fg = concat(f, g)
                    rep = rep_of.get(fg)
                    if rep is None:
                        # only possible in bounded mode when fg exceeds the bound
                        if not approximate:
                            rep = dihomotopy_class(P, fg).representative
                        else:
                            continue
                    compose[(f, g)] = rep
    return FiniteCategory(objs, homs, compose, identities, classes, approximate)
