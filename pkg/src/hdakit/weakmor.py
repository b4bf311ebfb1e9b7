"""Weak morphisms in cellular form.

Every single-stage weak morphism is stored the same way: a vertex map plus,
for each cube ``x`` of degree ``n >= 1``, a grid shape ``(k_1, ..., k_n)`` and
a total cell map from ``[0,k_1] (x) ... (x) [0,k_n]`` into the target.  A
realization of a precubical morphism ``g`` is the special case with every
``k_i = 1`` and cell map ``g . x#``.  Composites chain such stages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import InvalidArgument, Report, ValidationError
from .hda import Hda, extended_label, fmt_word
from .paths import Path, make_path
from .precubical import (
    GridCell,
    PrecubicalMorphism,
    PrecubicalSet,
    cell_degree,
    cell_face,
    cell_name,
    cube_morphism,
    grid,
    grid_cells,
    identity_morphism,
    parse_cell,
    validate_morphism,
)


@lru_cache(maxsize=256)
def _grid(ks: tuple[int, ...]) -> PrecubicalSet:
    return grid(*ks)


def is_interior(cell: GridCell, ks: Sequence[int]) -> bool:
    """No vertex component lies on the boundary of its axis."""
    return all(isinstance(c, tuple) or 0 < c < k for c, k in zip(cell, ks))


def _boundary_axes(cell: GridCell, ks: Sequence[int]) -> list[tuple[int, int]]:
    """``(i, eps)`` for every axis (1-based) where ``cell`` sits on a side of the grid."""
    out = []
    for i, (c, k) in enumerate(zip(cell, ks), start=1):
        if not isinstance(c, tuple):
            if c == 0:
                out.append((i, 0))
            if c == k:
                out.append((i, 1))
    return out


def _drop(cell: GridCell, i: int) -> GridCell:
    return cell[:i - 1] + cell[i:]


@dataclass
class SubdivisionData:
    """Raw cellular data; ``cells`` may hold interior cells only."""

    vertex_map: dict[str, str]
    shape: dict[str, tuple[int, ...]]
    cells: dict[str, dict[GridCell, str]] = field(default_factory=dict)

    def interior_only(self) -> "SubdivisionData":
        cells = {x: {z: y for z, y in m.items() if is_interior(z, self.shape[x])} for x, m in self.cells.items()}
        return SubdivisionData(dict(self.vertex_map), dict(self.shape), cells)


class CellularWeakMorphism:
    """Common interface of realizations, subdivisions and composites."""

    kind = "abstract"
    source: PrecubicalSet
    target: PrecubicalSet
    name: str

    def stages(self) -> list["Stage"]:
        raise NotImplementedError

    def vertex(self, v: str) -> str:
        for s in self.stages():
            v = s.vertex(v)
        return v

    def map_path(self, path: Path) -> Path:
        for s in self.stages():
            path = s.map_path(path)
        return path

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


class Stage(CellularWeakMorphism):
    """A single realization or subdivision with fully expanded cell maps."""

    def __init__(self, source: PrecubicalSet, target: PrecubicalSet, vertex_map: Mapping[str, str],
                 shape: Mapping[str, tuple[int, ...]], cell_maps: Mapping[str, Mapping[GridCell, str]], name: str):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.shape = {x: tuple(ks) for x, ks in shape.items()}
        self.cell_maps = {x: dict(m) for x, m in cell_maps.items()}
        self.name = name
        self._interior: dict[str, list[tuple[str, GridCell]]] | None = None

    def stages(self) -> list["Stage"]:
        return [self]

    def vertex(self, v: str) -> str:
        try:
            return self.vertex_map[v]
        except KeyError:
            raise InvalidArgument(f"{v!r} is not a source vertex of {self.name}") from None

    def cell(self, x: str, cell: GridCell) -> str:
        """Image of ``cell`` of the grid attached to ``x``."""
        if self.source.degree(x) == 0:
            return self.vertex(x)
        try:
            return self.cell_maps[x][cell]
        except KeyError:
            raise InvalidArgument(f"cell {cell_name(cell)} is not in the grid of {x}") from None

    def edge_image(self, e: str) -> tuple[str, ...]:
        (k,) = self.shape[e]
        return tuple(self.cell_maps[e][((j, j + 1),)] for j in range(k))

    def map_path(self, path: Path) -> Path:
        start = self.vertex(path.start)
        if not path.edges:
            return Path.at(start)
        edges: list[str] = []
        for e in path.edges:
            if e not in self.shape or self.source.degree(e) != 1:
                raise InvalidArgument(f"{e!r} is not a source edge of {self.name}")
            edges.extend(self.edge_image(e))
        return Path(tuple(edges), start, self.vertex(path.end))

    def interior_index(self) -> dict[str, list[tuple[str, GridCell]]]:
        """Target cube -> every (source cube, interior cell) that maps onto it."""
        if self._interior is None:
            index: dict[str, list[tuple[str, GridCell]]] = {}
            for v, w in self.vertex_map.items():
                index.setdefault(w, []).append((v, ()))
            for x, m in self.cell_maps.items():
                ks = self.shape[x]
                for z, y in m.items():
                    if is_interior(z, ks):
                        index.setdefault(y, []).append((x, z))
            self._interior = index
        return self._interior


class Realization(Stage):
    kind = "realization"

    def __init__(self, g: PrecubicalMorphism, name: str = "realization"):
        P = g.source
        cell_maps = {}
        for x in P.cubes():
            if P.degree(x) == 0:
                continue
            chi = cube_morphism(P, x)
            cell_maps[x] = {parse_cell(c): g(y) for c, y in chi.mapping.items()}
        super().__init__(
            P,
            g.target,
            {v: g(v) for v in P.vertices},
            {x: (1,) * P.degree(x) for x in P.cubes() if P.degree(x)},
            cell_maps,
            name,
        )
        self.g = g


class Subdivision(Stage):
    kind = "subdivision"

    def __init__(self, source, target, data: SubdivisionData, cell_maps, name: str = "subdivision"):
        super().__init__(source, target, data.vertex_map, data.shape, cell_maps, name)
        self.data = data


class Composite(CellularWeakMorphism):
    kind = "composite"

    def __init__(self, parts: Sequence[CellularWeakMorphism], name: str = "composite"):
        flat: list[Stage] = []
        for p in parts:
            flat.extend(p.stages())
        if not flat:
            raise InvalidArgument("a composite needs at least one stage")
        for a, b in zip(flat, flat[1:]):
            if a.target != b.source:
                raise InvalidArgument(f"cannot compose: target of {a.name} is not the source of {b.name}")
        self.parts = flat
        self.source = flat[0].source
        self.target = flat[-1].target
        self.name = name

    def stages(self) -> list[Stage]:
        return list(self.parts)


# -- construction -----------------------------------------------------------


def from_morphism(g: PrecubicalMorphism, name: str = "realization") -> Realization:
    report = validate_morphism(g)
    if not report.ok:
        raise ValidationError(report, "not a morphism of precubical sets")
    return Realization(g, name)


def identity(P: PrecubicalSet, name: str = "id") -> Realization:
    return Realization(identity_morphism(P), name)


def complete_cell_maps(source: PrecubicalSet, target: PrecubicalSet,
                       data: SubdivisionData) -> tuple[dict[str, dict[GridCell, str]], Report]:
    """Expand interior-cell data to full grid maps and check every invariant.

    Boundary cells are read off the faces of each cube, so a cube's grid map
    agrees with its faces' grid maps by construction; boundary cells that are
    supplied explicitly must agree with that reading, and every face route to
    the same boundary cell must give the same answer.
    """
    report = Report()
    P = source
    for v in P.vertices:
        w = data.vertex_map.get(v)
        if w is None:
            report.add("vertex", (v,), f"vertex {v} is not mapped")
        elif w not in target or target.degree(w) != 0:
            report.add("vertex", (v,), f"vertex {v} maps to {w}, which is not a target vertex")
    for v in sorted(set(data.vertex_map) - set(P.vertices)):
        report.add("vertex", (v,), f"{v} is not a source vertex")
    for x in sorted(set(data.shape) - set(P.cubes())):
        report.add("shape", (x,), f"shape given for unknown cube {x}")
    for x in sorted(set(data.cells) - set(P.cubes())):
        report.add("cell", (x,), f"cells given for unknown cube {x}")
    if not report.ok:
        return {}, report

    full: dict[str, dict[GridCell, str]] = {}
    for n in range(1, P.dimension + 1):
        for x in P.cubes(n):
            ks = data.shape.get(x)
            if ks is None:
                report.add("shape", (x,), f"cube {x} has no grid shape")
                continue
            ks = tuple(ks)
            if len(ks) != n or any(not isinstance(k, int) or k < 1 for k in ks):
                report.add("shape", (x,), f"cube {x} of degree {n} has bad shape {ks}")
                continue
            shape_ok = True
            for i in range(1, n + 1):
                for eps in (0, 1):
                    y = P.face(x, i, eps)
                    want = _drop(ks, i)
                    if n > 1 and tuple(data.shape.get(y, ())) != want:
                        report.add("shape", (x, i, eps),
                                   f"face d_{i}^{eps} {x} = {y} has shape {tuple(data.shape.get(y, ()))}, expected {want}")
                        shape_ok = False
                    if n > 1 and y not in full:
                        shape_ok = False
            if not shape_ok:
                continue
            given = data.cells.get(x, {})
            m: dict[GridCell, str] = {}
            good = True
            for z in grid_cells(ks):
                if len(z) != n:
                    continue
                sides = _boundary_axes(z, ks)
                if not sides:
                    if z not in given:
                        report.add("cell", (x, cell_name(z)), f"interior cell {cell_name(z)} of {x} is not mapped")
                        good = False
                        continue
                    m[z] = given[z]
                    continue
                reads = []
                for i, eps in sides:
                    y = P.face(x, i, eps)
                    rest = _drop(z, i)
                    reads.append(data.vertex_map.get(y) if n == 1 else full[y].get(rest))
                value = reads[0]
                if any(r != value for r in reads[1:]):
                    report.add("face", (x, cell_name(z)),
                               f"faces of {x} disagree on boundary cell {cell_name(z)}: {sorted(set(map(str, reads)))}")
                    good = False
                if z in given and given[z] != value:
                    kind = "corner" if cell_degree(z) == 0 and len(sides) == n else "face"
                    report.add(kind, (x, cell_name(z)),
                               f"cell {cell_name(z)} of {x} is given as {given[z]} but its face forces {value}")
                    good = False
                m[z] = value
            for z in given:
                if len(z) != n or any(
                    (isinstance(c, tuple) and not 0 <= c[0] < k) or (not isinstance(c, tuple) and not 0 <= c <= k)
                    for c, k in zip(z, ks)
                ):
                    report.add("cell", (x, cell_name(z) if z else "?"), f"cell {cell_name(z)} is outside the grid of {x}")
                    good = False
            if good:
                _check_grid_morphism(x, ks, m, target, report)
                full[x] = m
    return full, report


def _check_grid_morphism(x: str, ks: tuple[int, ...], m: dict[GridCell, str], target: PrecubicalSet,
                         report: Report) -> None:
    for z, y in m.items():
        d = cell_degree(z)
        if y not in target:
            report.add("target", (x, cell_name(z)), f"cell {cell_name(z)} of {x} maps to unknown cube {y}")
            continue
        if target.degree(y) != d:
            report.add("degree", (x, cell_name(z)),
                       f"cell {cell_name(z)} of {x} (degree {d}) maps to {y} (degree {target.degree(y)})")
            continue
        for i in range(1, d + 1):
            for k in (0, 1):
                fz = m.get(cell_face(z, i, k))
                if fz is not None and fz in target and target.face(y, i, k) != fz:
                    report.add("face", (x, cell_name(z), i, k),
                               f"cell {cell_name(z)} of {x} maps to {y} with d_{i}^{k} {y} = {target.face(y, i, k)}, "
                               f"but its face {cell_name(cell_face(z, i, k))} maps to {fz}")


def make_subdivision(source: PrecubicalSet, target: PrecubicalSet, data: SubdivisionData,
                     name: str = "subdivision") -> Subdivision:
    full, report = complete_cell_maps(source, target, data)
    if not report.ok:
        raise ValidationError(report, f"invalid weak morphism {name}")
    return Subdivision(source, target, data, full, name)


def check_subdivision(source: PrecubicalSet, target: PrecubicalSet, data: SubdivisionData) -> Report:
    return complete_cell_maps(source, target, data)[1]


def compose(f: CellularWeakMorphism, g: CellularWeakMorphism, name: str | None = None) -> Composite:
    """``g . f``: first ``f``, then ``g``."""
    if f.target != g.source:
        raise InvalidArgument(f"cannot compose {f.name} with {g.name}: endpoints differ")
    return Composite([f, g], name or f"{g.name}.{f.name}")


def apply_vertex(f: CellularWeakMorphism, v: str) -> str:
    if v not in f.source or f.source.degree(v) != 0:
        raise InvalidArgument(f"{v!r} is not a source vertex")
    return f.vertex(v)


def map_path(f: CellularWeakMorphism, path: Path) -> Path:
    """Image path; validates ``path`` against the source first."""
    make_path(f.source, path.edges, path.start)
    return f.map_path(path)


# -- HDA level --------------------------------------------------------------


def check_weak_hda_morphism(f: CellularWeakMorphism, A: Hda, B: Hda) -> Report:
    report = Report()
    if f.source != A.P or f.target != B.P:
        report.add("endpoints", (), "weak morphism does not go between the given HDAs")
        return report
    for v in sorted(A.initial):
        if f.vertex(v) not in B.initial:
            report.add("initial", (v,), f"initial {v} maps to {f.vertex(v)}, not initial")
    for v in sorted(A.final):
        if f.vertex(v) not in B.final:
            report.add("final", (v,), f"final {v} maps to {f.vertex(v)}, not final")
    for e in A.P.edges:
        image = f.map_path(Path((e,), A.P.src(e), A.P.tgt(e)))
        got, want = extended_label(B, image), A.label(e)
        if got != want:
            report.add("label", (e,),
                       f"edge {e} labelled {fmt_word(want)} maps to {image} labelled {fmt_word(got)}")
    return report


def is_weak_hda_morphism(f: CellularWeakMorphism, A: Hda, B: Hda) -> bool:
    return check_weak_hda_morphism(f, A, B).ok


def check_subdivision_hda(f: CellularWeakMorphism, A: Hda, B: Hda) -> Report:
    from .carrier import check_homeomorphism

    report = check_weak_hda_morphism(f, A, B)
    if report.kinds() & {"endpoints"}:
        return report
    for s in f.stages():
        if s.kind != "subdivision" and not (s.kind == "realization" and s.g.is_bijective()):
            report.add("kind", (s.name,), f"stage {s.name} is neither a subdivision nor an isomorphism")
    image_i = {f.vertex(v) for v in A.initial}
    image_f = {f.vertex(v) for v in A.final}
    if image_i != set(B.initial):
        report.add("initial-eq", (), f"f0(I) = {sorted(image_i)} but I' = {sorted(B.initial)}")
    if image_f != set(B.final):
        report.add("final-eq", (), f"f0(F) = {sorted(image_f)} but F' = {sorted(B.final)}")
    report.extend(check_homeomorphism(f))
    return report


def is_subdivision_hda(f: CellularWeakMorphism, A: Hda, B: Hda) -> bool:
    return check_subdivision_hda(f, A, B).ok


# -- canonical grid refinements ---------------------------------------------


def grid_refinement(ms: Sequence[int], ks: Sequence[int], name: str | None = None) -> Subdivision:
    """Subdivision of ``grid(ms)`` by ``grid(ks)``; each ``k_i`` must be a multiple of ``m_i``.

    With ``ms = (1, ..., 1)`` the source is the n-cube.
    """
    ms, ks = tuple(ms), tuple(ks)
    if len(ms) != len(ks) or not ms:
        raise InvalidArgument("grid_refinement needs two shapes of the same positive length")
    if any(m < 1 or k < m or k % m for m, k in zip(ms, ks)):
        raise InvalidArgument(f"{ks} does not refine {ms}")
    ts = tuple(k // m for m, k in zip(ms, ks))
    src, tgt = _grid(ms), _grid(ks)
    vertex_map, shape, cells = {}, {}, {}
    for x in grid_cells(ms):
        xn = cell_name(x)
        axes = [p for p, c in enumerate(x) if isinstance(c, tuple)]
        if not axes:
            vertex_map[xn] = cell_name(tuple(c * t for c, t in zip(x, ts)))
            continue
        sub = tuple(ts[p] for p in axes)
        shape[xn] = sub
        m = {}
        for z in grid_cells(sub):
            if not is_interior(z, sub):
                continue
            out = []
            zi = iter(z)
            for c, t in zip(x, ts):
                if isinstance(c, tuple):
                    w = next(zi)
                    base = c[0] * t
                    out.append((w[0] + base, w[1] + base) if isinstance(w, tuple) else w + base)
                else:
                    out.append(c * t)
            m[z] = cell_name(tuple(out))
        cells[xn] = m
    return make_subdivision(src, tgt, SubdivisionData(vertex_map, shape, cells),
                            name or f"refine_{'_'.join(map(str, ms))}_to_{'_'.join(map(str, ks))}")


def refinement_hdas(ms: Sequence[int], ks: Sequence[int]) -> tuple[Hda, Hda, Subdivision]:
    """HDAs on both sides of :func:`grid_refinement` making it an HDA subdivision.

    The target is the subdivided cube HDA on ``ks``; a source edge along axis
    ``p`` carries ``l_p`` repeated ``k_p / m_p`` times.
    """
    from .hda import subdivided_cube_hda

    B = subdivided_cube_hda(*ks)
    f = grid_refinement(ms, ks)
    labels = {}
    for e in f.source.edges:
        labels[e] = tuple(sym for y in f.edge_image(e) for sym in B.label(y))
    origin = cell_name(tuple(0 for _ in ms))
    corner = cell_name(tuple(ms))
    A = Hda(f.source, B.alphabet, {origin}, {corner}, labels, "grid_" + "_".join(map(str, ms)))
    return A, B, f


def all_stages_are(f: CellularWeakMorphism, kinds: Iterable[str]) -> bool:
    allowed = set(kinds)
    return all(s.kind in allowed for s in f.stages())
