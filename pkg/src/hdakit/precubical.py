"""Finite precubical sets, intervals, tensor products, grids and morphisms.

A precubical set is stored as a map ``name -> degree`` plus, for every cube of
positive degree ``n``, a tuple of ``n`` pairs ``(d_i^0 x, d_i^1 x)``.  Grid
cells of ``[0,k1] (x) ... (x) [0,kn]`` are tuples whose components are either
an int (a vertex of that axis) or a pair ``(j, j+1)`` (an edge), and their
canonical names join the components with ``;`` (``"1;0:1"`` for ``(1, (0, 1))``).
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import InvalidArgument, Report

Component = Union[int, tuple]
GridCell = tuple


def _sort_key(P: "PrecubicalSet"):
    return lambda name: (P.degree(name), name)


class PrecubicalSet:
    """Immutable finite precubical set.

    The constructor only checks arity (a cube of degree n has n face pairs);
    closure and the cubical identities are checked by :func:`validate_precubical`
    so that broken tables can still be built and reported on.
    """

    def __init__(self, cubes: Mapping[str, int], faces: Mapping[str, Sequence[Sequence[str]]] | None = None):
        faces = faces or {}
        deg: dict[str, int] = {}
        for name, d in cubes.items():
            if not isinstance(name, str) or not name or any(ch.isspace() for ch in name):
                raise InvalidArgument(f"bad cube name {name!r}")
            if not isinstance(d, int) or d < 0:
                raise InvalidArgument(f"bad degree {d!r} for cube {name}")
            deg[name] = d
        table: dict[str, tuple[tuple[str, str], ...]] = {}
        for name, d in deg.items():
            if d == 0:
                if faces.get(name):
                    raise InvalidArgument(f"vertex {name} cannot have faces")
                continue
            if name not in faces:
                raise InvalidArgument(f"cube {name} of degree {d} has no face table")
            rows = tuple((str(a), str(b)) for a, b in faces[name])
            if len(rows) != d:
                raise InvalidArgument(f"cube {name} of degree {d} has {len(rows)} face pairs")
            table[name] = rows
        extra = set(faces) - set(deg)
        if any(faces[e] for e in extra):
            raise InvalidArgument(f"face table for unknown cube(s) {sorted(extra)}")
        self._deg = deg
        self._faces = table

    # -- basic access -------------------------------------------------------

    def degree(self, x: str) -> int:
        try:
            return self._deg[x]
        except KeyError:
            raise InvalidArgument(f"unknown cube {x!r}") from None

    def face(self, x: str, i: int, k: int) -> str:
        """``d_i^k x`` with 1-based direction ``i``."""
        n = self.degree(x)
        if not 1 <= i <= n or k not in (0, 1):
            raise InvalidArgument(f"no face d_{i}^{k} on cube {x} of degree {n}")
        return self._faces[x][i - 1][k]

    def __contains__(self, x: object) -> bool:
        return x in self._deg

    def __len__(self) -> int:
        return len(self._deg)

    def __iter__(self) -> Iterator[str]:
        return iter(self.cubes())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrecubicalSet):
            return NotImplemented
        return self._deg == other._deg and self._faces == other._faces

    def __hash__(self) -> int:
        return hash((frozenset(self._deg.items()), frozenset(self._faces.items())))

    def __repr__(self) -> str:
        counts = ", ".join(str(len(self.cubes(n))) for n in range(self.dimension + 1))
        return f"PrecubicalSet(cells per degree: [{counts}])"

    @cached_property
    def _by_degree(self) -> dict[int, tuple[str, ...]]:
        out: dict[int, list[str]] = {}
        for name, d in self._deg.items():
            out.setdefault(d, []).append(name)
        return {d: tuple(sorted(v)) for d, v in out.items()}

    def cubes(self, n: int | None = None) -> tuple[str, ...]:
        """Cubes of degree n, or all cubes ordered by (degree, name)."""
        if n is not None:
            return self._by_degree.get(n, ())
        return tuple(itertools.chain.from_iterable(self._by_degree[d] for d in sorted(self._by_degree)))

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.cubes(0)

    @property
    def edges(self) -> tuple[str, ...]:
        return self.cubes(1)

    @property
    def dimension(self) -> int:
        return max(self._by_degree, default=0)

    def face_table(self) -> dict[str, tuple[tuple[str, str], ...]]:
        return dict(self._faces)

    def degrees(self) -> dict[str, int]:
        return dict(self._deg)

    # -- 1-skeleton helpers -------------------------------------------------

    def src(self, e: str) -> str:
        return self.face(e, 1, 0)

    def tgt(self, e: str) -> str:
        return self.face(e, 1, 1)

    @cached_property
    def _out(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out.setdefault(self._faces[e][0][0], []).append(e)
        return {v: tuple(sorted(es)) for v, es in out.items()}

    @cached_property
    def _in(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc.setdefault(self._faces[e][0][1], []).append(e)
        return {v: tuple(sorted(es)) for v, es in inc.items()}

    def out_edges(self, v: str) -> tuple[str, ...]:
        return self._out.get(v, ())

    def in_edges(self, v: str) -> tuple[str, ...]:
        return self._in.get(v, ())

    def iterated_face(self, x: str, k: int) -> str:
        """The corner vertex ``d_1^k ... d_1^k x``."""
        while self.degree(x) > 0:
            x = self.face(x, 1, k)
        return x

    def subset(self, names: Iterable[str]) -> "PrecubicalSet":
        """Precubical subset on ``names``; raises unless closed under faces."""
        keep = set(names)
        for x in keep:
            for pair in self._faces.get(x, ()):
                for y in pair:
                    if y not in keep:
                        raise InvalidArgument(f"subset not closed: face {y} of {x} missing")
        return PrecubicalSet({x: self._deg[x] for x in keep}, {x: self._faces[x] for x in keep if x in self._faces})


# -- validation -------------------------------------------------------------


def validate_precubical(P: PrecubicalSet) -> Report:
    """Closure of the face table and the cubical identities.

    Each failed identity ``d_i^k d_j^l x = d_{j-1}^l d_i^k x`` is reported with
    ``where = (x, i, j, k, l)``.
    """
    report = Report()
    closed: set[str] = set()
    for x in P.cubes():
        n = P.degree(x)
        good = True
        for i in range(1, n + 1):
            for k in (0, 1):
                y = P._faces[x][i - 1][k]
                if y not in P:
                    report.add("closure", (x, i, k), f"d_{i}^{k} {x} = {y} is not a cube")
                    good = False
                elif P.degree(y) != n - 1:
                    report.add("closure", (x, i, k), f"d_{i}^{k} {x} = {y} has degree {P.degree(y)}, expected {n - 1}")
                    good = False
        if good:
            closed.add(x)
    for x in P.cubes():
        n = P.degree(x)
        if n < 2 or x not in closed:
            continue
        for j in range(2, n + 1):
            for i in range(1, j):
                for k in (0, 1):
                    for l in (0, 1):
                        a, b = P.face(x, j, l), P.face(x, i, k)
                        if a not in closed or b not in closed:
                            continue
                        lhs, rhs = P.face(a, i, k), P.face(b, j - 1, l)
                        if lhs != rhs:
                            report.add(
                                "identity",
                                (x, i, j, k, l),
                                f"d_{i}^{k} d_{j}^{l} {x} = {lhs} but d_{j - 1}^{l} d_{i}^{k} {x} = {rhs}",
                            )
    return report


# -- intervals, grids, tensor ----------------------------------------------


def comp_name(c: Component) -> str:
    if isinstance(c, tuple):
        return f"{c[0]}:{c[1]}"
    return str(c)


def cell_name(cell: GridCell) -> str:
    return ";".join(comp_name(c) for c in cell)


def parse_cell(name: str) -> GridCell:
    out: list[Component] = []
    for part in name.split(";"):
        try:
            if ":" in part:
                a, b = part.split(":")
                a, b = int(a), int(b)
                if b != a + 1:
                    raise ValueError
                out.append((a, b))
            else:
                out.append(int(part))
        except ValueError:
            raise InvalidArgument(f"bad grid cell component {part!r} in {name!r}") from None
    return tuple(out)


def cell_degree(cell: GridCell) -> int:
    return sum(1 for c in cell if isinstance(c, tuple))


def cell_face(cell: GridCell, i: int, k: int) -> GridCell:
    """Face ``d_i^k`` of a grid cell: collapse its i-th edge component."""
    seen = 0
    for pos, c in enumerate(cell):
        if isinstance(c, tuple):
            seen += 1
            if seen == i:
                return cell[:pos] + (c[k],) + cell[pos + 1:]
    raise InvalidArgument(f"cell {cell_name(cell)} has no direction {i}")


def grid_cells(ks: Sequence[int]) -> list[GridCell]:
    axes = []
    for k in ks:
        axes.append([j for j in range(k + 1)] + [(j, j + 1) for j in range(k)])
    return list(itertools.product(*axes))


def interval(k: int, l: int) -> PrecubicalSet:
    if k > l:
        raise InvalidArgument(f"interval({k}, {l}) needs k <= l")
    cubes = {str(j): 0 for j in range(k, l + 1)}
    faces = {}
    for j in range(k + 1, l + 1):
        name = f"{j - 1}:{j}"
        cubes[name] = 1
        faces[name] = ((str(j - 1), str(j)),)
    return PrecubicalSet(cubes, faces)


def grid(*ks: int) -> PrecubicalSet:
    """``[0,k1] (x) ... (x) [0,kn]`` with canonical cell names; ``grid()`` is the point."""
    if not ks:
        return interval(0, 0)
    if any(k < 0 for k in ks):
        raise InvalidArgument(f"grid sizes must be nonnegative, got {ks}")
    cubes, faces = {}, {}
    for cell in grid_cells(ks):
        n = cell_degree(cell)
        name = cell_name(cell)
        cubes[name] = n
        if n:
            faces[name] = tuple((cell_name(cell_face(cell, i, 0)), cell_name(cell_face(cell, i, 1))) for i in range(1, n + 1))
    return PrecubicalSet(cubes, faces)


def cube(n: int) -> PrecubicalSet:
    """The precubical n-cube; its top cell is ``top_cell(n)``."""
    return grid(*([1] * n))


def top_cell(n: int) -> str:
    return cell_name(((0, 1),) * n) if n else "0"


def tensor(P: PrecubicalSet, Q: PrecubicalSet) -> PrecubicalSet:
    """Tensor product; the pair ``(x, y)`` is named ``"x;y"``."""
    cubes, faces = {}, {}
    for x in P.cubes():
        p = P.degree(x)
        for y in Q.cubes():
            q = Q.degree(y)
            name = f"{x};{y}"
            if name in cubes:
                raise InvalidArgument(f"tensor name collision on {name!r}")
            cubes[name] = p + q
            rows = []
            for i in range(1, p + q + 1):
                if i <= p:
                    rows.append(tuple(f"{P.face(x, i, k)};{y}" for k in (0, 1)))
                else:
                    rows.append(tuple(f"{x};{Q.face(y, i - p, k)}" for k in (0, 1)))
            if rows:
                faces[name] = tuple(rows)
    return PrecubicalSet(cubes, faces)


# -- morphisms --------------------------------------------------------------


class PrecubicalMorphism:
    def __init__(self, source: PrecubicalSet, target: PrecubicalSet, mapping: Mapping[str, str]):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)

    def __call__(self, x: str) -> str:
        try:
            return self.mapping[x]
        except KeyError:
            raise InvalidArgument(f"morphism undefined on {x!r}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrecubicalMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.mapping == other.mapping

    def __hash__(self) -> int:
        return hash(frozenset(self.mapping.items()))

    def __repr__(self) -> str:
        return f"PrecubicalMorphism({len(self.mapping)} cubes)"

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def is_bijective(self) -> bool:
        return self.is_injective() and set(self.mapping.values()) == set(self.target.cubes())

    def then(self, other: "PrecubicalMorphism") -> "PrecubicalMorphism":
        return PrecubicalMorphism(self.source, other.target, {x: other(y) for x, y in self.mapping.items()})


def identity_morphism(P: PrecubicalSet) -> PrecubicalMorphism:
    return PrecubicalMorphism(P, P, {x: x for x in P.cubes()})


def validate_morphism(f: PrecubicalMorphism) -> Report:
    report = Report()
    for x in f.source.cubes():
        if x not in f.mapping:
            report.add("total", (x,), f"{x} is not mapped")
            continue
        y = f.mapping[x]
        if y not in f.target:
            report.add("target", (x,), f"{x} maps to unknown cube {y}")
            continue
        n = f.source.degree(x)
        if f.target.degree(y) != n:
            report.add("degree", (x,), f"{x} (degree {n}) maps to {y} (degree {f.target.degree(y)})")
            continue
        for i in range(1, n + 1):
            for k in (0, 1):
                fx = f.mapping.get(f.source.face(x, i, k))
                if fx is not None and fx != f.target.face(y, i, k):
                    report.add(
                        "boundary",
                        (x, i, k),
                        f"f(d_{i}^{k} {x}) = {fx} but d_{i}^{k} f({x}) = {f.target.face(y, i, k)}",
                    )
    extra = set(f.mapping) - set(f.source.cubes())
    for x in sorted(extra):
        report.add("total", (x,), f"{x} is not a source cube")
    return report


def cube_morphism(P: PrecubicalSet, x: str) -> PrecubicalMorphism:
    """The characteristic morphism from the n-cube sending its top cell to ``x``."""
    n = P.degree(x)
    if n == 0:
        return PrecubicalMorphism(interval(0, 0), P, {"0": x})
    mapping = {}
    for cell in grid_cells([1] * n):
        y = x
        # descending axes so lower axis indices stay valid after each face
        for axis in range(n - 1, -1, -1):
            c = cell[axis]
            if not isinstance(c, tuple):
                y = P.face(y, axis + 1, c)
        mapping[cell_name(cell)] = y
    return PrecubicalMorphism(cube(n), P, mapping)


# -- regularity and extremal vertices --------------------------------------


def _injective_on(f: PrecubicalMorphism, avoid: int) -> bool:
    # cells of the n-cube (n >= 1) with no vertex component equal to ``avoid``
    seen: set[str] = set()
    for name, image in f.mapping.items():
        if avoid in parse_cell(name):
            continue
        if image in seen:
            return False
        seen.add(image)
    return True


def is_regular(P: PrecubicalSet, x: str) -> bool:
    return cube_morphism(P, x).is_injective()


def is_weakly_regular_cube(P: PrecubicalSet, x: str) -> bool:
    """Injective on the cells avoiding coordinate 0, and on those avoiding 1."""
    f = cube_morphism(P, x)
    if P.degree(x) == 0:
        return True
    return _injective_on(f, 0) and _injective_on(f, 1)


def is_weakly_regular(P: PrecubicalSet, degree2_only: bool = False) -> bool:
    """Weak regularity of every cube.

    ``degree2_only`` restricts the test to 2-cubes, a shortcut that is claimed
    to be equivalent; it is exposed for cross-checking only.
    """
    cubes = P.cubes(2) if degree2_only else P.cubes()
    return all(is_weakly_regular_cube(P, x) for x in cubes)


def is_regular_set(P: PrecubicalSet) -> bool:
    return all(is_regular(P, x) for x in P.cubes())


def extremal_vertices(P: PrecubicalSet) -> tuple[frozenset[str], frozenset[str]]:
    """``(minimal, maximal)``: no incoming edge, resp. no outgoing edge."""
    minimal = frozenset(v for v in P.vertices if not P.in_edges(v))
    maximal = frozenset(v for v in P.vertices if not P.out_edges(v))
    return minimal, maximal
