"""Cube paths, carriers and the retraction of a homeomorphic weak morphism.

Carriers are read off the cellular data: the carrier of a target cube ``b``
is the source cube whose grid has an interior cell mapping onto ``b``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import InvalidArgument, PreconditionViolated, Report, UnsupportedInput
from .paths import Path, concat_all
from .precubical import PrecubicalSet, extremal_vertices, is_weakly_regular
from .weakmor import CellularWeakMorphism, Realization, Stage

CubePath = tuple


def hat_d(P: PrecubicalSet, b: str, r: int) -> str:
    """The edge of ``b`` from its initial vertex to the initial vertex of ``d_r^1 b``."""
    n = P.degree(b)
    if n < 1 or not 1 <= r <= n:
        raise InvalidArgument(f"hat_d needs 1 <= r <= deg({b}) = {n}, got r = {r}")
    y = b
    for i in range(n, r, -1):
        y = P.face(y, i, 0)
    for i in range(r - 1, 0, -1):
        y = P.face(y, i, 0)
    return y


def _step_ok(P: PrecubicalSet, a: str, b: str) -> bool:
    if a == b:
        return True
    da, db = P.degree(a), P.degree(b)
    if da == db + 1 and any(P.face(a, r, 1) == b for r in range(1, da + 1)):
        return True
    if db == da + 1 and any(P.face(b, r, 0) == a for r in range(1, db + 1)):
        return True
    return False


def validate_cube_path(P: PrecubicalSet, c: Sequence[str]) -> Report:
    """Each violation has ``where = (i,)`` with 1-based index of the failing pair."""
    report = Report()
    if not c:
        report.add("empty", (), "a cube path needs at least one cube")
        return report
    for x in c:
        if x not in P:
            report.add("unknown", (x,), f"{x} is not a cube")
    if not report.ok:
        return report
    for i, (a, b) in enumerate(zip(c, c[1:]), start=1):
        if not _step_ok(P, a, b):
            report.add("step", (i,), f"({a}, {b}) at index {i} is not a cube path step")
    return report


def _pair_path(P: PrecubicalSet, a: str, b: str, check_unique: bool) -> Path:
    if P.degree(a) > P.degree(b):
        rs = [r for r in range(1, P.degree(a) + 1) if P.face(a, r, 1) == b]
        if check_unique and len(rs) > 1:
            raise PreconditionViolated(f"{b} is the face d_r^1 {a} for several r: {rs}")
        e = hat_d(P, a, rs[0])
        return Path((e,), P.src(e), P.tgt(e))
    return Path.at(P.iterated_face(a, 0))


def gamma(P: PrecubicalSet, c: Sequence[str], check_unique: bool = False) -> Path:
    """The path associated with a cube path.

    ``check_unique`` asserts that the ``r`` chosen at every descending step is
    the only candidate, which holds on weakly regular sets.
    """
    c = tuple(c)
    report = validate_cube_path(P, c)
    if not report.ok:
        raise InvalidArgument("not a cube path: " + "; ".join(report.lines()))
    if len(c) == 1:
        return Path.at(P.iterated_face(c[0], 0))
    return concat_all(_pair_path(P, a, b, check_unique) for a, b in zip(c, c[1:]))


# -- homeomorphisms and carriers -------------------------------------------


def _stage_homeomorphism(s: Stage) -> Report:
    report = Report()
    if isinstance(s, Realization):
        if not s.g.is_bijective():
            report.add("homeomorphism", (s.name,), f"realization {s.name} is not bijective")
        return report
    if not isinstance(s, Stage):
        raise UnsupportedInput(f"cannot decide homeomorphism for {type(s).__name__}")
    index = s.interior_index()
    for b in s.target.cubes():
        pre = index.get(b, [])
        if len(pre) != 1:
            where = ", ".join(f"{x}[{';'.join(map(str, z))}]" for x, z in pre) or "nothing"
            report.add("homeomorphism", (s.name, b), f"target cube {b} is the interior image of {where}")
    return report


def check_homeomorphism(f: CellularWeakMorphism) -> Report:
    cached = getattr(f, "_homeo_report", None)
    if cached is not None:
        return cached
    report = Report()
    for s in f.stages():
        report.extend(_stage_homeomorphism(s))
    f._homeo_report = report
    return report


def is_homeomorphism(f: CellularWeakMorphism) -> bool:
    """Interior cells of all source grids biject onto the target cubes, stage by stage."""
    return check_homeomorphism(f).ok


def _require_homeo(f: CellularWeakMorphism) -> None:
    if not is_homeomorphism(f):
        raise PreconditionViolated(f"{f.name} is not a homeomorphism")


def _stage_carrier(s: Stage, b: str) -> str:
    pre = s.interior_index().get(b)
    if not pre:
        raise InvalidArgument(f"{b!r} is not a target cube of {s.name}")
    return pre[0][0]


def carrier(f: CellularWeakMorphism, b: str) -> str:
    _require_homeo(f)
    if b not in f.target:
        raise InvalidArgument(f"{b!r} is not a target cube")
    for s in reversed(f.stages()):
        b = _stage_carrier(s, b)
    return b


def carrier_sequence(f: CellularWeakMorphism, nu: Path) -> CubePath:
    _require_homeo(f)
    P = f.target
    if not nu.edges:
        return (carrier(f, nu.start),)
    out = [carrier(f, P.src(nu.edges[0]))]
    for y in nu.edges:
        out.append(carrier(f, y))
        out.append(carrier(f, P.tgt(y)))
    return tuple(out)


def retract_path(f: CellularWeakMorphism, nu: Path, check_unique: bool = False) -> Path:
    """``gamma . c`` applied stage by stage, last stage first."""
    _require_homeo(f)
    for s in reversed(f.stages()):
        nu = gamma(s.source, carrier_sequence(s, nu), check_unique)
    return nu


def check_stage_regularity(f: CellularWeakMorphism) -> Report:
    """Every stage source must be weakly regular for ``gamma . c`` to respect dihomotopy."""
    report = Report()
    for s in f.stages():
        if not is_weakly_regular(s.source):
            report.add("weak-regularity", (s.name,), f"source of stage {s.name} is not weakly regular")
    return report


def check_extremal_preservation(f: CellularWeakMorphism) -> Report:
    report = Report()
    m, M = extremal_vertices(f.source)
    m2, M2 = extremal_vertices(f.target)
    for what, src, tgt in (("minimal", m, m2), ("maximal", M, M2)):
        image = {f.vertex(v) for v in src}
        if image != set(tgt) or len(image) != len(src):
            report.add(what, (), f"{what} vertices {sorted(src)} map to {sorted(image)}, expected {sorted(tgt)}")
    return report
