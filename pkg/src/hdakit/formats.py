"""Line-oriented text formats for HDAs (``.hda``) and weak morphisms (``.wm``).

Both formats are UTF-8, one directive per line, whitespace-separated tokens,
``#`` starting a comment.  Serialization is canonical: cubes are listed by
(degree, name), so parse -> serialize -> parse is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import InvalidArgument, ParseError
from .hda import Hda, fmt_word
from .precubical import PrecubicalSet, cell_name, grid_cells, parse_cell
from .weakmor import (
    CellularWeakMorphism,
    Composite,
    Realization,
    Subdivision,
    SubdivisionData,
    from_morphism,
    is_interior,
    make_subdivision,
)
from .precubical import PrecubicalMorphism

ID = re.compile(r"[A-Za-z0-9_;:\-]+\Z")
SYM = re.compile(r"[A-Za-z0-9_]+\Z")


def _lines(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """(line number, [(column, token), ...]) for each non-blank line."""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if toks:
            yield no, toks


def _ident(tok: tuple[int, str], no: int, what: str = "identifier") -> str:
    col, s = tok
    if not ID.match(s):
        raise ParseError(f"bad {what} {s!r}", no, col)
    return s


def _int(tok: tuple[int, str], no: int) -> int:
    col, s = tok
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"expected an integer, got {s!r}", no, col) from None


def _arity(toks, no, n, usage):
    if len(toks) != n:
        raise ParseError(f"expected: {usage}", no, toks[0][0])


# -- hda --------------------------------------------------------------------


def parse_hda(text: str) -> Hda:
    name = None
    alphabet: list[str] = []
    degrees: dict[str, int] = {}
    declared_at: dict[str, int] = {}
    faces: dict[str, dict[tuple[int, int], str]] = {}
    face_at: dict[tuple[str, int, int], int] = {}
    labels: dict[str, tuple[str, ...]] = {}
    initial: set[str] = set()
    final: set[str] = set()
    for no, toks in _lines(text):
        col, head = toks[0]
        if name is None:
            if head != "hda":
                raise ParseError("missing hda header", no, col)
            _arity(toks, no, 2, "hda <name>")
            name = _ident(toks[1], no, "name")
            continue
        if head == "hda":
            raise ParseError("second hda header", no, col)
        if head == "alphabet":
            for tok in toks[1:]:
                if not SYM.match(tok[1]):
                    raise ParseError(f"bad alphabet symbol {tok[1]!r}", no, tok[0])
                if tok[1] in alphabet:
                    raise ParseError(f"duplicate alphabet symbol {tok[1]!r}", no, tok[0])
                alphabet.append(tok[1])
        elif head == "cube":
            if len(toks) < 2:
                raise ParseError("expected: cube <dim> <id>...", no, col)
            d = _int(toks[1], no)
            if d < 0:
                raise ParseError("negative dimension", no, toks[1][0])
            for tok in toks[2:]:
                x = _ident(tok, no)
                if x in degrees:
                    raise ParseError(f"duplicate cube id {x!r} (first declared on line {declared_at[x]})", no, tok[0])
                degrees[x] = d
                declared_at[x] = no
        elif head == "face":
            _arity(toks, no, 5, "face <id> <i> <k> <faceid>")
            x = _ident(toks[1], no)
            i, k = _int(toks[2], no), _int(toks[3], no)
            y = _ident(toks[4], no)
            if x not in degrees:
                raise ParseError(f"face of undeclared cube {x!r}", no, toks[1][0])
            if not 1 <= i <= degrees[x]:
                raise ParseError(f"direction {i} out of range for {x} of degree {degrees[x]}", no, toks[2][0])
            if k not in (0, 1):
                raise ParseError(f"side must be 0 or 1, got {k}", no, toks[3][0])
            if (x, i, k) in face_at:
                raise ParseError(f"face d_{i}^{k} {x} already given on line {face_at[(x, i, k)]}", no, col)
            face_at[(x, i, k)] = no
            faces.setdefault(x, {})[(i, k)] = y
        elif head == "label":
            _arity(toks, no, 3, "label <edgeid> <sym>[.<sym>...]")
            e = _ident(toks[1], no)
            parts = toks[2][1].split(".")
            if not all(SYM.match(p) for p in parts):
                raise ParseError(f"bad label {toks[2][1]!r}", no, toks[2][0])
            if e in labels:
                raise ParseError(f"duplicate label for {e!r}", no, col)
            labels[e] = tuple(parts)
        elif head in ("initial", "final"):
            if len(toks) < 2:
                raise ParseError(f"expected: {head} <id>...", no, col)
            target = initial if head == "initial" else final
            target.update(_ident(t, no) for t in toks[1:])
        else:
            raise ParseError(f"unknown directive {head!r}", no, col)
    if name is None:
        raise ParseError("missing hda header", 1, 1)
    table = {}
    for x, d in degrees.items():
        if d == 0:
            continue
        rows = []
        for i in range(1, d + 1):
            pair = []
            for k in (0, 1):
                y = faces.get(x, {}).get((i, k))
                if y is None:
                    raise ParseError(f"cube {x} has no face d_{i}^{k}", declared_at[x])
                pair.append(y)
            rows.append(tuple(pair))
        table[x] = tuple(rows)
    for x in faces:
        if degrees.get(x) == 0:
            raise ParseError(f"vertex {x} cannot have faces", face_at[next(k for k in face_at if k[0] == x)])
    P = PrecubicalSet(degrees, table)
    return Hda(P, tuple(alphabet), initial, final, labels, name)


def serialize_hda(A: Hda) -> str:
    P = A.P
    out = [f"hda {A.name}"]
    if A.alphabet:
        out.append("alphabet " + " ".join(A.alphabet))
    for n in range(P.dimension + 1):
        cubes = P.cubes(n)
        if cubes:
            out.append(f"cube {n} " + " ".join(cubes))
    for x in P.cubes():
        for i in range(1, P.degree(x) + 1):
            for k in (0, 1):
                out.append(f"face {x} {i} {k} {P.face(x, i, k)}")
    for e in P.edges:
        if e in A.labels:
            out.append(f"label {e} {fmt_word(A.labels[e])}")
    for e in sorted(set(A.labels) - set(P.edges)):
        out.append(f"label {e} {fmt_word(A.labels[e])}")
    for v in sorted(A.initial, key=lambda v: (v not in P, v)):
        out.append(f"initial {v}")
    for v in sorted(A.final, key=lambda v: (v not in P, v)):
        out.append(f"final {v}")
    return "\n".join(out) + "\n"


# -- weak morphisms ---------------------------------------------------------


@dataclass
class WmDocument:
    name: str
    source: str
    target: str
    kind: str  # realization, subdivision, composite
    mapping: dict[str, str] = field(default_factory=dict)
    data: SubdivisionData | None = None
    chain: list[str] = field(default_factory=list)
    line_of: dict = field(default_factory=dict)


def parse_wm_document(text: str) -> WmDocument:
    doc: WmDocument | None = None
    vertex_map: dict[str, str] = {}
    shape: dict[str, tuple[int, ...]] = {}
    cells: dict[str, dict] = {}
    seen: dict[tuple, int] = {}

    def set_kind(kind, no, col):
        if doc.kind and doc.kind != kind:
            raise ParseError(f"{kind} directive in a {doc.kind} document", no, col)
        doc.kind = kind

    for no, toks in _lines(text):
        col, head = toks[0]
        if doc is None:
            if head != "weakmor":
                raise ParseError("missing weakmor header", no, col)
            _arity(toks, no, 4, "weakmor <name> <sourceName> <targetName>")
            doc = WmDocument(_ident(toks[1], no), _ident(toks[2], no), _ident(toks[3], no), "")
            continue
        if head == "map":
            _arity(toks, no, 3, "map <srcId> <tgtId>")
            set_kind("realization", no, col)
            x = _ident(toks[1], no)
            if ("map", x) in seen:
                raise ParseError(f"{x!r} already mapped on line {seen[('map', x)]}", no, toks[1][0])
            seen[("map", x)] = no
            doc.mapping[x] = _ident(toks[2], no)
        elif head == "vertex":
            _arity(toks, no, 3, "vertex <v> <v'>")
            set_kind("subdivision", no, col)
            v = _ident(toks[1], no)
            if ("vertex", v) in seen:
                raise ParseError(f"vertex {v!r} already mapped on line {seen[('vertex', v)]}", no, toks[1][0])
            seen[("vertex", v)] = no
            vertex_map[v] = _ident(toks[2], no)
        elif head == "cube":
            if len(toks) < 4 or toks[2][1] != "k":
                raise ParseError("expected: cube <x> k <k1>...<kn>", no, col)
            set_kind("subdivision", no, col)
            x = _ident(toks[1], no)
            if ("cube", x) in seen:
                raise ParseError(f"shape of {x!r} already given on line {seen[('cube', x)]}", no, toks[1][0])
            seen[("cube", x)] = no
            shape[x] = tuple(_int(t, no) for t in toks[3:])
        elif head == "cell":
            _arity(toks, no, 4, "cell <x> <comp1;...;compn> <targetId>")
            set_kind("subdivision", no, col)
            x = _ident(toks[1], no)
            try:
                z = parse_cell(toks[2][1])
            except InvalidArgument as exc:
                raise ParseError(str(exc), no, toks[2][0]) from None
            key = ("cell", x, z)
            if key in seen:
                raise ParseError(f"cell {toks[2][1]} of {x} already mapped on line {seen[key]}", no, toks[2][0])
            seen[key] = no
            cells.setdefault(x, {})[z] = _ident(toks[3], no)
        elif head == "compose":
            if len(toks) < 2:
                raise ParseError("expected: compose <wmName>...", no, col)
            set_kind("composite", no, col)
            doc.chain.extend(_ident(t, no) for t in toks[1:])
        else:
            raise ParseError(f"unknown directive {head!r}", no, col)
    if doc is None:
        raise ParseError("missing weakmor header", 1, 1)
    if not doc.kind:
        doc.kind = "subdivision"
    if doc.kind == "subdivision":
        doc.data = SubdivisionData(vertex_map, shape, cells)
    return doc


def build_wm(doc: WmDocument, hdas: Mapping[str, Hda],
             wms: Mapping[str, CellularWeakMorphism] | None = None) -> CellularWeakMorphism:
    """Resolve a parsed document against named HDAs and earlier weak morphisms."""
    wms = wms or {}
    if doc.kind == "composite":
        parts = []
        for n in doc.chain:
            if n not in wms:
                raise InvalidArgument(f"compose refers to unknown weak morphism {n!r}")
            parts.append(wms[n])
        f = Composite(parts, doc.name)
        for end, want in (("source", doc.source), ("target", doc.target)):
            if want in hdas and getattr(f, end) != hdas[want].P:
                raise InvalidArgument(f"{end} of composite {doc.name} is not {want}")
        return f
    for n in (doc.source, doc.target):
        if n not in hdas:
            raise InvalidArgument(f"weak morphism {doc.name} refers to unknown HDA {n!r}")
    src, tgt = hdas[doc.source].P, hdas[doc.target].P
    if doc.kind == "realization":
        return from_morphism(PrecubicalMorphism(src, tgt, doc.mapping), doc.name)
    return make_subdivision(src, tgt, doc.data, doc.name)


def parse_wm(text: str, hdas: Mapping[str, Hda], wms: Mapping[str, CellularWeakMorphism] | None = None):
    return build_wm(parse_wm_document(text), hdas, wms)


def serialize_wm(f: CellularWeakMorphism, source_name: str, target_name: str,
                 chain_names: list[str] | None = None) -> str:
    out = [f"weakmor {f.name} {source_name} {target_name}"]
    if isinstance(f, Composite):
        names = chain_names or [s.name for s in f.stages()]
        out.append("compose " + " ".join(names))
    elif isinstance(f, Realization):
        for x in f.source.cubes():
            out.append(f"map {x} {f.g(x)}")
    elif isinstance(f, Subdivision):
        P = f.source
        for v in P.vertices:
            out.append(f"vertex {v} {f.vertex_map[v]}")
        for x in P.cubes():
            if P.degree(x):
                out.append(f"cube {x} k " + " ".join(map(str, f.shape[x])))
        for x in P.cubes():
            if not P.degree(x):
                continue
            ks = f.shape[x]
            for z in grid_cells(ks):
                if is_interior(z, ks):
                    out.append(f"cell {x} {cell_name(z)} {f.cell_maps[x][z]}")
    else:
        raise InvalidArgument(f"cannot serialize {type(f).__name__}")
    return "\n".join(out) + "\n"


def document_kind(text: str) -> str | None:
    """``"hda"`` or ``"weakmor"`` from the first directive, else None."""
    for _, toks in _lines(text):
        head = toks[0][1]
        return head if head in ("hda", "weakmor") else None
    return None
