"""Command-line front end.

Exit codes: 0 the property holds, 1 it does not, 2 input or usage error,
3 a theorem check failed (which indicates a bug).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path as FsPath
from typing import Sequence, TextIO

from .errors import CyclicInputError, HdaError, NotATraceFunctor, ParseError, UnsupportedInput
from .formats import build_wm, document_kind, parse_hda, parse_wm_document, serialize_hda
from .hda import (
    Hda,
    extended_label,
    fmt_word,
    independence_relation,
    is_accessible,
    is_deterministic,
    language,
    subdivided_cube_hda,
    trace_category,
    trace_language,
    unstable_squares,
    validate_hda,
)
from .paths import dihomotopic, is_acyclic, make_path
from .precubical import extremal_vertices, is_regular_set, is_weakly_regular, validate_precubical
from .relations import (
    check_homeomorphic_abstraction,
    check_trace_equivalence,
    theorem_homeo_implies_trace,
)
from .weakmor import check_subdivision_hda, check_weak_hda_morphism

OK, FAIL, INPUT_ERROR, THEOREM_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return FsPath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _load_hda(path: str, check: bool = True) -> Hda:
    try:
        A = parse_hda(_read(path))
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if check:
        report = validate_precubical(A.P).extend(validate_hda(A))
        if not report.ok:
            raise UsageError(f"{path}: invalid HDA: " + "; ".join(report.lines()))
    return A


def _load_bundle(hda_paths: Sequence[str], wm_paths: Sequence[str]):
    """Parse HDAs and weak morphisms; ``.hda`` files may be mixed into ``wm_paths``.

    Returns the HDAs (in order), the registry by name and the last weak morphism.
    """
    hdas = [_load_hda(p) for p in hda_paths]
    registry = {A.name: A for A in hdas}
    docs = []
    for p in wm_paths:
        text = _read(p)
        kind = document_kind(text)
        if kind == "hda":
            A = _load_hda(p)
            registry.setdefault(A.name, A)
            continue
        try:
            docs.append((p, parse_wm_document(text)))
        except ParseError as exc:
            raise UsageError(f"{p}: {exc}") from None
    if not docs:
        raise UsageError("no weak morphism document given")
    wms = {}
    f = None
    for p, doc in docs:
        try:
            f = build_wm(doc, registry, wms)
        except HdaError as exc:
            raise UsageError(f"{p}: {exc}") from None
        wms[doc.name] = f
    return hdas, registry, f


def _yes(flag: bool) -> str:
    return "YES" if flag else "NO"


def _parse_path(P, text: str):
    text = text.strip()
    if text.startswith("@"):
        return make_path(P, (), text[1:])
    return make_path(P, [t for t in text.split(",") if t])


# -- subcommands ------------------------------------------------------------


def cmd_validate(args, out: TextIO) -> int:
    text = _read(args.file)
    if document_kind(text) == "weakmor":
        raise UsageError("use 'wm validate' for weak morphism documents")
    A = _load_hda(args.file, check=False)
    report = validate_precubical(A.P)
    if report.ok:
        report.extend(validate_hda(A))
    for line in report.lines():
        print(line, file=out)
    print(f"{A.name}: {'valid' if report.ok else 'INVALID'}", file=out)
    return OK if report.ok else FAIL


def cmd_info(args, out: TextIO) -> int:
    A = _load_hda(args.file)
    P = A.P
    m, M = extremal_vertices(P)
    print(f"name: {A.name}", file=out)
    print(f"alphabet: {' '.join(A.alphabet)}", file=out)
    print(f"dimension: {P.dimension}", file=out)
    for n in range(P.dimension + 1):
        print(f"cubes of degree {n}: {len(P.cubes(n))}", file=out)
    print(f"initial: {' '.join(sorted(A.initial))}", file=out)
    print(f"final: {' '.join(sorted(A.final))}", file=out)
    print(f"minimal: {' '.join(sorted(m))}", file=out)
    print(f"maximal: {' '.join(sorted(M))}", file=out)
    print(f"acyclic: {_yes(is_acyclic(P))}", file=out)
    return OK


def cmd_language(args, out: TextIO) -> int:
    A = _load_hda(args.file)
    words = sorted(language(A, args.max_len), key=lambda w: (len(w), A.word_key(w)))
    for w in words:
        print(fmt_word(w), file=out)
    return OK


def cmd_trace_language(args, out: TextIO) -> int:
    A = _load_hda(args.file)
    for cls in trace_language(A, args.max_len):
        members = sorted(cls.words, key=lambda w: (len(w), A.word_key(w)))
        print(f"[{fmt_word(cls.representative)}] " + " ".join(fmt_word(w) for w in members), file=out)
    return OK


def cmd_independence(args, out: TextIO) -> int:
    A = _load_hda(args.file)
    rel = independence_relation(A, args.method)
    for a, b in rel.sorted_pairs(A):
        flag = " (vacuous)" if frozenset((a, b)) in rel.vacuous else ""
        print(f"{fmt_word(a)} {fmt_word(b)}{flag}", file=out)
    return OK


def cmd_check(args, out: TextIO) -> int:
    A = _load_hda(args.file)
    prop = args.property
    if prop == "stable":
        bad = unstable_squares(A)
        for z in bad:
            print(f"square {z} is bounded by a dependent pair", file=out)
        holds = not bad
    elif prop == "deterministic":
        holds = is_deterministic(A, args.max_len)
    elif prop == "accessible":
        holds = is_accessible(A)
    elif prop == "acyclic":
        holds = is_acyclic(A.P)
    elif prop == "weakly-regular":
        holds = is_weakly_regular(A.P)
    else:
        holds = is_regular_set(A.P)
    print(f"{prop}: {_yes(holds)}", file=out)
    return OK if holds else FAIL


def cmd_dihomotopic(args, out: TextIO) -> int:
    A = _load_hda(args.file)
    if len(args.path) < 2:
        raise UsageError("give at least two --path options")
    try:
        paths = [_parse_path(A.P, p) for p in args.path]
    except HdaError as exc:
        raise UsageError(str(exc)) from None
    holds = all(dihomotopic(A.P, paths[0], p) for p in paths[1:])
    print(f"dihomotopic: {_yes(holds)}", file=out)
    return OK if holds else FAIL


def _dot(A: Hda, C) -> str:
    lines = [f'digraph "{A.name}" {{']
    for v in C.objects:
        lines.append(f'  "{v}";')
    for (v, w), reps in sorted(C.homs.items()):
        for r in reps:
            if r.edges:
                lines.append(f'  "{v}" -> "{w}" [label="{fmt_word(extended_label(A, r))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_trace_category(args, out: TextIO) -> int:
    A = _load_hda(args.file)
    C = trace_category(A)
    print("objects: " + " ".join(C.objects), file=out)
    for (v, w), reps in sorted(C.homs.items()):
        if reps:
            print(f"hom({v},{w}): " + " ".join(str(r) for r in reps), file=out)
    if args.dot:
        FsPath(args.dot).write_text(_dot(A, C), encoding="utf-8")
    return OK


def cmd_gen(args, out: TextIO) -> int:
    try:
        A = subdivided_cube_hda(*args.sizes)
    except HdaError as exc:
        raise UsageError(str(exc)) from None
    text = serialize_hda(A)
    if args.output:
        FsPath(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return OK


def cmd_wm(args, out: TextIO) -> int:
    _, registry, f = _load_bundle([], args.files)
    src = next((A for A in registry.values() if A.P == f.source), None)
    tgt = next((A for A in registry.values() if A.P == f.target), None)
    if args.wm_command == "validate":
        print(f"{f.name}: valid {f.kind} weak morphism", file=out)
        if src is not None and tgt is not None:
            report = check_weak_hda_morphism(f, src, tgt)
            for line in report.lines():
                print(line, file=out)
            print(f"weak HDA morphism {src.name} -> {tgt.name}: {_yes(report.ok)}", file=out)
            return OK if report.ok else FAIL
        return OK
    if not args.path:
        raise UsageError("give at least one --path")
    for text in args.path:
        try:
            p = _parse_path(f.source, text)
        except HdaError as exc:
            raise UsageError(str(exc)) from None
        image = f.map_path(p)
        print(f"{p} -> {image}", file=out)
    return OK


def cmd_relate(args, out: TextIO) -> int:
    hdas, _, f = _load_bundle([args.a, args.b], args.wm)
    A, B = hdas
    check = {
        "weak": (check_weak_hda_morphism, "weak morphism"),
        "subdivision": (check_subdivision_hda, "subdivision"),
        "homeo": (check_homeomorphic_abstraction, "homeomorphic abstraction"),
        "trace-equiv": (check_trace_equivalence, "trace equivalence"),
    }[args.relation]
    fn, title = check
    report = fn(f, A, B) if args.relation in ("weak", "subdivision") else fn(A, B, f)
    for line in report.lines():
        print(line, file=out)
    print(f"{title}: {_yes(report.ok)}", file=out)
    return OK if report.ok else FAIL


def cmd_theorem(args, out: TextIO) -> int:
    hdas, _, f = _load_bundle([args.a, args.b], args.wm)
    A, B = hdas
    verdict = theorem_homeo_implies_trace(A, B, f)
    for line in verdict.lines():
        print(line, file=out)
    if verdict.status == "violation":
        return THEOREM_VIOLATION
    return OK if verdict.status == "holds" else FAIL


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hdakit", description="Analyse higher dimensional automata.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check an .hda file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("info", help="summary of an HDA")
    s.add_argument("file")
    s.set_defaults(func=cmd_info)

    for name, fn in (("language", cmd_language), ("trace-language", cmd_trace_language)):
        s = sub.add_parser(name)
        s.add_argument("file")
        s.add_argument("--max-len", type=int, default=None)
        s.set_defaults(func=fn)

    s = sub.add_parser("independence", help="independent label pairs")
    s.add_argument("file")
    s.add_argument("--method", choices=["auto", "exact", "local"], default="auto")
    s.set_defaults(func=cmd_independence)

    s = sub.add_parser("check", help="test a property of an HDA")
    s.add_argument("property", choices=["stable", "deterministic", "accessible", "acyclic", "weakly-regular", "regular"])
    s.add_argument("file")
    s.add_argument("--max-len", type=int, default=None)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("dihomotopic", help="are the given paths dihomotopic")
    s.add_argument("file")
    s.add_argument("--path", action="append", default=[], help="e1,e2,... or @vertex")
    s.set_defaults(func=cmd_dihomotopic)

    s = sub.add_parser("trace-category")
    s.add_argument("file")
    s.add_argument("--dot", metavar="FILE")
    s.set_defaults(func=cmd_trace_category)

    s = sub.add_parser("gen", help="generate HDAs")
    gsub = s.add_subparsers(dest="gen_command", required=True)
    g = gsub.add_parser("grid", help="subdivided cube with one letter per axis")
    g.add_argument("sizes", type=int, nargs="+")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("wm", help="weak morphism documents")
    wsub = s.add_subparsers(dest="wm_command", required=True)
    w = wsub.add_parser("validate")
    w.add_argument("files", nargs="+", help=".hda and .wm files; the last .wm is checked")
    w.set_defaults(func=cmd_wm)
    w = wsub.add_parser("map-path")
    w.add_argument("files", nargs="+")
    w.add_argument("--path", action="append", default=[])
    w.set_defaults(func=cmd_wm)

    s = sub.add_parser("relate", help="check a preorder relation against a witness")
    s.add_argument("relation", choices=["weak", "subdivision", "homeo", "trace-equiv"])
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("wm", nargs="+")
    s.set_defaults(func=cmd_relate)

    s = sub.add_parser("theorem", help="replay a theorem on a witness")
    s.add_argument("name", choices=["homeo-implies-trace"])
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("wm", nargs="+")
    s.set_defaults(func=cmd_theorem)
    return p


def run(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return OK if exc.code == 0 else INPUT_ERROR
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return INPUT_ERROR
    except (CyclicInputError, UnsupportedInput, NotATraceFunctor, HdaError) as exc:
        print(f"error: {exc}", file=err)
        return INPUT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
