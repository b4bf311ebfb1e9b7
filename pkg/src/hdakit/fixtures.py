"""Bundled example HDAs and weak morphisms."""

from __future__ import annotations

from importlib import resources

from .formats import parse_hda, parse_wm
from .hda import Hda
from .weakmor import CellularWeakMorphism


def data_path(name: str):
    return resources.files("hdakit") / "data" / name


def read_text(name: str) -> str:
    return data_path(name).read_text(encoding="utf-8")


def load_hda(name: str) -> Hda:
    return parse_hda(read_text(name))


def fig1() -> tuple[Hda, Hda, CellularWeakMorphism]:
    """The one-square HDA, its 2x1 subdivision and the subdividing witness."""
    A, B = load_hda("fig1_a.hda"), load_hda("fig1_b.hda")
    f = parse_wm(read_text("wm_f.wm"), {A.name: A, B.name: B})
    return A, B, f


def ex29() -> tuple[Hda, Hda, CellularWeakMorphism, CellularWeakMorphism]:
    """Two HDAs with equal languages: ``(A, B, B -> A inclusion, A -> B fold)``."""
    A, B = load_hda("ex29_a.hda"), load_hda("ex29_b.hda")
    hdas = {A.name: A, B.name: B}
    incl = parse_wm(read_text("ex29_incl.wm"), hdas)
    fold = parse_wm(read_text("ex29_fold.wm"), hdas)
    return A, B, incl, fold
