"""Higher dimensional automata, weak morphisms and trace equivalence."""

from .errors import (
    CyclicInputError,
    HdaError,
    InvalidArgument,
    NotATraceFunctor,
    ParseError,
    PreconditionViolated,
    Report,
    UnsupportedInput,
    ValidationError,
)
from .hda import Hda, word, fmt_word
from .paths import Path, make_path
from .precubical import PrecubicalMorphism, PrecubicalSet

__version__ = "0.1.0"

__all__ = [
    "CyclicInputError",
    "HdaError",
    "InvalidArgument",
    "NotATraceFunctor",
    "ParseError",
    "PreconditionViolated",
    "Report",
    "UnsupportedInput",
    "ValidationError",
    "Hda",
    "word",
    "fmt_word",
    "Path",
    "make_path",
    "PrecubicalMorphism",
    "PrecubicalSet",
]
