"""Compositional translation over CFG-based compositional grammars."""

from ._compo import (
    Error,
    InputError,
    PreconditionError,
    ResourceLimitError,
    UnknownNameError,
    __version__,
    check,
    enumerate,
    generate,
    parse,
    run,
    translate,
    translate_tree,
    witness,
)

__all__ = [
    "Error",
    "InputError",
    "PreconditionError",
    "ResourceLimitError",
    "UnknownNameError",
    "__version__",
    "check",
    "enumerate",
    "generate",
    "parse",
    "run",
    "translate",
    "translate_tree",
    "witness",
]
