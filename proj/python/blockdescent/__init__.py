"""Blocks of group algebras over small finite fields and descent of splendid
Rickard complexes for Klein four defect groups.

Groups are given either as a built-in name (``"a5"``, ``"a4"``, ``"v4"``,
``"v4xc3"``) or as group-file text in cycle notation.  Fields are ``(p, n)``
pairs.  Results are the same JSON documents the command-line tool writes,
decoded into dicts.
"""

import json

from . import _blockdescent as _core
from ._blockdescent import CapExceeded, Inconsistency, ParseError, PreconditionFailed, UnsupportedField

__all__ = [
    "CapExceeded",
    "Inconsistency",
    "ParseError",
    "PreconditionFailed",
    "UnsupportedField",
    "blocks",
    "builtin_group_text",
    "classify",
    "descend",
    "simples",
    "verify",
]


def builtin_group_text(name):
    return _core.builtin_group_text(name)


def blocks(group, k=(2, 2), max_order=10000):
    return json.loads(_core.blocks(group, tuple(k), max_order))


def simples(group, k=(2, 2), block=0, seed=0):
    """Simple modules of a block as module artifacts."""
    return json.loads(_core.simples(group, tuple(k), block, seed))


def classify(group, k=(2, 2), block=0, seed=0):
    return json.loads(_core.classify(group, tuple(k), block, seed))


def verify(group, theorem="3.1", k=(2, 1), kprime=(2, 2), seed=0, block=0, extension=True):
    return json.loads(_core.verify(theorem, group, tuple(k), tuple(kprime), seed, block, extension))


def descend(module, k=(2, 1), seed=0):
    """Descent certificate for a module artifact (dict or JSON string)."""
    text = module if isinstance(module, str) else json.dumps(module)
    return json.loads(_core.descend(text, tuple(k), seed))
