"""Per-evaluation effort bookkeeping (series terms, quadrature nodes).

Kernel routines report their work through :func:`note_terms` and
:func:`note_nodes`; a caller interested in the numbers wraps the evaluation
in :func:`track`. Outside a tracking block the notes are dropped.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass


@dataclass
class Effort:
    terms: int = 0
    nodes: int = 0


_current: contextvars.ContextVar[Effort | None] = contextvars.ContextVar(
    "qkernel_effort", default=None
)


@contextlib.contextmanager
def track():
    effort = Effort()
    token = _current.set(effort)
    try:
        yield effort
    finally:
        _current.reset(token)


def note_terms(n: int) -> None:
    effort = _current.get()
    if effort is not None and n > effort.terms:
        effort.terms = int(n)


def note_nodes(n: int) -> None:
    effort = _current.get()
    if effort is not None and n > effort.nodes:
        effort.nodes = int(n)
