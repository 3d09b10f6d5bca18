"""Debug-only switches that corrupt a core rule on purpose.

The theorem battery must notice each of these; the acceptance suite flips
them one at a time and expects at least one check to report a witness.
"""

from __future__ import annotations

import contextlib
from typing import Iterator

#: ``inf_tminus``: make ``inf (-) inf`` evaluate to ``inf`` instead of ``0``.
#: ``skip_repair``: the space generator stops enforcing the triangle law.
#: ``nonstrict_bplus``: ball membership in ``B+phi`` uses ``<=`` instead of ``<``.
KNOWN = frozenset({"inf_tminus", "skip_repair", "nonstrict_bplus"})

_active: set[str] = set()


def active(name: str) -> bool:
    return name in _active


def current() -> tuple[str, ...]:
    return tuple(sorted(_active))


@contextlib.contextmanager
def mutate(*names: str) -> Iterator[None]:
    unknown = set(names) - KNOWN
    if unknown:
        raise ValueError(f"unknown mutation(s): {sorted(unknown)}")
    added = [n for n in names if n not in _active]
    _active.update(added)
    try:
        yield
    finally:
        _active.difference_update(added)
