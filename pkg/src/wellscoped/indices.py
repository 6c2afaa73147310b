"""Scope sizes, bounded indices and size witnesses.

Scopes are plain machine integers. A :class:`BoundedIndex` refuses to exist
outside its bound, which is what makes ``Fin 0`` uninhabited at runtime.

Checking comes in two strengths. Cheap O(1) checks (domain/codomain agreement
when environments are combined, index bounds on public lookups) always run.
Checks that have to walk a term (is this body really valid in scope n+1?) only
run in *checking mode*, toggled with :func:`set_checking` or the
``WELLSCOPED_CHECKS`` environment variable.
"""
from __future__ import annotations

import contextlib
import os
from dataclasses import dataclass
from typing import Iterator

ScopeIndex = int


class ScopeError(ValueError):
    """A scope invariant was violated."""


_checking = os.environ.get("WELLSCOPED_CHECKS", "") not in ("", "0")


def checking_enabled() -> bool:
    return _checking


def set_checking(enabled: bool) -> bool:
    """Turn term-walking scope checks on or off; returns the previous setting."""
    global _checking
    previous, _checking = _checking, bool(enabled)
    return previous


@contextlib.contextmanager
def checking(enabled: bool = True) -> Iterator[None]:
    previous = set_checking(enabled)
    try:
        yield
    finally:
        set_checking(previous)


def check_scope(value: int) -> ScopeIndex:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ScopeError(f"scope must be a natural number, got {value!r}")
    return value


@dataclass(frozen=True, slots=True)
class BoundedIndex:
    index: int
    bound: ScopeIndex

    def __post_init__(self) -> None:
        check_scope(self.bound)
        if not isinstance(self.index, int) or self.index < 0:
            raise ScopeError(f"index must be a natural number, got {self.index!r}")
        if self.index >= self.bound:
            raise ScopeError(f"index {self.index} is not below bound {self.bound}")


@dataclass(frozen=True, slots=True)
class SizeWitness:
    """Runtime copy of the number of variables a pattern binds."""

    value: int

    def __post_init__(self) -> None:
        check_scope(self.value)

    def __int__(self) -> int:
        return self.value


def idx_zero(bound: ScopeIndex) -> BoundedIndex:
    if bound == 0:
        raise ScopeError("there is no index below 0")
    return BoundedIndex(0, bound)


def idx_succ(i: BoundedIndex) -> BoundedIndex:
    return BoundedIndex(i.index + 1, i.bound + 1)


def idx_weaken(i: BoundedIndex, by: int) -> BoundedIndex:
    """Embed ``i`` into a scope ``by`` variables larger, keeping the index."""
    return BoundedIndex(i.index, i.bound + check_scope(by))


def witness(value: int | SizeWitness) -> SizeWitness:
    return value if isinstance(value, SizeWitness) else SizeWitness(value)
