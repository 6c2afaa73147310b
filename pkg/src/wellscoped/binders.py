"""Binders that carry a suspended environment.

A binder pairs a body with an environment that has not been pushed into it
yet. Substituting into a binder only composes environments; the body is
touched when somebody asks for it (:func:`unbind`) or instantiates it.

Index conventions for multi-variable binders:

* n-ary binders (``NVars``): the first value consed onto the argument
  environment is index 0, so ``instantiate_pat(b, a1 .: a2 .: nil)`` binds
  ``a1`` to 0 and ``a2`` to 1.
* nested tuple patterns: matching ``(p1, p2)`` appends the right
  component's environment *below* the left one (``r2 .++ r1``), so the
  variables of the right subpattern get the low indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Protocol, TypeVar

from wellscoped import indices
from wellscoped.environment import (
    DEFAULT_REPR, Env, EnvRepr, apply, apply_opt, env_append, env_comp, env_cons,
    env_id, env_up,
)
from wellscoped.indices import ScopeError, SizeWitness, check_scope

A = TypeVar("A")


class Sized(Protocol):
    def size(self) -> SizeWitness: ...


def _check_body(body: Any, scope: int, what: str) -> None:
    if indices.checking_enabled():
        bound = body.free_bound()
        if bound > scope:
            raise ScopeError(f"{what} uses index {bound - 1} but only {scope} variables are in scope")


@dataclass(slots=True, eq=False)
class Binder1:
    env: Env
    body: Any

    @property
    def scope(self) -> int:
        return self.env.codomain

    def subst(self, r: Env) -> Binder1:
        return apply_binder(r, self)

    def free_bound(self) -> int:
        return max(0, unbind(self).free_bound() - 1)


def bind1(body: Any, scope: int, repr: EnvRepr | str = DEFAULT_REPR) -> Binder1:
    """Bind variable 0 of ``body``, which lives in scope ``scope + 1``."""
    check_scope(scope)
    _check_body(body, scope + 1, "binder body")
    return Binder1(env_id(scope, repr), body)


def unbind(b: Binder1) -> Any:
    return apply_opt(env_up(b.env), b.body)


def apply_binder(r: Env, b: Binder1) -> Binder1:
    return Binder1(env_comp(b.env, r), b.body)


def instantiate1(b: Binder1, arg: Any) -> Any:
    """Replace the bound variable by ``arg`` (a term or a suspension of one)."""
    return apply(env_cons(arg, b.env), b.body)


def instantiate_with(b: Binder1, arg: Any, k: Callable[[Env, Any], A]) -> A:
    """Hand the extended environment and the raw body to ``k`` unapplied."""
    return k(env_cons(arg, b.env), b.body)


@dataclass(slots=True, eq=False)
class PatBinder:
    pattern: Any
    env: Env
    body: Any

    @property
    def scope(self) -> int:
        return self.env.codomain

    def subst(self, r: Env) -> PatBinder:
        return PatBinder(self.pattern, env_comp(self.env, r), self.body)

    def free_bound(self) -> int:
        k = self.pattern.size().value
        return max(0, unbind_pat(self).free_bound() - k)


def bind_pat(p: Sized, body: Any, scope: int, repr: EnvRepr | str = DEFAULT_REPR) -> PatBinder:
    check_scope(scope)
    _check_body(body, p.size().value + scope, "pattern binder body")
    return PatBinder(p, env_id(scope, repr), body)


def env_up_by(e: Env, k: int) -> Env:
    for _ in range(k):
        e = env_up(e)
    return e


def unbind_pat(b: PatBinder) -> Any:
    """The body in scope ``size(pattern) + n``."""
    return apply_opt(env_up_by(b.env, b.pattern.size().value), b.body)


def instantiate_pat(b: PatBinder, args: Env) -> Any:
    size = b.pattern.size()
    if args.domain != size.value:
        raise ScopeError(f"pattern binds {size.value} variables but {args.domain} values were supplied")
    return apply(env_append(args, b.env, size), b.body)


def instantiate_pat_with(b: PatBinder, args: Env, k: Callable[[Env, Any], A]) -> A:
    size = b.pattern.size()
    if args.domain != size.value:
        raise ScopeError(f"pattern binds {size.value} variables but {args.domain} values were supplied")
    return k(env_append(args, b.env, size), b.body)


# -- telescopes ----------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Decl:
    """Demo telescope entry: one named variable with a term as its annotation."""

    name: str
    annot: Any

    def size(self) -> SizeWitness:
        return SizeWitness(1)

    def free_bound(self) -> int:
        return self.annot.free_bound()


@dataclass(frozen=True, slots=True)
class Telescope:
    """Entries binding left to right; ``scope`` is None for an empty telescope,
    which fits in any scope."""

    entries: tuple = ()
    scope: int | None = None
    total_size: SizeWitness = SizeWitness(0)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def tele_nil() -> Telescope:
    return Telescope()


def tele_cons(entry: Sized, rest: Telescope, scope: int) -> Telescope:
    """Prepend ``entry``, which lives in ``scope``; ``rest`` lives in
    ``scope + size(entry)``."""
    check_scope(scope)
    p1 = entry.size().value
    if rest.scope is not None and rest.scope != scope + p1:
        raise ScopeError(
            f"rest of telescope lives in scope {rest.scope}, expected {scope} + {p1}")
    if hasattr(entry, "free_bound") and entry.free_bound() > scope:
        raise ScopeError(f"telescope entry {entry!r} is not valid in scope {scope}")
    return Telescope((entry, *rest.entries), scope, SizeWitness(rest.total_size.value + p1))


def tele_fold(t: Telescope, visit: Callable[[A, Any, int], A], init: A) -> A:
    """Left-to-right fold; ``visit(acc, entry, offset)`` where ``offset`` is the
    number of variables bound by the entries before this one."""
    acc, offset = init, 0
    for entry in t.entries:
        acc = visit(acc, entry, offset)
        offset += entry.size().value
    return acc


def telescope(entries: list, scope: int = 0) -> Telescope:
    """Build a telescope from entries listed left to right, starting in ``scope``."""
    offsets = tele_fold(Telescope(tuple(entries)), lambda acc, e, off: [*acc, off], [])
    t = tele_nil()
    for entry, offset in zip(reversed(entries), reversed(offsets)):
        t = tele_cons(entry, t, scope + offset)
    return t
