"""Eager parallel substitution: every binder is opened and the lifted
substitution pushed through its body immediately.

``eager_apply`` is the slow, obviously-correct algorithm over an arbitrary
index map; the test suite uses it as the referee for every delayed-substitution
law. ``eager_instantiate`` is the single-substitution special case the SubstV
evaluator runs.
Binders it produces always carry the identity environment.
"""
from __future__ import annotations

import functools
from typing import Callable

from wellscoped.binders import Binder1, PatBinder, unbind, unbind_pat
from wellscoped.environment import Env, EnvRepr, Inc, env_id
from wellscoped.syntax import App, BoolLit, Lam, LetPair, Pair, Split, Term, Var, free_index_bound

Subst = Callable[[int], Term]


def _shift_by(k: int) -> Subst:
    return lambda i: Var(i + k)


def lift(fn: Subst, codomain: int, k: int, repr: EnvRepr) -> Subst:
    """``fn`` under ``k`` binders: indices below ``k`` are left alone, the rest
    go through ``fn`` and are then shifted by ``k``."""
    if k == 0:
        return fn
    shift = _shift_by(k)

    def lifted(i: int) -> Term:
        if i < k:
            return Var(i)
        return eager_apply(shift, codomain + k, fn(i - k), repr)

    return lifted


def eager_apply(fn: Subst, codomain: int, t: Term, repr: EnvRepr = EnvRepr.LAZY) -> Term:
    tt = type(t)
    if tt is Var:
        return fn(t.index)
    if tt is App:
        return App(eager_apply(fn, codomain, t.fun, repr), eager_apply(fn, codomain, t.arg, repr))
    if tt is Lam:
        body = eager_apply(lift(fn, codomain, 1, repr), codomain + 1, unbind(t.binder), repr)
        return Lam(Binder1(env_id(codomain, repr), body))
    if tt is BoolLit:
        return t
    if tt is Pair:
        return Pair(eager_apply(fn, codomain, t.fst, repr), eager_apply(fn, codomain, t.snd, repr))
    if tt is Split or tt is LetPair:
        b = t.binder
        k = b.pattern.size().value
        body = eager_apply(lift(fn, codomain, k, repr), codomain + k, unbind_pat(b), repr)
        return tt(eager_apply(fn, codomain, t.scrutinee, repr),
                  PatBinder(b.pattern, env_id(codomain, repr), body))
    raise TypeError(f"not a term: {t!r}")


def eager_apply_env(r: Env, t: Term) -> Term:
    """Eagerly apply a library environment (only its lookups are used)."""
    return eager_apply(r.lookup, r.codomain, t, _repr_of(r))


def _bounded(t: Term, b: int) -> Term:
    t._fb = b if b > 0 else 0
    return t


def shift_term(t: Term, by: int, codomain: int, cutoff: int = 0,
               repr: EnvRepr = EnvRepr.LAZY) -> Term:
    """Add ``by`` to every index at or above ``cutoff``; ``codomain`` is the
    scope of the result at cutoff 0."""
    if free_index_bound(t) <= cutoff:
        return t
    tt = type(t)
    if tt is Var:
        return _bounded(Var(t.index + by), t.index + by + 1)
    if tt is App:
        f = shift_term(t.fun, by, codomain, cutoff, repr)
        a = shift_term(t.arg, by, codomain, cutoff, repr)
        return _bounded(App(f, a), max(f._fb, a._fb))
    if tt is Lam:
        body = shift_term(unbind(t.binder), by, codomain, cutoff + 1, repr)
        return _bounded(Lam(Binder1(env_id(codomain + cutoff, repr), body)), body._fb - 1)
    if tt is Pair:
        f = shift_term(t.fst, by, codomain, cutoff, repr)
        a = shift_term(t.snd, by, codomain, cutoff, repr)
        return _bounded(Pair(f, a), max(f._fb, a._fb))
    if tt is Split or tt is LetPair:
        b = t.binder
        k = b.pattern.size().value
        body = shift_term(unbind_pat(b), by, codomain, cutoff + k, repr)
        s = shift_term(t.scrutinee, by, codomain, cutoff, repr)
        return _bounded(tt(s, PatBinder(b.pattern, env_id(codomain + cutoff, repr), body)),
                        max(s._fb, body._fb - k))
    raise TypeError(f"not a term: {t!r}")


def _open(b: Binder1 | PatBinder) -> Term:
    e = b.env
    if type(e) is Inc and e.k == 0:
        return b.body
    return unbind(b) if type(b) is Binder1 else unbind_pat(b)


def _subst_top(t: Term, args: list[Term], closed: list[bool], n: int, d: int, repr: EnvRepr) -> Term:
    """Replace indices ``d .. d+k-1`` of ``t`` by ``args`` (shifted past the
    ``d`` binders crossed so far) and lower the ones above by ``k``.

    The whole of ``t`` is rebuilt; only the inserted copies of closed
    arguments are shared.
    """
    tt = type(t)
    if tt is Var:
        i = t.index
        if i < d:
            t._fb = i + 1
            return t
        j = i - d
        if j < len(args):
            a = args[j]
            return a if d == 0 or closed[j] else shift_term(a, d, n, 0, repr)
        return _bounded(Var(i - len(args)), i - len(args) + 1)
    if tt is App:
        f = _subst_top(t.fun, args, closed, n, d, repr)
        a = _subst_top(t.arg, args, closed, n, d, repr)
        return _bounded(App(f, a), max(f._fb, a._fb))
    if tt is Lam:
        body = _subst_top(_open(t.binder), args, closed, n, d + 1, repr)
        return _bounded(Lam(Binder1(_identity(n + d, repr), body)), body._fb - 1)
    if tt is BoolLit:
        t._fb = 0
        return t
    if tt is Pair:
        f = _subst_top(t.fst, args, closed, n, d, repr)
        a = _subst_top(t.snd, args, closed, n, d, repr)
        return _bounded(Pair(f, a), max(f._fb, a._fb))
    if tt is Split or tt is LetPair:
        b = t.binder
        k = b.pattern.size().value
        body = _subst_top(_open(b), args, closed, n, d + k, repr)
        sc = _subst_top(t.scrutinee, args, closed, n, d, repr)
        return _bounded(tt(sc, PatBinder(b.pattern, _identity(n + d, repr), body)),
                        max(sc._fb, body._fb - k))
    raise TypeError(f"not a term: {t!r}")


@functools.lru_cache(maxsize=4096)
def _identity(scope: int, repr: EnvRepr) -> Env:
    # environments are immutable, so one identity per scope can be shared
    return env_id(scope, repr)


def eager_instantiate(b: Binder1, arg: Term) -> Term:
    """Single substitution, pushed through the whole body at once.

    Agrees with ``eager_apply`` on the environment ``arg .: id`` but shifts
    each copy of ``arg`` in one pass, and not at all when ``arg`` is closed.
    """
    return eager_instantiate_pat(b, [arg])


def eager_instantiate_pat(b: Binder1 | PatBinder, args: list[Term]) -> Term:
    """``args[i]`` replaces pattern variable ``i``."""
    closed = [free_index_bound(a) == 0 for a in args]
    return _subst_top(_open(b), list(args), closed, b.scope, 0, _repr_of(b.env))


def _repr_of(e: Env) -> EnvRepr:
    try:
        return e.repr
    except NotImplementedError:
        return EnvRepr.LAZY
