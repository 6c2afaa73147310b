"""Shared hypothesis strategies and small utilities for the test suite."""
from __future__ import annotations

import random
from typing import Any

from hypothesis import strategies as st

from wellscoped.binders import Binder1, PatBinder, unbind, unbind_pat
from wellscoped.environment import (
    EnvRepr, env_append, env_comp, env_cons, env_id, env_nil, env_shift, env_up,
)
from wellscoped.frontend.generate import random_term
from wellscoped.syntax import (
    App, BoolLit, Lam, LetPair, NVars, PPair, PVar, Pair, Split, Term, Var,
)

REPRS = (EnvRepr.FUNCTIONAL, EnvRepr.LAZY, EnvRepr.STRICT)


# -- terms ---------------------------------------------------------------------


def tuple_patterns(depth: int = 2) -> st.SearchStrategy:
    if depth == 0:
        return st.just(PVar())
    sub = tuple_patterns(depth - 1)
    return st.one_of(st.just(PVar()), st.builds(PPair, sub, sub))


@st.composite
def terms(draw, scope: int, depth: int = 4, repr: EnvRepr = EnvRepr.LAZY,
          extended: bool = True) -> Term:
    """Any well-scoped term at ``scope``, optionally with booleans, pairs and
    pattern binders."""
    kinds = ["lam", "app"]
    if scope > 0:
        kinds += ["var", "var"]
    if extended:
        kinds += ["bool", "pair", "split", "let"]
    if depth <= 0:
        kinds = ["var"] if scope > 0 else ["bool" if extended else "lam0"]
    match draw(st.sampled_from(kinds)):
        case "var":
            return Var(draw(st.integers(0, scope - 1)))
        case "lam0":
            return Lam(Binder1(env_id(scope, repr), Var(0)))
        case "bool":
            return BoolLit(draw(st.booleans()))
        case "lam":
            body = draw(terms(scope + 1, depth - 1, repr, extended))
            return Lam(Binder1(env_id(scope, repr), body))
        case "app":
            return App(draw(terms(scope, depth - 1, repr, extended)),
                       draw(terms(scope, depth - 1, repr, extended)))
        case "pair":
            return Pair(draw(terms(scope, depth - 1, repr, extended)),
                        draw(terms(scope, depth - 1, repr, extended)))
        case "split":
            s = draw(terms(scope, depth - 1, repr, extended))
            body = draw(terms(scope + 2, depth - 1, repr, extended))
            return Split(s, PatBinder(NVars(2), env_id(scope, repr), body))
        case "let":
            p = draw(tuple_patterns())
            s = draw(terms(scope, depth - 1, repr, extended))
            body = draw(terms(scope + p.size().value, depth - 1, repr, extended))
            return LetPair(s, PatBinder(p, env_id(scope, repr), body))
    raise AssertionError


def seeded_terms(scope: int = 0, size: int = 12) -> st.SearchStrategy:
    """Pure lambda terms from the library generator, indexed by a seed."""
    return st.integers(0, 2**32).map(lambda s: random_term(random.Random(s), scope, size))


def rebuild(t: Term, repr: EnvRepr) -> Term:
    """The same term with every binder re-rooted at the identity of ``repr``."""
    return _rebuild(t, repr, 0)


def _rebuild(t: Term, repr: EnvRepr, n: int) -> Term:
    match t:
        case Var() | BoolLit():
            return t
        case App(f, a):
            return App(_rebuild(f, repr, n), _rebuild(a, repr, n))
        case Pair(a, b):
            return Pair(_rebuild(a, repr, n), _rebuild(b, repr, n))
        case Lam(b):
            return Lam(Binder1(env_id(b.scope, repr), _rebuild(unbind(b), repr, n + 1)))
        case Split(s, b) | LetPair(s, b):
            k = b.pattern.size().value
            return type(t)(_rebuild(s, repr, n),
                           PatBinder(b.pattern, env_id(b.scope, repr), _rebuild(unbind_pat(b), repr, n + k)))
    raise TypeError(t)


# -- environments as recipes, so one draw can be built in every representation ----


@st.composite
def env_recipes(draw, m: int, n: int, depth: int = 3) -> Any:
    """A description of an environment from scope ``m`` to scope ``n``."""
    options = []
    if m == 0:
        options.append("nil")
    if m == n:
        options.append("id")
    if n == m + 1:
        options.append("shift")
    if depth > 0:
        if m > 0:
            options.append("cons")
        if m > 0 and n > 0:
            options.append("up")
        options.append("comp")
        if m > 1:
            options.append("append")
    if not options:
        # only reachable at depth 0 with m > 0: fall back to conses
        options.append("cons")
    kind = draw(st.sampled_from(options))
    match kind:
        case "nil" | "id" | "shift":
            return (kind, m, n)
        case "cons":
            head = draw(terms(n, 2, extended=False))
            return ("cons", head, draw(env_recipes(m - 1, n, max(depth - 1, 0))))
        case "up":
            return ("up", draw(env_recipes(m - 1, n - 1, depth - 1)))
        case "comp":
            k = draw(st.integers(0, 3))
            return ("comp", draw(env_recipes(m, k, depth - 1)), draw(env_recipes(k, n, depth - 1)))
        case "append":
            k = draw(st.integers(1, m - 1))
            return ("append", draw(env_recipes(k, n, depth - 1)), draw(env_recipes(m - k, n, depth - 1)), k)
    raise AssertionError


def build_env(recipe: Any, repr: EnvRepr):
    match recipe:
        case ("nil", _, n):
            return env_nil(n, repr)
        case ("id", m, _):
            return env_id(m, repr)
        case ("shift", m, _):
            return env_shift(m, repr)
        case ("cons", head, rest):
            return env_cons(rebuild(head, repr), build_env(rest, repr))
        case ("up", inner):
            return env_up(build_env(inner, repr))
        case ("comp", a, b):
            return env_comp(build_env(a, repr), build_env(b, repr))
        case ("append", low, high, k):
            return env_append(build_env(low, repr), build_env(high, repr), k)
    raise ValueError(recipe)


def lookups(env) -> list[Term]:
    return [env.lookup(i) for i in range(env.domain)]


# -- counting -------------------------------------------------------------------


class SubstCounter:
    """Counts calls to ``subst`` on every term node class while installed."""

    CLASSES = (Var, Lam, App, BoolLit, Pair, Split, LetPair)

    def __init__(self, monkeypatch) -> None:
        self.calls = 0
        for cls in self.CLASSES:
            original = cls.subst

            def counted(node, r, _original=original):
                self.calls += 1
                return _original(node, r)

            monkeypatch.setattr(cls, "subst", counted)
