"""Untyped lambda calculus with booleans, pairs, ``split`` and tuple-pattern ``let``.

Terms are immutable. ``==`` on terms is alpha-equivalence: binders are
compared by their bodies after forcing the suspended environments, never by
the environments themselves.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from wellscoped import environment
from wellscoped.binders import (
    Binder1, PatBinder, bind1, bind_pat, instantiate_pat, unbind, unbind_pat,
)
from wellscoped.environment import Env, env_append, env_cons, env_nil
from wellscoped.indices import BoundedIndex, ScopeError, SizeWitness


class MatchFailure(Exception):
    """A pattern did not fit the shape of the value."""


class Term:
    # free_index_bound, cached on the node the first time it is computed
    __slots__ = ("_fb",)

    def subst(self, r: Env) -> Term:
        raise NotImplementedError

    def free_bound(self) -> int:
        return free_index_bound(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Term):
            return NotImplemented
        return alpha_eq(self, other)

    __hash__ = None  # type: ignore[assignment]


@dataclass(slots=True, eq=False)
class Var(Term):
    index: int

    def subst(self, r: Env) -> Term:
        return r.lookup(self.index)

    @classmethod
    def at(cls, i: BoundedIndex) -> Var:
        return cls(i.index)


@dataclass(slots=True, eq=False)
class Lam(Term):
    binder: Binder1

    def subst(self, r: Env) -> Term:
        b = self.binder
        return Lam(Binder1(environment._compose(b.env, r), b.body))


@dataclass(slots=True, eq=False)
class App(Term):
    fun: Term
    arg: Term

    def subst(self, r: Env) -> Term:
        return App(self.fun.subst(r), self.arg.subst(r))


@dataclass(slots=True, eq=False)
class BoolLit(Term):
    value: bool

    def subst(self, r: Env) -> Term:
        return self


@dataclass(slots=True, eq=False)
class Pair(Term):
    fst: Term
    snd: Term

    def subst(self, r: Env) -> Term:
        return Pair(self.fst.subst(r), self.snd.subst(r))


@dataclass(slots=True, eq=False)
class Split(Term):
    """``split e as (x, y) in body``; x is index 0 in the body, y is index 1."""

    scrutinee: Term
    binder: PatBinder

    def subst(self, r: Env) -> Term:
        return Split(self.scrutinee.subst(r), self.binder.subst(r))


@dataclass(slots=True, eq=False)
class LetPair(Term):
    scrutinee: Term
    binder: PatBinder

    def subst(self, r: Env) -> Term:
        return LetPair(self.scrutinee.subst(r), self.binder.subst(r))


TRUE = BoolLit(True)
FALSE = BoolLit(False)

environment.set_variable_constructor(Var)


# -- patterns ----------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class NVars:
    """Binds ``count`` variables at once, with no further structure."""

    count: int

    def size(self) -> SizeWitness:
        return SizeWitness(self.count)


class TuplePat:
    __slots__ = ()

    def size(self) -> SizeWitness:
        return SizeWitness(self._size())

    def _size(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class PVar(TuplePat):
    def _size(self) -> int:
        return 1


@dataclass(frozen=True, slots=True)
class PPair(TuplePat):
    left: TuplePat
    right: TuplePat

    def _size(self) -> int:
        return self.right._size() + self.left._size()


def pattern_match(p: TuplePat, v: Term, scope: int | None = None,
                  repr=environment.DEFAULT_REPR) -> Env:
    """Environment binding the variables of ``p`` to the matching parts of ``v``.

    The codomain defaults to ``free_index_bound(v)``, the tightest scope ``v``
    lives in.
    """
    if scope is None:
        scope = free_index_bound(v)
    if isinstance(p, PVar):
        return env_cons(v, env_nil(scope, repr))
    if isinstance(p, PPair):
        if not isinstance(v, Pair):
            raise MatchFailure(f"pair pattern cannot match {type(v).__name__}")
        r1 = pattern_match(p.left, v.fst, scope, repr)
        r2 = pattern_match(p.right, v.snd, scope, repr)
        return env_append(r2, r1, p.right.size())
    raise TypeError(f"not a tuple pattern: {p!r}")


# -- observations --------------------------------------------------------------


def _children(u: Term) -> list[tuple[Term, int]]:
    """Immediate subterms with the number of variables each one binds."""
    tu = type(u)
    if tu is App:
        return [(u.fun, 0), (u.arg, 0)]
    if tu is Lam:
        return [(unbind(u.binder), 1)]
    if tu is Pair:
        return [(u.fst, 0), (u.snd, 0)]
    if tu is Split or tu is LetPair:
        return [(u.scrutinee, 0), (unbind_pat(u.binder), u.binder.pattern.size().value)]
    raise TypeError(f"not a term: {u!r}")


def free_index_bound(t: Term) -> int:
    """Smallest scope in which ``t`` is valid. The answer is cached on every
    node visited, so asking again is O(1)."""
    cached = getattr(t, "_fb", None)
    if cached is not None:
        return cached
    stack: list[tuple[Term, Any]] = [(t, None)]
    while stack:
        u, kids = stack.pop()
        if kids is not None:
            b = 0
            for c, k in kids:
                cb = c._fb - k
                if cb > b:
                    b = cb
            u._fb = b
            continue
        if getattr(u, "_fb", None) is not None:
            continue
        tu = type(u)
        if tu is Var:
            u._fb = u.index + 1
        elif tu is BoolLit:
            u._fb = 0
        else:
            kids = _children(u)
            stack.append((u, kids))
            stack.extend((c, None) for c, _ in kids)
    return t._fb


def alpha_eq(a: Term, b: Term) -> bool:
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        tx = type(x)
        if tx is not type(y):
            return False
        if tx is Var:
            if x.index != y.index:
                return False
        elif tx is App:
            stack.append((x.arg, y.arg))
            stack.append((x.fun, y.fun))
        elif tx is Lam:
            if x.binder is not y.binder:
                stack.append((unbind(x.binder), unbind(y.binder)))
        elif tx is BoolLit:
            if x.value != y.value:
                return False
        elif tx is Pair:
            stack.append((x.snd, y.snd))
            stack.append((x.fst, y.fst))
        elif tx is Split or tx is LetPair:
            if x.binder.pattern != y.binder.pattern:
                return False
            stack.append((unbind_pat(x.binder), unbind_pat(y.binder)))
            stack.append((x.scrutinee, y.scrutinee))
        else:
            raise TypeError(f"not a term: {x!r}")
    return True


def subst_term(e: Env, t: Term) -> Term:
    return environment.apply(e, t)


def size(t: Term) -> int:
    """Number of nodes, after forcing binders."""
    n = 0
    stack = [t]
    while stack:
        u = stack.pop()
        n += 1
        tu = type(u)
        if tu is App:
            stack.append(u.fun)
            stack.append(u.arg)
        elif tu is Lam:
            stack.append(unbind(u.binder))
        elif tu is Pair:
            stack.append(u.fst)
            stack.append(u.snd)
        elif tu is Split or tu is LetPair:
            stack.append(u.scrutinee)
            stack.append(unbind_pat(u.binder))
    return n


def to_sexpr(t: Term) -> str:
    """Canonical de Bruijn rendering; equal strings iff alpha-equivalent."""
    out: list[str] = []
    stack: list[Any] = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, str):
            out.append(u)
            continue
        tu = type(u)
        if tu is Var:
            out.append(str(u.index))
        elif tu is App:
            stack.extend((")", u.arg, " ", u.fun, "(@ "))
        elif tu is Lam:
            stack.extend((")", unbind(u.binder), "(\\ "))
        elif tu is BoolLit:
            out.append("#t" if u.value else "#f")
        elif tu is Pair:
            stack.extend((")", u.snd, " ", u.fst, "(, "))
        elif tu is Split:
            stack.extend((")", unbind_pat(u.binder), " ", u.scrutinee, "(split "))
        elif tu is LetPair:
            stack.extend((")", unbind_pat(u.binder), " ", u.scrutinee,
                          f"(let {_pat_sexpr(u.binder.pattern)} "))
        else:
            raise TypeError(f"not a term: {u!r}")
    return "".join(out)


def _pat_sexpr(p: Any) -> str:
    match p:
        case PVar():
            return "_"
        case PPair(l, r):
            return f"({_pat_sexpr(l)},{_pat_sexpr(r)})"
        case NVars(n):
            return f"#{n}"
    raise TypeError(p)


# -- smart constructors for writing terms by hand ------------------------------


def lam(body: Term, scope: int = 0, repr=environment.DEFAULT_REPR) -> Lam:
    return Lam(bind1(body, scope, repr))


def app(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


def split(scrutinee: Term, body: Term, scope: int = 0, repr=environment.DEFAULT_REPR) -> Split:
    return Split(scrutinee, bind_pat(NVars(2), body, scope, repr))


def let_pair(p: TuplePat, scrutinee: Term, body: Term, scope: int = 0,
             repr=environment.DEFAULT_REPR) -> LetPair:
    return LetPair(scrutinee, bind_pat(p, body, scope, repr))


def instantiate_split(b: PatBinder, a1: Any, a2: Any, scope: int, repr=environment.DEFAULT_REPR) -> Term:
    return instantiate_pat(b, env_cons(a1, env_cons(a2, env_nil(scope, repr))))


__all__ = [
    "App", "BoolLit", "FALSE", "LetPair", "Lam", "MatchFailure", "NVars", "PPair", "PVar",
    "Pair", "Split", "TRUE", "Term", "TuplePat", "Var", "alpha_eq", "app", "free_index_bound",
    "lam", "let_pair", "pattern_match", "size", "split", "subst_term", "to_sexpr",
    "instantiate_split", "ScopeError",
]
