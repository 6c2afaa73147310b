"""Terms with variable names, as written by people, and conversion to de Bruijn form."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from wellscoped.binders import Binder1, PatBinder
from wellscoped.environment import DEFAULT_REPR, EnvRepr, env_id
from wellscoped.syntax import (
    App, BoolLit, Lam, LetPair, NVars, PPair, PVar, Pair, Split, Term, TuplePat, Var,
)


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


NOWHERE = Pos(0, 0)


@dataclass(frozen=True)
class NVar:
    name: str
    pos: Pos = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class NLam:
    name: str
    body: NamedTerm


@dataclass(frozen=True)
class NApp:
    fun: NamedTerm
    arg: NamedTerm


@dataclass(frozen=True)
class NBool:
    value: bool


@dataclass(frozen=True)
class NPair:
    fst: NamedTerm
    snd: NamedTerm


@dataclass(frozen=True)
class NSplit:
    """``split scrutinee as (first, second) in body``."""

    scrutinee: NamedTerm
    first: str
    second: str
    body: NamedTerm


@dataclass(frozen=True)
class NPVar:
    name: str


@dataclass(frozen=True)
class NPPair:
    left: NamedPat
    right: NamedPat


NamedPat = Union[NPVar, NPPair]


@dataclass(frozen=True)
class NLetPair:
    """``let pattern = scrutinee in body``."""

    pattern: NamedPat
    scrutinee: NamedTerm
    body: NamedTerm


NamedTerm = Union[NVar, NLam, NApp, NBool, NPair, NSplit, NLetPair]


def n_app(f: NamedTerm, *args: NamedTerm) -> NamedTerm:
    for a in args:
        f = NApp(f, a)
    return f


def n_lams(names: str, body: NamedTerm) -> NamedTerm:
    for name in reversed(names.split()):
        body = NLam(name, body)
    return body


def n_let(bindings: Sequence[tuple[str | NamedPat, NamedTerm]], body: NamedTerm) -> NamedTerm:
    """Sequential, non-recursive let: each binding is visible to the ones after it."""
    for lhs, rhs in reversed(bindings):
        if isinstance(lhs, str):
            body = NApp(NLam(lhs, body), rhs)
        else:
            body = NLetPair(lhs, rhs, body)
    return body


def pattern_names(p: NamedPat) -> list[str]:
    """Names in textual order."""
    if isinstance(p, NPVar):
        return [p.name]
    return pattern_names(p.left) + pattern_names(p.right)


def pattern_shape(p: NamedPat) -> TuplePat:
    if isinstance(p, NPVar):
        return PVar()
    return PPair(pattern_shape(p.left), pattern_shape(p.right))


class UnboundName(Exception):
    def __init__(self, name: str, pos: Pos) -> None:
        where = f" at {pos}" if pos != NOWHERE else ""
        super().__init__(f"unbound name {name!r}{where}")
        self.name = name
        self.pos = pos


def scope_check(t: NamedTerm, ambient: Sequence[str] = (),
                repr: EnvRepr | str = DEFAULT_REPR) -> Term:
    """Convert names to de Bruijn indices.

    ``ambient`` lists the free names outermost first, so its last name becomes
    index 0. Inner binders shadow outer ones.

    Pattern variables: in ``split e as (x, y) in b`` x is index 0 and y index 1;
    in ``let (a, (b, c)) = e in body`` the rightmost name c is index 0.
    """
    ctx = list(ambient)
    return _check(t, ctx, EnvRepr.parse(repr))


def _index(ctx: list[str], name: str, pos: Pos) -> int:
    for i in range(len(ctx) - 1, -1, -1):
        if ctx[i] == name:
            return len(ctx) - 1 - i
    raise UnboundName(name, pos)


def _check(t: NamedTerm, ctx: list[str], repr: EnvRepr) -> Term:
    match t:
        case NVar(name, pos):
            return Var(_index(ctx, name, pos))
        case NApp(f, a):
            return App(_check(f, ctx, repr), _check(a, ctx, repr))
        case NLam(name, body):
            n = len(ctx)
            ctx.append(name)
            try:
                inner = _check(body, ctx, repr)
            finally:
                ctx.pop()
            return Lam(Binder1(env_id(n, repr), inner))
        case NBool(value):
            return BoolLit(value)
        case NPair(a, b):
            return Pair(_check(a, ctx, repr), _check(b, ctx, repr))
        case NSplit(scrutinee, first, second, body):
            s = _check(scrutinee, ctx, repr)
            inner = _extended(body, ctx, [second, first], repr)
            return Split(s, PatBinder(NVars(2), env_id(len(ctx), repr), inner))
        case NLetPair(pattern, scrutinee, body):
            s = _check(scrutinee, ctx, repr)
            inner = _extended(body, ctx, pattern_names(pattern), repr)
            return LetPair(s, PatBinder(pattern_shape(pattern), env_id(len(ctx), repr), inner))
    raise TypeError(f"not a named term: {t!r}")


def _extended(body: NamedTerm, ctx: list[str], names: list[str], repr: EnvRepr) -> Term:
    ctx.extend(names)
    try:
        return _check(body, ctx, repr)
    finally:
        del ctx[len(ctx) - len(names):]


def binder_names(t: NamedTerm) -> list[str]:
    """Binder names in the order :func:`wellscoped.frontend.pretty` consumes hints."""
    out: list[str] = []
    stack: list[NamedTerm] = [t]
    while stack:
        u = stack.pop()
        match u:
            case NLam(name, body):
                out.append(name)
                stack.append(body)
            case NApp(f, a) | NPair(f, a):
                stack.append(a)
                stack.append(f)
            case NSplit(s, first, second, body):
                out.extend([first, second])
                stack.append(body)
                stack.append(s)
            case NLetPair(p, s, body):
                out.extend(pattern_names(p))
                stack.append(body)
                stack.append(s)
    return out
