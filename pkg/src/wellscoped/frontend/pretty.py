"""Render de Bruijn terms back to the concrete syntax read by the parser."""
from __future__ import annotations

from typing import Iterable, Iterator

from wellscoped.binders import unbind, unbind_pat
from wellscoped.frontend.parser import KEYWORDS
from wellscoped.syntax import App, BoolLit, Lam, LetPair, PPair, PVar, Pair, Split, Term, Var

_TOP, _FUN, _ARG = 0, 1, 2


def pretty(t: Term, name_hints: Iterable[str] | None = None, scope: int = 0) -> str:
    """Free variables at level ``i`` print as ``x{i}``. A binder at level ``L``
    takes the next hint (in pre-order) when it is free to use, otherwise ``x{L}``.
    """
    ctx = [f"x{i}" for i in range(scope)]
    hints = iter(name_hints) if name_hints is not None else iter(())
    return _Printer(ctx, hints).term(t, _TOP)


class _Printer:
    def __init__(self, ctx: list[str], hints: Iterator[str]) -> None:
        self.ctx = ctx
        self.hints = hints

    def fresh(self) -> str:
        hint = next(self.hints, None)
        if hint is not None and hint not in self.ctx and hint not in KEYWORDS:
            return hint
        base = f"x{len(self.ctx)}"
        name, k = base, 0
        while name in self.ctx:
            k += 1
            name = f"{base}_{k}"
        return name

    def term(self, t: Term, prec: int) -> str:
        match t:
            case Var(i):
                return self.ctx[len(self.ctx) - 1 - i]
            case BoolLit(v):
                return "true" if v else "false"
            case Pair(a, b):
                return f"({self.term(a, _TOP)}, {self.term(b, _TOP)})"
            case App(f, a):
                s = f"{self.term(f, _FUN)} {self.term(a, _ARG)}"
                return f"({s})" if prec == _ARG else s
            case Lam():
                return self.wrap(self.lam(t), prec)
            case Split(s, b):
                scrut = self.term(s, _TOP)
                first = self.fresh()
                self.ctx.append(first)  # reserved so the second name differs
                second = self.fresh()
                self.ctx[-1:] = [second, first]
                try:
                    body = self.term(unbind_pat(b), _TOP)
                finally:
                    del self.ctx[-2:]
                return self.wrap(f"split {scrut} as ({first}, {second}) in {body}", prec)
            case LetPair(s, b):
                scrut = self.term(s, _TOP)
                start = len(self.ctx)
                pat = self.pattern(b.pattern)
                if isinstance(b.pattern, PVar):
                    pat = f"({pat})"
                try:
                    body = self.term(unbind_pat(b), _TOP)
                finally:
                    del self.ctx[start:]
                return self.wrap(f"let {pat} = {scrut} in {body}", prec)
        raise TypeError(f"not a term: {t!r}")

    def lam(self, t: Term) -> str:
        names = []
        while type(t) is Lam:
            name = self.fresh()
            names.append(name)
            self.ctx.append(name)
            t = unbind(t.binder)
        try:
            body = self.term(t, _TOP)
        finally:
            del self.ctx[len(self.ctx) - len(names):]
        return f"\\{' '.join(names)}. {body}"

    def pattern(self, p) -> str:
        """Names pattern variables left to right, pushing each onto the context."""
        if isinstance(p, PVar):
            name = self.fresh()
            self.ctx.append(name)
            return name
        if isinstance(p, PPair):
            left = self.pattern(p.left)
            return f"({left}, {self.pattern(p.right)})"
        raise TypeError(f"not a tuple pattern: {p!r}")

    @staticmethod
    def wrap(s: str, prec: int) -> str:
        return s if prec == _TOP else f"({s})"


def pretty_indices(t: Term) -> str:
    """Nameless rendering: ``\\. \\. 1`` for ``\\x. \\y. x``."""
    match t:
        case Var(i):
            return str(i)
        case BoolLit(v):
            return "true" if v else "false"
        case Pair(a, b):
            return f"({pretty_indices(a)}, {pretty_indices(b)})"
        case App(f, a):
            fs = pretty_indices(f)
            if type(f) not in (Var, BoolLit, Pair, App):
                fs = f"({fs})"
            as_ = pretty_indices(a)
            if type(a) not in (Var, BoolLit, Pair):
                as_ = f"({as_})"
            return f"{fs} {as_}"
        case Lam(b):
            return f"\\. {pretty_indices(unbind(b))}"
        case Split(s, b):
            return f"split {pretty_indices(s)} as (_, _) in {pretty_indices(unbind_pat(b))}"
        case LetPair(s, b):
            return f"let {_shape(b.pattern)} = {pretty_indices(s)} in {pretty_indices(unbind_pat(b))}"
    raise TypeError(f"not a term: {t!r}")


def _shape(p) -> str:
    if isinstance(p, PPair):
        return f"({_shape(p.left)}, {_shape(p.right)})"
    return "_"
