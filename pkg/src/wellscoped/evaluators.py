"""Four evaluators and a normalizer for the lambda calculus in :mod:`wellscoped.syntax`.

``EVALV``
    Closure-based environment machine. Values are closures, booleans and pairs.
``SUBSTV``
    Substitution-based evaluator using eager substitution.
``BINDV``
    Same evaluator, but instantiation goes through delayed-substitution binders.
``ENVV``
    The substitution is passed along as an explicit environment and fused with
    evaluation.

Every strategy has a ``prereduce_arg`` flag. When set (the default, and the
meaning of the ``V`` suffix) an argument enters the environment as a
memoized suspension of its weak-head normal form, which gives call-by-need.
When cleared the argument is substituted as written, which is call-by-name,
and all four evaluators then perform exactly the same reduction sequence.

SUBSTV always substitutes arguments as written. Eager substitution pushes the
argument through binders immediately, so a pre-reduced argument would have
to be computed before the body is even looked at, and the fixed-point
combinators in the benchmark term would diverge.

Booleans are observed by applying them: ``true a b`` reduces to ``a`` and
``false a b`` to ``b``. ``true a`` on its own is a value.

Weak reduction never looks under binders. At open scope an application whose
head is a variable is returned unreduced. Applying a pair, or splitting a
function, raises :class:`EvalError` from ``eval_*`` and is returned as a stuck
term from :func:`whnf` and :func:`nf`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Optional

from wellscoped import indices
from wellscoped.binders import Binder1, PatBinder, env_up_by, instantiate1, instantiate_pat, unbind, unbind_pat
from wellscoped.eager import eager_instantiate, eager_instantiate_pat
from wellscoped.environment import (
    DEFAULT_REPR, Env, EnvRepr, Suspension, _compose, apply, env_append, env_cons, env_id, env_nil,
    env_up,
)
from wellscoped.indices import ScopeError
from wellscoped.syntax import (
    App, BoolLit, Lam, LetPair, NVars, PVar, Pair, Split, Term, Var, free_index_bound,
)


class Impl(enum.Enum):
    EVALV = "evalv"
    SUBSTV = "substv"
    BINDV = "bindv"
    ENVV = "envv"


@dataclass(frozen=True)
class EvalStrategy:
    impl: Impl
    prereduce_arg: bool = True

    @property
    def name(self) -> str:
        return self.impl.value if self.prereduce_arg else self.impl.value[:-1]

    @classmethod
    def parse(cls, name: str | EvalStrategy) -> EvalStrategy:
        """``"bindv"`` pre-reduces arguments, ``"bind"`` does not."""
        if isinstance(name, EvalStrategy):
            return name
        key = name.lower()
        for impl in Impl:
            if key == impl.value:
                return cls(impl, True)
            if key == impl.value[:-1]:
                return cls(impl, False)
        raise ValueError(f"unknown strategy {name!r}")

    def __str__(self) -> str:
        return self.name


EVALV = EvalStrategy(Impl.EVALV)
SUBSTV = EvalStrategy(Impl.SUBSTV)
BINDV = EvalStrategy(Impl.BINDV)
ENVV = EvalStrategy(Impl.ENVV)


class EvalError(Exception):
    """A closed redex had the wrong shape, e.g. a pair applied to an argument."""


class FuelExhausted(Exception):
    def __init__(self, steps: int) -> None:
        super().__init__(f"gave up after {steps} reduction steps")
        self.steps = steps


class Fuel:
    """Counts reduction steps (beta, split, let, boolean selection)."""

    __slots__ = ("limit", "steps")

    def __init__(self, limit: Optional[int] = None) -> None:
        self.limit = limit
        self.steps = 0

    def tick(self) -> None:
        self.steps += 1
        if self.limit is not None and self.steps > self.limit:
            raise FuelExhausted(self.steps)


def _is_value_shape(t: Term) -> bool:
    tt = type(t)
    return tt is Lam or tt is BoolLit or tt is Pair or (tt is App and type(t.fun) is BoolLit)


# -- EvalV: closures -------------------------------------------------------------

# Value environments are linked lists: None or (entry, rest). An entry is a
# Suspension (call-by-need) or a Thunk (call-by-name).


@dataclass(slots=True, eq=False)
class Thunk:
    term: Term
    env: Any


@dataclass(slots=True, eq=False)
class VClosure:
    env: Any
    binder: Binder1


@dataclass(slots=True, eq=False)
class VBool:
    value: bool


@dataclass(slots=True, eq=False)
class VBoolApp:
    value: bool
    first: Any


@dataclass(slots=True, eq=False)
class VPair:
    fst: Any
    snd: Any


Value = VClosure | VBool | VBoolApp | VPair


def venv(*entries: Any) -> Any:
    """Value environment with ``entries[0]`` at index 0."""
    env = None
    for e in reversed(entries):
        env = (e if isinstance(e, (Suspension, Thunk)) else Suspension.ready(e), env)
    return env


def _venv_len(env: Any) -> int:
    n = 0
    while env is not None:
        n += 1
        env = env[1]
    return n


def _entry(r: Any, t: Term, fuel: Fuel | None, need: bool) -> Any:
    if need:
        return Suspension(lambda: _evalv(r, t, fuel, need))
    return Thunk(t, r)


def _force_entry(e: Any, fuel: Fuel | None, need: bool) -> Value:
    if type(e) is Thunk:
        return _evalv(e.env, e.term, fuel, need)
    return e.force()


def _evalv(r: Any, t: Term, fuel: Fuel | None, need: bool) -> Value:
    while True:
        tt = type(t)
        if tt is Var:
            env = r
            for _ in range(t.index):
                env = env[1]
            entry = env[0]
            if type(entry) is Thunk:
                r, t = entry.env, entry.term
                continue
            return entry.force()
        if tt is Lam:
            return VClosure(r, t.binder)
        if tt is App:
            f = _evalv(r, t.fun, fuel, need)
            tf = type(f)
            if tf is VClosure:
                if fuel is not None:
                    fuel.tick()
                arg = _entry(r, t.arg, fuel, need)
                r, t = (arg, f.env), unbind(f.binder)
                continue
            if tf is VBool:
                return VBoolApp(f.value, _entry(r, t.arg, fuel, need))
            if tf is VBoolApp:
                if fuel is not None:
                    fuel.tick()
                if f.value:
                    return _force_entry(f.first, fuel, need)
                t = t.arg
                continue
            raise EvalError("a pair cannot be applied to an argument")
        if tt is BoolLit:
            return VBool(t.value)
        if tt is Pair:
            return VPair(_entry(r, t.fst, fuel, need), _entry(r, t.snd, fuel, need))
        if tt is Split:
            v = _evalv(r, t.scrutinee, fuel, need)
            if type(v) is not VPair:
                raise EvalError(f"split expects a pair, got {type(v).__name__}")
            if fuel is not None:
                fuel.tick()
            r, t = (v.fst, (v.snd, r)), unbind_pat(t.binder)
            continue
        if tt is LetPair:
            v = _evalv(r, t.scrutinee, fuel, need)
            entries = _match_values(t.binder.pattern, Suspension.ready(v), fuel, need)
            if fuel is not None:
                fuel.tick()
            for e in reversed(entries):
                r = (e, r)
            t = unbind_pat(t.binder)
            continue
        raise TypeError(f"not a term: {t!r}")


def _match_values(p: Any, entry: Any, fuel: Fuel | None, need: bool) -> list:
    """Entries for the pattern's variables, index 0 first."""
    if isinstance(p, PVar):
        return [entry]
    v = _force_entry(entry, fuel, need)
    if type(v) is not VPair:
        raise EvalError(f"pair pattern cannot match {type(v).__name__}")
    return _match_values(p.right, v.snd, fuel, need) + _match_values(p.left, v.fst, fuel, need)


def eval_closure(env: Any, t: Term, fuel: Fuel | None = None, prereduce_arg: bool = True) -> Value:
    """Evaluate ``t`` under a value environment (``None`` for closed terms)."""
    if indices.checking_enabled() and free_index_bound(t) > _venv_len(env):
        raise ScopeError("term has free variables outside the value environment")
    return _evalv(env, t, fuel, prereduce_arg)


def readback(v: Value, repr: EnvRepr | str = DEFAULT_REPR) -> Term:
    """Turn a value back into a closed term; closures become lambdas whose
    suspended environment is the read-back closure environment."""
    tv = type(v)
    if tv is VClosure:
        b = v.binder
        return Lam(Binder1(_compose(b.env, _readback_env(v.env, b.env.repr)), b.body))
    if tv is VBool:
        return BoolLit(v.value)
    if tv is VBoolApp:
        return App(BoolLit(v.value), _readback_entry(v.first, repr).force())
    if tv is VPair:
        return Pair(_readback_entry(v.fst, repr).force(), _readback_entry(v.snd, repr).force())
    raise TypeError(f"not a value: {v!r}")


def _readback_entry(e: Any, repr: EnvRepr) -> Suspension:
    if type(e) is Thunk:
        return Suspension(lambda: apply(_readback_env(e.env, repr), e.term))
    return Suspension(lambda: readback(e.force(), repr))


def _readback_env(env: Any, repr: EnvRepr) -> Env:
    entries = []
    while env is not None:
        entries.append(env[0])
        env = env[1]
    result = env_nil(0, repr)
    for e in reversed(entries):
        result = env_cons(_readback_entry(e, repr), result)
    return result


# -- SubstV / BindV: reduction by instantiation ----------------------------------------


def _weak(t: Term, fuel: Fuel | None, need: bool, eager: bool, stuck_ok: bool) -> Term:
    while True:
        tt = type(t)
        if tt is App:
            h = _weak(t.fun, fuel, need, eager, stuck_ok)
            th = type(h)
            if th is Lam:
                if fuel is not None:
                    fuel.tick()
                if eager:
                    t = eager_instantiate(h.binder, t.arg)
                elif need:
                    t = instantiate1(h.binder, _whnf_susp(t.arg, fuel, eager, stuck_ok))
                else:
                    t = instantiate1(h.binder, t.arg)
                continue
            if th is App and type(h.fun) is BoolLit:
                if fuel is not None:
                    fuel.tick()
                t = h.arg if h.fun.value else t.arg
                continue
            if th is Pair and not stuck_ok:
                raise EvalError("a pair cannot be applied to an argument")
            return App(h, t.arg)
        if tt is Split or tt is LetPair:
            b = t.binder
            s = _weak(t.scrutinee, fuel, need, eager, stuck_ok)
            try:
                args = _pattern_args(b.pattern, s, fuel, need, eager, stuck_ok)
            except _NoMatch:
                if stuck_ok or not _is_value_shape(s):
                    return tt(s, b)
                raise EvalError(f"{tt.__name__.lower()} cannot destructure {type(s).__name__}") from None
            if fuel is not None:
                fuel.tick()
            if eager:
                t = eager_instantiate_pat(b, args)
            else:
                env = env_nil(b.scope, b.env.repr)
                for a in reversed(args):
                    env = env_cons(a, env)
                t = instantiate_pat(b, env)
            continue
        return t


def _whnf_susp(t: Term, fuel: Fuel | None, eager: bool, stuck_ok: bool) -> Suspension:
    return Suspension(lambda: _weak(t, fuel, True, eager, stuck_ok))


class _NoMatch(Exception):
    pass


def _pattern_args(p: Any, s: Term, fuel, need, eager, stuck_ok) -> list:
    """Arguments for a pattern binder, index 0 first. ``s`` is already weak-head
    normal; nested components are reduced only as far as the pattern needs."""
    if isinstance(p, NVars):
        if p.count != 2 or type(s) is not Pair:
            raise _NoMatch
        if need and not eager:
            return [_whnf_susp(s.fst, fuel, eager, stuck_ok), _whnf_susp(s.snd, fuel, eager, stuck_ok)]
        return [s.fst, s.snd]
    if isinstance(p, PVar):
        return [s]
    if type(s) is not Pair:
        raise _NoMatch
    return (_component_args(p.right, s.snd, fuel, need, eager, stuck_ok)
            + _component_args(p.left, s.fst, fuel, need, eager, stuck_ok))


def _component_args(p, c: Term, fuel, need, eager, stuck_ok) -> list:
    if isinstance(p, PVar):
        if need and not eager:
            return [_whnf_susp(c, fuel, eager, stuck_ok)]
        return [c]
    return _pattern_args(p, _weak(c, fuel, need, eager, stuck_ok), fuel, need, eager, stuck_ok)


def _nf(t: Term, fuel: Fuel | None, need: bool, eager: bool) -> Term:
    while True:
        tt = type(t)
        if tt is Var or tt is BoolLit:
            return t
        if tt is Lam:
            b = t.binder
            return Lam(Binder1(env_id(b.scope, b.env.repr), _nf(unbind(b), fuel, need, eager)))
        if tt is App:
            h = _weak(t.fun, fuel, need, eager, True)
            th = type(h)
            if th is Lam:
                if fuel is not None:
                    fuel.tick()
                if eager:
                    t = eager_instantiate(h.binder, t.arg)
                elif need:
                    t = instantiate1(h.binder, _whnf_susp(t.arg, fuel, eager, True))
                else:
                    t = instantiate1(h.binder, t.arg)
                continue
            if th is App and type(h.fun) is BoolLit:
                if fuel is not None:
                    fuel.tick()
                t = h.arg if h.fun.value else t.arg
                continue
            return App(_nf(h, fuel, need, eager), _nf(t.arg, fuel, need, eager))
        if tt is Pair:
            return Pair(_nf(t.fst, fuel, need, eager), _nf(t.snd, fuel, need, eager))
        if tt is Split or tt is LetPair:
            s = _weak(t, fuel, need, eager, True)
            if type(s) is tt:
                b = s.binder
                body = _nf(unbind_pat(b), fuel, need, eager)
                return tt(_nf(s.scrutinee, fuel, need, eager),
                          PatBinder(b.pattern, env_id(b.scope, b.env.repr), body))
            t = s
            continue
        raise TypeError(f"not a term: {t!r}")


# -- EnvV: evaluation with an explicit environment ------------------------------------


def _weak_env(r: Env, t: Term, fuel: Fuel | None, need: bool, stuck_ok: bool) -> Term:
    while True:
        tt = type(t)
        if tt is Var:
            v = r.lookup(t.index)
            if need or type(v) is Var:
                return v
            r, t = env_id(r.codomain, r.repr), v
            continue
        if tt is Lam:
            b = t.binder
            return Lam(Binder1(_compose(b.env, r), b.body))
        if tt is App:
            h = _weak_env(r, t.fun, fuel, need, stuck_ok)
            th = type(h)
            if th is Lam:
                if fuel is not None:
                    fuel.tick()
                b = h.binder
                r, t = env_cons(_env_arg(r, t.arg, fuel, need, stuck_ok), b.env), b.body
                continue
            if th is App and type(h.fun) is BoolLit:
                if fuel is not None:
                    fuel.tick()
                if h.fun.value:
                    r, t = env_id(r.codomain, r.repr), h.arg
                else:
                    t = t.arg
                continue
            if th is Pair and not stuck_ok:
                raise EvalError("a pair cannot be applied to an argument")
            return App(h, t.arg.subst(r))
        if tt is BoolLit:
            return t
        if tt is Pair:
            return Pair(t.fst.subst(r), t.snd.subst(r))
        if tt is Split or tt is LetPair:
            b = t.binder
            s = _weak_env(r, t.scrutinee, fuel, need, stuck_ok)
            n = r.codomain
            try:
                args = _pattern_args_env(b.pattern, s, n, fuel, need, stuck_ok)
            except _NoMatch:
                if stuck_ok or not _is_value_shape(s):
                    return tt(s, b.subst(r))
                raise EvalError(f"{tt.__name__.lower()} cannot destructure {type(s).__name__}") from None
            if fuel is not None:
                fuel.tick()
            env = env_nil(n, r.repr)
            for a in reversed(args):
                env = env_cons(a, env)
            r, t = env_append(env, _compose(b.env, r), b.pattern.size()), b.body
            continue
        raise TypeError(f"not a term: {t!r}")


def _env_arg(r: Env, a: Term, fuel, need: bool, stuck_ok: bool) -> Suspension:
    if need:
        return Suspension(lambda: _weak_env(r, a, fuel, True, stuck_ok))
    return Suspension(lambda: a.subst(r))


def _pattern_args_env(p: Any, s: Term, n: int, fuel, need, stuck_ok) -> list:
    # components of a weak-head normal pair are already in the target scope
    if isinstance(p, NVars):
        if p.count != 2 or type(s) is not Pair:
            raise _NoMatch
        return [_closed_arg(s.fst, n, fuel, need, stuck_ok), _closed_arg(s.snd, n, fuel, need, stuck_ok)]
    if isinstance(p, PVar):
        return [s]
    if type(s) is not Pair:
        raise _NoMatch
    return (_component_args_env(p.right, s.snd, n, fuel, need, stuck_ok)
            + _component_args_env(p.left, s.fst, n, fuel, need, stuck_ok))


def _component_args_env(p, c: Term, n, fuel, need, stuck_ok) -> list:
    if isinstance(p, PVar):
        return [_closed_arg(c, n, fuel, need, stuck_ok)]
    s = _weak_env(env_id(n), c, fuel, need, stuck_ok)
    return _pattern_args_env(p, s, n, fuel, need, stuck_ok)


def _closed_arg(c: Term, n: int, fuel, need, stuck_ok) -> Any:
    if need:
        return Suspension(lambda: _weak_env(env_id(n), c, fuel, True, stuck_ok))
    return c


def _nf_env(r: Env, t: Term, fuel: Fuel | None, need: bool) -> Term:
    while True:
        tt = type(t)
        if tt is Var:
            v = r.lookup(t.index)
            if type(v) is Var:
                return v
            r, t = env_id(r.codomain, r.repr), v
            continue
        if tt is BoolLit:
            return t
        if tt is Lam:
            b = t.binder
            body = _nf_env(env_up(_compose(b.env, r)), b.body, fuel, need)
            return Lam(Binder1(env_id(r.codomain, r.repr), body))
        if tt is App:
            h = _weak_env(r, t.fun, fuel, need, True)
            th = type(h)
            if th is Lam:
                if fuel is not None:
                    fuel.tick()
                b = h.binder
                r, t = env_cons(_env_arg(r, t.arg, fuel, need, True), b.env), b.body
                continue
            if th is App and type(h.fun) is BoolLit:
                if fuel is not None:
                    fuel.tick()
                if h.fun.value:
                    r, t = env_id(r.codomain, r.repr), h.arg
                else:
                    t = t.arg
                continue
            n = r.codomain
            return App(_nf_env(env_id(n, r.repr), h, fuel, need), _nf_env(r, t.arg, fuel, need))
        if tt is Pair:
            return Pair(_nf_env(r, t.fst, fuel, need), _nf_env(r, t.snd, fuel, need))
        if tt is Split or tt is LetPair:
            s = _weak_env(r, t, fuel, need, True)
            n = r.codomain
            ident = env_id(n, r.repr)
            if type(s) is tt:
                b = s.binder
                k = b.pattern.size().value
                body = _nf_env(env_up_by(b.env, k), b.body, fuel, need)
                return tt(_nf_env(ident, s.scrutinee, fuel, need),
                          PatBinder(b.pattern, env_id(n, r.repr), body))
            r, t = ident, s
            continue
        raise TypeError(f"not a term: {t!r}")


# -- public entry points ----------------------------------------------------------------


def _check_preserved(before: int, result: Term) -> Term:
    if indices.checking_enabled():
        after = free_index_bound(result)
        if after > before:
            raise ScopeError(f"result needs scope {after} but the input only needed {before}")
    return result


def _bound_if_checking(t: Term) -> int:
    return free_index_bound(t) if indices.checking_enabled() else 0


def eval_subst(t: Term, strategy: EvalStrategy | str = BINDV, fuel: Fuel | None = None) -> Term:
    """Weak evaluation by substitution (SUBSTV or BINDV)."""
    strategy = EvalStrategy.parse(strategy)
    if strategy.impl not in (Impl.SUBSTV, Impl.BINDV):
        raise ValueError(f"eval_subst does not implement {strategy}")
    before = _bound_if_checking(t)
    eager = strategy.impl is Impl.SUBSTV
    return _check_preserved(before, _weak(t, fuel, strategy.prereduce_arg and not eager, eager, False))


def eval_env(env: Env, t: Term, fuel: Fuel | None = None, prereduce_arg: bool = True) -> Term:
    """Weak evaluation of ``t`` (scope ``env.domain``) fused with applying ``env``."""
    if indices.checking_enabled() and free_index_bound(t) > env.domain:
        raise ScopeError(f"term is not valid in scope {env.domain}")
    result = _weak_env(env, t, fuel, prereduce_arg, False)
    return _check_preserved(env.codomain, result)


def evaluate(t: Term, strategy: EvalStrategy | str = BINDV, fuel: Fuel | None = None,
             scope: int | None = None, repr: EnvRepr | str = DEFAULT_REPR) -> Term:
    """Weak evaluation with any strategy, returning a term.

    EVALV needs a closed term; its result is read back into a term.
    """
    strategy = EvalStrategy.parse(strategy)
    if scope is None:
        scope = free_index_bound(t)
    if strategy.impl is Impl.EVALV:
        if scope != 0:
            raise ScopeError("the closure evaluator only runs closed terms")
        return readback(eval_closure(None, t, fuel, strategy.prereduce_arg), repr)
    if strategy.impl is Impl.ENVV:
        return eval_env(env_id(scope, repr), t, fuel, strategy.prereduce_arg)
    return eval_subst(t, strategy, fuel)


eval_patterns = evaluate


def whnf(t: Term, strategy: EvalStrategy | str = BINDV, fuel: Fuel | None = None,
         scope: int | None = None, repr: EnvRepr | str = DEFAULT_REPR) -> Term:
    """Weak-head normal form of a possibly open term; stuck terms are returned."""
    strategy = EvalStrategy.parse(strategy)
    before = _bound_if_checking(t)
    if strategy.impl is Impl.ENVV:
        if scope is None:
            scope = free_index_bound(t)
        result = _weak_env(env_id(scope, repr), t, fuel, strategy.prereduce_arg, True)
    elif strategy.impl is Impl.EVALV:
        raise ValueError("the closure evaluator has no open-term weak-head normalizer")
    else:
        eager = strategy.impl is Impl.SUBSTV
        result = _weak(t, fuel, strategy.prereduce_arg and not eager, eager, True)
    return _check_preserved(before, result)


def nf(t: Term, strategy: EvalStrategy | str = BINDV, fuel: Fuel | None = None,
       scope: int | None = None, repr: EnvRepr | str = DEFAULT_REPR) -> Term:
    """Beta-normal form, reducing under binders. Diverges if there is none
    (pass ``fuel`` to bound the work)."""
    strategy = EvalStrategy.parse(strategy)
    before = _bound_if_checking(t)
    if strategy.impl is Impl.ENVV:
        if scope is None:
            scope = free_index_bound(t)
        result = _nf_env(env_id(scope, repr), t, fuel, strategy.prereduce_arg)
    elif strategy.impl is Impl.EVALV:
        raise ValueError("the closure evaluator does not normalize under binders")
    else:
        eager = strategy.impl is Impl.SUBSTV
        result = _nf(t, fuel, strategy.prereduce_arg and not eager, eager)
    return _check_preserved(before, result)


def find_redex(t: Term) -> Term | None:
    """Some beta, boolean, split or let redex inside ``t``, or None."""
    stack = [t]
    while stack:
        u = stack.pop()
        tu = type(u)
        if tu is App:
            f = u.fun
            if type(f) is Lam or (type(f) is App and type(f.fun) is BoolLit):
                return u
            stack.append(f)
            stack.append(u.arg)
        elif tu is Lam:
            stack.append(unbind(u.binder))
        elif tu is Pair:
            stack.append(u.fst)
            stack.append(u.snd)
        elif tu is Split or tu is LetPair:
            s = u.scrutinee
            if type(s) is Pair:
                if tu is Split or _shape_fits(u.binder.pattern, s):
                    return u
            stack.append(s)
            stack.append(unbind_pat(u.binder))
    return None


def _shape_fits(p: Any, s: Term) -> bool:
    if isinstance(p, PVar):
        return True
    return type(s) is Pair and _shape_fits(p.left, s.fst) and _shape_fits(p.right, s.snd)
