"""Delayed parallel substitutions.

An environment ``Env`` with domain ``m`` and codomain ``n`` maps every index
below ``m`` to a term valid in scope ``n``. Three interchangeable
representations are provided:

``FUNCTIONAL``
    A Python closure per environment. Composition builds a new closure, so
    every lookup re-applies the whole chain of composed environments.
``LAZY``
    Defunctionalized: ``Inc(k)`` (add ``k`` to every index), ``Cons`` and
    ``Comp`` nodes, simplified by smart composition. The tail produced when a
    composition is pushed through a ``Cons`` is itself suspended.
``STRICT``
    Same nodes and rules, but that tail is built immediately.

No representation is strict in the substituted terms: ``Cons`` heads are
always :class:`Suspension` objects.

Anything that can be substituted into implements ``subst(env)``. Environments
produce variables through the constructor registered with
:func:`set_variable_constructor`, which the object language does on import.
"""
from __future__ import annotations

import enum
import threading
from typing import Any, Callable

from wellscoped import indices
from wellscoped.indices import BoundedIndex, ScopeError, SizeWitness, check_scope


class EnvRepr(enum.Enum):
    FUNCTIONAL = "functional"
    LAZY = "lazy"
    STRICT = "strict"

    @classmethod
    def parse(cls, name: str | EnvRepr) -> EnvRepr:
        if isinstance(name, EnvRepr):
            return name
        return cls(name.lower())


DEFAULT_REPR = EnvRepr.LAZY

_force_lock = threading.Lock()
_UNSET = object()


class Suspension:
    """A deferred computation, run at most once.

    If two threads force the same suspension concurrently both may compute,
    but only the first result to be stored is ever returned.
    """

    __slots__ = ("_thunk", "_value")

    def __init__(self, thunk: Callable[[], Any]) -> None:
        self._thunk = thunk
        self._value = _UNSET

    @classmethod
    def ready(cls, value: Any) -> Suspension:
        s = cls.__new__(cls)
        s._thunk = None
        s._value = value
        return s

    @property
    def forced(self) -> bool:
        return self._value is not _UNSET

    def force(self) -> Any:
        value = self._value
        if value is not _UNSET:
            return value
        result = self._thunk()
        with _force_lock:
            if self._value is _UNSET:
                self._value = result
                self._thunk = None
        return self._value

    def __repr__(self) -> str:
        if self.forced:
            return f"Suspension.ready({self._value!r})"
        return "Suspension(<pending>)"


_var: Callable[[int], Any] | None = None


def set_variable_constructor(fn: Callable[[int], Any]) -> None:
    global _var
    _var = fn


def _mkvar(i: int) -> Any:
    return _var(i)


class Env:
    __slots__ = ("domain", "codomain")

    domain: int
    codomain: int

    def lookup(self, i: int) -> Any:
        raise NotImplementedError

    @property
    def repr(self) -> EnvRepr:
        raise NotImplementedError

    def __getitem__(self, i: int | BoundedIndex) -> Any:
        return env_lookup(self, i)


# -- functional representation ----------------------------------------------


class FunEnv(Env):
    __slots__ = ("fn", "is_id")

    def __init__(self, fn: Callable[[int], Any], domain: int, codomain: int,
                 is_id: bool = False) -> None:
        self.fn = fn
        self.domain = domain
        self.codomain = codomain
        self.is_id = is_id

    def lookup(self, i: int) -> Any:
        return self.fn(i)

    @property
    def repr(self) -> EnvRepr:
        return EnvRepr.FUNCTIONAL

    def __repr__(self) -> str:
        tag = "id" if self.is_id else "fn"
        return f"FunEnv<{tag} {self.domain}->{self.codomain}>"


def _empty(i: int) -> Any:
    raise ScopeError(f"lookup of index {i} in an empty environment")


def _fun_cons(head: Suspension, tail: Env) -> FunEnv:
    tail_lookup = tail.lookup

    def fn(i: int) -> Any:
        if i == 0:
            return head.force()
        return tail_lookup(i - 1)

    return FunEnv(fn, tail.domain + 1, tail.codomain)


def _fun_comp(s: Env, t: Env) -> FunEnv:
    s_lookup = s.lookup

    def fn(i: int) -> Any:
        return s_lookup(i).subst(t)

    return FunEnv(fn, s.domain, t.codomain)


def _fun_shift(scope: int, by: int = 1) -> FunEnv:
    return FunEnv(lambda i: _mkvar(i + by), scope, scope + by)


def _fun_append(low: Env, high: Env, k: int) -> FunEnv:
    low_lookup, high_lookup = low.lookup, high.lookup

    def fn(i: int) -> Any:
        return low_lookup(i) if i < k else high_lookup(i - k)

    return FunEnv(fn, low.domain + high.domain, high.codomain)


# -- defunctionalized representations ---------------------------------------


class Inc(Env):
    """Adds ``k`` to every index; ``Inc(0)`` is the identity."""

    __slots__ = ("k", "_repr")

    def __init__(self, k: int, domain: int, repr: EnvRepr) -> None:
        self.k = k
        self.domain = domain
        self.codomain = domain + k
        self._repr = repr

    def lookup(self, i: int) -> Any:
        return _mkvar(i + self.k)

    @property
    def repr(self) -> EnvRepr:
        return self._repr

    def __repr__(self) -> str:
        return f"Inc({self.k})<{self.domain}->{self.codomain}>"


class Cons(Env):
    __slots__ = ("head", "tail")

    def __init__(self, head: Suspension, tail: Env) -> None:
        self.head = head
        self.tail = tail
        self.domain = tail.domain + 1
        self.codomain = tail.codomain

    def lookup(self, i: int) -> Any:
        env: Env = self
        while type(env) is Cons:
            if i == 0:
                return env.head.force()
            i -= 1
            env = env.tail
        return env.lookup(i)

    @property
    def repr(self) -> EnvRepr:
        return self.tail.repr

    def __repr__(self) -> str:
        return f"Cons({self.head!r}, {self.tail!r})"


class Comp(Env):
    __slots__ = ("first", "second")

    def __init__(self, first: Env, second: Env) -> None:
        self.first = first
        self.second = second
        self.domain = first.domain
        self.codomain = second.codomain

    def lookup(self, i: int) -> Any:
        return self.first.lookup(i).subst(self.second)

    @property
    def repr(self) -> EnvRepr:
        return self.first.repr

    def __repr__(self) -> str:
        return f"Comp({self.first!r}, {self.second!r})"


class Delay(Env):
    """An environment whose structure has not been computed yet."""

    __slots__ = ("env", "_repr")

    def __init__(self, env: Suspension, domain: int, codomain: int, repr: EnvRepr) -> None:
        self.env = env
        self.domain = domain
        self.codomain = codomain
        self._repr = repr

    def lookup(self, i: int) -> Any:
        return self.env.force().lookup(i)

    @property
    def repr(self) -> EnvRepr:
        return self._repr

    def __repr__(self) -> str:
        if self.env.forced:
            return repr(self.env.force())
        return f"Delay<{self.domain}->{self.codomain}>"


def _substituted(head: Suspension, env: Env) -> Suspension:
    return Suspension(lambda: head.force().subst(env))


def _delayed_comp(s: Env, t: Env) -> Delay:
    return Delay(Suspension(lambda: _compose(s, t)), s.domain, t.codomain, s.repr)


def _compose(s: Env, t: Env) -> Env:
    if type(s) is FunEnv:
        return _fun_comp(s, t)
    while type(s) is Delay:
        s = s.env.force()
    ts = type(s)
    if ts is Inc:
        k = s.k
        if k == 0:
            return t
        while True:
            tt = type(t)
            if tt is Delay:
                t = t.env.force()
            elif tt is Cons:
                t = t.tail
                k -= 1
                if k == 0:
                    return t
            else:
                break
        if type(t) is Inc:
            return Inc(k + t.k, s.domain, s._repr)
        return Comp(Inc(k, s.domain, s._repr), t)
    if type(t) is Inc and t.k == 0:
        return s
    if ts is Cons:
        if s.repr is EnvRepr.STRICT:
            tail = _compose(s.tail, t)
        else:
            tail = _delayed_comp(s.tail, t)
        return Cons(_substituted(s.head, t), tail)
    if ts is Comp:
        return _compose(s.first, _compose(s.second, t))
    return Comp(s, t)


# -- public algebra ----------------------------------------------------------


def _suspend(head: Any) -> Suspension:
    return head if isinstance(head, Suspension) else Suspension.ready(head)


def env_nil(codomain: int, repr: EnvRepr | str = DEFAULT_REPR) -> Env:
    check_scope(codomain)
    repr = EnvRepr.parse(repr)
    if repr is EnvRepr.FUNCTIONAL:
        return FunEnv(_empty, 0, codomain, is_id=codomain == 0)
    return Inc(codomain, 0, repr)


def env_cons(head: Any, tail: Env) -> Env:
    """Extend ``tail`` with ``head`` at index 0.

    ``head`` may be a term or a :class:`Suspension` producing one.
    """
    if indices.checking_enabled() and not isinstance(head, Suspension):
        bound = head.free_bound()
        if bound > tail.codomain:
            raise ScopeError(
                f"head uses index {bound - 1} but the environment maps into scope {tail.codomain}")
    head = _suspend(head)
    if type(tail) is FunEnv:
        return _fun_cons(head, tail)
    return Cons(head, tail)


def env_id(scope: int, repr: EnvRepr | str = DEFAULT_REPR) -> Env:
    check_scope(scope)
    repr = EnvRepr.parse(repr)
    if repr is EnvRepr.FUNCTIONAL:
        return FunEnv(_mkvar, scope, scope, is_id=True)
    return Inc(0, scope, repr)


def env_shift(scope: int, repr: EnvRepr | str = DEFAULT_REPR) -> Env:
    check_scope(scope)
    repr = EnvRepr.parse(repr)
    if repr is EnvRepr.FUNCTIONAL:
        return _fun_shift(scope)
    return Inc(1, scope, repr)


def env_comp(first: Env, second: Env) -> Env:
    """``first`` then ``second``: looking up ``i`` gives ``second`` applied to ``first[i]``."""
    if first.codomain != second.domain:
        raise ScopeError(
            f"cannot compose {first.domain}->{first.codomain} with {second.domain}->{second.codomain}")
    return _compose(first, second)


def is_identity(e: Env) -> bool:
    """Syntactic identity test; extensional identities are not detected."""
    if type(e) is Inc:
        return e.k == 0
    return type(e) is FunEnv and e.is_id


def env_up(e: Env) -> Env:
    """Lift ``e`` under one binder: 0 maps to itself, the rest is shifted."""
    if is_identity(e):
        return env_id(e.domain + 1, e.repr)
    shifted = env_comp(e, env_shift(e.codomain, e.repr))
    return env_cons(Suspension.ready(_mkvar(0)), shifted)


def env_append(low: Env, high: Env, low_size: SizeWitness | int) -> Env:
    """Indices below ``low_size`` go to ``low``, the rest (offset) to ``high``."""
    k = low_size.value if isinstance(low_size, SizeWitness) else low_size
    if k != low.domain:
        raise ScopeError(f"size witness {k} does not match environment domain {low.domain}")
    if low.codomain != high.codomain:
        raise ScopeError(f"codomains differ: {low.codomain} and {high.codomain}")
    if k == 0:
        return high
    if type(high) is FunEnv:
        return _fun_append(low, high, k)
    heads = []
    env = low
    for i in range(k):
        while type(env) is Delay:
            env = env.env.force()
        if type(env) is Cons:
            heads.append(env.head)
            env = env.tail
        else:
            heads.extend(_looked_up(env, j) for j in range(k - i))
            break
    result = high
    for head in reversed(heads):
        result = Cons(head, result)
    return result


def _looked_up(env: Env, i: int) -> Suspension:
    return Suspension(lambda: env.lookup(i))


def env_lookup(e: Env, i: BoundedIndex | int) -> Any:
    if isinstance(i, BoundedIndex):
        if i.bound != e.domain:
            raise ScopeError(f"index bounded by {i.bound} used on an environment of domain {e.domain}")
        i = i.index
    elif not 0 <= i < e.domain:
        raise ScopeError(f"index {i} outside environment domain {e.domain}")
    return e.lookup(i)


def apply(e: Env, t: Any) -> Any:
    if indices.checking_enabled():
        bound = t.free_bound()
        if bound > e.domain:
            raise ScopeError(f"term uses index {bound - 1} but the environment has domain {e.domain}")
    return t.subst(e)


def apply_opt(e: Env, t: Any) -> Any:
    """:func:`apply`, except that syntactic identities return ``t`` untouched."""
    if is_identity(e):
        return t
    return apply(e, t)
