"""Seeded generator of well-scoped lambda terms.

Terms are built top-down from a size budget. Each node picks uniformly among
the constructors allowed at the current scope (a variable only when something
is in scope). An application hands its remaining budget to the function and
argument, with the function's share drawn from a geometric distribution whose
mean is half the budget. A variable can only be drawn from the ambient scope,
so every term is well scoped by construction.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from wellscoped.binders import bind1
from wellscoped.environment import DEFAULT_REPR, EnvRepr
from wellscoped.evaluators import BINDV, EvalStrategy, Fuel, FuelExhausted, nf
from wellscoped.syntax import App, Lam, Term, Var

# the min_steps filter counts call-by-name steps
_COUNTER = EvalStrategy(BINDV.impl, prereduce_arg=False)


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    target_scope: int = 0
    size_budget: int = 24
    min_steps: int = 0
    repr: EnvRepr = DEFAULT_REPR


def _geometric(rng: random.Random, n: int) -> int:
    """A draw in ``0..n`` with mean close to ``n / 2``."""
    p = 2.0 / (n + 2.0)
    k = 0
    while k < n and rng.random() >= p:
        k += 1
    return k


def random_term(rng: random.Random, scope: int, budget: int, repr: EnvRepr = DEFAULT_REPR) -> Term:
    if budget <= 0:
        if scope == 0:
            return Lam(bind1(Var(0), 0, repr))
        return Var(rng.randrange(scope))
    choices = ("var", "lam", "app") if scope > 0 else ("lam", "app")
    match rng.choice(choices):
        case "var":
            return Var(rng.randrange(scope))
        case "lam":
            return Lam(bind1(random_term(rng, scope + 1, budget - 1, repr), scope, repr))
        case _:
            rest = budget - 1
            left = _geometric(rng, rest)
            return App(random_term(rng, scope, left, repr), random_term(rng, scope, rest - left, repr))


def beta_steps(t: Term, limit: int | None, scope: int) -> int | None:
    """Steps a call-by-name normalization takes, or None past ``limit``."""
    fuel = Fuel(limit)
    try:
        nf(t, _COUNTER, fuel, scope=scope)
    except FuelExhausted:
        return None
    return fuel.steps


def gen_term(cfg: GenConfig) -> Iterator[Term]:
    """Endless, deterministic stream of terms valid at ``cfg.target_scope``.

    With ``min_steps > 0`` only terms whose normal form is reached in between
    ``min_steps`` and ``10 * min_steps`` steps are kept.
    """
    rng = random.Random(cfg.seed)
    repr = EnvRepr.parse(cfg.repr)
    while True:
        t = random_term(rng, cfg.target_scope, cfg.size_budget, repr)
        if cfg.min_steps <= 0:
            yield t
            continue
        steps = beta_steps(t, 10 * cfg.min_steps, cfg.target_scope)
        if steps is not None and steps >= cfg.min_steps:
            yield t


def take(cfg: GenConfig, n: int) -> list[Term]:
    stream = gen_term(cfg)
    return [next(stream) for _ in range(n)]
