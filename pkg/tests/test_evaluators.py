import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from helpers import REPRS, seeded_terms
from wellscoped.binders import unbind
from wellscoped.deep import run_deep
from wellscoped.environment import env_cons, env_id, env_nil
from wellscoped.evaluators import (
    BINDV, ENVV, EVALV, SUBSTV, EvalError, EvalStrategy, Fuel, FuelExhausted, Impl, eval_env,
    eval_subst, evaluate, find_redex, nf, whnf,
)
from wellscoped.frontend import parse, scope_check
from wellscoped.frontend.generate import random_term
from wellscoped.syntax import App, FALSE, Lam, TRUE, Var, lam, to_sexpr

WEAK = [EvalStrategy.parse(n) for n in ("evalv", "eval", "substv", "subst", "bindv", "bind", "envv", "env")]
NORMALIZING = [EvalStrategy.parse(n) for n in ("substv", "bindv", "bind", "envv", "env")]
ids = lambda s: s.name


def term(src, scope=0):
    return scope_check(parse(src), [f"x{i}" for i in range(scope)])


# -- an independent textbook normal-order reducer on tuples --------------------------


def to_tuple(t):
    match t:
        case Var(i):
            return ("v", i)
        case Lam(b):
            return ("l", to_tuple(unbind(b)))
        case App(f, a):
            return ("a", to_tuple(f), to_tuple(a))
    raise TypeError(t)


def shift(t, d, c=0):
    match t:
        case ("v", i):
            return ("v", i + d) if i >= c else t
        case ("l", b):
            return ("l", shift(b, d, c + 1))
        case ("a", f, a):
            return ("a", shift(f, d, c), shift(a, d, c))


def subst(t, j, s):
    match t:
        case ("v", i):
            return s if i == j else t
        case ("l", b):
            return ("l", subst(b, j + 1, shift(s, 1)))
        case ("a", f, a):
            return ("a", subst(f, j, s), subst(a, j, s))


def beta(body, arg):
    return shift(subst(body, 0, shift(arg, 1)), -1)


def oracle_nf(t, budget):
    """Leftmost-outermost normalization, one step at a time."""

    def step(t):
        match t:
            case ("a", ("l", b), a):
                return beta(b, a)
            case ("a", f, a):
                f2 = step(f)
                if f2 is not None:
                    return ("a", f2, a)
                a2 = step(a)
                return None if a2 is None else ("a", f, a2)
            case ("l", b):
                b2 = step(b)
                return None if b2 is None else ("l", b2)
        return None

    for _ in range(budget):
        nxt = step(t)
        if nxt is None:
            return t
        t = nxt
    return None


def tuple_sexpr(t):
    match t:
        case ("v", i):
            return str(i)
        case ("l", b):
            return f"(\\ {tuple_sexpr(b)})"
        case ("a", f, a):
            return f"(@ {tuple_sexpr(f)} {tuple_sexpr(a)})"


# -- examples ------------------------------------------------------------------------


@pytest.mark.parametrize("strategy", WEAK, ids=ids)
@pytest.mark.parametrize("src, expected", [
    (r"(\x. x) true", "true"),
    ("true true false", "true"),
    ("false true false", "false"),
    (r"(\f. f false true) (\a b. b)", "true"),
    (r"split (true, false) as (x, y) in y", "false"),
    (r"let (a, (b, c)) = (false, (true, false)) in b", "true"),
    (r"let (p) = (true, false) in split p as (x, y) in x", "true"),
    (r"(\x. \y. x) false", r"\y. false"),
])
def test_weak_examples(strategy, src, expected):
    assert evaluate(term(src), strategy) == term(expected)


@pytest.mark.parametrize("strategy", WEAK, ids=ids)
def test_partial_boolean_is_a_value(strategy):
    t = App(TRUE, FALSE)
    assert evaluate(t, strategy) == t


@pytest.mark.parametrize("strategy", NORMALIZING, ids=ids)
@pytest.mark.parametrize("src, expected", [
    (r"\x. (\y. y) x", r"\x. x"),
    (r"\f. (\x. f (x x)) (\y. y)", r"\f. f (\y. y)"),
    (r"(\x y. y x) true", r"\y. y true"),
    (r"\p. split (p, true) as (a, b) in b", r"\p. true"),
])
def test_nf_examples(strategy, src, expected):
    assert nf(term(src), strategy) == term(expected)


@pytest.mark.parametrize("strategy", [s for s in WEAK if s.impl is not Impl.EVALV], ids=ids)
def test_open_terms(strategy):
    t = term(r"x0 ((\y. y) true)", 1)
    assert evaluate(t, strategy, scope=1) == t
    # free names are levels: x1 is the innermost, index 0
    assert nf(term(r"(\y. y) x1", 2), strategy, scope=2) == Var(0)
    assert nf(term(r"(\y. y) x0", 2), strategy, scope=2) == Var(1)


@pytest.mark.parametrize("strategy", WEAK, ids=ids)
def test_ill_shaped_redex_raises(strategy):
    with pytest.raises(EvalError):
        evaluate(term("(true, false) true"), strategy)
    with pytest.raises(EvalError):
        evaluate(term(r"split (\x. x) as (a, b) in a"), strategy)


def test_stuck_terms_are_returned_by_whnf_and_nf():
    t = term("(true, false) true")
    assert whnf(t, BINDV) == t
    assert nf(t, ENVV) == t


@pytest.mark.parametrize("strategy", WEAK, ids=ids)
def test_fuel(strategy):
    omega = term(r"(\x. x x) (\x. x x)")
    fuel = Fuel(50)
    with pytest.raises(FuelExhausted) as info:
        evaluate(omega, strategy, fuel)
    assert info.value.steps == 51
    counted = Fuel()
    evaluate(term(r"(\x. x) ((\y. y) true)"), strategy, counted)
    assert counted.steps >= 2


def test_call_by_need_shares_work():
    src = r"(\x. x (x false true) false) ((\y. y) ((\z. z) true))"
    need, name = Fuel(), Fuel()
    assert evaluate(term(src), "bindv", need) == FALSE
    assert evaluate(term(src), "bind", name) == FALSE
    assert need.steps < name.steps


def test_strategy_names():
    assert EvalStrategy.parse("bindv") == BINDV
    assert EvalStrategy.parse("BIND") == EvalStrategy(Impl.BINDV, False)
    assert EvalStrategy.parse(ENVV) is ENVV
    assert [s.name for s in (EVALV, SUBSTV, BINDV, ENVV)] == ["evalv", "substv", "bindv", "envv"]
    with pytest.raises(ValueError):
        EvalStrategy.parse("cbv")


def test_closure_evaluator_limits():
    with pytest.raises(ValueError):
        nf(TRUE, EVALV)
    with pytest.raises(Exception):
        evaluate(Var(0), EVALV, scope=1)
    with pytest.raises(ValueError):
        eval_subst(TRUE, ENVV)


@pytest.mark.parametrize("repr", REPRS, ids=lambda r: r.value)
def test_eval_env_applies_environment(repr):
    env = env_cons(lam(Var(0)), env_nil(0, repr))
    assert eval_env(env, App(Var(0), TRUE)) == TRUE
    assert eval_env(env_id(1, repr), Var(0)) == Var(0)


def test_find_redex():
    assert find_redex(term(r"\x. x")) is None
    assert find_redex(term("true false")) is None
    assert find_redex(term("true false true")) is not None
    assert find_redex(term(r"\x. (\y. y) x")) is not None
    assert find_redex(term(r"split (true, true) as (a, b) in a")) is not None


def test_checking_mode_gives_same_results(checked):
    t = term(r"(\x y. y x) true (\b. b false true)")
    for s in NORMALIZING:
        assert nf(t, s) == FALSE


# -- properties ------------------------------------------------------------------


def normal_forms(t, strategies, fuel=2000):
    out = []
    for s in strategies:
        try:
            out.append(run_deep(nf, t, s, Fuel(fuel), scope=0))
        except FuelExhausted:
            return None
    return out


@settings(max_examples=1000)
@given(seeded_terms(0, 10), st.sampled_from(NORMALIZING), st.sampled_from(REPRS))
def test_nf_idempotent_and_redex_free(t, strategy, repr):
    try:
        n = run_deep(nf, t, strategy, Fuel(2000), scope=0, repr=repr)
    except FuelExhausted:
        assume(False)
    assert find_redex(n) is None
    assert run_deep(nf, n, strategy, Fuel(0), scope=0, repr=repr) == n


@settings(max_examples=1000)
@given(seeded_terms(0, 10))
def test_nf_agrees_with_textbook_reducer(t):
    expected = oracle_nf(to_tuple(t), 300)
    assume(expected is not None)
    results = normal_forms(t, NORMALIZING, fuel=5000)
    assert results is not None
    for r in results:
        assert to_sexpr(r) == tuple_sexpr(expected)


@settings(max_examples=500)
@given(seeded_terms(2, 10))
def test_open_nf_agrees_across_strategies(t):
    try:
        results = [run_deep(nf, t, s, Fuel(2000), scope=2) for s in NORMALIZING]
    except FuelExhausted:
        assume(False)
    assert all(r == results[0] for r in results)


@settings(max_examples=500)
@given(st.integers(0, 2**32))
def test_weak_results_agree(seed):
    t = random_term(random.Random(seed), 0, 10)
    groups = {True: [], False: []}
    for s in WEAK:
        try:
            groups[s.prereduce_arg and s.impl is not Impl.SUBSTV].append(run_deep(evaluate, t, s, Fuel(2000)))
        except FuelExhausted:
            assume(False)
    for results in groups.values():
        assert all(r == results[0] for r in results)
