import threading

import pytest
from hypothesis import given, settings, strategies as st

from helpers import REPRS, build_env, env_recipes, lookups, rebuild, terms
from wellscoped.eager import eager_apply_env
from wellscoped.environment import (
    Cons, Delay, EnvRepr, Inc, Suspension, apply, apply_opt, env_append, env_comp, env_cons,
    env_id, env_lookup, env_nil, env_shift, env_up, is_identity,
)
from wellscoped.indices import BoundedIndex, ScopeError
from wellscoped.syntax import App, BoolLit, Lam, TRUE, Var, lam
from wellscoped.binders import unbind

reprs = pytest.mark.parametrize("repr", REPRS, ids=lambda r: r.value)
A, B = BoolLit(True), BoolLit(False)


@reprs
def test_nil(repr):
    e = env_nil(3, repr)
    assert (e.domain, e.codomain) == (0, 3)
    with pytest.raises(ScopeError):
        env_lookup(e, 0)
    closed = lam(Var(0))
    assert apply(env_nil(0, repr), closed) == closed


@reprs
def test_cons_lookup(repr):
    e = env_cons(A, env_cons(B, env_nil(0, repr)))
    assert e.domain == 2
    assert env_lookup(e, 0) == A
    assert env_lookup(e, 1) == B
    assert env_lookup(env_cons(A, env_nil(4, repr)), 0) == A


@reprs
def test_id_and_shift(repr):
    assert env_lookup(env_id(2, repr), 0) == Var(0)
    assert env_lookup(env_id(2, repr), 1) == Var(1)
    assert env_lookup(env_id(3, repr), 2) == Var(2)
    s = env_shift(2, repr)
    assert (s.domain, s.codomain) == (2, 3)
    assert env_lookup(s, 0) == Var(1)
    assert env_lookup(s, 1) == Var(2)
    assert env_lookup(env_shift(3, repr), 2) == Var(3)
    assert apply(env_shift(1, repr), Var(0)) == Var(1)


@reprs
def test_comp_examples(repr):
    s = env_cons(A, env_cons(B, env_nil(0, repr)))
    left = env_comp(env_id(2, repr), s)
    assert lookups(left) == lookups(s)
    dropped = env_comp(env_shift(1, repr), env_cons(A, env_cons(B, env_nil(0, repr))))
    assert lookups(dropped) == [B]
    t = lam(Var(0))
    e = env_comp(env_cons(Var(0), env_nil(1, repr)), env_cons(t, env_nil(0, repr)))
    assert env_lookup(e, 0) == t


@reprs
def test_comp_scope_mismatch(repr):
    with pytest.raises(ScopeError):
        env_comp(env_id(2, repr), env_id(3, repr))


@reprs
def test_up_examples(repr):
    assert env_lookup(env_up(env_id(1, repr)), 0) == Var(0)
    assert env_lookup(env_up(env_shift(1, repr)), 1) == Var(2)
    u = env_up(env_nil(4, repr))
    assert (u.domain, u.codomain) == (1, 5)
    assert env_lookup(u, 0) == Var(0)


@reprs
def test_append_examples(repr):
    s = env_cons(A, env_cons(B, env_nil(0, repr)))
    assert lookups(env_append(env_nil(0, repr), s, 0)) == lookups(s)
    both = env_append(env_cons(A, env_nil(0, repr)), env_cons(B, env_nil(0, repr)), 1)
    assert lookups(both) == [A, B]
    assert lookups(env_append(s, env_nil(0, repr), 2)) == lookups(s)


@reprs
def test_append_rejects_bad_witness(repr):
    with pytest.raises(ScopeError):
        env_append(env_cons(A, env_nil(0, repr)), env_nil(0, repr), 2)
    with pytest.raises(ScopeError):
        env_append(env_cons(A, env_nil(0, repr)), env_nil(1, repr), 1)


@reprs
def test_lookup_bounds(repr):
    e = env_id(2, repr)
    assert env_lookup(e, BoundedIndex(1, 2)) == Var(1)
    with pytest.raises(ScopeError):
        env_lookup(e, BoundedIndex(0, 3))
    with pytest.raises(ScopeError):
        env_lookup(e, 2)
    assert e[1] == Var(1)


@reprs
def test_apply_examples(repr):
    u = lam(Var(0))
    assert apply(env_cons(u, env_nil(0, repr)), Var(0)) == u
    s = env_cons(A, env_cons(B, env_nil(0, repr)))
    assert apply(s, App(Var(0), Var(1))) == App(A, B)
    shifted = apply(env_shift(1, repr), Lam(lam(Var(1), 1).binder))
    assert unbind(shifted.binder) == Var(2)


@reprs
def test_apply_opt(repr):
    t = App(Var(0), Var(1))
    assert apply_opt(env_id(2, repr), t) is t
    assert apply_opt(env_shift(1, repr), Var(0)) == Var(1)


def test_checked_cons_rejects_out_of_scope_head(checked):
    with pytest.raises(ScopeError):
        env_cons(Var(3), env_nil(2))


def test_checked_apply_rejects_out_of_scope_term(checked):
    with pytest.raises(ScopeError):
        apply(env_id(1), Var(1))


# -- smart composition -------------------------------------------------------------


def test_smart_rules():
    lazy = EnvRepr.LAZY
    s = env_cons(A, env_nil(0, lazy))
    assert env_comp(env_id(1, lazy), s) is s
    assert env_comp(s, env_id(0, lazy)) is s
    two = env_comp(env_shift(3, lazy), env_shift(4, lazy))
    assert type(two) is Inc and two.k == 2
    drop = env_comp(env_shift(1, lazy), env_cons(A, env_cons(B, env_nil(0, lazy))))
    assert type(drop) is Cons and drop.domain == 1
    pushed = env_comp(env_cons(Var(0), env_nil(1, lazy)), env_cons(A, env_nil(0, lazy)))
    assert type(pushed) is Cons


def test_lazy_spine_is_suspended_strict_is_not():
    def spine(repr):
        s = env_cons(Var(0), env_cons(Var(1), env_nil(2, repr)))
        return env_comp(s, env_cons(A, env_cons(B, env_nil(0, repr))))

    assert type(spine(EnvRepr.LAZY).tail) is Delay
    assert type(spine(EnvRepr.STRICT).tail) is Cons


def test_comp_with_lifted_env():
    lazy = EnvRepr.LAZY
    e = env_comp(env_shift(1, lazy), env_up(env_shift(1, lazy)))
    assert (e.domain, e.codomain) == (1, 3)
    assert lookups(e) == [Var(2)]


# -- suspensions ---------------------------------------------------------------------


def test_suspension_memoizes():
    calls = []
    s = Suspension(lambda: calls.append(1) or TRUE)
    assert not s.forced
    assert s.force() is TRUE and s.force() is TRUE
    assert s.forced and calls == [1]


def test_suspension_first_write_wins_across_threads():
    results = []
    s = Suspension(lambda: object())
    threads = [threading.Thread(target=lambda: results.append(s.force())) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)


@reprs
def test_lookup_forces_only_its_own_suspension(repr):
    forced = []

    def susp(i):
        return Suspension(lambda: forced.append(i) or BoolLit(bool(i % 2)))

    e = env_nil(0, repr)
    for i in reversed(range(5)):
        e = env_cons(susp(i), e)
    env_lookup(e, 3)
    assert forced == [3]
    env_lookup(e, 3)
    assert forced == [3]


# -- laws ------------------------------------------------------------------------------

scopes = st.integers(0, 3)
any_repr = st.sampled_from(REPRS)


@st.composite
def comp_case(draw):
    m, k, n = draw(scopes), draw(scopes), draw(scopes)
    return draw(env_recipes(m, k)), draw(env_recipes(k, n)), m


@settings(max_examples=1000)
@given(comp_case(), any_repr)
def test_pointwise_composition_law(case, repr):
    r1, r2, m = case
    s1, s2 = build_env(r1, repr), build_env(r2, repr)
    composed = env_comp(s1, s2)
    for i in range(m):
        assert env_lookup(composed, i) == apply(s2, env_lookup(s1, i))


@st.composite
def fusion_case(draw):
    r1, r2, m = draw(comp_case())
    return r1, r2, draw(terms(m, 3))


@settings(max_examples=1000)
@given(fusion_case(), any_repr)
def test_fusion_law(case, repr):
    r1, r2, t = case
    s1, s2 = build_env(r1, repr), build_env(r2, repr)
    t = rebuild(t, repr)
    assert apply(s2, apply(s1, t)) == apply(env_comp(s1, s2), t)


@st.composite
def env_and_term(draw):
    m, n = draw(scopes), draw(scopes)
    return draw(env_recipes(m, n)), draw(terms(m, 3)), m, n


@settings(max_examples=1000)
@given(env_and_term(), any_repr)
def test_identity_laws(case, repr):
    recipe, t, m, n = case
    t = rebuild(t, repr)
    assert apply(env_id(m, repr), t) == t
    s = build_env(recipe, repr)
    assert lookups(env_comp(env_id(m, repr), s)) == lookups(s)
    assert lookups(env_comp(s, env_id(n, repr))) == lookups(s)


@settings(max_examples=1000)
@given(env_and_term(), any_repr)
def test_up_law(case, repr):
    recipe, _, m, n = case
    s = build_env(recipe, repr)
    by_definition = env_cons(Var(0), env_comp(s, env_shift(n, repr)))
    reference = env_up(build_env(recipe, EnvRepr.FUNCTIONAL))
    assert lookups(env_up(s)) == lookups(by_definition) == lookups(reference)


@settings(max_examples=1000)
@given(env_and_term())
def test_representations_agree(case):
    recipe, t, _, _ = case
    envs = [build_env(recipe, r) for r in REPRS]
    results = [lookups(e) for e in envs]
    assert results[0] == results[1] == results[2]
    applied = [apply(e, rebuild(t, r)) for e, r in zip(envs, REPRS)]
    assert applied[0] == applied[1] == applied[2]


@settings(max_examples=1000)
@given(env_and_term(), any_repr)
def test_apply_agrees_with_eager_oracle(case, repr):
    recipe, t, _, _ = case
    s = build_env(recipe, repr)
    t = rebuild(t, repr)
    assert apply(s, t) == eager_apply_env(s, t)
    assert apply_opt(s, t) == apply(s, t)


def test_is_identity_is_syntactic():
    assert is_identity(env_id(3))
    assert is_identity(env_id(3, EnvRepr.FUNCTIONAL))
    assert not is_identity(env_comp(env_shift(2), env_cons(Var(0), env_shift(2))))
