"""Augustsson's benchmark term: Church-style numerals checking 6! == sum [0..37] + 17.

The source ships as ``wellscoped/data/lennart.lam``. :func:`lennart_named`
builds the same term in Python and the tests check the two agree.
"""
from __future__ import annotations

from importlib import resources

from wellscoped.environment import DEFAULT_REPR, EnvRepr
from wellscoped.frontend.named import NBool, NVar, NamedTerm, n_app, n_lams, n_let, scope_check
from wellscoped.frontend.parser import parse
from wellscoped.syntax import Term


def lennart_source() -> str:
    return resources.files("wellscoped").joinpath("data/lennart.lam").read_text(encoding="utf-8")


def lennart_term(repr: EnvRepr | str = DEFAULT_REPR) -> Term:
    """The closed term parsed from the shipped source."""
    return scope_check(parse(lennart_source()), (), repr)


def _v(name: str) -> NVar:
    return NVar(name)


def _a(*names_or_terms) -> NamedTerm:
    parts = [_v(x) if isinstance(x, str) else x for x in names_or_terms]
    return n_app(*parts)


def lennart_named() -> NamedTerm:
    true, false = NBool(True), NBool(False)
    self_app = _a("g", _a("x", "x"))
    bindings = [
        ("Zero", n_lams("z s", _v("z"))),
        ("Succ", n_lams("n z s", _a("s", "n"))),
        ("one", _a("Succ", "Zero")),
        ("two", _a("Succ", "one")),
        ("three", _a("Succ", "two")),
        ("isZero", n_lams("n", _a("n", true, n_lams("m", false)))),
        ("const", n_lams("x y", _v("x"))),
        ("Pair", n_lams("a b p", _a("p", "a", "b"))),
        ("fst", n_lams("ab", _a("ab", n_lams("a b", _v("a"))))),
        ("snd", n_lams("ab", _a("ab", n_lams("a b", _v("b"))))),
        ("fix", n_lams("g", _a(n_lams("x", self_app), n_lams("x", self_app)))),
        ("add", _a("fix", n_lams("radd x y", _a("x", "y", n_lams("n", _a("Succ", _a("radd", "n", "y"))))))),
        ("mul", _a("fix", n_lams("rmul x y", _a("x", "Zero", n_lams("n", _a("add", "y", _a("rmul", "n", "y"))))))),
        ("fac", _a("fix", n_lams("rfac x", _a("x", "one", n_lams("n", _a("mul", "x", _a("rfac", "n"))))))),
        ("eqnat", _a("fix", n_lams("reqnat x y", _a(
            "x",
            _a("y", true, _a("const", false)),
            n_lams("x1", _a("y", false, n_lams("y1", _a("reqnat", "x1", "y1")))))))),
        ("sumto", _a("fix", n_lams("rsumto x", _a("x", "Zero", n_lams("n", _a("add", "x", _a("rsumto", "n"))))))),
        ("n5", _a("add", "two", "three")),
        ("n6", _a("add", "three", "three")),
        ("n17", _a("add", "n6", _a("add", "n6", "n5"))),
        ("n37", _a("Succ", _a("mul", "n6", "n6"))),
        ("n703", _a("sumto", "n37")),
        ("n720", _a("fac", "n6")),
    ]
    return n_let(bindings, _a("eqnat", "n720", _a("add", "n703", "n17")))


def lennart_built(repr: EnvRepr | str = DEFAULT_REPR) -> Term:
    """The same closed term, built without the parser."""
    return scope_check(lennart_named(), (), repr)
