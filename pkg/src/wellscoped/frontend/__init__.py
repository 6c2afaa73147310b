"""Concrete syntax: parsing, scope checking, printing, generation and the benchmark term."""
from wellscoped.frontend.generate import GenConfig, beta_steps, gen_term, random_term, take
from wellscoped.frontend.lennart import lennart_built, lennart_named, lennart_source, lennart_term
from wellscoped.frontend.named import (
    NApp, NBool, NLam, NLetPair, NPPair, NPVar, NPair, NSplit, NVar, NamedTerm, Pos, UnboundName,
    binder_names, n_app, n_lams, n_let, scope_check,
)
from wellscoped.frontend.parser import ParseError, parse
from wellscoped.frontend.pretty import pretty, pretty_indices

__all__ = [
    "GenConfig", "NApp", "NBool", "NLam", "NLetPair", "NPPair", "NPVar", "NPair", "NSplit", "NVar",
    "NamedTerm", "ParseError", "Pos", "UnboundName", "beta_steps", "binder_names", "gen_term",
    "lennart_built", "lennart_named", "lennart_source", "lennart_term", "n_app", "n_lams", "n_let",
    "parse", "pretty", "pretty_indices", "random_term", "scope_check", "take",
]
