"""Well-scoped de Bruijn terms with delayed substitution, and evaluators built on them."""
from wellscoped.binders import (
    Binder1, PatBinder, Telescope, apply_binder, bind1, bind_pat, instantiate1, instantiate_pat,
    instantiate_pat_with, instantiate_with, tele_cons, tele_fold, tele_nil, telescope, unbind, unbind_pat,
)
from wellscoped.environment import (
    EnvRepr, Suspension, apply, apply_opt, env_append, env_comp, env_cons, env_id, env_lookup, env_nil,
    env_shift, env_up,
)
from wellscoped.evaluators import (
    BINDV, ENVV, EVALV, SUBSTV, EvalError, EvalStrategy, Fuel, FuelExhausted, evaluate, nf, whnf,
)
from wellscoped.indices import BoundedIndex, ScopeError, SizeWitness, checking, set_checking
from wellscoped.syntax import (
    App, BoolLit, Lam, LetPair, PPair, PVar, Pair, Split, Term, Var, alpha_eq, free_index_bound, to_sexpr,
)

__version__ = "0.1.0"

__all__ = [
    "alpha_eq", "App", "apply", "apply_binder", "apply_opt", "bind1", "bind_pat", "Binder1",
    "BINDV", "BoolLit", "BoundedIndex", "checking", "env_append", "env_comp", "env_cons", "env_id",
    "env_lookup", "env_nil", "env_shift", "env_up", "EnvRepr", "ENVV", "EvalError", "EvalStrategy",
    "evaluate", "EVALV", "free_index_bound", "Fuel", "FuelExhausted", "instantiate1",
    "instantiate_pat", "instantiate_pat_with", "instantiate_with", "Lam", "LetPair", "nf", "Pair",
    "PatBinder", "PPair", "PVar", "ScopeError", "set_checking", "SizeWitness", "Split", "SUBSTV",
    "Suspension", "tele_cons", "tele_fold", "tele_nil", "Telescope", "telescope", "Term",
    "to_sexpr", "unbind", "unbind_pat", "Var", "whnf",
]
