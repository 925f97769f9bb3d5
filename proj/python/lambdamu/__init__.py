"""Typed lambda-mu calculus: terms, typing, the six reductions, test harness."""

import json

from ._core import (
    NotARedex,
    ParseError,
    Term,
    UnknownSuite,
    alpha_translate,
    check,
    cycle_term,
    enumerate_terms,
    eta,
    infer,
    is_normal,
    is_typable,
    parse,
    redexes,
    suite_names,
)
from . import _core


def reduce(term, rules="bmMrte", strategy="lo", fuel=100000):
    return json.loads(_core.reduce_json(term, rules, strategy, fuel))


def normalize(term, fuel=100000):
    return json.loads(_core.normalize_json(term, fuel))


def run_suite(name, max_cxty=5, lam_pool=1, mu_pool=1):
    return json.loads(_core.run_suite_json(name, max_cxty, lam_pool, mu_pool))


__all__ = [
    "NotARedex", "ParseError", "Term", "UnknownSuite", "alpha_translate", "check",
    "cycle_term", "enumerate_terms", "eta", "infer", "is_normal", "is_typable", "normalize",
    "parse", "redexes", "reduce", "run_suite", "suite_names",
]
