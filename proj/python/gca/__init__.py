"""Exact computations with self-similar actions, tight groupoids and their
Steinberg algebras: Python bindings over the C++ core.

Structured results (hausdorff, singular_test, regular_open, reports) are
returned as plain dicts decoded from the core's JSON reports.
"""

import json as _json

from gca._gca import (  # noqa: F401
    Element,
    System,
    UndecidedError,
    act_infinite,
    act_letter,
    act_word,
    convolve,
    element,
    equal,
    grig_nucleus_family_json,
    is_fixed,
    is_strongly_fixed,
    katsura_act,
    msfw,
    nucleus,
    solve_homogeneous,
    system,
)
from gca import _gca


def hausdorff(sys):
    return _json.loads(_gca.hausdorff(sys))


def faithful(sys):
    return _gca.faithful(sys)


def singular_test(sys, field, element_json, depth=12):
    return _json.loads(_gca.singular_test(sys, field, element_json, depth))


def regular_open(sys, generators, depth=12):
    return _json.loads(_gca.regular_open(sys, generators, depth))


def grig_report(depth=12):
    return _json.loads(_gca.grig_report(depth))


def katsura_report(matrices_json=""):
    return _json.loads(_gca.katsura_report(matrices_json))


__all__ = [
    "Element",
    "System",
    "UndecidedError",
    "act_infinite",
    "act_letter",
    "act_word",
    "convolve",
    "element",
    "equal",
    "faithful",
    "grig_nucleus_family_json",
    "grig_report",
    "hausdorff",
    "is_fixed",
    "is_strongly_fixed",
    "katsura_act",
    "katsura_report",
    "msfw",
    "nucleus",
    "regular_open",
    "singular_test",
    "solve_homogeneous",
    "system",
]
