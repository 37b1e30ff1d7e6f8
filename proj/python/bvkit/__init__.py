"""Exact checks for BV-type operators.

Elements and operators are written in the same expression grammar as the
suite files, e.g. ``"3/2 * x1^2*t1"`` or ``"d/dx1 * d/dt1"``.
"""

import json
from fractions import Fraction

from ._bvkit import Algebra, ConfigError, suite_names
from . import _bvkit

__all__ = ["Algebra", "ConfigError", "rank", "run_suite", "run_suite_file", "suite_names"]


def rank(rows):
    """Rank of a list of rows with int, Fraction or "p/q" entries."""
    return _bvkit.rank([[str(Fraction(x)) for x in r] for r in rows])


def run_suite(text, jobs=1, seed=None, cap=None):
    """Run a suite given as YAML text; returns the JSON report as a dict."""
    return json.loads(_bvkit.run_suite_text(text, jobs, seed, cap))


def run_suite_file(path, jobs=1, seed=None, cap=None):
    return json.loads(_bvkit.run_suite_file(str(path), jobs, seed, cap))
