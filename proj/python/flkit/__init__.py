"""Python bindings for the flkit fault-localization library."""

import json

from ._flkit import (
    DefectBundle,
    FlkitError,
    aggregate,
    blues,
    brute_force,
    distance,
    extract_statements,
    load_bundle,
    porter_stem,
    run_command,
    sbfl,
    sbir,
    tokenize,
    version,
)
from ._flkit import evaluate as _evaluate

__version__ = "0.3.0"


def evaluate(bundles, techniques=(), union_mode=False):
    """Evaluates techniques over bundles and returns the report as a dict."""
    return json.loads(_evaluate(list(bundles), list(techniques), union_mode))


__all__ = [
    "DefectBundle",
    "FlkitError",
    "aggregate",
    "blues",
    "brute_force",
    "distance",
    "evaluate",
    "extract_statements",
    "load_bundle",
    "porter_stem",
    "run_command",
    "sbfl",
    "sbir",
    "tokenize",
    "version",
]
