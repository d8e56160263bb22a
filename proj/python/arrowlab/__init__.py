"""Ramsey arrow search, gadget constructions and equivalence experiments."""

import json as _json

from ._core import (
    BudgetExceeded,
    Graph,
    arrow,
    check_theorem43_predicate,
    classical_colouring,
    complete_graph,
    cycle_graph,
    export_dot,
    focus,
    is_critical,
    is_minimal,
    max_kclique_free_subset,
    path_graph,
    pendant_clique,
    ramsey_number,
    recolour,
    theorem17_colouring,
)
from ._core import run as _run

__version__ = "0.1.0"


def run(*args):
    """Run a CLI command and return (exit code, parsed record)."""
    code, out, _ = _run([str(a) for a in args])
    try:
        return code, _json.loads(out)
    except ValueError:
        return code, out
