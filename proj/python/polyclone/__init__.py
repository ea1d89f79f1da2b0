"""Python bindings for the polyclone C++ library.

Tables are output bit strings with row 0 first ("0001" is AND of two
inputs). Circuits, covers and TSVND circuits use the same text formats as
the command-line tool.
"""

import json

from ._core import (
    ParseError,
    anchored_pol_cover_from_tsvnd,
    circuit_from_cover,
    classify,
    computes,
    cover_from_circuit,
    decided_function,
    detect_polymorphisms,
    merge_nd_cond,
    optimal_circuit,
    pol_cover_from_tsvnd,
    polymorphism_witnesses,
    split_tsvnd,
    synthesize,
    synthesize_patched,
    tsvnd_from_pol_cover,
    validate_tsvnd,
    verify_cover,
)
from ._core import run_theorem_sweep_json as _sweep_json

__all__ = [
    "ParseError",
    "anchored_pol_cover_from_tsvnd",
    "circuit_from_cover",
    "classify",
    "computes",
    "cover_from_circuit",
    "decided_function",
    "detect_polymorphisms",
    "merge_nd_cond",
    "optimal_circuit",
    "pol_cover_from_tsvnd",
    "polymorphism_witnesses",
    "run_theorem_sweep",
    "split_tsvnd",
    "synthesize",
    "synthesize_patched",
    "tsvnd_from_pol_cover",
    "validate_tsvnd",
    "verify_cover",
]


def run_theorem_sweep(n, checks=("s3", "s4", "s5")):
    """Sweep report as a dict; see the CLI's `sweep --json`."""
    if not isinstance(checks, str):
        checks = ",".join(checks)
    return json.loads(_sweep_json(n, checks))
