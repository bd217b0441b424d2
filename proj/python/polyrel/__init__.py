"""Exact verification and numerical exploration of direct-sum heptagon and
pentagon relations."""

from ._core import (
    PolyrelError,
    SchemaError,
    NonGenericParameters,
    __version__,
    analyze,
    det3,
    edge_checks,
    edge_vector,
    gen_params,
    solve_lm,
    verify,
    wiring,
)

__all__ = [
    "PolyrelError",
    "SchemaError",
    "NonGenericParameters",
    "__version__",
    "analyze",
    "det3",
    "edge_checks",
    "edge_vector",
    "gen_params",
    "solve_lm",
    "verify",
    "wiring",
]
