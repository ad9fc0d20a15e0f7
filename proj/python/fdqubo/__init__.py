"""FlatZinc to QUBO compiler."""

from ._core import (
    Compiled,
    GuardExceeded,
    InconsistentError,
    Qubo,
    Sidecar,
    anneal,
    check_qubo,
    compile,
    roundtrip,
    solve_exhaustive,
)

__all__ = [
    "Compiled",
    "GuardExceeded",
    "InconsistentError",
    "Qubo",
    "Sidecar",
    "anneal",
    "check_qubo",
    "compile",
    "roundtrip",
    "solve_exhaustive",
]
