"""Python bindings for the entx entanglement-transfer toolkit."""

from ._entx import (  # noqa: F401
    DissipativeBranch,
    EntxError,
    SystemConfig,
    XStateAB,
    bound_residual,
    build_h_ab,
    build_hamiltonian,
    dissipative_elements,
    energy,
    evolve_exact,
    frontier_negativity,
    global_state,
    initial_state,
    jump_operators,
    negativity,
    partial_trace_to_ab,
    partial_transpose_a,
    peak_negativity,
    propagate_lindblad,
    time_series,
    unitary_elements,
    xstate_observables,
)

__version__ = "0.1.0"
