"""Quantum Fisher information with conserved-quantity closed forms."""

from ._core import (
    Model,
    __version__,
    adjoint_power,
    alt_qfi,
    anticommutator,
    commutator,
    evolve,
    f_function,
    factor_audit,
    model_names,
    psd_sqrt,
    qfi_mixed,
    qfi_pure,
    r_function,
    sld_qfi,
    thermal_state,
)

__all__ = [
    "Model",
    "__version__",
    "adjoint_power",
    "alt_qfi",
    "anticommutator",
    "commutator",
    "evolve",
    "f_function",
    "factor_audit",
    "model_names",
    "psd_sqrt",
    "qfi_mixed",
    "qfi_pure",
    "r_function",
    "sld_qfi",
    "thermal_state",
]
