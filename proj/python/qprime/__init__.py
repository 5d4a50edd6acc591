"""Walsh-synthesized oscillator circuits and purity-based primality checks."""

from ._qprime import (
    Regime,
    Verdict,
    __version__,
    analytic_fourier_modes,
    analytic_purity,
    audit_counts,
    classify,
    closed_form_spectrum,
    default_partitions,
    default_tolerance,
    direct_walsh_transform,
    lower_bound,
    phase_vector,
    predicted_gate_counts,
    sieve,
    simpson_fourier,
    simulate_purity,
    simulate_series,
    walsh_function,
    walsh_transform,
)

__all__ = [
    "Regime",
    "Verdict",
    "__version__",
    "analytic_fourier_modes",
    "analytic_purity",
    "audit_counts",
    "classify",
    "closed_form_spectrum",
    "default_partitions",
    "default_tolerance",
    "direct_walsh_transform",
    "lower_bound",
    "phase_vector",
    "predicted_gate_counts",
    "sieve",
    "simpson_fourier",
    "simulate_purity",
    "simulate_series",
    "walsh_function",
    "walsh_transform",
]
