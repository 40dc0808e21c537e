"""Weighted Hilbert-type and Bergman-type operators on the half-line and the upper half-plane."""

from ._oplab import (
    AccuracyError,
    CertificateError,
    DivergenceError,
    DomainError,
    Expr,
    InfeasibleError,
    OplabError,
    apply_H,
    bergman_verdict,
    beta,
    find_certificate,
    gamma,
    hilbert_verdict,
    kernel_row_integral,
    log_gamma,
    parse,
    project_power,
    run_cli,
    sharp_norm,
    tplus_exact_norm,
)

__all__ = [
    "AccuracyError",
    "CertificateError",
    "DivergenceError",
    "DomainError",
    "Expr",
    "InfeasibleError",
    "OplabError",
    "apply_H",
    "bergman_verdict",
    "beta",
    "find_certificate",
    "gamma",
    "hilbert_verdict",
    "kernel_row_integral",
    "log_gamma",
    "parse",
    "project_power",
    "run_cli",
    "sharp_norm",
    "tplus_exact_norm",
]
