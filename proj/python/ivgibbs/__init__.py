"""Translation-invariant Gibbs measures of the Ising-Vannimenus model on the order-3 Cayley tree."""

from ._core import (
    Weights,
    analyze,
    consistency_residual,
    d2g,
    dg,
    fixed_points,
    g,
    iterate,
    quartic_roots,
    scan,
    scan_csv,
)

__all__ = [
    "Weights",
    "analyze",
    "consistency_residual",
    "d2g",
    "dg",
    "fixed_points",
    "g",
    "iterate",
    "quartic_roots",
    "scan",
    "scan_csv",
]
