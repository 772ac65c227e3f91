"""Spectral toolkit for the Hill operator -y'' + q(x) y on [0, 1]."""

from ._hillspec import (
    DomainError,
    FourierPotential,
    NumericalError,
    VerificationError,
    a1_closed_form,
    a1_sum,
    a2_sum,
    classify,
    compute_spectrum,
    discriminant,
    gap_table,
    galerkin_spectrum,
    ingest_grid,
    integrate_floquet,
    l2_norm_squared,
    load_potential,
    refine_pair_offsets,
    theorem1,
    theorem2,
)

__all__ = [
    "DomainError",
    "FourierPotential",
    "NumericalError",
    "VerificationError",
    "a1_closed_form",
    "a1_sum",
    "a2_sum",
    "classify",
    "compute_spectrum",
    "discriminant",
    "gap_table",
    "galerkin_spectrum",
    "ingest_grid",
    "integrate_floquet",
    "l2_norm_squared",
    "load_potential",
    "refine_pair_offsets",
    "theorem1",
    "theorem2",
]
