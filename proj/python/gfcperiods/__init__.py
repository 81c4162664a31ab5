"""Period lattices of generalized Fermat curves."""

import json

from ._core import (
    BasePointOnBranchPoint,
    CollidingBranchPoints,
    DegenerateInput,
    GfcError,
    LatticeBasis,
    NoConvergence,
    NotFullRank,
    PeriodMatrix,
    ReconstructionFailed,
    agm_elliptic_periods,
    beta_closed_form,
    crosscheck,
    enumerate_forms,
    enumerate_generators,
    extract_basis,
    extract_basis_from_vectors,
    genus,
    integrate_word,
    lattice_rank,
    m_exponents,
    period_matrix,
    real_split,
    same_lattice,
)


def info(k, n, lambdas=(), include_powers=False):
    """Genus, forms and generator counts as a dict."""
    from ._core import info_json

    return json.loads(info_json(k, n, list(lambdas), include_powers))


__all__ = [
    "BasePointOnBranchPoint",
    "CollidingBranchPoints",
    "DegenerateInput",
    "GfcError",
    "LatticeBasis",
    "NoConvergence",
    "NotFullRank",
    "PeriodMatrix",
    "ReconstructionFailed",
    "agm_elliptic_periods",
    "beta_closed_form",
    "crosscheck",
    "enumerate_forms",
    "enumerate_generators",
    "extract_basis",
    "extract_basis_from_vectors",
    "genus",
    "info",
    "integrate_word",
    "lattice_rank",
    "m_exponents",
    "period_matrix",
    "real_split",
    "same_lattice",
]
