"""evpos: numerical certification of eventually positive matrix semigroups.

Spectral data, spectral projections, equivalent positivity
characterizations, a model gallery with exact evaluators, and a CLI for
reports and reproductions.
"""

from .cones import ConeClass, ConeMargins, cone_classify, default_margins
from .core import (
    EigenSystem,
    NeumannExpansion,
    SquareOperator,
    as_vector,
    eig,
    expm,
    neumann_resolvent,
    resolvent,
)
from .certify import (
    LaplaceCheck,
    PositivityCertificate,
    PowerProjectionTrace,
    ProjectionPFCheck,
    ResolventPositivityReport,
    SquareGeneratorResult,
    Verdict,
    asymptotic_positivity_trace,
    certify_matrix_semigroup,
    check_projection_pf,
    default_t_grid,
    dim2_no_gap_check,
    is_metzler,
    laplace_crosscheck,
    resolvent_eventual_positivity,
    resolvent_interval_extend,
    resolvent_power_positivity,
    resolvent_power_projection,
    square_generator_certify,
)
from .spectral import (
    ClusterInfo,
    SpectralProjectionResult,
    SpectrumReport,
    contour_projection,
    multiplicity,
    spectral_projection,
    spectrum_report,
)
from . import errors, gallery, serialize

__version__ = "0.1.0"

__all__ = [
    "ClusterInfo", "ConeClass", "ConeMargins", "EigenSystem",
    "LaplaceCheck", "NeumannExpansion", "PositivityCertificate",
    "PowerProjectionTrace", "ProjectionPFCheck",
    "ResolventPositivityReport", "SpectralProjectionResult",
    "SpectrumReport", "SquareGeneratorResult", "SquareOperator", "Verdict",
    "as_vector", "asymptotic_positivity_trace", "certify_matrix_semigroup",
    "check_projection_pf", "cone_classify", "contour_projection",
    "default_margins", "default_t_grid", "dim2_no_gap_check", "eig",
    "errors", "expm", "gallery", "is_metzler", "laplace_crosscheck",
    "multiplicity", "neumann_resolvent", "resolvent",
    "resolvent_eventual_positivity", "resolvent_interval_extend",
    "resolvent_power_positivity", "resolvent_power_projection",
    "serialize", "spectral_projection", "spectrum_report",
    "square_generator_certify",
]
