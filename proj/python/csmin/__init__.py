"""Minimal embeddings of S^{n-1} x S^{n-1} x S^1 into S^{2n}.

Profile curves are constructed by shooting on the arc-length ODE system;
spectra of the separated stability and Laplacian operators come from
Hill-equation discriminants, and the first-nonzero-eigenvalue criterion is
evaluated three independent ways.
"""

from ._core import (
    AggregateEntry,
    CurvatureData,
    DomainError,
    EmbeddingParams,
    Error,
    FrameFunctions,
    FrontierCell,
    IndexReport,
    InvariantError,
    MetricCoefficients,
    MonodromyData,
    NumericError,
    OperatorKind,
    OperatorTally,
    Parity,
    PeriodicEigenvalue,
    ProfileCurve,
    ProfileState,
    ShootResult,
    SphereMode,
    SpectrumReport,
    SpectrumSource,
    ValidationCheck,
    ValidationReport,
    YauVerdict,
    Z1Endpoint,
    build_curve,
    curvatures,
    discriminant,
    discriminant_derivative,
    eigenvalue_report_json,
    first_nonzero_eigenvalue,
    frame,
    geometry_csv,
    index_report_json,
    laplacian_spectrum,
    metric_coeffs,
    min_potential,
    monodromy,
    periodic_eigenvalues,
    potential_value,
    profile_from_json,
    profile_to_json,
    shoot,
    solve_z1,
    spectrum_report_json,
    sphere_eigenvalue,
    sphere_spectrum,
    stability_index,
    validate_curve,
    validation_table,
    yau_check,
    yau_report_json,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
