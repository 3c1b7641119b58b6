"""Collective decay rates and Lamb shifts of 1D emitter geometries."""

__version__ = "0.1.0"

from .discrete import (
    DiscreteLineParams,
    EmitterCloud,
    OracleSpectrum,
    Orientation,
    build_scalar_kernel,
    discrete_line_decay,
    discrete_line_lamb,
    helix_cloud,
    line_cloud,
    oracle_spectrum,
    pair_cloud,
    ring_cloud,
    subradiant_fraction,
)
from .geomfit import (
    CloudFormatError,
    EstimateReport,
    FitDegeneracyError,
    FitWarning,
    Handedness,
    HelixFit,
    estimate,
    fit_helix,
    line_density,
    load_emitters,
    with_density,
)
from .specfun import (
    ArgKind,
    BesselArg,
    bessel_ik,
    bessel_j,
    bessel_y,
    euler_gamma,
    jh_product,
    polylog_unit_circle,
)
from .spectra import (
    Classification,
    EigenPoint,
    EmitterPhysics,
    HelixSpec,
    MBounds,
    SpectrumTable,
    TrappedIntervals,
    classify,
    cylinder_eigen,
    cylinder_norms,
    helix_decay_norm,
    helix_lamb_norm,
    helix_lamb_upper_bound,
    kappa_grid,
    line_decay_norm,
    line_lamb_norm,
    line_table,
    cylinder_table,
    m_bounds,
    sweep,
    trapped_intervals,
)
from .thermal import (
    DegenerateEnsembleError,
    ThermalConfig,
    ThermalResult,
    required_truncation,
    thermal_average,
    thermal_sweep,
)

__all__ = [
    "ArgKind",
    "BesselArg",
    "Classification",
    "CloudFormatError",
    "DegenerateEnsembleError",
    "DiscreteLineParams",
    "EigenPoint",
    "EmitterCloud",
    "EmitterPhysics",
    "EstimateReport",
    "FitDegeneracyError",
    "FitWarning",
    "Handedness",
    "HelixFit",
    "HelixSpec",
    "MBounds",
    "OracleSpectrum",
    "Orientation",
    "SpectrumTable",
    "ThermalConfig",
    "ThermalResult",
    "TrappedIntervals",
    "bessel_ik",
    "bessel_j",
    "bessel_y",
    "build_scalar_kernel",
    "classify",
    "cylinder_eigen",
    "cylinder_norms",
    "cylinder_table",
    "discrete_line_decay",
    "discrete_line_lamb",
    "estimate",
    "euler_gamma",
    "fit_helix",
    "helix_cloud",
    "helix_decay_norm",
    "helix_lamb_norm",
    "helix_lamb_upper_bound",
    "jh_product",
    "kappa_grid",
    "line_cloud",
    "line_decay_norm",
    "line_density",
    "line_lamb_norm",
    "line_table",
    "load_emitters",
    "m_bounds",
    "oracle_spectrum",
    "pair_cloud",
    "polylog_unit_circle",
    "required_truncation",
    "ring_cloud",
    "subradiant_fraction",
    "sweep",
    "thermal_average",
    "thermal_sweep",
    "trapped_intervals",
    "with_density",
    "__version__",
]
