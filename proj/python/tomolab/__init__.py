"""Multimode homodyne tomography: Gaussian simulation, sampling kernels,
and statistical reconstruction of quasidistributions, density matrices,
and s-ordered moments."""

from ._core import (  # noqa: F401
    BoundError,
    Estimate,
    GaussianState,
    IoError,
    LOConfiguration,
    MeasurementRecord,
    QuadratureDataset,
    SamplingGrid,
    WeightKind,
    analytic_moment,
    analytic_q,
    beam_splitter,
    build_grid,
    direction_cosines,
    displace,
    estimate_moments,
    estimate_quasidist,
    estimate_rho,
    f_biorthogonal_closed,
    g_poly,
    is_physical,
    jacobian_weight,
    mandel_q,
    moment_kernel,
    pattern_function,
    phase_shift,
    projected_quadrature,
    quadrature_stats,
    read_dataset,
    s_kernel,
    simulate_dataset,
    squeeze,
    three_mode_demo_state,
    vacuum,
    write_dataset,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
