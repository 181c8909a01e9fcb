"""Correlation engine for sub-threshold cavity-enhanced parametric down-conversion."""

from ._errors import (
    CespdcError,
    ConvergenceError,
    DegenerateCombError,
    DomainError,
    ThresholdError,
)
from .bogoliubov import BogoliubovCoeffs, coeffs, condition_hint, denominator
from .comb import (
    CorrelationComb,
    FourierCoeffs,
    auto_k_max,
    f_closed,
    f_hypergeometric,
    f_quadrature,
    fourier_coeffs,
    g2_comb,
    g2_envelope_normalized,
    render_lorentzian,
)
from .oracle import (
    MomentState,
    OutputCorrelators,
    g2_from_moments,
    roundtrip_moment_map,
    steady_state,
    steady_state_closed,
    two_time_output_correlators,
)
from .params import (
    CavityParams,
    GainSetting,
    PoleParams,
    make_cavity,
    make_gain,
    pole_params,
    threshold,
)
from .single_mode import (
    SingleModeParams,
    compare_models,
    from_cavity,
    g2_multi_finite_n,
    g2_single,
    g2_single_assembled,
    scan_models,
)
from .spectra import (
    SpectralSample,
    gamma_fn,
    optimal_squeezing,
    squeezing_spectrum,
    upsilon_fn,
)

__version__ = "0.1.0"
