"""Spectral and energy efficiency of clipped OFDM links.

The package models an OFDM transmitter whose power amplifier saturates, and
quantifies the rate and efficiency consequences: exact output statistics,
spectral efficiency with clipping, consumption-aware energy efficiency,
optimal input-power loading factors, and frame-level schedules that switch
between two differently sized amplifiers. A Monte Carlo simulator provides
independent validation of the analytic results.
"""

from .specfun import (
    IntegrationError,
    WBranch,
    adaptive_simpson,
    bessel_i0,
    bessel_i0e,
    gauss_panels,
    integrate_radial,
    lambert_w,
    marcum_q1,
    marcum_q1_complement,
)
from .pa_models import (
    DatasheetWarning,
    PaSpec,
    RappParams,
    clip_probability,
    datasheet_csv,
    drain_efficiency,
    embedded_datasheet,
    embedded_row_ids,
    find_pa,
    load_datasheet,
    rapp,
    soft_limiter,
)
from .power_models import (
    BS_PRESETS,
    PowerModelParams,
    doherty_pieces,
    pc_custom,
    pc_ideal,
    pc_linear,
    pc_nonlinear,
    ppa_doherty,
)
from .se_engine import (
    ChannelProfile,
    LinkScenario,
    build_scenario,
    entropy_y,
    multipath_equiv_gain,
    noise_entropy,
    pdf_clipped,
    pdf_radial,
    pdf_unclipped,
    pdf_unclipped_closed,
    se,
    se_ibo,
    se_ideal,
    se_lower_bound_multipath,
    se_sweep,
    xi_se_opt,
)
from .ee_engine import (
    EeBreakdown,
    InfeasibleError,
    ee,
    ee_breakdown,
    ee_ideal,
    ee_linear,
    ee_linear_derivative,
    ee_sweep,
    pareto_window,
    xi_ee_opt,
    zeta,
)
from .pas_engine import (
    Duplex,
    FrontierPoint,
    PaArm,
    PasConfig,
    TradeoffPoint,
    pa_with_loss,
    pas_ee,
    pas_ee_harmonic,
    pas_frontier,
    pas_se,
    single_pa_curve,
)
from .mc_oracle import (
    EstimatorError,
    FrameConfig,
    analytic_radial_cdf,
    dump_samples,
    empirical_pdf_distance,
    estimate_mi,
    load_samples,
    simulate_frames,
    verify_multipath_bound,
)

__version__ = "0.1.0"

__all__ = [
    "IntegrationError",
    "WBranch",
    "adaptive_simpson",
    "bessel_i0",
    "bessel_i0e",
    "gauss_panels",
    "integrate_radial",
    "lambert_w",
    "marcum_q1",
    "marcum_q1_complement",
    "DatasheetWarning",
    "PaSpec",
    "RappParams",
    "clip_probability",
    "datasheet_csv",
    "drain_efficiency",
    "embedded_datasheet",
    "embedded_row_ids",
    "find_pa",
    "load_datasheet",
    "rapp",
    "soft_limiter",
    "BS_PRESETS",
    "PowerModelParams",
    "doherty_pieces",
    "pc_custom",
    "pc_ideal",
    "pc_linear",
    "pc_nonlinear",
    "ppa_doherty",
    "ChannelProfile",
    "LinkScenario",
    "build_scenario",
    "entropy_y",
    "multipath_equiv_gain",
    "noise_entropy",
    "pdf_clipped",
    "pdf_radial",
    "pdf_unclipped",
    "pdf_unclipped_closed",
    "se",
    "se_ibo",
    "se_ideal",
    "se_lower_bound_multipath",
    "se_sweep",
    "xi_se_opt",
    "EeBreakdown",
    "InfeasibleError",
    "ee",
    "ee_breakdown",
    "ee_ideal",
    "ee_linear",
    "ee_linear_derivative",
    "ee_sweep",
    "pareto_window",
    "xi_ee_opt",
    "zeta",
    "Duplex",
    "FrontierPoint",
    "PaArm",
    "PasConfig",
    "TradeoffPoint",
    "pa_with_loss",
    "pas_ee",
    "pas_ee_harmonic",
    "pas_frontier",
    "pas_se",
    "single_pa_curve",
    "EstimatorError",
    "FrameConfig",
    "analytic_radial_cdf",
    "dump_samples",
    "empirical_pdf_distance",
    "estimate_mi",
    "load_samples",
    "simulate_frames",
    "verify_multipath_bound",
    "__version__",
]
