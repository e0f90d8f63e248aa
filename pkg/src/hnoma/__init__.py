"""Hybrid NOMA underperformance analysis: rate models, Monte Carlo, closed forms."""
from .analytic import (
    NpaParts,
    PaParts,
    p_fsic_exact,
    p_hsic_npa_exact,
    p_hsic_npa_parts,
    p_hsic_pa_exact,
    p_hsic_pa_parts,
)
from .asymptotic import (
    FloorReport,
    floors,
    p_fsic_asymptotic,
    p_hsic_npa_asymptotic,
    p_hsic_pa_asymptotic,
)
from .channel import ChannelRealization, RandomStream, sample_channel, split_stream
from .montecarlo import McReport, ProbabilityEstimate, estimate, estimate_event
from .params import (
    Branch,
    NumericDomainError,
    ParameterError,
    SystemParams,
    branch_condition,
    derive_params,
    tau_m,
    z_constants,
)
from .rates import RateBreakdown, SchemeKind, underperforms_oma
from .special import QuadratureSpec, erf, gauss_chebyshev_integrate

__version__ = "0.1.0"
