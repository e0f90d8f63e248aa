"""High-SNR approximations with eta = rho_n / rho_m held fixed."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .params import (
    Branch,
    NumericDomainError,
    SystemParams,
    asymptotic_constants,
    branch_condition,
)

# inside this distance below the threshold zbar5 blows up
BRANCH_MARGIN = 1e-9


@dataclass(frozen=True)
class FloorReport:
    fsic_floor: float
    npa_floor: float
    pa_floor: float = 0.0


def p_fsic_asymptotic(p: SystemParams) -> float:
    b = p.beta
    return (1.0 - b) / (b * b * p.eta + (1.0 - b))


def npa_correction(p: SystemParams, x: float) -> float:
    """The vanishing part of the HSIC-NPA approximation, evaluated at ``x``.

    ``x`` is eps_m above the threshold and zbar5 below it.  The linear term
    in (zbar3 - x) is kept in its reference form, 1/(beta rho_n rho_m^2),
    which is third order; the part-wise expansion gives 1/(beta eta rho_m^2)
    there, but the reference form tracks the exact value more closely.
    """
    k = asymptotic_constants(p)
    b, eps, eta, rm = p.beta, p.epsilon_m, p.eta, p.rho_m
    inv2 = 1.0 / (rm * rm)
    return (
        inv2 / (2.0 * b * eps * eta) * (k.zbar3**2 - x * x)
        - inv2 / (b * p.rho_n) * (k.zbar3 - x)
        + k.zbar2 / rm * (1.0 + x / rm - k.zbar3 / rm)
        + inv2 * (1.0 - b) * x * x / (2.0 * b * b * eta)
    )


def p_hsic_npa_asymptotic(p: SystemParams) -> float:
    k = asymptotic_constants(p)
    if branch_condition(p) is Branch.ABOVE_THRESHOLD:
        return npa_correction(p, p.epsilon_m) + k.e_r
    if p.threshold - p.epsilon_m < BRANCH_MARGIN or k.zbar5 is None:
        raise NumericDomainError(
            f"eps_m={p.epsilon_m!r} is within {BRANCH_MARGIN} of the branch threshold "
            f"{p.threshold!r}; the high-SNR approximation is numerically unstable there"
        )
    return npa_correction(p, k.zbar5)


def p_hsic_pa_asymptotic(p: SystemParams) -> float:
    k = asymptotic_constants(p)
    b, eps, eta, rm = p.beta, p.epsilon_m, p.eta, p.rho_m
    log_arg = 1.0 / b - k.xbar2 / eps
    if not log_arg > 0.0:
        raise NumericDomainError(f"log argument 1/beta - xbar2/eps_m = {log_arg!r} is not positive")
    return (
        k.zbar2 / rm
        + (k.zbar2 + 1.0 / (b * eta)) * (k.xbar2 - k.zbar3) / (rm * rm)
        + (1.0 - b) / (b * b * eta) * (0.5 * k.xbar2**2 + eps * math.log(log_arg)) / (rm * rm)
    )


def floors(p: SystemParams) -> FloorReport:
    npa = 0.0
    if branch_condition(p) is Branch.ABOVE_THRESHOLD:
        npa = asymptotic_constants(p).e_r
    return FloorReport(fsic_floor=p_fsic_asymptotic(p), npa_floor=npa, pa_floor=0.0)


def asymptotic(p: SystemParams, scheme) -> float:
    from .rates import SchemeKind

    if scheme is SchemeKind.FSIC:
        return p_fsic_asymptotic(p)
    if scheme is SchemeKind.HSIC_NPA:
        return p_hsic_npa_asymptotic(p)
    if scheme is SchemeKind.HSIC_PA:
        return p_hsic_pa_asymptotic(p)
    raise ValueError(f"no asymptotic form for scheme {scheme}")
