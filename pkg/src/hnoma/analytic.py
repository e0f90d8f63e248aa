"""Closed-form probabilities that each H-NOMA scheme underperforms OMA.

Differences of exponentials are evaluated through ``expm1`` so that the
O(1/SNR) results at high SNR keep full relative precision, and every
exponential is taken of a single combined argument (``exp(1/(beta rho_n))``
on its own overflows for small ``beta rho_n``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import Branch, NumericDomainError, SystemParams, branch_condition, xbar2, z_constants
from .special import QuadratureSpec, erf, erfcx, gauss_chebyshev_integrate

DEFAULT_QUADRATURE = QuadratureSpec(100)


def _dexp(a: float, b: float) -> float:
    """exp(-a) - exp(-b) without cancellation when a and b are close."""
    if a <= b:
        return -math.exp(-a) * math.expm1(a - b)
    return math.exp(-b) * math.expm1(b - a)


@dataclass(frozen=True)
class NpaParts:
    p_i1: float
    p_i2: float
    p_ii1: float
    p_ii2: float

    @property
    def total(self) -> float:
        return self.p_i1 + self.p_i2 + self.p_ii1 + self.p_ii2


@dataclass(frozen=True)
class PaParts:
    p_i: float
    p_b1: float
    p_b21: float
    p_b221: float
    p_b222: float
    x1: float
    x2: float
    a_coef: float
    b_coef: float

    @property
    def total(self) -> float:
        return self.p_i + self.p_b1 + self.p_b21 + self.p_b221 + self.p_b222


def p_fsic_exact(p: SystemParams) -> float:
    z = z_constants(p)
    return 1.0 - math.exp(-z.z2) / z.z1


def p_hsic_npa_exact(p: SystemParams) -> float:
    z = z_constants(p)
    c = 1.0 / (p.beta * p.rho_n)
    head = -math.expm1(-(z.z2 + z.z3))
    if not z.z5_valid:
        return head + math.exp(c - z.z4 * z.z3) / z.z4 - math.exp(-z.z2) / z.z1
    # V - exp(c - z4 z5)/z4 + exp(-(z2 + z1 z5))/z1, regrouped pairwise
    return (
        head
        + _dexp(z.z4 * z.z3 - c, z.z4 * z.z5 - c) / z.z4
        - _dexp(z.z2, z.z2 + z.z1 * z.z5) / z.z1
    )


def p_hsic_npa_parts(p: SystemParams) -> NpaParts:
    z = z_constants(p)
    a = p.alpha_m
    c = 1.0 / (p.beta * p.rho_n)
    p_i1 = _dexp(a, z.z3) + _dexp(z.z4 * z.z3 - c, z.z4 * a - c) / z.z4
    p_i2 = -math.expm1(-z.z2) * math.exp(-z.z3)
    p_ii2 = -math.expm1(-a) + _dexp(z.z2 + z.z1 * a, z.z2) / z.z1
    if z.z5_valid:
        p_ii1 = (
            _dexp(z.z4 * a - c, z.z4 * z.z5 - c) / z.z4
            - _dexp(z.z2 + z.z1 * a, z.z2 + z.z1 * z.z5) / z.z1
        )
    else:
        p_ii1 = math.exp(c - z.z4 * a) / z.z4 - math.exp(-(z.z2 + z.z1 * a)) / z.z1
    return NpaParts(p_i1, p_i2, p_ii1, p_ii2)


def pa_roots(p: SystemParams) -> tuple[float, float]:
    """Roots x1 < 0 < x2 of x^2 + (1/rho_m - alpha_m/beta) x - (1-beta) alpha_m / (beta rho_m)."""
    x2 = xbar2(p.beta, p.epsilon_m) / p.rho_m
    x1 = -(1.0 - p.beta) * p.alpha_m / (p.beta * p.rho_m * x2)
    return x1, x2


def _theta_integrand(p: SystemParams):
    inv_alpha = 1.0 / p.alpha_m

    def f(x):
        t = inv_alpha * x
        return np.exp((1.0 - t) / (1.0 - p.beta * t) / p.rho_n - x)

    return f


def _pa_interval(p: SystemParams) -> tuple[float, float, float]:
    z = z_constants(p)
    _, x2 = pa_roots(p)
    if not p.beta * x2 / p.alpha_m < 1.0:
        raise NumericDomainError(
            f"beta * x2 / alpha_m = {p.beta * x2 / p.alpha_m!r} >= 1; quadrature integrand is singular"
        )
    if not z.z3 < x2:
        raise NumericDomainError(f"empty quadrature interval: z3={z.z3!r} >= x2={x2!r}")
    return z.z3, x2, z.z2


def pa_quadrature_term(p: SystemParams, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Gauss-Chebyshev estimate of the integral of exp(-x - Theta(x)) over [z3, x2]."""
    lo, hi, _ = _pa_interval(p)
    return gauss_chebyshev_integrate(_theta_integrand(p), lo, hi, q)


def p_hsic_pa_exact(p: SystemParams, q: QuadratureSpec | int = DEFAULT_QUADRATURE) -> float:
    if not isinstance(q, QuadratureSpec):
        q = QuadratureSpec(q)
    z = z_constants(p)
    _, x2 = pa_roots(p)
    quad = pa_quadrature_term(p, q)
    return -math.expm1(-(z.z2 + z.z3)) + _dexp(z.z2 + z.z1 * x2, z.z2) / z.z1 + quad


def gaussian_coefs(p: SystemParams) -> tuple[float, float]:
    """The (A, B) of x + Omega(x) = A x^2 + B x - 1/(beta rho_n)."""
    inv_alpha = 1.0 / p.alpha_m
    br = p.beta * p.rho_n
    return inv_alpha * p.rho_m / br, 1.0 + (inv_alpha - p.rho_m) / br


def g_integral(p: SystemParams, x: float, y: float) -> float:
    """Integral of exp(-t - Omega(t)) for t from y to x, in closed form via erf."""
    if x == y:
        return 0.0
    A, B = gaussian_coefs(p)
    c = 1.0 / (p.beta * p.rho_n)
    ra = math.sqrt(A)
    shift = B / (2.0 * A)
    sx, sy = ra * (x + shift), ra * (y + shift)
    scale = math.sqrt(math.pi) / (2.0 * ra)

    def log_weight(t):
        # c + B^2/(4A) - s(t)^2, without forming the possibly huge B^2/(4A)
        return c - A * t * t - B * t

    if sx >= 0.0 and sy >= 0.0:
        diff = math.exp(log_weight(y)) * erfcx(sy) - math.exp(log_weight(x)) * erfcx(sx)
    elif sx <= 0.0 and sy <= 0.0:
        diff = math.exp(log_weight(x)) * erfcx(-sx) - math.exp(log_weight(y)) * erfcx(-sy)
    else:
        diff = math.exp(c + B * B / (4.0 * A)) * (erf(sx) - erf(sy))
    return scale * diff


def p_hsic_pa_parts(p: SystemParams, q: QuadratureSpec | int = DEFAULT_QUADRATURE) -> PaParts:
    if not isinstance(q, QuadratureSpec):
        q = QuadratureSpec(q)
    z = z_constants(p)
    a = p.alpha_m
    c = 1.0 / (p.beta * p.rho_n)
    x1, x2 = pa_roots(p)
    A, B = gaussian_coefs(p)
    quad = pa_quadrature_term(p, q)

    p_i = _dexp(a, z.z2 + z.z3) + _dexp(z.z4 * z.z3 - c, z.z4 * a - c) / z.z4
    p_b1 = -math.expm1(-a) + _dexp(z.z2 + z.z1 * a, z.z2) / z.z1
    p_b21 = g_integral(p, x2, a) - _dexp(z.z2 + z.z1 * a, z.z2 + z.z1 * x2) / z.z1
    p_b221 = _dexp(z.z4 * a - c, z.z4 * z.z3 - c) / z.z4 - g_integral(p, z.z3, a)
    p_b222 = quad - g_integral(p, x2, z.z3)
    return PaParts(p_i, p_b1, p_b21, p_b221, p_b222, x1, x2, A, B)


def exact(p: SystemParams, scheme, q: QuadratureSpec | int = DEFAULT_QUADRATURE) -> float:
    from .rates import SchemeKind

    if scheme is SchemeKind.FSIC:
        return p_fsic_exact(p)
    if scheme is SchemeKind.HSIC_NPA:
        return p_hsic_npa_exact(p)
    if scheme is SchemeKind.HSIC_PA:
        return p_hsic_pa_exact(p, q)
    raise ValueError(f"no closed form for scheme {scheme}")


__all__ = [
    "Branch",
    "NpaParts",
    "PaParts",
    "QuadratureSpec",
    "branch_condition",
    "exact",
    "g_integral",
    "gauss_chebyshev_integrate",
    "p_fsic_exact",
    "p_hsic_npa_exact",
    "p_hsic_npa_parts",
    "p_hsic_pa_exact",
    "p_hsic_pa_parts",
    "pa_roots",
]
