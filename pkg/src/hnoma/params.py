"""System parameters for one legacy/opportunistic user pair.

Noise power is normalized to 1, so transmit powers are linear SNRs.  All
rates are in bits per channel use (base-2 logarithms).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np


class ParameterError(ValueError):
    """Raised when a raw system parameter is out of range."""

    def __init__(self, name: str, value, reason: str):
        self.field = name
        self.value = value
        super().__init__(f"{name}={value!r}: {reason}")


class Branch(enum.Enum):
    ABOVE_THRESHOLD = "above"  # eps_m > beta / (1 - beta)
    BELOW_OR_EQUAL = "below_or_equal"


@dataclass(frozen=True)
class SystemParams:
    rho_n: float
    rho_m: float
    beta: float
    r_m: float
    epsilon_m: float = field(init=False)
    alpha_m: float = field(init=False)
    eta: float = field(init=False)

    def __post_init__(self):
        for name in ("rho_n", "rho_m", "beta", "r_m"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ParameterError(name, value, "must be a finite real")
        if self.rho_n <= 0:
            raise ParameterError("rho_n", self.rho_n, "must be > 0")
        if self.rho_m <= 0:
            raise ParameterError("rho_m", self.rho_m, "must be > 0")
        if not 0 < self.beta < 0.5:
            raise ParameterError("beta", self.beta, "beta out of range, need 0 < beta < 1/2")
        if self.r_m <= 0:
            raise ParameterError("r_m", self.r_m, "must be > 0")
        eps = 2.0 ** self.r_m - 1.0
        object.__setattr__(self, "epsilon_m", eps)
        object.__setattr__(self, "alpha_m", eps / self.rho_m)
        object.__setattr__(self, "eta", self.rho_n / self.rho_m)

    @classmethod
    def from_snr_db(cls, snr_db: float, eta: float, beta: float, r_m: float) -> SystemParams:
        """Build parameters from an SNR in dB (``rho_n``) and ``eta = rho_n / rho_m``."""
        if not math.isfinite(eta) or eta <= 0:
            raise ParameterError("eta", eta, "must be a finite real > 0")
        rho_n = 10.0 ** (snr_db / 10.0)
        return cls(rho_n=rho_n, rho_m=rho_n / eta, beta=beta, r_m=r_m)

    @property
    def threshold(self) -> float:
        """The branch threshold beta / (1 - beta) on eps_m."""
        return self.beta / (1.0 - self.beta)


def derive_params(rho_n: float, rho_m: float, beta: float, r_m: float) -> SystemParams:
    return SystemParams(rho_n=rho_n, rho_m=rho_m, beta=beta, r_m=r_m)


@dataclass(frozen=True)
class ZConstants:
    z1: float
    z2: float
    z3: float
    z4: float
    z5: float | None
    z5_valid: bool


@dataclass(frozen=True)
class AsymptoticConstants:
    zbar1: float
    zbar2: float
    zbar3: float
    zbar4: float
    zbar5: float | None
    xbar2: float
    e_r: float


def z_constants(p: SystemParams) -> ZConstants:
    b, rn, rm = p.beta, p.rho_n, p.rho_m
    inv_alpha = 1.0 / p.alpha_m
    z1 = 1.0 + (1.0 - b) * rm / (b * b * rn)
    z2 = (1.0 - 2.0 * b) / (b * b * rn)
    z3 = (1.0 - b) / b * p.alpha_m
    z4 = 1.0 + inv_alpha / (b * rn)
    # sign of the z5 denominator is the sign of beta/eps - (1 - beta)
    denom = b * inv_alpha - (1.0 - b) * rm
    valid = p.epsilon_m < p.threshold and denom > 0
    z5 = (1.0 - b) / denom if valid else None
    return ZConstants(z1, z2, z3, z4, z5, valid)


def branch_condition(p: SystemParams) -> Branch:
    if p.epsilon_m > p.threshold:
        return Branch.ABOVE_THRESHOLD
    return Branch.BELOW_OR_EQUAL


def xbar2(beta: float, epsilon_m: float) -> float:
    """Positive root of the region quadratic, scaled by rho_m."""
    c = epsilon_m / beta - 1.0
    return 0.5 * (c + math.sqrt(c * c + 4.0 * epsilon_m * (1.0 - beta) / beta))


def asymptotic_constants(p: SystemParams) -> AsymptoticConstants:
    b, eps, eta = p.beta, p.epsilon_m, p.eta
    zb1 = 1.0 + (1.0 - b) / (b * b * eta)
    zb2 = (1.0 - 2.0 * b) / (b * b * eta)
    zb3 = (1.0 - b) / b * eps
    zb4 = 1.0 + 1.0 / (b * eps * eta)
    d = b - (1.0 - b) * eps
    zb5 = (1.0 - b) * eps / d if (eps < p.threshold and d > 0) else None
    return AsymptoticConstants(
        zbar1=zb1,
        zbar2=zb2,
        zbar3=zb3,
        zbar4=zb4,
        zbar5=zb5,
        xbar2=xbar2(b, eps),
        e_r=1.0 / zb4 - 1.0 / zb1,
    )


def tau_m(p: SystemParams, g_m):
    """Largest interference the legacy user tolerates: max(0, g_m / alpha_m - 1).

    Accepts scalars or numpy arrays.
    """
    t = np.maximum(np.asarray(g_m, dtype=float) / p.alpha_m - 1.0, 0.0)
    return float(t) if t.ndim == 0 else t


class NumericDomainError(ArithmeticError):
    """A closed form was asked to evaluate outside its valid numeric domain."""
