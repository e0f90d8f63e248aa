"""Per-realization rate, SIC-type, power-adaptation and energy models.

Every function here works elementwise on numpy arrays as well as on plain
floats.  Comparisons against OMA are made on the linear ``1 + SINR`` scale;
logarithms are only taken when a rate is reported.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization
from .params import SystemParams, tau_m


class SchemeKind(enum.Enum):
    OMA = "OMA"
    FSIC = "FSIC"
    HSIC_NPA = "HSIC_NPA"
    HSIC_PA = "HSIC_PA"


HNOMA_SCHEMES = (SchemeKind.FSIC, SchemeKind.HSIC_NPA, SchemeKind.HSIC_PA)


class SicType(enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    NOT_APPLICABLE = "n/a"


class PaCase(enum.Enum):
    CASE_1 = 1
    CASE_2 = 2
    NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class RateBreakdown:
    scheme: SchemeKind
    r_oma_slot: float
    r_noma_slot: float
    sic_type: SicType
    pa_case: PaCase
    gamma: float | None
    tau: float
    energy: float

    @property
    def total(self) -> float:
        return self.r_oma_slot + self.r_noma_slot


def _scalar(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def rate_oma(p: SystemParams, g_n):
    return _scalar(np.log2(1.0 + p.rho_n * np.asarray(g_n, dtype=float)))


def rate_hnoma_oma_slot(p: SystemParams, g_n):
    return _scalar(np.log2(1.0 + p.beta * p.rho_n * np.asarray(g_n, dtype=float)))


def fsic_sinr(p: SystemParams, g_m, g_n):
    """Linear SINR of U_n in the NOMA slot when U_m is treated as interference."""
    g_m = np.asarray(g_m, dtype=float)
    g_n = np.asarray(g_n, dtype=float)
    return p.beta * p.rho_n * g_n / (p.rho_m * g_m + 1.0)


def npa_sinr(p: SystemParams, g_m, g_n):
    """Returns (sinr, type_i) for HSIC without power adaptation."""
    a = p.beta * p.rho_n * np.asarray(g_n, dtype=float)
    tau = tau_m(p, g_m)
    type_i = a <= tau
    return np.where(type_i, a, fsic_sinr(p, g_m, g_n)), type_i


def pa_sinr(p: SystemParams, g_m, g_n):
    """Returns (sinr, type_i, case_2, gamma) for HSIC with power adaptation.

    In Type II the better of the two decoding orders is used; a tie goes to
    Case 2, which spends less energy for the same rate.
    """
    a = p.beta * p.rho_n * np.asarray(g_n, dtype=float)
    tau = tau_m(p, g_m)
    fs = fsic_sinr(p, g_m, g_n)
    type_i = a <= tau
    case_2 = ~type_i & (fs <= tau)
    sinr = np.where(type_i, a, np.maximum(fs, tau))
    with np.errstate(divide="ignore", invalid="ignore"):
        gamma = np.where(case_2, tau / np.where(case_2, a, 1.0), 1.0)
    return sinr, type_i, case_2, gamma


def noma_sinr(p: SystemParams, g_m, g_n, scheme: SchemeKind):
    if scheme is SchemeKind.FSIC:
        return fsic_sinr(p, g_m, g_n)
    if scheme is SchemeKind.HSIC_NPA:
        return npa_sinr(p, g_m, g_n)[0]
    if scheme is SchemeKind.HSIC_PA:
        return pa_sinr(p, g_m, g_n)[0]
    raise ValueError(f"no NOMA slot for scheme {scheme}")


def underperforms_from_sinr(p: SystemParams, g_n, sinr):
    """True where (1 + sinr)(1 + beta rho_n g_n) <= 1 + rho_n g_n."""
    y = p.rho_n * np.asarray(g_n, dtype=float)
    return (1.0 + sinr) * (1.0 + p.beta * y) <= 1.0 + y


def rate_fsic_noma(p: SystemParams, ch: ChannelRealization) -> float:
    return float(np.log2(1.0 + fsic_sinr(p, ch.g_m, ch.g_n)))


def rate_hsic_npa_noma(p: SystemParams, ch: ChannelRealization) -> tuple[float, SicType]:
    s, type_i = npa_sinr(p, ch.g_m, ch.g_n)
    return float(np.log2(1.0 + s)), SicType.TYPE_I if type_i else SicType.TYPE_II


def rate_hsic_pa_noma(
    p: SystemParams, ch: ChannelRealization
) -> tuple[float, SicType, PaCase, float]:
    s, type_i, case_2, gamma = pa_sinr(p, ch.g_m, ch.g_n)
    if type_i:
        return float(np.log2(1.0 + s)), SicType.TYPE_I, PaCase.NOT_APPLICABLE, 1.0
    case = PaCase.CASE_2 if case_2 else PaCase.CASE_1
    return float(np.log2(1.0 + s)), SicType.TYPE_II, case, float(gamma)


def underperforms_oma(p: SystemParams, ch: ChannelRealization, scheme: SchemeKind) -> bool:
    if scheme is SchemeKind.OMA:
        raise ValueError("underperforms_oma compares an H-NOMA scheme against OMA")
    return bool(underperforms_from_sinr(p, ch.g_n, noma_sinr(p, ch.g_m, ch.g_n, scheme)))


def frame_energy(p: SystemParams, scheme: SchemeKind, gamma=1.0):
    """Energy per frame with slot duration normalized to 1."""
    if scheme is SchemeKind.OMA:
        return p.rho_n
    if scheme is SchemeKind.HSIC_PA:
        return (1.0 + gamma) * p.beta * p.rho_n
    return 2.0 * p.beta * p.rho_n


def breakdown(p: SystemParams, ch: ChannelRealization, scheme: SchemeKind) -> RateBreakdown:
    tau = tau_m(p, ch.g_m)
    if scheme is SchemeKind.OMA:
        return RateBreakdown(
            scheme, rate_oma(p, ch.g_n), 0.0, SicType.NOT_APPLICABLE,
            PaCase.NOT_APPLICABLE, None, tau, frame_energy(p, scheme),
        )
    r_oma = rate_hnoma_oma_slot(p, ch.g_n)
    if scheme is SchemeKind.FSIC:
        return RateBreakdown(
            scheme, r_oma, rate_fsic_noma(p, ch), SicType.NOT_APPLICABLE,
            PaCase.NOT_APPLICABLE, None, tau, frame_energy(p, scheme),
        )
    if scheme is SchemeKind.HSIC_NPA:
        r, sic = rate_hsic_npa_noma(p, ch)
        return RateBreakdown(
            scheme, r_oma, r, sic, PaCase.NOT_APPLICABLE, None, tau, frame_energy(p, scheme)
        )
    r, sic, case, gamma = rate_hsic_pa_noma(p, ch)
    return RateBreakdown(scheme, r_oma, r, sic, case, gamma, tau, frame_energy(p, scheme, gamma))
