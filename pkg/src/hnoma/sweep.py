"""Parameter sweeps, figure presets and CSV/JSON emission."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import yaml

from . import analytic, asymptotic, montecarlo
from .params import NumericDomainError, ParameterError, SystemParams
from .rates import HNOMA_SCHEMES, SchemeKind
from .special import QuadratureSpec

CSV_HEADER = (
    "snr_db,beta,eta,rm_bpcu,scheme,p_analytic,p_asymptotic,p_mc,mc_stderr,samples,flag_rare"
)
DEFAULT_SNR_GRID = tuple(float(s) for s in range(0, 61, 5))
DEFAULT_BETAS = (0.25, 1.0 / 3.0)


class ConfigError(ValueError):
    """Invalid sweep configuration (bad key, bad value, unknown preset)."""


def _scheme(value) -> SchemeKind:
    if isinstance(value, SchemeKind):
        return value
    key = str(value).upper().replace("-", "_")
    try:
        return SchemeKind[key]
    except KeyError:
        raise ConfigError(f"unknown scheme {value!r}") from None


@dataclass(frozen=True)
class SweepConfig:
    snr_db_list: tuple[float, ...]
    beta_list: tuple[float, ...]
    r_m: float
    eta: float
    n_samples: int = 1_000_000
    seed: int = 1
    n_c: int = 100
    schemes: tuple[SchemeKind, ...] = HNOMA_SCHEMES

    def __post_init__(self):
        object.__setattr__(self, "snr_db_list", tuple(float(s) for s in self.snr_db_list))
        object.__setattr__(self, "beta_list", tuple(float(b) for b in self.beta_list))
        object.__setattr__(self, "schemes", tuple(_scheme(s) for s in self.schemes))
        if not self.snr_db_list:
            raise ConfigError("snr_db_list must not be empty")
        if not self.beta_list:
            raise ConfigError("beta_list must not be empty")
        for b in self.beta_list:
            if not 0.0 < b < 0.5:
                raise ConfigError(f"beta={b!r} out of range, need 0 < beta < 1/2")
        if SchemeKind.OMA in self.schemes:
            raise ConfigError("OMA is the baseline, not a sweepable scheme")
        if not (math.isfinite(self.r_m) and self.r_m > 0):
            raise ConfigError(f"r_m={self.r_m!r} must be > 0")
        if not (math.isfinite(self.eta) and self.eta > 0):
            raise ConfigError(f"eta={self.eta!r} must be > 0")
        if int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise ConfigError(f"n_samples={self.n_samples!r} must be an integer >= 1")
        if int(self.n_c) != self.n_c or self.n_c < 1:
            raise ConfigError(f"n_c={self.n_c!r} must be an integer >= 1")


@dataclass(frozen=True)
class SweepRow:
    snr_db: float
    beta: float
    eta: float
    rm_bpcu: float
    scheme: str
    p_analytic: float
    p_asymptotic: float
    p_mc: float
    mc_stderr: float
    samples: int
    flag_rare: bool


FIELD_NAMES = tuple(f.name for f in fields(SweepRow))


def _preset(r_m, eta, betas=DEFAULT_BETAS, schemes=HNOMA_SCHEMES) -> SweepConfig:
    return SweepConfig(DEFAULT_SNR_GRID, betas, r_m, eta, 1_000_000, 1, 100, schemes)


_PRESETS = {
    "fig1": lambda: _preset(0.2, 5.0, schemes=(SchemeKind.FSIC,)),
    "fig2a": lambda: _preset(1.0, 5.0, schemes=(SchemeKind.HSIC_NPA,)),
    "fig2b": lambda: _preset(0.1, 1.0, schemes=(SchemeKind.HSIC_NPA,)),
    "fig3": lambda: _preset(0.2, 5.0, schemes=(SchemeKind.HSIC_PA,)),
    "fig4a": lambda: _preset(1.0, 10.0, betas=(0.25,)),
    "fig4b": lambda: _preset(0.1, 10.0, betas=(1.0 / 3.0,)),
}
PRESET_NAMES = tuple(_PRESETS)


def figure_preset(name: str) -> SweepConfig:
    try:
        return _PRESETS[name]()
    except KeyError:
        raise ConfigError(
            f"unknown figure preset {name!r}; valid presets: {', '.join(PRESET_NAMES)}"
        ) from None


def _clip01(x: float) -> float:
    return min(1.0, max(0.0, x))


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list[SweepRow]:
    rows = []
    schemes = sorted(set(cfg.schemes), key=HNOMA_SCHEMES.index)
    if not schemes:
        return rows
    q = QuadratureSpec(cfg.n_c)
    for snr in sorted(cfg.snr_db_list):
        for beta in sorted(cfg.beta_list):
            try:
                p = SystemParams.from_snr_db(snr, cfg.eta, beta, cfg.r_m)
                mc = montecarlo.estimate(p, cfg.n_samples, cfg.seed, workers)
                for scheme in schemes:
                    est = mc.for_scheme(scheme)
                    rows.append(
                        SweepRow(
                            snr_db=snr,
                            beta=beta,
                            eta=cfg.eta,
                            rm_bpcu=cfg.r_m,
                            scheme=scheme.value,
                            p_analytic=_clip01(analytic.exact(p, scheme, q)),
                            # the high-SNR forms can exceed 1 at low SNR
                            p_asymptotic=_clip01(asymptotic.asymptotic(p, scheme)),
                            p_mc=est.p_hat,
                            mc_stderr=est.stderr,
                            samples=est.samples,
                            flag_rare=est.rare,
                        )
                    )
            except NumericDomainError as exc:
                raise NumericDomainError(f"at snr_db={snr}, beta={beta}: {exc}") from exc
            except ParameterError as exc:
                raise ConfigError(f"at snr_db={snr}, beta={beta}: {exc}") from exc
    return rows


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.8e}"
    return str(value)


def render_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIELD_NAMES)
    for row in rows:
        writer.writerow(_fmt(getattr(row, name)) for name in FIELD_NAMES)
    return buf.getvalue()


def render_json(rows: list[SweepRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2) + "\n"


def parse_json_rows(text: str) -> list[SweepRow]:
    return [SweepRow(**obj) for obj in json.loads(text)]


def emit(rows: list[SweepRow], format: str = "csv", path: str | Path | None = None) -> str:
    """Render ``rows`` and write them to ``path`` (if given); returns the text."""
    if format == "csv":
        text = render_csv(rows)
    elif format == "json":
        text = render_json(rows)
    else:
        raise ConfigError(f"unknown format {format!r}; use csv or json")
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return text


def parse_snr_range(spec: str) -> tuple[float, ...]:
    """Parse ``start:stop:step`` (stop inclusive), a comma list, or one value."""
    spec = spec.strip()
    try:
        if ":" in spec:
            start, stop, step = (float(s) for s in spec.split(":"))
            if step <= 0 or stop < start:
                raise ConfigError(f"bad SNR range {spec!r}: need step > 0 and stop >= start")
            n = int(math.floor((stop - start) / step + 1e-9)) + 1
            return tuple(start + i * step for i in range(n))
        return tuple(float(s) for s in spec.split(",") if s.strip())
    except ValueError:
        raise ConfigError(f"bad SNR specification {spec!r}") from None


_CONFIG_KEYS = {f.name for f in fields(SweepConfig)}


def load_config(path: str | Path) -> SweepConfig:
    """Read a flat YAML mapping; unknown keys are rejected."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config {path} is not valid YAML: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a mapping of keys to values")
    unknown = sorted(set(raw) - _CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys {unknown}; allowed: {sorted(_CONFIG_KEYS)}")
    missing = sorted({"snr_db_list", "beta_list", "r_m", "eta"} - set(raw))
    if missing:
        raise ConfigError(f"config {path} is missing required keys {missing}")
    values = dict(raw)
    if isinstance(values["snr_db_list"], str):
        values["snr_db_list"] = parse_snr_range(values["snr_db_list"])
    for key in ("snr_db_list", "beta_list", "schemes"):
        if key in values and not isinstance(values[key], (list, tuple)):
            values[key] = [values[key]]
    try:
        return SweepConfig(**values)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid config {path}: {exc}") from exc
