"""Run configuration: strict JSON schema, validation, field construction.

The schema is flat and strict: unknown keys anywhere raise ConfigSyntax,
constraint violations raise ConfigInvalid naming the offending field.
See README for the documented schema and defaults.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from .errors import (
    ConfigInvalid,
    ConfigSyntax,
    GammaRelationViolated,
    InvalidMu,
    InvalidRegime,
    IoError,
)
from .evolve import BlowupThresholds
from .models import (
    ModelCoefficients,
    RegimeParameters,
    preset_large_amplitude,
    preset_normalized,
    preset_survey,
    validate,
)
from .spectral import Grid, SpectralField, from_physical, random_trig_polynomial

_RUN_KEYS = {
    "model", "grid", "initial_data", "t_end", "cfl", "dt", "sample_interval",
    "snapshot_times", "thresholds", "s_exponent", "seed", "out_dir",
    "dump_coefficients",
}
_MODEL_KEYS = {"preset", "coefficients", "eps", "delta", "p", "z0", "kappa", "beta"}
_THRESHOLD_KEYS = {"sup_ux_max", "hs_max", "tail_rel_max"}
_PROFILE_KEYS = {
    "constant": {"value"},
    "cosine": {"amplitude", "mode", "phase"},
    "sine": {"amplitude", "mode", "phase"},
    "random": {"max_mode", "decay_exponent"},
}

ENV_OUT_ROOT = "LASW_OUT_ROOT"


@dataclass(frozen=True)
class RunConfig:
    model: dict
    grid: int
    initial_data: dict
    t_end: float
    cfl: float = 0.5
    dt: float | None = None
    sample_interval: float = 0.05
    snapshot_times: tuple[float, ...] = ()
    thresholds: dict = field(default_factory=dict)
    s_exponent: float = 2.0
    seed: int = 0
    out_dir: str = "out"
    dump_coefficients: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        d["snapshot_times"] = list(self.snapshot_times)
        return d

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        return _build_run_config(raw)

    def blowup_thresholds(self) -> BlowupThresholds:
        return BlowupThresholds(**{
            "sup_ux_max": self.thresholds.get("sup_ux_max", 1e4),
            "hs_max": self.thresholds.get("hs_max", 1e8),
            "tail_rel_max": self.thresholds.get("tail_rel_max", 1e-2),
        })


def _reject_unknown(raw: dict, allowed: set, where: str) -> None:
    unknown = set(raw) - allowed
    if unknown:
        raise ConfigSyntax(f"unknown key(s) {sorted(unknown)} in {where}")


def _number(raw, name, *, positive=False, nonneg=False):
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ConfigInvalid(f"{name}: expected a number, got {raw!r}")
    v = float(raw)
    if not math.isfinite(v):
        raise ConfigInvalid(f"{name}: must be finite")
    if positive and v <= 0:
        raise ConfigInvalid(f"{name}: must be positive, got {v}")
    if nonneg and v < 0:
        raise ConfigInvalid(f"{name}: must be nonnegative, got {v}")
    return v


def build_coefficients(model: dict) -> ModelCoefficients:
    """Model block -> coefficients; presets or a raw coefficient table."""
    if not isinstance(model, dict):
        raise ConfigInvalid("model: expected an object")
    _reject_unknown(model, _MODEL_KEYS, "model")
    if ("preset" in model) == ("coefficients" in model):
        raise ConfigInvalid("model: give exactly one of 'preset' or 'coefficients'")
    try:
        if "coefficients" in model:
            # raw tables must pass the solver gate (mu > 0, cubic relation);
            # presets may carry mu = 0 deliberately (the dispersive fallback)
            return validate(ModelCoefficients.from_dict(model["coefficients"]))
        name = model["preset"]
        params = RegimeParameters(
            eps=model.get("eps", 1.0),
            delta=model.get("delta", 1.0),
            p=model.get("p"),
            z0=model.get("z0"),
            kappa=model.get("kappa"),
            beta=model.get("beta"),
        )
        if name == "large_amplitude":
            return preset_large_amplitude(params)
        if name == "normalized":
            return preset_normalized()
        return preset_survey(name, params)
    except (InvalidMu, InvalidRegime, GammaRelationViolated, TypeError, ValueError) as err:
        raise ConfigInvalid(f"model: {type(err).__name__}: {err}") from err


def build_initial_field(spec: dict, grid: Grid, seed: int) -> SpectralField:
    """Initial-data block -> field: named profile, coefficient list, or file."""
    if not isinstance(spec, dict):
        raise ConfigInvalid("initial_data: expected an object")
    if "profile" in spec:
        name = spec["profile"]
        if name not in _PROFILE_KEYS:
            raise ConfigInvalid(f"initial_data.profile: unknown profile {name!r}")
        _reject_unknown(spec, _PROFILE_KEYS[name] | {"profile"}, "initial_data")
        if name == "constant":
            value = _number(spec.get("value", 0.0), "initial_data.value")
            coef = np.zeros(grid.n_points, dtype=np.complex128)
            coef[0] = value
            return SpectralField(grid, coef)
        if name in ("cosine", "sine"):
            amp = _number(spec.get("amplitude", 1.0), "initial_data.amplitude")
            mode = int(spec.get("mode", 1))
            if not 1 <= mode < grid.n_points // 2:
                raise ConfigInvalid(f"initial_data.mode: {mode} not representable")
            phase = _number(spec.get("phase", 0.0), "initial_data.phase")
            arg = 2.0 * math.pi * mode * grid.x + phase
            samples = amp * (np.cos(arg) if name == "cosine" else np.sin(arg))
            return from_physical(samples, grid)
        max_mode = int(spec.get("max_mode", grid.n_points // 4))
        decay = spec.get("decay_exponent", 1.0)
        decay = math.inf if decay == "inf" else _number(decay, "initial_data.decay_exponent", nonneg=True)
        try:
            return random_trig_polynomial(grid, seed, max_mode, decay)
        except Exception as err:
            raise ConfigInvalid(f"initial_data: {err}") from err
    if "coefficients" in spec:
        _reject_unknown(spec, {"coefficients"}, "initial_data")
        coef = np.zeros(grid.n_points, dtype=np.complex128)
        for entry in spec["coefficients"]:
            try:
                n, re, im = int(entry[0]), float(entry[1]), float(entry[2])
            except (TypeError, ValueError, IndexError) as err:
                raise ConfigInvalid(f"initial_data.coefficients: bad entry {entry!r}") from err
            if not 0 <= n < grid.n_points // 2:
                raise ConfigInvalid(f"initial_data.coefficients: mode {n} must be in [0, {grid.n_points // 2})")
            if n == 0 and im != 0.0:
                raise ConfigInvalid("initial_data.coefficients: mode 0 must be real")
            coef[n] = complex(re, im)
            if n > 0:
                coef[-n % grid.n_points] = complex(re, -im)
        return SpectralField(grid, coef)
    if "samples_file" in spec:
        _reject_unknown(spec, {"samples_file"}, "initial_data")
        path = Path(spec["samples_file"])
        if not path.is_file():
            raise ConfigInvalid(f"initial_data.samples_file: {path} not found")
        samples = np.loadtxt(path)
        if samples.ndim != 1 or samples.shape[0] != grid.n_points:
            raise ConfigInvalid(
                f"initial_data.samples_file: expected {grid.n_points} samples, got shape {samples.shape}"
            )
        return from_physical(samples, grid)
    raise ConfigInvalid(
        "initial_data: give one of 'profile', 'coefficients' or 'samples_file'"
    )


def _build_run_config(raw: dict) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigSyntax("top-level configuration must be an object")
    _reject_unknown(raw, _RUN_KEYS, "configuration")
    for key in ("model", "grid", "initial_data", "t_end"):
        if key not in raw:
            raise ConfigInvalid(f"{key}: required field missing")

    grid_n = raw["grid"]
    if isinstance(grid_n, bool) or not isinstance(grid_n, int):
        raise ConfigInvalid(f"grid: expected an integer, got {grid_n!r}")
    try:
        grid = Grid(grid_n)
    except ValueError as err:
        raise ConfigInvalid(f"grid: {err}") from err

    t_end = _number(raw["t_end"], "t_end", positive=True)
    cfl = _number(raw.get("cfl", 0.5), "cfl", positive=True)
    dt = raw.get("dt")
    if dt is not None:
        dt = _number(dt, "dt", positive=True)
    sample_interval = _number(raw.get("sample_interval", 0.05), "sample_interval", positive=True)
    snaps = raw.get("snapshot_times", [])
    if not isinstance(snaps, list):
        raise ConfigInvalid("snapshot_times: expected a list")
    snapshot_times = tuple(
        _number(ts, "snapshot_times[*]", nonneg=True) for ts in snaps
    )
    for ts in snapshot_times:
        if ts > t_end:
            raise ConfigInvalid(f"snapshot_times: {ts} exceeds t_end={t_end}")

    thresholds = raw.get("thresholds", {})
    if not isinstance(thresholds, dict):
        raise ConfigInvalid("thresholds: expected an object")
    _reject_unknown(thresholds, _THRESHOLD_KEYS, "thresholds")
    thresholds = {k: _number(v, f"thresholds.{k}", positive=True) for k, v in thresholds.items()}

    s_exponent = _number(raw.get("s_exponent", 2.0), "s_exponent")
    seed = raw.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ConfigInvalid(f"seed: expected an integer, got {seed!r}")
    out_dir = raw.get("out_dir", "out")
    if not isinstance(out_dir, str):
        raise ConfigInvalid("out_dir: expected a string")
    dump = raw.get("dump_coefficients", False)
    if not isinstance(dump, bool):
        raise ConfigInvalid("dump_coefficients: expected a boolean")

    config = RunConfig(
        model=raw["model"],
        grid=grid.n_points,
        initial_data=raw["initial_data"],
        t_end=t_end,
        cfl=cfl,
        dt=dt,
        sample_interval=sample_interval,
        snapshot_times=snapshot_times,
        thresholds=thresholds,
        s_exponent=s_exponent,
        seed=seed,
        out_dir=out_dir,
        dump_coefficients=dump,
    )
    # fail fast: both blocks must construct
    build_coefficients(config.model)
    build_initial_field(config.initial_data, grid, seed)
    return config


def load_config(path) -> RunConfig:
    """Load and validate a run configuration from a JSON file."""
    return RunConfig.from_dict(load_json(path))


def load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise IoError(f"cannot read {path}: {err}") from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigSyntax(f"{path}: {err}") from err


def resolve_out_dir(out_dir: str) -> Path:
    """Relative output paths land under $LASW_OUT_ROOT (default '.')."""
    p = Path(out_dir)
    if p.is_absolute():
        return p
    return Path(os.environ.get(ENV_OUT_ROOT, ".")) / p
