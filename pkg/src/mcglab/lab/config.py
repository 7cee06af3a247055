"""Scan configuration: flags, optional JSON file, validation."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Optional

SCANS = (
    "behrstock",
    "em_projection",
    "distance_formula",
    "hyperbolicity",
    "orbit",
    "divergence",
    "contraction",
    "calibrate",
)
SURFACES = ("s11", "s04", "s05")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScanConfig:
    scan: str
    surface: str
    seed: int
    samples: int
    output: str
    radius: Optional[int] = None
    threshold: Optional[int] = None
    word_length: Optional[int] = None
    window: Optional[int] = None
    profile: Optional[str] = None
    workers: int = 1

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("workers")  # results never depend on it
        d.pop("output")
        return d

    def with_(self, **kw) -> "ScanConfig":
        return replace(self, **kw)


_ALLOWED_SURFACES = {
    "behrstock": ("s05",),
    "em_projection": ("s11", "s04"),
    "distance_formula": ("s11", "s04"),
    "hyperbolicity": ("s11", "s04", "s05"),
    "orbit": ("s11", "s04"),
    "divergence": ("s11",),
    "contraction": ("s11", "s04"),
    "calibrate": SURFACES,
}

_REQUIRED = {
    "behrstock": ("word_length",),
    "em_projection": ("radius",),
    "distance_formula": ("radius", "threshold"),
    "hyperbolicity": ("radius",),
    "orbit": (),
    "divergence": ("radius",),
    "contraction": (),
    "calibrate": (),
}


def validate(cfg: ScanConfig) -> ScanConfig:
    if cfg.scan not in SCANS:
        raise ConfigError(f"unknown scan {cfg.scan!r}")
    surface = cfg.surface.lower()
    if surface not in SURFACES:
        raise ConfigError(f"unknown surface {cfg.surface!r}")
    if surface not in _ALLOWED_SURFACES[cfg.scan]:
        raise ConfigError(f"{cfg.scan} does not run on {surface}")
    if cfg.samples < 0:
        raise ConfigError("samples must be nonnegative")
    if cfg.workers < 1:
        raise ConfigError("workers must be positive")
    for name in _REQUIRED[cfg.scan]:
        if getattr(cfg, name) is None:
            raise ConfigError(f"{cfg.scan} needs --{name.replace('_', '-')}")
    for name in ("radius", "threshold", "word_length", "window"):
        v = getattr(cfg, name)
        if v is not None and v < (0 if name == "radius" else 1):
            raise ConfigError(f"{name} out of range")
    if cfg.scan == "distance_formula" and cfg.threshold < 10:
        raise ConfigError("distance_formula needs threshold >= 10")
    if cfg.scan == "divergence" and cfg.radius > 6:
        raise ConfigError("divergence radius is limited to 6")
    if cfg.scan in ("orbit",) and cfg.samples < 1:
        raise ConfigError("orbit needs samples >= 1")
    return replace(cfg, surface=surface)


def load_file(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    known = {f.name for f in fields(ScanConfig)}
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    return data


def build_config(file_values: dict, flag_values: dict) -> ScanConfig:
    merged = dict(file_values)
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    missing = [k for k in ("scan", "surface", "seed", "samples", "output") if k not in merged]
    if missing:
        raise ConfigError(f"missing settings: {', '.join(missing)}")
    try:
        cfg = ScanConfig(**merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    return validate(cfg)
