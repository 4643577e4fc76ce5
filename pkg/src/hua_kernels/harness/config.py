"""Loading, merging and validating harness configuration."""

from __future__ import annotations

import copy
import json
import os
from importlib import resources
from pathlib import Path

from ..quadrature import QuadratureSpec

ENV_VAR = "HUA_CONFIG"


class ConfigError(ValueError):
    pass


def default_config() -> dict:
    text = resources.files(__package__).joinpath("default_config.json").read_text()
    return json.loads(text)


def merge(base: dict, override: dict) -> dict:
    """Recursive dict merge; values in ``override`` win."""
    out = copy.deepcopy(base)
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = merge(out[k], v)
        else:
            out[k] = copy.deepcopy(v)
    return out


def load_config(path: str | os.PathLike | None = None, seed: int | None = None) -> dict:
    """Defaults, then the file named by $HUA_CONFIG (or ``path``), then ``seed``."""
    cfg = default_config()
    chosen = os.environ.get(ENV_VAR) or path
    if chosen:
        try:
            user = json.loads(Path(chosen).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {chosen}: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigError("config file must hold a JSON object")
        cfg = merge(cfg, user)
    if seed is not None:
        cfg["seed"] = int(seed)
    validate(cfg)
    return cfg


def _positive(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
        raise ConfigError(f"{name} must be a positive number, got {value!r}")


def validate(cfg: dict) -> None:
    if not isinstance(cfg.get("seed"), int) or cfg["seed"] < 0:
        raise ConfigError("seed must be a nonnegative integer")
    for key, q in cfg.get("quadrature", {}).items():
        try:
            QuadratureSpec.from_dict(q)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"quadrature.{key}: {exc}") from exc
    for suite, params in cfg.get("suites", {}).items():
        if not isinstance(params, dict):
            raise ConfigError(f"suites.{suite} must be an object")
        for k, v in params.items():
            if k == "quadrature":
                try:
                    QuadratureSpec.from_dict(v)
                except (TypeError, ValueError) as exc:
                    raise ConfigError(f"suites.{suite}.quadrature: {exc}") from exc
            elif isinstance(v, list):
                for x in v:
                    if isinstance(x, bool) or not isinstance(x, (int, float)) or x < 0:
                        raise ConfigError(f"suites.{suite}.{k} entries must be nonnegative numbers")
            else:
                _positive(f"suites.{suite}.{k}", v)
