"""Runtime configuration with file, environment, and flag layering.

Precedence: CLI flags override the config file, the config file
overrides built-in defaults.  The file is JSON, located by ``--config``
or the ``TAILBOUNDS_CONFIG`` environment variable.
"""

import dataclasses
import json
import os

from .errors import DataError

ENV_VAR = "TAILBOUNDS_CONFIG"


@dataclasses.dataclass
class Config:
    formula_tol: float = 1e-12        # closed-form identities, LP vs dispatch
    feasibility_tol: float = 1e-9     # witness moments and sharpness
    oracle_slack: float = 1e-6        # soundness: bound may be exceeded by this much
    oracle_approach: float = 1e-3     # how close grid oracles must come
    mc_n: int = 1_000_000
    mc_seed: int = 20_210_811
    mode_steps: int = 201
    atom_steps: int = 201
    refine_rounds: int = 4
    digits: int | None = None         # None = shortest round-trip rendering

    def __post_init__(self):
        for name in ("formula_tol", "feasibility_tol", "oracle_slack", "oracle_approach"):
            if not getattr(self, name) > 0:
                raise DataError(f"config field {name} must be positive")
        for name in ("mc_n", "mode_steps", "atom_steps", "refine_rounds"):
            if int(getattr(self, name)) < 1:
                raise DataError(f"config field {name} must be a positive integer")
        if self.digits is not None and not 1 <= int(self.digits) <= 17:
            raise DataError("config field digits must be in 1..17")


def load_config(path: str | None = None) -> Config:
    """Config from an explicit path, else $TAILBOUNDS_CONFIG, else defaults."""
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return Config()
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise DataError(f"cannot open config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise DataError(f"config {path!r} must hold a JSON object")
    known = {f.name for f in dataclasses.fields(Config)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise DataError(f"unknown config keys {unknown}; known keys: {sorted(known)}")
    return Config(**raw)
