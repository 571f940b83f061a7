"""JSON state files and sweep specifications.

State file: exactly one of

    {"matrix": [[[re, im], ...4], ...4]}
    {"family": {"name": "werner", "params": {"p": 0.5}}}

Sweep file:

    {"family": "werner", "fixed": {}, "param": "p",
     "start": 0.0, "stop": 1.0, "steps": 11}
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParamOutOfRange
from .states import FAMILIES, DensityMatrix2Q, from_family, validate


class InputFileError(ValueError):
    tag = "InvalidInput"

    def __str__(self):
        return f"{self.tag}: {super().__str__()}"


def _entry(x) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    raise InputFileError(f"matrix entry must be [re, im], got {x!r}")


def parse_state(obj) -> DensityMatrix2Q:
    if not isinstance(obj, dict):
        raise InputFileError("state file must hold a JSON object")
    keys = {"matrix", "family"} & set(obj)
    if len(keys) != 1:
        raise InputFileError("state file needs exactly one of 'matrix' or 'family'")
    if "matrix" in obj:
        rows = obj["matrix"]
        if not (isinstance(rows, list) and len(rows) == 4
                and all(isinstance(r, list) and len(r) == 4 for r in rows)):
            raise InputFileError("'matrix' must be a 4x4 array of [re, im] pairs")
        return validate(np.array([[_entry(x) for x in r] for r in rows]))
    fam = obj["family"]
    if not isinstance(fam, dict) or "name" not in fam:
        raise InputFileError("'family' must be an object with 'name' and 'params'")
    if fam["name"] not in FAMILIES:
        raise InputFileError(f"unknown family {fam['name']!r}; expected one of {', '.join(FAMILIES)}")
    return from_family(fam["name"], fam.get("params", {}))


def load_state(path) -> DensityMatrix2Q:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputFileError(f"{path}: {exc}") from exc
    return parse_state(obj)


def state_to_json(rho: DensityMatrix2Q) -> dict:
    """Matrix form at full float precision (repr round-trips exactly)."""
    return {"matrix": [[[float(z.real), float(z.imag)] for z in row] for row in rho.matrix]}


@dataclass(frozen=True)
class SweepSpec:
    family: str
    param: str
    start: float
    stop: float
    steps: int
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputFileError(f"unknown family {self.family!r}")
        if self.steps < 2:
            raise InputFileError("steps must be at least 2")
        if self.start > self.stop:
            raise InputFileError("start must not exceed stop")
        if self.param in self.fixed:
            raise InputFileError(f"swept parameter {self.param!r} also appears in 'fixed'")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def state_at(self, value: float) -> DensityMatrix2Q:
        return from_family(self.family, {**self.fixed, self.param: float(value)})


def parse_sweep(obj) -> SweepSpec:
    if not isinstance(obj, dict):
        raise InputFileError("sweep file must hold a JSON object")
    try:
        return SweepSpec(
            family=obj["family"],
            param=obj["param"],
            start=float(obj["start"]),
            stop=float(obj["stop"]),
            steps=int(obj["steps"]),
            fixed={k: float(v) for k, v in obj.get("fixed", {}).items()},
        )
    except KeyError as exc:
        raise InputFileError(f"sweep file is missing {exc.args[0]!r}") from exc
    except (TypeError, ParamOutOfRange) as exc:
        raise InputFileError(str(exc)) from exc


def load_sweep(path) -> SweepSpec:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputFileError(f"{path}: {exc}") from exc
    return parse_sweep(obj)
