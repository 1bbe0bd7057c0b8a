"""Resource limits.

Defaults::

    max_spairs          200000   S-pairs processed in one Groebner computation
    max_degree          200      total degree of any basis element (in u, v)
    max_torus_doublings 3        retries of the torus solver at doubled size
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

from .errors import FormatError


@dataclass(frozen=True)
class Limits:
    max_spairs: int = 200_000
    max_degree: int = 200
    max_torus_doublings: int = 3

    def replace(self, **kw) -> "Limits":
        return dataclasses.replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT = Limits()
_current = DEFAULT


def get_limits() -> Limits:
    return _current


def set_limits(limits: Limits) -> None:
    global _current
    _current = limits


def load(path) -> Limits:
    """Read a JSON config file; unknown keys are rejected."""
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"config: {exc}") from exc
    if not isinstance(raw, dict):
        raise FormatError("config: top level must be a JSON object")
    known = {f.name for f in dataclasses.fields(Limits)}
    extra = set(raw) - known
    if extra:
        raise FormatError(f"config: unknown keys {sorted(extra)}")
    for k, v in raw.items():
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise FormatError(f"config: {k} must be a non-negative integer")
    return Limits(**raw)
