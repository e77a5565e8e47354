"""Runtime settings, read once from the environment.

MATCHKIT_MODE       exact | float   (default exact)
MATCHKIT_EPS        absolute tolerance for float comparisons (default 1e-9)
MATCHKIT_ARITY_CAP  largest dense signature arity accepted (default 16)
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Config:
    mode: str = "exact"
    eps: float = 1e-9
    arity_cap: int = 16
    max_edges: int = 24
    max_variables: int = 20
    max_vertices: int = 16


def _from_env() -> Config:
    mode = os.environ.get("MATCHKIT_MODE", "exact").strip().lower()
    if mode not in ("exact", "float"):
        raise ValueError(f"MATCHKIT_MODE must be exact or float, got {mode!r}")
    return Config(
        mode=mode,
        eps=float(os.environ.get("MATCHKIT_EPS", "1e-9")),
        arity_cap=int(os.environ.get("MATCHKIT_ARITY_CAP", "16")),
    )


_current = _from_env()


def get_config() -> Config:
    return _current


def set_config(**changes) -> Config:
    global _current
    _current = replace(_current, **changes)
    return _current


@contextmanager
def override(**changes):
    global _current
    saved = _current
    _current = replace(_current, **changes)
    try:
        yield _current
    finally:
        _current = saved
