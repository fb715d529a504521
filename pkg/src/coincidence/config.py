"""Runtime limits. Defaults can be overridden from the environment or the CLI."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

GROUP_CAP_ENV = "COINCIDENCE_GROUP_CAP"
MAX_MODULUS = 2**20


@dataclass(frozen=True)
class Limits:
    group_cap: int = 2**22
    search_budget: int = 10**7
    seed: int = 20240521


def _from_env() -> Limits:
    raw = os.environ.get(GROUP_CAP_ENV)
    if raw:
        return Limits(group_cap=int(raw))
    return Limits()


_current = _from_env()


def limits() -> Limits:
    return _current


def set_limits(**changes) -> Limits:
    """Replace selected fields of the process-wide limits; returns the previous value."""
    global _current
    previous = _current
    _current = replace(_current, **changes)
    return previous
