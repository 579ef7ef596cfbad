"""Runtime limits, overridable through SYMBRAID_* environment variables.

Example: ``SYMBRAID_BRACKET_CAP=20`` raises the state-sum crossing cap.
Values are read at call time, so tests can tweak them per case.
"""

from __future__ import annotations

import os

_DEFAULTS = {
    # largest diagram the 2^c bracket state sum will accept
    "bracket_cap": 18,
    # soft crossing limit for cube-of-resolutions homology
    "khovanov_cap": 16,
    # absolute refusal point for the cube
    "khovanov_hard_cap": 20,
    # object-count guard for the scanning homology engine
    "scan_objects": 200_000,
    # worker processes for the braid search (this container has one core)
    "search_workers": 1,
}

__all__ = ["get_limit", "limit_names"]


def limit_names() -> list[str]:
    return sorted(_DEFAULTS)


def get_limit(name: str) -> int:
    """Look up a limit, preferring ``SYMBRAID_<NAME>`` from the environment."""
    if name not in _DEFAULTS:
        raise KeyError(f"unknown limit {name!r}")
    raw = os.environ.get("SYMBRAID_" + name.upper())
    if raw is None:
        return _DEFAULTS[name]
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"SYMBRAID_{name.upper()} must be an integer") from exc
    if value < 0:
        raise ValueError(f"SYMBRAID_{name.upper()} must be nonnegative")
    return value
