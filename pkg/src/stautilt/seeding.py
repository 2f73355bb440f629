"""Process-wide override for the default seeds of randomized routines."""

from __future__ import annotations

_override: int | None = None


def set_default_seed(seed: int | None) -> None:
    global _override
    _override = None if seed is None else int(seed)


def resolve(seed: int | None, default: int) -> int:
    if seed is not None:
        return int(seed)
    return default if _override is None else _override
