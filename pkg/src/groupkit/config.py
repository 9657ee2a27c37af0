"""Runtime limits, overridable through environment variables.

The getters read the environment on every call so tests and CLI wrappers can
adjust limits without re-importing anything.
"""

from __future__ import annotations

import os

from .errors import InvalidSpec

MAX_ORDER_ENV = "GROUPKIT_MAX_ORDER"
ENUM_LIMIT_ENV = "GROUPKIT_ENUM_LIMIT"

DEFAULT_MAX_ORDER = 4096
DEFAULT_ENUM_LIMIT = 10 ** 6

# Full associativity check up to this order; sampled triples above it.
FULL_ASSOCIATIVITY_BOUND = 256
ASSOCIATIVITY_SAMPLES_PER_ELEMENT = 10

# Brute-force subgroup enumeration refuses larger groups by default.
DEFAULT_SUBGROUP_ENUM_BOUND = 24


def _positive_int_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidSpec(f"{name} must be a positive integer, got {raw!r}") from None
    if value <= 0:
        raise InvalidSpec(f"{name} must be a positive integer, got {raw!r}")
    return value


def max_order() -> int:
    """Largest group order any constructor will build."""
    return _positive_int_env(MAX_ORDER_ENV, DEFAULT_MAX_ORDER)


def enum_limit() -> int:
    """Default cap on exhaustive enumeration result counts."""
    return _positive_int_env(ENUM_LIMIT_ENV, DEFAULT_ENUM_LIMIT)
