"""Size guards for brute-force enumerations.

All guards are explicit and overridable through the QDILOG_GUARD
environment variable; exceeding a guard raises GuardError, never a silent
truncation.
"""

import os

DEFAULT_GUARD = 12


def guard_limit() -> int:
    """Maximum total dimension allowed in brute-force subspace enumerations."""
    raw = os.environ.get("QDILOG_GUARD")
    if raw is None:
        return DEFAULT_GUARD
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"QDILOG_GUARD must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError("QDILOG_GUARD must be positive")
    return value


def service_depth_cap() -> int:
    """Server-side cap on truncation depth, to bound response time."""
    raw = os.environ.get("QDILOG_MAX_DEPTH")
    return int(raw) if raw is not None else 10
