"""Worker-count resolution shared by the enumeration and sampling modules."""

from __future__ import annotations

import os

THREADS_ENV_VAR = "QUNIT_BELL_THREADS"


def worker_count() -> int:
    """Worker cap from QUNIT_BELL_THREADS, defaulting to available parallelism."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise ValueError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}")
    return value
