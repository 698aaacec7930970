"""Optional thread fan-out for embarrassingly parallel evaluation loops.

The environment variable ``DUALITY_LAB_THREADS`` caps the worker count.
Unset or ``0`` means auto; the evaluation loops here are dominated by
interpreter-bound scalar work, so auto currently resolves to serial
execution and a pool is only spun up when the caller asks for two or more
workers explicitly.  Work items are pure functions of their inputs and
results come back in input order, so the fan-out never affects values.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

THREADS_ENV_VAR = "DUALITY_LAB_THREADS"

# Below this many items the pool overhead outweighs any gain.
_MIN_ITEMS_FOR_POOL = 64

T = TypeVar("T")
R = TypeVar("R")


def thread_limit() -> int:
    """Resolve the worker cap from the environment (0 or unset = auto = 1)."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or raw.strip() == "":
        limit = 0
    else:
        try:
            limit = int(raw)
        except ValueError:
            raise ValueError(
                f"{THREADS_ENV_VAR} must be a non-negative integer, got {raw!r}"
            ) from None
    if limit < 0:
        raise ValueError(f"{THREADS_ENV_VAR} must be >= 0, got {limit}")
    return 1 if limit == 0 else limit


def ordered_map(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    """Map ``fn`` over ``items``, preserving order; threads only when asked for."""
    workers = min(thread_limit(), len(items))
    if workers <= 1 or len(items) < _MIN_ITEMS_FOR_POOL:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
