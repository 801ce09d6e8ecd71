"""
Concurrent evaluation of independent parameter points.

Each point runs in a worker process (or thread) under a capacity limiter.
Outcomes are stored by input index, so the aggregate never depends on
completion order.
"""

from __future__ import annotations

import os
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import partial
from typing import Generic, Literal, TypeVar

import anyio
import anyio.to_process
import anyio.to_thread

from oddeven.conf import settings
from oddeven.logging import logger

T = TypeVar("T")
R = TypeVar("R")

Backend = Literal["process", "thread"]


@dataclass(frozen=True)
class TaskOutcome(Generic[T, R]):
    index: int
    item: T
    value: R | None = None
    error: BaseException | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def resolve_parallelism(parallelism: int | None = None) -> int:
    value = parallelism if parallelism is not None else settings.parallelism
    if value is None:
        value = os.cpu_count() or 1
    return max(1, int(value))


def _evaluate(fn: Callable[[T], R], index: int, item: T) -> TaskOutcome[T, R]:
    try:
        return TaskOutcome(index, item, value=fn(item))
    except Exception as exc:  # noqa: BLE001
        logger.warning(f"point {index} failed: {exc}")
        return TaskOutcome(index, item, error=exc)


async def run_points(
    fn: Callable[[T], R],
    items: Sequence[T],
    *,
    parallelism: int | None = None,
    backend: Backend | None = None,
) -> list[TaskOutcome[T, R]]:
    """
    Applies `fn` to every item, at most `parallelism` at a time.

    A failing point yields an outcome carrying its exception; the other
    points still run. `fn` must be picklable for the process backend.
    """
    limit = resolve_parallelism(parallelism)
    backend = backend or settings.worker_backend
    outcomes: list[TaskOutcome[T, R] | None] = [None] * len(items)

    if limit == 1:
        for index, item in enumerate(items):
            outcomes[index] = _evaluate(fn, index, item)
        return [outcome for outcome in outcomes if outcome is not None]

    limiter = anyio.CapacityLimiter(limit)

    async def worker(index: int, item: T) -> None:
        try:
            if backend == "process":
                value = await anyio.to_process.run_sync(partial(fn, item), limiter=limiter)
            else:
                value = await anyio.to_thread.run_sync(partial(fn, item), limiter=limiter)
        except Exception as exc:  # noqa: BLE001
            logger.warning(f"point {index} failed: {exc}")
            outcomes[index] = TaskOutcome(index, item, error=exc)
        else:
            outcomes[index] = TaskOutcome(index, item, value=value)

    logger.debug(f"dispatching {len(items)} points on {limit} {backend} workers")
    async with anyio.create_task_group() as task_group:
        for index, item in enumerate(items):
            task_group.start_soon(worker, index, item)

    return [outcome for outcome in outcomes if outcome is not None]


def map_points(
    fn: Callable[[T], R],
    items: Sequence[T],
    *,
    parallelism: int | None = None,
    backend: Backend | None = None,
) -> list[TaskOutcome[T, R]]:
    """
    Synchronous front of `run_points`.
    """
    return anyio.run(partial(run_points, fn, items, parallelism=parallelism, backend=backend))
