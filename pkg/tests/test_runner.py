import threading

import pytest

from oddeven.exceptions import ConvergenceError, NumericalInstabilityError
from oddeven.runner import map_points, resolve_parallelism, run_points


def square(value: int) -> int:
    return value * value


def fragile(value: int) -> int:
    if value == 3:
        raise ValueError("three is unlucky")
    return value


def unstable(value: int) -> int:
    if value == 1:
        raise NumericalInstabilityError("norm grew", step=40, time=2.0)
    if value == 2:
        raise ConvergenceError("relaxation stalled", residual=1e-4, iterations=10)
    return value


def test_outcomes_follow_the_input_order():
    outcomes = map_points(square, list(range(10)), parallelism=4, backend="thread")

    assert [o.index for o in outcomes] == list(range(10))
    assert [o.value for o in outcomes] == [i * i for i in range(10)]


def test_sequential_and_concurrent_runs_agree():
    items = [5, 1, 4, 2, 3]

    sequential = map_points(square, items, parallelism=1)
    concurrent = map_points(square, items, parallelism=3, backend="thread")

    assert [o.value for o in sequential] == [o.value for o in concurrent]


@pytest.mark.parametrize("parallelism", [1, 2])
def test_failures_are_kept_and_others_complete(parallelism):
    outcomes = map_points(fragile, [1, 2, 3, 4], parallelism=parallelism, backend="thread")

    assert [o.ok for o in outcomes] == [True, True, False, True]
    assert isinstance(outcomes[2].error, ValueError)
    assert outcomes[3].value == 4


def test_concurrency_is_bounded():
    active = 0
    peak = 0
    lock = threading.Lock()
    release = threading.Event()

    def work(value: int) -> int:
        nonlocal active, peak
        with lock:
            active += 1
            peak = max(peak, active)
        release.wait(0.05)
        with lock:
            active -= 1
        return value

    map_points(work, list(range(8)), parallelism=2, backend="thread")

    assert peak <= 2


def test_resolve_parallelism():
    assert resolve_parallelism(3) == 3
    assert resolve_parallelism(0) == 1
    assert resolve_parallelism() == 1


@pytest.mark.anyio
async def test_run_points_in_an_event_loop():
    outcomes = await run_points(square, [2, 3], parallelism=2, backend="thread")

    assert [o.value for o in outcomes] == [4, 9]


def test_solver_errors_come_back_from_process_workers():
    outcomes = map_points(unstable, [0, 1, 2], parallelism=2, backend="process")

    assert [o.ok for o in outcomes] == [True, False, False]
    assert outcomes[0].value == 0
    assert isinstance(outcomes[1].error, NumericalInstabilityError)
    assert outcomes[1].error.step == 40
    assert isinstance(outcomes[2].error, ConvergenceError)
    assert outcomes[2].error.iterations == 10
