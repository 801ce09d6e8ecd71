import pickle

import pytest

from oddeven.exceptions import (
    CheckpointError,
    ConfigError,
    ConvergenceError,
    DomainError,
    NumericalInstabilityError,
    OddEvenError,
)


@pytest.mark.parametrize(
    "error",
    [
        OddEvenError("plain"),
        DomainError("odd order", detail={"order": 3}),
        ConvergenceError("no fixed point", residual=1e-3, iterations=200),
        NumericalInstabilityError("norm grew", step=12, time=-3.5),
        ConfigError("bad value", path="probe.cycles"),
        CheckpointError("missing header"),
    ],
)
def test_errors_survive_pickling(error):
    restored = pickle.loads(pickle.dumps(error))

    assert type(restored) is type(error)
    assert str(restored) == str(error)
    assert restored.detail == error.detail
    assert restored.args == error.args


def test_pickled_errors_keep_their_context():
    unstable = pickle.loads(pickle.dumps(NumericalInstabilityError("nan", step=7, time=1.25)))
    stuck = pickle.loads(pickle.dumps(ConvergenceError("stuck", residual=0.5, iterations=9)))

    assert (unstable.step, unstable.time) == (7, 1.25)
    assert (stuck.residual, stuck.iterations) == (0.5, 9)
    assert isinstance(pickle.loads(pickle.dumps(DomainError("x"))), ValueError)
