import numpy as np
import pytest

from models._optimizers import OptimizerName, make_optimizer
from utilidades.errors import ConfigError


@pytest.mark.parametrize("name", [o.value for o in OptimizerName])
def test_zero_gradient_leaves_parameters(name):
    optimizer = make_optimizer(name)
    params = [np.array([[0.5, -1.0], [2.0, 0.0]]), np.array([0.25, -0.75])]
    before = [p.copy() for p in params]
    for _ in range(3):
        optimizer.step(params, [np.zeros_like(p) for p in params], 0.01)
    for p, b in zip(params, before):
        assert np.allclose(p, b, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("name", [o.value for o in OptimizerName])
def test_descends_on_a_quadratic(name):
    optimizer = make_optimizer(name)
    params = [np.array([1.0, -2.0, 3.0])]
    start = float(np.sum(params[0] ** 2))
    for _ in range(50):
        optimizer.step(params, [2.0 * params[0]], 0.1)
    assert np.isfinite(params[0]).all()
    assert float(np.sum(params[0] ** 2)) < start


def test_sgd_step():
    optimizer = make_optimizer("SGD")
    params = [np.array([1.0, 1.0])]
    optimizer.step(params, [np.array([0.5, -0.5])], 0.1)
    assert np.allclose(params[0], [0.95, 1.05])
    assert optimizer.t == 1


def test_updates_in_place():
    optimizer = make_optimizer("adam")
    weights = np.ones(3)
    optimizer.step([weights], [np.ones(3)], 0.1)
    assert np.all(weights < 1.0)


def test_shape_mismatch():
    optimizer = make_optimizer("adamax")
    with pytest.raises(ValueError):
        optimizer.step([np.zeros(3)], [np.zeros(4)], 0.1)
    with pytest.raises(ValueError):
        optimizer.step([np.zeros(3)], [], 0.1)


def test_unknown_name():
    with pytest.raises(ConfigError):
        make_optimizer("momentum")
