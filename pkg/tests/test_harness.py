import numpy as np
import pytest

from dwroberts.harness import SUITES, brute_force_roberts, ellipse_point, run_suite
from dwroberts.orthogonality import ellipse_params_2x2


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass_small(name):
    res = run_suite(name, 3, seed=99)
    assert res.ok, "\n".join(res.lines())


def test_suite_is_reproducible():
    a = run_suite("ellipse", 4, seed=5).as_dict()
    assert a == run_suite("ellipse", 4, seed=5).as_dict()


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", 1)


def test_ellipse_point_disk():
    e = ellipse_params_2x2([[0, 1], [0, 0]])
    for t in np.linspace(0, 2 * np.pi, 7):
        assert ellipse_point(e, t) == pytest.approx(0.5 * np.exp(1j * t))


def test_brute_force_oracle():
    assert brute_force_roberts(np.diag([1.0, -1.0]))
    assert not brute_force_roberts(np.diag([1.0, 0.0]))
