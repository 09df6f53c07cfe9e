import math

import numpy as np
import pytest

import corrsc


def standard_normal(d=1):
    return corrsc.GaussianMixture([1.0], [np.zeros(d)], [np.eye(d)])


def test_indices_order():
    assert corrsc.enumerate_indices(2, 1) == [[0, 0], [1, 0], [0, 1]]


def test_moments_and_hermite_basis():
    gm = standard_normal()
    mom = corrsc.raw_moments(gm, 4)
    assert mom.at([4]) == pytest.approx(3.0)
    basis = corrsc.gram_schmidt(mom, 2)
    c = np.asarray(basis.coeff_matrix)
    assert c[2, 0] == pytest.approx(-1 / math.sqrt(2))
    assert c[2, 2] == pytest.approx(1 / math.sqrt(2))
    assert basis.gram_residual <= 1e-8
    np.testing.assert_allclose(basis.evaluate(np.array([1.0])), [1.0, 1.0, 0.0], atol=1e-12)


def test_two_point_rule_and_projection():
    gm = standard_normal()
    mom = corrsc.raw_moments(gm, 4)
    rule = corrsc.adaptive_rule(corrsc.gram_schmidt(mom, 2), gm)
    assert len(rule) == 2
    assert rule.residual_norm <= 1e-8
    a, b = np.asarray(rule.nodes)[:, 0]
    assert a * b == pytest.approx(-1.0)
    assert rule.weights[0] == pytest.approx(1 / (1 + a * a))

    basis = corrsc.gram_schmidt(mom, 1)
    y = 3.0 + 2.0 * np.asarray(rule.nodes)[:, 0]
    s = corrsc.project(rule, basis, y)
    st = s.statistics()
    assert st.mean == pytest.approx(3.0)
    assert st.variance == pytest.approx(4.0)
    assert s(np.array([1.0])) == pytest.approx(5.0)
    assert s.evaluate_points(np.array([[1.0], [-1.0]])) == pytest.approx([5.0, 1.0])


def test_sampling_is_seeded():
    gm = corrsc.benchmark_mixture("filter4")
    a = gm.sample(50, seed=3)
    b = gm.sample(50, seed=3)
    assert a.shape == (50, 4)
    np.testing.assert_array_equal(a, b)
    assert gm.density(np.zeros(4)) > 0


def test_json_round_trip():
    gm = corrsc.benchmark_mixture("ro6")
    text = gm.to_json()
    assert corrsc.GaussianMixture.from_json(text).to_json() == text


def test_errors_are_raised():
    with pytest.raises(corrsc.Error, match="component 0"):
        corrsc.GaussianMixture([1.0], [np.zeros(2)], [np.array([[1.0, 2.0], [2.0, 1.0]])])
    with pytest.raises(corrsc.Error):
        corrsc.benchmark_mixture("unknown")


def test_builtin_model():
    y = corrsc.benchmark_model("ro6", np.zeros(6))
    assert y == [pytest.approx(2.0)]
    vals = corrsc.evaluate_builtin("filter4", np.zeros((3, 4)))
    assert vals.shape == (3, 21)
