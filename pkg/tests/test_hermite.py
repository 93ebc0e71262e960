import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import eval_hermite

from oscitool.hermite import (
    AliasingError,
    GridFunction,
    HermiteCoeffs,
    analyze,
    hermite_grid,
    hermite_values,
    multi_indices,
    synthesize,
    uniform_grid,
)


def _h_reference(n, x):
    # physicists' Hermite polynomial route, fine for moderate n and |x|
    return eval_hermite(n, x) * np.exp(-x * x / 2) / math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi))


def test_recurrence_matches_closed_form():
    x = np.linspace(-5, 5, 41)
    H = hermite_values(12, x)
    for n in range(13):
        np.testing.assert_allclose(H[n], _h_reference(n, x), atol=1e-13)


def test_h0_value_at_origin():
    assert hermite_values(0, np.array([0.0]))[0, 0] == pytest.approx(math.pi**-0.25, rel=1e-15)


def test_large_order_stays_finite():
    H = hermite_values(400, np.linspace(-30, 30, 7))
    assert np.all(np.isfinite(H))


def test_orthonormality_on_gauss_hermite_grid():
    nodes, weights = hermite_grid(81)
    H = hermite_values(40, nodes[0])
    gram = (H * weights[0]) @ H.T
    np.testing.assert_allclose(gram, np.eye(41), atol=1e-12)


def test_multi_indices_graded_lex():
    idx = multi_indices(2, 2)
    assert idx.tolist() == [[0, 0], [0, 1], [1, 0], [0, 2], [1, 1], [2, 0]]
    assert len(multi_indices(3, 20)) == math.comb(23, 3)
    with pytest.raises(ValueError):
        idx[0, 0] = 5


def test_analyze_h0_gives_unit_vector():
    c = analyze(lambda x: math.pi**-0.25 * np.exp(-x * x / 2), 10)
    expected = np.zeros(11)
    expected[0] = 1
    np.testing.assert_allclose(c.data, expected, atol=1e-14)


def test_analyze_two_dimensional_product():
    f = lambda x, y: hermite_values(3, x)[2] * hermite_values(3, y)[1]  # noqa: E731
    c = analyze(f, 5, dim=2)
    assert abs(c[(2, 1)] - 1) < 1e-13
    c[(2, 1)] = 0
    assert np.max(np.abs(c.data)) < 1e-13


def test_aliasing_guard():
    g = GridFunction.sample(lambda x: np.exp(-x * x), hermite_grid(5))
    with pytest.raises(AliasingError):
        analyze(g, 10)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
                min_size=13, max_size=13))
def test_synthesize_analyze_round_trip(vals):
    c = HermiteCoeffs(1, 12, np.array(vals))
    back = analyze(synthesize(c, hermite_grid(25)), 12)
    np.testing.assert_allclose(back.data, c.data, atol=1e-11 * (1 + np.abs(c.data).max()))


def test_uniform_grid_round_trip_2d():
    rng = np.random.default_rng(3)
    c = HermiteCoeffs(2, 6, rng.normal(size=28) + 1j * rng.normal(size=28))
    back = analyze(synthesize(c, uniform_grid(96, 8.0, 2)), 6)
    np.testing.assert_allclose(back.data, c.data, atol=1e-10)


def test_parseval_on_grid():
    rng = np.random.default_rng(1)
    c = HermiteCoeffs(1, 15, rng.normal(size=16))
    g = synthesize(c, uniform_grid(200, 10.0))
    assert g.l2_norm() == pytest.approx(c.norm(), rel=1e-10)


def test_coefficient_json_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    c = HermiteCoeffs(2, 4, rng.normal(size=15) + 1j * rng.normal(size=15))
    c.to_json(tmp_path / "c.json")
    back = HermiteCoeffs.from_json(tmp_path / "c.json")
    assert back.dim == 2 and back.trunc == 4
    assert np.array_equal(back.data, c.data)


def test_grid_json_round_trip(tmp_path):
    g = GridFunction.sample(lambda x: np.exp(-x * x) * (1 + 1j * x), uniform_grid(17, 4.0))
    g.to_json(tmp_path / "g.json")
    back = GridFunction.from_json(tmp_path / "g.json")
    assert np.array_equal(back.values, g.values)


def test_retruncate_and_arithmetic():
    a = HermiteCoeffs.unit((2,), 4, 2.0)
    b = a.retruncate(8)
    assert b[(2,)] == 2.0 and b.trunc == 8
    assert (a + a - a * 2).norm() == 0
    with pytest.raises(KeyError):
        a[(5,)]
    with pytest.raises(ValueError):
        a + b


def test_norm_does_not_overflow():
    c = HermiteCoeffs(1, 1, np.array([1e200, 1e200]))
    assert c.norm() == pytest.approx(math.sqrt(2) * 1e200)


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        HermiteCoeffs(1, 3, np.zeros(3))
