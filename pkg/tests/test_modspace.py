import math
import warnings

import numpy as np
import pytest
from scipy.integrate import quad

from oscitool.cli import fitted_slope
from oscitool.hermite import HermiteCoeffs, analyze
from oscitool.modspace import (
    DivergentWeightError,
    InadmissibleOrderError,
    MixedNormSpec,
    StftMatrix,
    Weight,
    default_lattice,
    hilbert_mod_norm,
    mixed_norm,
    nu_omega,
    nu_omega_all,
    rotate_samples,
    rotate_weight,
    stft_matrix,
    stft_rotation_check,
    verify_frft_mod_estimate,
    verify_minkowski,
)

H0 = HermiteCoeffs.unit((0,), 4)


def _gauss_matrix(points=161, half_width=8.0):
    n = np.linspace(-half_width, half_width, points)
    return stft_matrix(H0, ((n,), (n,)))


def test_l2_norm_is_moyal():
    # ||V_phi f||_{L^2} = ||f|| ||phi|| = 1 for the L^2-normalized window
    assert mixed_norm(_gauss_matrix(), MixedNormSpec(2, 2)) == pytest.approx(1.0, rel=1e-6)


def test_sup_norm_at_origin():
    assert mixed_norm(_gauss_matrix(), MixedNormSpec(np.inf, np.inf)) == pytest.approx(
        (2 * math.pi) ** -0.5, rel=1e-6)


@pytest.mark.parametrize("p", [1.0, 2.0, 3.0, np.inf])
def test_flavors_agree_for_equal_exponents(p):
    S = stft_matrix(HermiteCoeffs.unit((1,), 4) + HermiteCoeffs.unit((3,), 4) * 0.3j)
    assert mixed_norm(S, MixedNormSpec(p, p, "M")) == pytest.approx(mixed_norm(S, MixedNormSpec(p, p, "W")), rel=1e-12)


def test_mixed_norm_orders_differ():
    # separable F = a(x) b(xi): both orders factor, but p, q attach to x, xi
    n = np.linspace(-6, 6, 121)
    a, b = np.exp(-n**2), np.exp(-np.abs(n))
    S = StftMatrix((n,), (n,), np.outer(a, b))
    dx = n[1] - n[0]
    ref = (np.sum(a) * dx) * np.sqrt(np.sum(b**2) * dx)
    assert mixed_norm(S, MixedNormSpec(1, 2, "M")) == pytest.approx(ref, rel=1e-12)
    assert mixed_norm(S, MixedNormSpec(1, 2, "W")) == pytest.approx(ref, rel=1e-12)


def test_weight_scales_norm():
    S = _gauss_matrix(81)
    plain = mixed_norm(S, MixedNormSpec(2, 2))
    assert mixed_norm(S, MixedNormSpec(2, 2, weight=Weight.constant(3.0))) == pytest.approx(3 * plain)


def test_stft_matrix_validation():
    n = np.linspace(-1, 1, 5)
    with pytest.raises(ValueError):
        StftMatrix((n,), (n,), np.zeros((5, 4)))
    with pytest.raises(ValueError):
        StftMatrix((n + 0.1,), (n,), np.zeros((5, 5)))
    S = StftMatrix((n,), (n,), np.full((5, 5), np.nan))
    with pytest.raises(ValueError):
        mixed_norm(S, MixedNormSpec())


def test_default_lattice_sizes():
    x, xi = default_lattice(8, 1)
    assert len(x[0]) == 129 and x[0][-1] == pytest.approx(8.0)
    assert len(default_lattice(8, 2)[0][0]) == 25


def test_rotation_identity_and_reflection():
    n = np.linspace(-4, 4, 41)
    rng = np.random.default_rng(0)
    S = StftMatrix((n,), (n,), rng.normal(size=(41, 41)))
    np.testing.assert_array_equal(rotate_samples(S, 0.0).values, S.values)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        R = rotate_samples(S, 2.0)
    np.testing.assert_allclose(R.values, S.values[::-1, ::-1], atol=1e-12)


def test_radial_input_is_rotation_invariant():
    S = _gauss_matrix(401).abs()
    for rho in (0.3, 0.9, 1.4):
        assert np.max(np.abs(rotate_samples(S, rho).values - S.values)) < 1e-3


def test_rotation_warns_on_boundary_mass():
    n = np.linspace(-2, 2, 21)
    S = StftMatrix((n,), (n,), np.ones((21, 21)))
    with pytest.warns(RuntimeWarning):
        rotate_samples(S, 0.5)


def test_rotate_weight_fixed_points():
    pts = np.random.default_rng(1).normal(size=(10, 1)), np.random.default_rng(2).normal(size=(10, 1))
    for w in (Weight.constant(2.0), Weight.polynomial(1.5), Weight.rotational(lambda r: 1 + r[..., 0])):
        np.testing.assert_allclose(rotate_weight(w, 0.37)(*pts), w(*pts), rtol=1e-12)


def test_rotate_weight_custom():
    w = Weight("custom", func=lambda x, xi: np.exp(x[..., 0]))
    # F_1 maps (1, 0) to (0, 1), so the rotated weight reads (0, -1) back at (1, 0)
    assert rotate_weight(w, 1.0)(np.array([[0.0]]), np.array([[-1.0]]))[0] == pytest.approx(math.e)


def test_moderate_witness():
    w = Weight.polynomial(2.0)
    x = np.random.default_rng(3).normal(size=(50, 1))
    assert w.moderate_witness(x, x, 0.5, -0.5, rate=2.0)


def test_minkowski_equal_exponents_is_equality():
    n = np.linspace(-8, 8, 201)
    S = StftMatrix((n,), (n,), np.zeros((201, 201)))
    f = lambda x, xi: np.exp(-(x[..., 0] - 1) ** 2 - 0.5 * xi[..., 0] ** 2)  # noqa: E731
    X, XI = S.points()
    S = S.with_values(f(X, XI))
    lhs, rhs, ok = verify_minkowski(S, 2, 2, 0.6, func=f)
    assert ok and lhs == pytest.approx(rhs, rel=1e-3)


def test_minkowski_quarter_turn():
    S = _gauss_matrix(161)
    lhs, rhs, ok = verify_minkowski(S.abs(), 4, 2, 1.0)
    assert ok


@pytest.mark.parametrize("form,flavor", [("sin", "M"), ("sin", "W"), ("cos", "M"), ("cos", "W")])
def test_minkowski_random_smooth(form, flavor):
    n = np.linspace(-8, 8, 201)
    f = lambda x, xi: np.exp(-((x[..., 0] - 0.5) / 1.5) ** 2 - (xi[..., 0] / 0.7) ** 2)  # noqa: E731
    S = StftMatrix((n,), (n,), np.zeros((201, 201)))
    S = S.with_values(f(*S.points()))
    assert verify_minkowski(S, 4, 2, 0.2, form, flavor, func=f)[2]


def test_minkowski_rejects_bad_input():
    S = _gauss_matrix(41)
    with pytest.raises(ValueError):
        verify_minkowski(S, 1, 2, 0.3)
    with pytest.raises(InadmissibleOrderError):
        verify_minkowski(S, 2, 1, 1.0, form="cos")


def test_frft_estimate_unitary_case():
    c = HermiteCoeffs.unit((2,), 6) + HermiteCoeffs.unit((0,), 6) * 0.5
    ratios = [verify_frft_mod_estimate(c, r, 2, 2)["ratio"] for r in (0.2, 0.7, 1.3)]
    assert max(ratios) / min(ratios) < 1.02


def test_frft_estimate_cos_form_exclusions():
    with pytest.raises(InadmissibleOrderError):
        verify_frft_mod_estimate(H0, 1.0, np.inf, 1, direction="M->W")
    rep = verify_frft_mod_estimate(H0, 0.0, np.inf, 1, direction="M->W")
    assert np.isfinite(rep["ratio"])
    with pytest.raises(InadmissibleOrderError):
        verify_frft_mod_estimate(H0, 2.0, np.inf, 1)


def test_frft_estimate_wide_gaussian_slope():
    # a wide Gaussian sits near the extremal end of the M->M estimate: its
    # M^{1,inf} norm after a small rotation grows as |sin(pi rho/2)| shrinks
    c = analyze(lambda x: np.exp(-x * x / 18.0), 160)
    c = c * (1 / c.norm())
    lat = default_lattice(160, 1, 301)
    reps = [verify_frft_mod_estimate(c, r, np.inf, 1, lattice=lat) for r in np.linspace(0.05, 0.5, 10)]
    lhs = [r["lhs"] for r in reps]
    assert np.all(np.diff(lhs) < 0)
    assert -1.0 <= fitted_slope(reps, "M->M", np.inf, 1) < -0.3


def test_nu_constant_weight():
    assert nu_omega(lambda r: np.ones(len(r)), (7,)) == pytest.approx(1.0, abs=1e-12)


def test_nu_sqrt_weight():
    for a in range(6):
        assert nu_omega(lambda r: np.sqrt(r[:, 0]), (a,)) == pytest.approx(math.sqrt(a + 1), rel=1e-12)


def test_nu_exponential_weight():
    vals = [nu_omega(lambda r: np.exp(r[:, 0] / 4), (a,)) for a in range(6)]
    for a, v in enumerate(vals):
        # int r^a e^{-r/2} dr / a! = 2^{a+1}
        assert v == pytest.approx(2 ** ((a + 1) / 2), rel=1e-10)
    assert np.all(np.diff(vals) > 0)


def test_nu_against_quad_oracle():
    w0 = lambda r: (1 + r[:, 0]) ** 0.75  # noqa: E731
    for a in (0, 3, 10):
        ref = quad(lambda r: r**a * (1 + r) ** 1.5 * math.exp(-r), 0, np.inf)[0] / math.factorial(a)
        assert nu_omega(w0, (a,)) == pytest.approx(math.sqrt(ref), rel=1e-10)


def test_nu_divergent_weight():
    with pytest.raises(DivergentWeightError):
        nu_omega(lambda r: np.exp(r[:, 0]), (0,))


def test_hilbert_norm_basics():
    rng = np.random.default_rng(5)
    c = HermiteCoeffs(2, 5, rng.normal(size=21))
    assert hilbert_mod_norm(c, lambda r: np.ones(len(r))) == pytest.approx(c.norm(), rel=1e-12)
    w0 = lambda r: np.prod(np.sqrt(r), axis=-1)  # noqa: E731
    assert hilbert_mod_norm(HermiteCoeffs.unit((2, 1), 5), w0) == pytest.approx(math.sqrt(6), rel=1e-12)
    assert len(nu_omega_all(w0, 2, 5)) == 21


def test_hilbert_norm_equivalent_to_modulation_norm():
    w0 = lambda r: 1.0 + r[:, 0]  # noqa: E731
    weight = Weight.polynomial(2.0)
    ratios = []
    for k in range(11):
        c = HermiteCoeffs.unit((k,), 10)
        S = stft_matrix(c, default_lattice(10, 1, 161))
        ratios.append(hilbert_mod_norm(c, w0) / mixed_norm(S, MixedNormSpec(2, 2, weight=weight)))
    assert max(ratios) / min(ratios) <= 10


@pytest.mark.parametrize("rho", [0.3, 1.0, 1.7])
def test_stft_rotation_modulus(rho):
    c = HermiteCoeffs.unit((0,), 2) + HermiteCoeffs.unit((2,), 2) * 1j
    assert stft_rotation_check(c, rho) < 1e-3
