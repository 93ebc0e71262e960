import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oscitool.frft import spectral_frft
from oscitool.hermite import HermiteCoeffs, multi_indices
from oscitool.oscillator import (
    Continuity,
    EmptyClassificationError,
    PropagatorSpec,
    SingularEigenvalueError,
    apply_power,
    apply_propagator,
    classify_continuity,
    classify_growth,
    eigenvalue,
    eigenvalues,
    exceeds_polynomial_bounds,
    witness_sequence,
)


def test_eigenvalue_ground_state():
    assert eigenvalue(PropagatorSpec(rho=1.0), (0,)) == 1


def test_eigenvalue_general_dimension():
    idx = multi_indices(3, 5)
    lam = eigenvalues(PropagatorSpec(rho=1.0), idx)
    np.testing.assert_array_equal(lam, 2 * idx.sum(axis=1) + 3)


def test_eigenvalue_power_zero():
    idx = multi_indices(2, 6)
    assert np.all(eigenvalues(PropagatorSpec(rho=[0.3, 2.0], c=-7.0, r=0.0), idx) == 1)


def test_eigenvalue_anisotropic():
    assert eigenvalue(PropagatorSpec(rho=[1.0, 2.0]), (1, 1)) == 9


def test_principal_branch_for_complex_power():
    spec = PropagatorSpec(rho=1.0, c=-4.0, r=0.5)
    # base 2*0 + 1 - 4 = -3, principal square root i sqrt(3)
    assert eigenvalue(spec, (0,)) == pytest.approx(1j * math.sqrt(3))


def test_negative_power_of_zero_eigenvalue():
    spec = PropagatorSpec(rho=1.0, c=-1.0, r=-1.0)
    with pytest.raises(SingularEigenvalueError):
        eigenvalue(spec, (0,))
    assert spec.conditions(1, 10) == {"nonzero_spectrum": False, "nonnegative_power": False}


def test_apply_power_ignores_zeta():
    c = HermiteCoeffs.unit((2,), 3)
    assert apply_power(c, PropagatorSpec(zeta=5.0, r=2.0))[(2,)] == 25


def test_propagator_sign_flip():
    c = HermiteCoeffs.unit((0,), 2)
    out = apply_propagator(c, PropagatorSpec(zeta=1j * math.pi))
    assert out[(0,)] == pytest.approx(-1, abs=1e-15)


def test_propagator_squared_power():
    c = HermiteCoeffs.unit((1,), 2)
    out = apply_propagator(c, PropagatorSpec(zeta=1j, r=2.0))
    assert out[(1,)] == pytest.approx(cmath.exp(9j), abs=1e-14)


@settings(max_examples=30, deadline=None)
@given(
    st.integers(1, 3),
    st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=0.2, allow_nan=False, allow_infinity=False),
)
def test_propagator_is_phase_times_frft(d, cshift, rho):
    c = HermiteCoeffs(d, 6, np.ones(len(multi_indices(d, 6))))
    out = apply_propagator(c, PropagatorSpec(-0.25j * math.pi, rho, cshift, 1.0))
    ref = spectral_frft(c, rho) * np.exp(-0.25j * math.pi * (d * rho + cshift))
    np.testing.assert_allclose(out.data, ref.data, rtol=1e-13)


def test_overflow_warns():
    c = HermiteCoeffs(1, 400, np.ones(401))
    with pytest.warns(RuntimeWarning):
        out = apply_propagator(c, PropagatorSpec(zeta=1.0))
    assert not np.all(np.isfinite(out.data))


def test_witness_values():
    w = witness_sequence("schwartz-log2", 1, 10)
    assert w[(0,)] == 1
    b = witness_sequence("beurling", 1, 10, s=1.0)
    assert b[(3,)] == pytest.approx(math.exp(-2))
    with pytest.raises(ValueError):
        witness_sequence("beurling", 1, 10)


def test_classify_schwartz_witness():
    res = classify_growth(witness_sequence("schwartz-log2", 1, 200))
    assert res.tag == "Schwartz" and res.accepted


def test_classify_beurling_witness():
    res = classify_growth(witness_sequence("beurling", 1, 200, s=1.0))
    assert res.tag == "H0_s"
    assert res.parameter == pytest.approx(1.0, abs=0.05)


def test_classify_geometric_sequence():
    n = np.arange(201.0)
    res = classify_growth(HermiteCoeffs(1, 200, np.exp(-n)))
    assert res.tag == "H0_s"
    assert 0.45 <= res.parameter <= 0.55


def test_classify_polynomial_growth():
    n = np.arange(201.0)
    res = classify_growth(HermiteCoeffs(1, 200, (1 + n * n) ** 1.5))
    assert res.tag == "Tempered"
    assert res.parameter == pytest.approx(3.0, abs=0.05)


def test_classify_factorial_decay():
    n = np.arange(201.0)
    from scipy.special import gammaln

    res = classify_growth(HermiteCoeffs(1, 200, np.exp(-gammaln(n + 1) / 1.4)))
    assert res.tag == "Flat_sigma"
    assert res.parameter == pytest.approx(0.7, rel=1e-3)


def test_classify_propagated_witness_is_beyond():
    w = witness_sequence("schwartz-log2", 1, 200)
    out = apply_propagator(w, PropagatorSpec(zeta=1.0))
    assert classify_growth(out).tag == "Beyond"
    assert all(exceeds_polynomial_bounds(out).values())


def test_imaginary_time_keeps_schwartz():
    w = witness_sequence("schwartz-log2", 1, 200)
    out = apply_propagator(w, PropagatorSpec(zeta=0.7j))
    assert classify_growth(out).tag == "Schwartz"
    assert not any(exceeds_polynomial_bounds(out).values())


def test_classify_rejects_zero():
    with pytest.raises(EmptyClassificationError):
        classify_growth(HermiteCoeffs.zeros(1, 20))


def test_continuity_imaginary_time():
    dec, _ = classify_continuity(PropagatorSpec(zeta=2.5j), "Schwartz")
    assert dec is Continuity.HOMEOMORPHISM


def test_continuity_real_time_schwartz():
    dec, why = classify_continuity(PropagatorSpec(zeta=1.0), "Schwartz")
    assert dec is Continuity.DISCONTINUOUS and "Schwartz" in why


def test_continuity_small_pilipovic_order():
    dec, _ = classify_continuity(PropagatorSpec(zeta=1.0), "H0_s", s=0.5)
    assert dec is Continuity.HOMEOMORPHISM
    dec, _ = classify_continuity(PropagatorSpec(zeta=1.0), "H_s", s=0.5)
    assert dec is Continuity.DISCONTINUOUS


def test_continuity_quantifier():
    spec = PropagatorSpec(zeta=1.0, rho=[1.0, -1.0])
    assert classify_continuity(spec, "Schwartz")[0] is Continuity.NOT_COVERED
    assert classify_continuity(spec, "Schwartz", quantifier="some")[0] is Continuity.DISCONTINUOUS


def test_continuity_validation():
    with pytest.raises(ValueError):
        classify_continuity(PropagatorSpec(zeta=1.0), "L2")
    with pytest.raises(ValueError):
        classify_continuity(PropagatorSpec(zeta=1.0), "H_s")
