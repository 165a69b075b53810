import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpbkit.errors import DimensionMismatch, HypothesisNotMet, InternalInvariant, NotInPi, NotUnitNorm
from bpbkit.generate import canonical_operator, generate_operator
from bpbkit.operators import (
    adjoint,
    apply,
    attains_nr,
    bpbp_nu_l1,
    bpbp_nu_l1_modulus,
    numerical_radius_l1,
    op_norm_l1,
    operator_mu,
    operator_threshold,
    shift_operator,
)
from bpbkit.space import in_Pi_l1, pair

eps_values = st.floats(min_value=0.05, max_value=0.95)
seeds = st.integers(0, 2**32 - 1)
fields = st.sampled_from(["real", "complex"])


def test_apply_examples():
    np.testing.assert_array_equal(apply(np.eye(3), [1, 2j, 3]), [1, 2j, 3])
    np.testing.assert_array_equal(apply(shift_operator(3), [1, 0, 0]), [0, 1, 0])
    np.testing.assert_array_equal(apply([[1, 0], [0, 0.5]], [0, 1]), [0, 0.5])
    with pytest.raises(DimensionMismatch):
        apply(np.eye(2), [1, 0, 0])


def test_adjoint_is_plain_transpose():
    np.testing.assert_array_equal(adjoint([[0, 1j], [0, 0]]), [[0, 0], [1j, 0]])
    S = shift_operator(2)
    np.testing.assert_array_equal(adjoint(S) @ np.array([0, 1]), [1, 1])


@pytest.mark.parametrize(
    "T, expected",
    [(np.eye(3), 1.0), (shift_operator(2), 1.0), ([[0.5, 0.2], [0.5, 0.3]], 1.0), (np.zeros((2, 2)), 0.0)],
)
def test_norm_and_radius_examples(T, expected):
    assert op_norm_l1(T) == expected
    assert numerical_radius_l1(T) == expected


def test_norm_argmax_is_smallest_index():
    assert op_norm_l1([[1, 0], [0, 1]], return_argmax=True) == (1.0, 0)
    assert op_norm_l1([[0.2, 1], [0, 0]], return_argmax=True) == (1.0, 1)


def test_attains_nr_examples():
    assert attains_nr(np.eye(2), [1, 0], [1, 1])
    assert not attains_nr(shift_operator(2), [1, 0], [0, 1])
    for z in (0, 0.5j, -1):
        assert attains_nr(shift_operator(2), [0, 1], [z, 1])


def test_identity_is_fixed():
    out = bpbp_nu_l1(np.eye(2), [1, 0], [1, 1], 0.3)
    np.testing.assert_array_equal(out.T0, np.eye(2))
    np.testing.assert_array_equal(out.x0, [1, 0])
    np.testing.assert_array_equal(out.phi0, [1, 1])
    assert list(out.P) == [0]


def test_small_rotation_is_removed():
    T = np.diag([np.exp(0.005j), 1])
    out = bpbp_nu_l1(T, [1, 0], [1, 1], 0.9)
    np.testing.assert_allclose(out.T0, np.eye(2), atol=1e-15)
    assert out.dist_T == pytest.approx(abs(np.exp(0.005j) - 1), abs=1e-15)
    assert out.dist_nu == out.dist_T
    assert abs(out.column_log[0].a - np.exp(0.005j)) <= 1e-15


def test_attaining_column_is_kept():
    T = np.array([[1, 0], [0, 0.5]])
    out = bpbp_nu_l1(T, [1, 0], [1, 1], 0.5)
    assert np.array_equal(out.T0, T)
    assert out.attainment == 1


@pytest.mark.parametrize("w", [1j, -1])
def test_modulus_rotations(w):
    out = bpbp_nu_l1_modulus(w * np.eye(2), [1, 0], [1, 1], 0.5)
    np.testing.assert_allclose(out.T0, w * np.eye(2), atol=1e-15)
    assert abs(abs(out.attainment) - 1) <= 1e-15
    assert out.rotation == w


def test_modulus_agrees_on_real_attaining_input(rng):
    T, x, phi = canonical_operator(5, rng)
    a = bpbp_nu_l1(T, x, phi, 0.4)
    b = bpbp_nu_l1_modulus(T, x, phi, 0.4)
    assert np.array_equal(a.T0, b.T0) and np.array_equal(a.x0, b.x0) and np.array_equal(a.phi0, b.phi0)


def test_error_paths():
    with pytest.raises(NotUnitNorm):
        bpbp_nu_l1(2 * np.eye(2), [1, 0], [1, 1], 0.5)
    out = bpbp_nu_l1(2 * np.eye(2), [1, 0], [1, 1], 0.5, normalize=True)
    assert out.scale == 0.5
    with pytest.raises(NotInPi):
        bpbp_nu_l1(np.eye(2), [0.5, 0.5], [1, -1], 0.5)
    with pytest.raises(HypothesisNotMet) as info:
        bpbp_nu_l1(shift_operator(2), [1, 0], [1, 0], 0.5)
    assert info.value.deficit > 0
    with pytest.raises(HypothesisNotMet):
        bpbp_nu_l1(-np.eye(2), [1, 0], [1, 1], 0.5)


def test_corrupted_norming_pair_is_detected():
    # membership holds within tol (phi_1 x_1 misses |x_1| by 5e-10), yet phi_1 is 5e-7 away from 1
    x = np.array([0.999, 0.001])
    phi = np.array([1.0, 1 - 5e-7])
    assert in_Pi_l1(x, phi, 1e-9)
    with pytest.raises(InternalInvariant):
        bpbp_nu_l1(np.eye(2), x, phi, 0.5)


def test_constants_are_recorded():
    out = bpbp_nu_l1(np.eye(2), [1, 0], [1, 1], 0.6)
    assert out.constants["threshold"] == operator_threshold(0.6) == (0.6 / 9) ** 4.5
    assert out.mu == operator_mu(0.6)
    assert out.constants["P_radius"] == pytest.approx(0.6**3 / 480)
    assert out.constants["A_radius"] == pytest.approx(0.6**2 / 80)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), seeds)
def test_adjoint_duality(n, seed):
    rng = np.random.default_rng(seed)
    T = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    phi = rng.normal(size=n) + 1j * rng.normal(size=n)
    lhs = pair(adjoint(T) @ phi, x)
    rhs = pair(phi, apply(T, x))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))
    assert op_norm_l1(adjoint(T)) == pytest.approx(float(np.max(np.sum(np.abs(T), axis=1))), abs=1e-12)


@settings(max_examples=120, deadline=None)
@given(st.integers(2, 30), eps_values, seeds, fields, st.booleans())
def test_operator_postconditions(n, eps, seed, field, rotate):
    inst = generate_operator(n, eps, np.random.default_rng(seed), field_mode=field, rotate=rotate)
    fn = bpbp_nu_l1_modulus if rotate else bpbp_nu_l1
    out = fn(inst.T, inst.x, inst.phi, eps)
    assert out.dist_T <= eps and out.dist_x <= eps and out.dist_phi <= eps
    assert in_Pi_l1(out.x0, out.phi0, 1e-9)
    target = out.rotation
    assert abs(out.attainment - target) <= 1e-9
    assert abs(out.nu_T0 - 1) <= 1e-9
    for rec in out.column_log:
        assert abs(rec.a - 1) <= out.mu
    off = np.setdiff1d(np.arange(n), out.P)
    assert np.array_equal(out.T0[:, off], inst.T[:, off])
    if field == "real":
        assert np.all(out.T0.imag == 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 15), eps_values, seeds)
def test_isometry_invariance(n, eps, seed):
    rng = np.random.default_rng(seed)
    inst = generate_operator(n, eps, rng)
    u = np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    a = bpbp_nu_l1(inst.T, inst.x, inst.phi, eps)
    b = bpbp_nu_l1(np.conj(u)[:, None] * inst.T * u[None, :], np.conj(u) * inst.x, inst.phi * u, eps)
    np.testing.assert_allclose(b.T0, np.conj(u)[:, None] * a.T0 * u[None, :], rtol=0, atol=1e-12)
    np.testing.assert_allclose(b.x0, np.conj(u) * a.x0, rtol=0, atol=1e-12)
    np.testing.assert_allclose(b.phi0, a.phi0 * u, rtol=0, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 20), eps_values, seeds, fields)
def test_exact_triples_are_fixed(n, eps, seed, field):
    T, x, phi = canonical_operator(n, np.random.default_rng(seed), field)
    out = bpbp_nu_l1(T, x, phi, eps)
    assert np.array_equal(out.T0, T) and np.array_equal(out.x0, x) and np.array_equal(out.phi0, phi)
