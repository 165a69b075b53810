import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bpbkit.errors import DimensionMismatch, DomainError
from bpbkit.space import (
    arg_of,
    check_field,
    in_Pi_l1,
    in_pi1,
    is_positive,
    l1_norm,
    pair,
    phase,
    set_A,
    set_N,
    set_P,
    sup_norm,
)

from conftest import cvectors, random_unit_l1, scalars


@pytest.mark.parametrize("x, expected", [((0, 0), 0.0), ((1, 0), 1.0), ((0.6, 0.8j), 1.4)])
def test_l1_norm(x, expected):
    assert l1_norm(x) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("phi, expected", [((0, 0), 0.0), ((1, 0.5), 1.0), ((0.3 + 0.4j, 0.2), 0.5)])
def test_sup_norm(phi, expected):
    assert sup_norm(phi) == pytest.approx(expected, abs=1e-15)


def test_pair_examples():
    assert pair([1, 1], [1, 0]) == 1
    assert pair([1, -1j], [0.5, 0.5j]) == pytest.approx(1, abs=1e-15)
    assert pair([0, 1], [1, 0]) == 0


def test_pair_is_not_conjugated():
    # a sesquilinear pairing would give -1 here
    assert pair([1j], [1j]) == -1


def test_pair_length_mismatch():
    with pytest.raises(DimensionMismatch):
        pair([1, 2], [1, 2, 3])


def test_arg_of_examples():
    assert arg_of(0) == 0.0
    assert arg_of(-0.0) == 0.0
    assert arg_of(1) == 0.0
    assert arg_of(1j) == pytest.approx(np.pi / 2)
    assert arg_of(-1j) == pytest.approx(3 * np.pi / 2)
    assert arg_of(-1) == pytest.approx(np.pi)


@given(scalars)
def test_arg_of_range_and_polar_form(z):
    a = arg_of(z)
    assert 0.0 <= a < 2 * np.pi
    assert abs(abs(z) * np.exp(1j * a) - z) <= 1e-12


@given(scalars, st.floats(min_value=-10, max_value=10))
def test_arg_of_rotation(z, theta):
    assume(abs(z) > 1e-6)
    d = (arg_of(z * np.exp(1j * theta)) - arg_of(z) - theta) % (2 * np.pi)
    assert min(d, 2 * np.pi - d) <= 1e-9


def test_phase_keeps_reals_real():
    assert phase(-2.0) == -1
    assert phase(0) == 1
    ph = phase(np.array([-3.0, 0.0, 5.0]))
    assert np.all(ph.imag == 0)


@pytest.mark.parametrize(
    "x, phi, expected",
    [
        ((1, 0), (1, 0.3), [0, 1]),
        ((0.5, 0.5), (1, -1), [0]),
        ((0.5, 0.5j), (1, -1j), [0, 1]),
    ],
)
def test_set_N(x, phi, expected):
    assert list(set_N(x, phi, 0)) == expected


def test_set_A():
    assert list(set_A([1, 0.5], 0.1)) == [0]
    assert list(set_A([1, 1], 0.37)) == [0, 1]
    assert list(set_A([0.999, 0.3], 0.008)) == [0]
    assert list(set_A([0.99, 0.3], 0.008)) == []
    with pytest.raises(DomainError):
        set_A([1], 0)


def test_set_P():
    assert list(set_P([0.9, 0.1], [1, 0.5], 0.18)) == [0]
    assert list(set_P([0.8, 0.2], [1, 0.9], 0.125)) == [0, 1]
    assert list(set_P([1, 0], [1, 1], 0.5)) == [0]


def test_in_Pi_l1_examples():
    for z in (0, 1, -1j, 0.3 + 0.4j):
        assert in_Pi_l1([1, 0], [1, z], 0)
    assert in_Pi_l1([0.5, 0.5j], [1, -1j], 0)
    assert not in_Pi_l1([0.5, 0.5], [1, -1], 0)


def test_in_pi1_examples():
    assert in_pi1([1, 1], [1, 0])
    assert in_pi1([1, 1], [0.5, 0.5])
    assert not in_pi1([1, 0], [0, 1])


def test_check_field():
    assert check_field([1, 2j], "complex")
    assert check_field(np.array([1.0, -2.0], dtype=complex), "real")
    assert not check_field([1, 2j], "real")


@settings(max_examples=200)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_characterization_forward(n, seed):
    # coordinatewise alignment forces phi(x) = 1
    rng = np.random.default_rng(seed)
    x = random_unit_l1(rng, n)
    x[rng.random(n) < 0.3] = 0
    assume(np.any(x != 0))
    x /= l1_norm(x)
    phi = np.exp(1j * rng.uniform(0, 2 * np.pi, n)) * rng.uniform(0, 1, n)
    supp = x != 0
    phi[supp] = np.conj(x[supp]) / np.abs(x[supp])
    assert len(set_N(x, phi, 1e-12)) == n
    assert abs(pair(phi, x) - 1) <= 1e-12


@settings(max_examples=200)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_characterization_backward(n, seed):
    rng = np.random.default_rng(seed)
    x = random_unit_l1(rng, n)
    phi = np.conj(phase(x)) * np.where(rng.random(n) < 0.5, 1.0, 1.0 + 1e-13)
    phi /= np.max(np.abs(phi))
    if in_Pi_l1(x, phi, 1e-12):
        assert np.all(np.abs(phi * x - np.abs(x)) <= 1e-9)


@given(cvectors(), st.floats(0.01, 0.99))
def test_P_subset_A(x, r):
    n = x.size
    phi = np.resize(np.array([0.95, -0.5j, 1.0, 0.99 + 0.01j, 0.2]), n)
    assert set(set_P(x, phi, r)) <= set(set_A(phi, r))


@given(cvectors(min_size=2), st.floats(0.01, 0.99), st.integers(0, 2**32 - 1))
def test_P_positive_x(x, r, seed):
    rng = np.random.default_rng(seed)
    xp = np.abs(x)
    phi = rng.uniform(-1, 1, xp.size) + 1j * rng.uniform(-1, 1, xp.size)
    phi /= max(1.0, np.max(np.abs(phi)))
    expected = [j for j in range(xp.size) if xp[j] != 0 and phi[j].real >= 1 - r]
    got = list(set_P(xp, phi, r))
    # identical up to products that round across the threshold
    diff = set(got) ^ set(expected)
    assert all(abs(phi[j].real - (1 - r)) < 1e-12 for j in diff)


@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_pair_bilinear(n, seed):
    rng = np.random.default_rng(seed)
    phi, x, y = (rng.normal(size=(3, n)) + 1j * rng.normal(size=(3, n)))
    a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
    assert abs(pair(phi, a * x + b * y) - (a * pair(phi, x) + b * pair(phi, y))) <= 1e-12 * (1 + np.abs(phi).sum() * (np.abs(x).sum() + np.abs(y).sum()) * (abs(a) + abs(b)))


def test_complex_inequality_on_disk(rng):
    r = np.sqrt(rng.uniform(size=200_000))
    z = r * np.exp(1j * rng.uniform(0, 2 * np.pi, size=r.size))
    assert np.all(np.abs(z - 1) <= np.sqrt(2 * (1 - z.real)) + 1e-12)


def test_is_positive():
    assert is_positive([0.5, 0, 0.5])
    assert not is_positive([0.5, -0.5])
    assert not is_positive([0.5j])
