import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from quantmarket import (DimensionMismatchError, Grid, InvalidArgumentError,
                         NormalizationError, State, delta, dft_forward, dft_inverse,
                         inner_product, make_grid, normalize, probabilities, trend_basis)
from quantmarket.lattice import state_from_csv, state_to_csv


def naive_dft(amps, sign=-1):
    """Double-sum oracle, independent of the kernel matrix."""
    d = len(amps)
    q = (d - 1) // 2
    out = []
    for k in range(-q, q + 1):
        acc = 0j
        for n in range(-q, q + 1):
            acc += cmath.exp(sign * 2j * math.pi * k * n / d) * amps[n + q]
        out.append(acc / math.sqrt(d))
    return np.array(out)


def random_state(rng, grid):
    return State(grid, rng.normal(size=grid.d) + 1j * rng.normal(size=grid.d))


def test_make_grid():
    g = make_grid(10)
    assert g.d == 21
    np.testing.assert_allclose(g.returns, np.arange(-10, 11) / 100)
    assert g.returns[0] == -0.10 and g.returns[-1] == 0.10
    assert make_grid(1).d == 3
    np.testing.assert_array_equal(make_grid(1).returns, [-0.01, 0.0, 0.01])
    assert make_grid(50).d == 101


@pytest.mark.parametrize("q", [0, -3, 2.5, True])
def test_make_grid_rejects(q):
    with pytest.raises(InvalidArgumentError):
        make_grid(q)


@given(st.integers(1, 60))
def test_grid_symmetric(q):
    g = Grid(q)
    assert g.d % 2 == 1
    np.testing.assert_array_equal(g.returns, -g.returns[::-1])
    assert g.r(0) == 0


def test_state_validation(grid10):
    with pytest.raises(DimensionMismatchError):
        State(grid10, np.ones(5))
    with pytest.raises(InvalidArgumentError):
        State(grid10, np.full(21, np.nan))


def test_inner_product_bases(grid10):
    assert inner_product(delta(grid10, 3), delta(grid10, 3)) == 1
    assert inner_product(delta(grid10, 3), delta(grid10, 5)) == 0
    assert abs(inner_product(trend_basis(grid10, 2), trend_basis(grid10, 2)) - 1) < 1e-12
    assert abs(inner_product(trend_basis(grid10, 2), trend_basis(grid10, 7))) < 1e-12


def test_inner_product_conjugate_linear(grid10, rng):
    a, b = random_state(rng, grid10), random_state(rng, grid10)
    scaled = State(grid10, 2j * a.amplitudes)
    assert inner_product(scaled, b) == pytest.approx(-2j * inner_product(a, b))


def test_inner_product_grid_mismatch():
    with pytest.raises(DimensionMismatchError):
        inner_product(delta(Grid(2), 0), delta(Grid(3), 0))


def test_plancherel(grid10, rng):
    a, b = random_state(rng, grid10), random_state(rng, grid10)
    fa = State(grid10, naive_dft(a.amplitudes))
    fb = State(grid10, naive_dft(b.amplitudes))
    assert abs(inner_product(fa, fb) - inner_product(a, b)) < 1e-12
    assert abs(inner_product(dft_forward(a), dft_forward(b)) - inner_product(a, b)) < 1e-12


def test_normalize(grid10):
    two = State(grid10, 2 * delta(grid10, 0).amplitudes)
    np.testing.assert_array_equal(normalize(two).amplitudes, delta(grid10, 0).amplitudes)
    with pytest.raises(NormalizationError):
        normalize(State(grid10, np.zeros(21)))
    with pytest.raises(NormalizationError):
        normalize(State(grid10, np.full(21, 1e-160)))


@pytest.mark.parametrize("d", [3, 21, 101])
def test_dft_matches_naive(d, rng):
    g = Grid((d - 1) // 2)
    psi = random_state(rng, g)
    np.testing.assert_allclose(dft_forward(psi).amplitudes, naive_dft(psi.amplitudes),
                               rtol=0, atol=1e-12)
    np.testing.assert_allclose(dft_inverse(psi).amplitudes, naive_dft(psi.amplitudes, +1),
                               rtol=0, atol=1e-12)


def test_dft_delta_zero(grid10):
    out = dft_forward(delta(grid10, 0)).amplitudes
    np.testing.assert_allclose(out, np.full(21, 1 / math.sqrt(21)), atol=1e-15)
    assert 1 / math.sqrt(21) == pytest.approx(0.2182179, abs=1e-7)
    back = dft_inverse(State(grid10, np.full(21, 1 / math.sqrt(21))))
    np.testing.assert_allclose(back.amplitudes, delta(grid10, 0).amplitudes, atol=1e-15)


@pytest.mark.parametrize("n", range(-10, 11))
def test_basis_duality(grid10, n):
    np.testing.assert_allclose(dft_forward(trend_basis(grid10, n)).amplitudes,
                               delta(grid10, n).amplitudes, atol=1e-12)
    k = np.arange(-10, 11)
    expected = np.exp(2j * np.pi * k * n / 21) / math.sqrt(21)
    np.testing.assert_allclose(dft_inverse(delta(grid10, n)).amplitudes, expected, atol=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([1, 10, 50]),
       arrays(np.float64, 202, elements=st.floats(-1e3, 1e3)))
def test_unitarity_and_inversion(q, raw):
    g = Grid(q)
    amps = raw[:g.d] + 1j * raw[101:101 + g.d]
    psi = State(g, amps)
    scale = max(1.0, psi.norm())
    assert abs(dft_forward(psi).norm() - psi.norm()) <= 1e-12 * scale
    np.testing.assert_allclose(dft_inverse(dft_forward(psi)).amplitudes, amps,
                               rtol=0, atol=1e-12 * scale)
    np.testing.assert_allclose(dft_forward(dft_inverse(psi)).amplitudes, amps,
                               rtol=0, atol=1e-12 * scale)


def test_probabilities(grid10, rng):
    p = probabilities(delta(grid10, -2))
    assert p[grid10.offset(-2)] == 1 and p.sum() == 1
    np.testing.assert_allclose(probabilities(trend_basis(grid10, 4)), 1 / 21, atol=1e-15)
    psi = normalize(random_state(rng, grid10))
    p = probabilities(psi)
    assert np.all(p >= 0) and abs(p.sum() - 1) < 1e-10
    with pytest.raises(NormalizationError):
        probabilities(State(grid10, 3 * delta(grid10, 0).amplitudes))


def test_state_csv_round_trip(grid10, rng):
    psi = random_state(rng, grid10)
    text = state_to_csv(psi)
    assert text.splitlines()[0] == "n,re,im"
    assert text.splitlines()[1].startswith("-10,")
    back = state_from_csv(text)
    assert back.grid == grid10
    np.testing.assert_allclose(back.amplitudes, psi.amplitudes, rtol=1e-11)
