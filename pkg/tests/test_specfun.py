"""Special-function accuracy against independent references."""

import math

import numpy as np
import pytest

from finhankel.errors import DomainError, PoleError
from finhankel.specfun import bessel_j, bessel_j_leading, gamma, reciprocal_gamma

from oracles import j0_first_zero, mp_bessel_j, mp_gamma

# frozen via oracles.j0_first_zero() (series bisection with tail bound)
J0_FIRST_ZERO = 2.404825557695773
# frozen via mpmath: mp.gamma(0.75) = 1.22541670246517764512909830336
GAMMA_3_4 = 1.2254167024651776


def test_bessel_basic_values():
    assert bessel_j(0.0, 0.0) == 1.0
    # half-integer closed form: sqrt(2/(pi x)) sin(x) vanishes at x = pi
    assert abs(bessel_j(0.5, math.pi)) < 1e-15
    assert abs(bessel_j(0.0, J0_FIRST_ZERO)) < 1e-11


def test_first_zero_oracle_rederivation():
    assert abs(j0_first_zero() - J0_FIRST_ZERO) < 1e-14


def test_bessel_domain_errors():
    with pytest.raises(DomainError):
        bessel_j(0.0, -1.0)
    with pytest.raises(DomainError):
        bessel_j(-0.5, 0.0)
    with pytest.raises(DomainError):
        bessel_j(-1.0, 1.0)
    with pytest.raises(DomainError):
        bessel_j_leading(0.0, 0.0)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5, 3.5, 8.0, -0.5, -0.9])
def test_bessel_accuracy_vs_reference(nu):
    """Relative error <= 1e-11 on [0, 1e4] away from the function's zeros."""
    xs = np.concatenate([np.linspace(0.07, 30, 61), np.geomspace(30, 1e4, 41)])
    for x in xs:
        ref = mp_bessel_j(nu, float(x))
        env = math.sqrt(2.0 / (math.pi * max(x, 1e-2)))
        if abs(ref) < 0.05 * env:
            continue
        assert abs(bessel_j(nu, float(x)) - ref) <= 1e-11 * abs(ref)


def test_bessel_leading_form():
    z = 1000.0
    expect = math.sqrt(2.0 / (math.pi * z)) * math.cos(z - math.pi / 4.0)
    assert bessel_j_leading(0.0, z) == pytest.approx(expect, rel=1e-15)
    # half-integer order: the leading form is exact for all z
    for z in (0.3, 2.0, 17.5, 400.0):
        assert bessel_j_leading(0.5, z) == pytest.approx(
            math.sqrt(2.0 / (math.pi * z)) * math.sin(z), rel=1e-13
        )


def test_leading_form_correction_order():
    """|J - leading| * z^{3/2} stays bounded over a wide sweep."""
    zs = np.geomspace(50, 5000, 40)
    gap = np.array([abs(bessel_j(0.0, z) - bessel_j_leading(0.0, z)) for z in zs])
    assert np.all(gap * zs ** 1.5 < 1.0)


def test_bessel_recurrence():
    """J_{nu-1}(x) + J_{nu+1}(x) = (2 nu / x) J_nu(x)."""
    for nu in (0.5, 1.0, 2.5):
        for x in np.geomspace(0.1, 500, 60):
            lhs = bessel_j(nu - 1.0, float(x)) + bessel_j(nu + 1.0, float(x))
            mid = bessel_j(nu, float(x))
            assert abs(lhs - 2.0 * nu / x * mid) <= 1e-10 * max(1.0, abs(mid))


def test_half_integer_closed_forms():
    for x in np.geomspace(0.1, 100, 50):
        s = math.sqrt(2.0 / (math.pi * x))
        assert bessel_j(0.5, float(x)) == pytest.approx(s * math.sin(x), rel=1e-10, abs=1e-14)
        j32 = s * (math.sin(x) / x - math.cos(x))
        assert bessel_j(1.5, float(x)) == pytest.approx(j32, rel=1e-10, abs=1e-14)


def test_gamma_values():
    assert gamma(1.0) == pytest.approx(1.0, rel=1e-14)
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma(0.75) == pytest.approx(GAMMA_3_4, rel=1e-14)
    assert gamma(2.0) == pytest.approx(1.0, rel=1e-14)


def test_gamma_poles():
    for k in range(0, 6):
        with pytest.raises(PoleError):
            gamma(complex(-k, 0.0))


def _grid_points(count=200, seed=11):
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < count:
        z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
        if abs(z.real - round(z.real)) < 5e-2 and abs(z.imag) < 5e-2:
            continue
        pts.append(z)
    return pts


def test_gamma_accuracy_vs_reference():
    rng = np.random.default_rng(23)
    pts = []
    while len(pts) < 150:
        z = complex(rng.uniform(-35, 35), rng.uniform(-35, 35))
        if abs(z) > 50:
            continue
        if z.imag == 0 and z.real <= 0 and abs(z.real - round(z.real)) <= 1e-3:
            continue
        pts.append(z)
    # include points skirting the poles at the contract's minimum distance
    pts += [complex(-k + 2e-3, 0.0) for k in range(0, 8)]
    pts += [complex(-k, 2e-3) for k in range(0, 8)]
    worst = max(abs(gamma(z) - mp_gamma(z)) / abs(mp_gamma(z)) for z in pts)
    assert worst <= 1e-12


def test_gamma_reflection():
    for z in _grid_points(200):
        rhs = math.pi / np.sin(np.pi * np.complex128(z))
        lhs = gamma(z) * gamma(1.0 - z)
        assert abs(lhs - rhs) <= 1e-10 * abs(rhs)


def test_gamma_recurrence():
    for z in _grid_points(200):
        assert abs(gamma(z + 1.0) - z * gamma(z)) <= 1e-11 * abs(gamma(z + 1.0))


def test_reciprocal_gamma_exact_zeros():
    for k in range(20):
        assert reciprocal_gamma(complex(-k, 0.0)) == 0
    assert reciprocal_gamma(2.0) == pytest.approx(1.0, rel=1e-14)
    assert reciprocal_gamma(0.0) == 0
    assert reciprocal_gamma(-3.0) == 0


def test_reciprocal_gamma_inverts_gamma():
    for z in _grid_points(150, seed=3):
        assert reciprocal_gamma(z) * gamma(z) == pytest.approx(1.0, rel=1e-11)


def test_gamma_finite_input_required():
    with pytest.raises(DomainError):
        gamma(complex(float("nan"), 0.0))
