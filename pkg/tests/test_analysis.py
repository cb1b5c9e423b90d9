import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blochkit.analysis import (
    bloch_norm,
    bloch_seminorm,
    exact_sup_norm,
    growth_bound_check,
    little_bloch_check,
    maximize_over_disk,
    one_minus_sq,
    schwarz_pick_check,
    seminorm_integrand,
    sigma_infty,
    sup_norm,
    sup_over_disk,
    tau_infty,
)
from blochkit.errors import NumericalOverflow
from blochkit.functions import (
    Automorphism,
    BlaschkeProduct,
    Const,
    Identity,
    LogTest,
    Monomial,
    Polynomial,
    Product,
    Scale,
    Sum,
)
from blochkit.grid import DiskGrid
from oracles import FROZEN
from strategies import cplx, leaves

CATALOGUE = [
    Identity(),
    Monomial(2),
    Monomial(5),
    Automorphism(1, 0.4),
    Automorphism(cmath.exp(0.7j), 0.5 + 0.2j),
    BlaschkeProduct((0, 0.5)),
    BlaschkeProduct((0.3j, -0.6, 0.8)),
    LogTest(0.0),
    LogTest(2.1),
    Polynomial((0.1, 1.0, -0.5, 0.25)),
]


def test_identity_integrand_peaks_at_origin(grid):
    est = sup_over_disk(lambda z: one_minus_sq(z), grid)
    assert est.value == 1 and est.witness == 0


@pytest.mark.parametrize("n", [2, 3, 5, 10])
def test_monomial_seminorm(grid, n):
    est = bloch_seminorm(Monomial(n), grid)
    assert est.value == pytest.approx(FROZEN[f"beta_z{n}"], abs=1e-6)
    if n == 2:
        assert abs(est.witness) == pytest.approx(1 / math.sqrt(3), abs=1e-6)


def test_stage_values_nondecreasing(grid):
    for f in CATALOGUE:
        st_ = bloch_seminorm(f, grid).stage_values
        assert all(b >= a for a, b in zip(st_, st_[1:]))
        assert bloch_seminorm(f, grid).value == st_[-1]


def test_logtest_norm(grid):
    for theta in (0.0, math.pi / 3, 2.1):
        assert bloch_norm(LogTest(theta), grid) == pytest.approx(1, abs=1e-3)


def test_automorphism_seminorm_and_witness(grid):
    a = 0.5 + 0.2j
    est = bloch_seminorm(Automorphism(cmath.exp(0.3j), a), grid)
    assert est.value == pytest.approx(1, abs=1e-9)
    assert abs(est.witness - a) < 1e-3
    assert bloch_norm(Automorphism(1, a), grid) == pytest.approx(abs(a) + 1, abs=1e-9)


def test_constants(grid):
    assert bloch_seminorm(Const(2 - 1j), grid).value == 0
    assert bloch_norm(Const(3 + 4j), grid) == 5
    assert sup_norm(Const(3 + 4j), grid).value == 5


def test_sup_norms(grid):
    est = sup_norm(Automorphism(1, 0.4), grid)
    assert est.value == pytest.approx(1, abs=1e-3)
    assert sup_norm(Scale(0.5, Polynomial((0, 1))), grid).value == pytest.approx(0.5, abs=1e-6)


def test_exact_sup_norm():
    assert exact_sup_norm(Automorphism(1, 0.3)) == 1
    assert exact_sup_norm(Scale(0.5, BlaschkeProduct((0.1,)))) == 0.5
    assert exact_sup_norm(Product(Identity(), Automorphism(1, 0.2))) == 1
    assert exact_sup_norm(LogTest(0)) is None


def test_maximize_allows_negative(grid):
    est = maximize_over_disk(lambda z: -np.abs(z - 0.3), grid)
    assert est.value == pytest.approx(0, abs=1e-8)
    with pytest.raises(ValueError):
        sup_over_disk(lambda z: -np.abs(z) - 1, grid)


def test_nonfinite_integrand_raises(grid):
    with pytest.raises(NumericalOverflow):
        sup_over_disk(lambda z: np.where(np.abs(z) > 0.9, np.inf, 1.0), grid)


def test_little_bloch():
    assert little_bloch_check(Polynomial((1, 2, 3))).trending_to_zero
    assert little_bloch_check(Const(1)).trending_to_zero
    rep = little_bloch_check(LogTest(0))
    assert not rep.trending_to_zero
    assert min(rep.tail_values) > 0.99
    assert len(rep.tail_values) == 17


def test_growth_bound(grid):
    r = np.linspace(0.01, 0.999, 200).astype(complex)
    assert growth_bound_check(LogTest(0), r, grid).max_violation == pytest.approx(0, abs=1e-12)
    assert growth_bound_check(Const(2j), r, grid).max_violation <= 0
    rng = np.random.default_rng(3)
    zs = 0.999 * np.sqrt(rng.random(500)) * np.exp(2j * np.pi * rng.random(500))
    assert growth_bound_check(Monomial(3), zs, grid).max_violation <= 1e-9


def test_schwarz_pick():
    rng = np.random.default_rng(4)
    zs = 0.999 * np.sqrt(rng.random(2000)) * np.exp(2j * np.pi * rng.random(2000))
    assert schwarz_pick_check(Automorphism(1, 0.4), zs).max_violation == pytest.approx(0, abs=1e-9)
    assert schwarz_pick_check(Const(0.5), zs).max_violation <= 0
    assert schwarz_pick_check(BlaschkeProduct((0, 0.5)), zs).max_violation <= 1e-9


def test_tau_sigma_basic(grid):
    assert tau_infty(Const(1), Identity(), grid).value == 1
    assert sigma_infty(Const(1), Identity(), grid).value == 0
    half = Scale(0.5, Identity())
    est = tau_infty(Const(1), half, grid)
    assert est.value == pytest.approx(0.5, abs=1e-12) and abs(est.witness) < 1e-6


def test_sigma_of_identity(grid):
    assert sigma_infty(Identity(), Identity(), grid).value == pytest.approx(FROZEN["sigma_identity"], abs=1e-6)


def test_sigma_exceeds_artanh(grid):
    for a in (0.3, 0.5 + 0.2j, 0.85j):
        s = sigma_infty(Automorphism(1, a), Identity(), grid).value
        assert s >= math.atanh(abs(a)) - 1e-6 > abs(a)


def test_phi_cutoff_overflow(grid):
    with pytest.raises(NumericalOverflow):
        tau_infty(Const(1), Const(1 - 1e-13), grid)


def test_tau_with_identity_is_sup_norm(grid):
    psi = BlaschkeProduct((0.2, -0.5j))
    assert tau_infty(psi, Identity(), grid).value == sup_norm(psi, grid).value


def test_seminorm_below_sup_for_origin_fixing(grid):
    for f in (Identity(), Monomial(3), BlaschkeProduct((0, 0.5)), Scale(0.7, Product(Identity(), Automorphism(1, 0.6)))):
        assert bloch_seminorm(f, grid).value <= sup_norm(f, grid).value + 1e-6


def test_angle_doubling_stability(grid):
    fine = DiskGrid(grid.radii, 2 * grid.angles_per_ring, grid.refinement_rounds)
    for f in CATALOGUE:
        a, b = bloch_seminorm(f, grid).value, bloch_seminorm(f, fine).value
        assert abs(a - b) <= 1e-4 * b


@settings(max_examples=25, deadline=None)
@given(leaves, cplx)
def test_seminorm_scales(f, c):
    g = DiskGrid.default(angles=128, refine=2)
    base = bloch_seminorm(f, g).value
    assert bloch_seminorm(Scale(c, f), g).value == pytest.approx(abs(c) * base, rel=1e-9, abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(leaves, leaves)
def test_norm_triangle_inequality(f, h):
    g = DiskGrid.default(angles=128, refine=2)
    assert bloch_norm(Sum(f, h), g) <= bloch_norm(f, g) + bloch_norm(h, g) + 1e-9
