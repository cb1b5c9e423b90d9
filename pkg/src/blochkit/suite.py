"""Verification catalogue: every quantitative acceptance check, runnable as a table.

Used by ``blochkit verify-suite`` and by the acceptance tests.  Each check
returns one ``CheckResult`` per criterion with the worst observed margin.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .analysis import (
    bloch_norm,
    bloch_seminorm,
    growth_bound_check,
    schwarz_pick_check,
    sigma_infty,
)
from .functions import (
    Automorphism,
    BlaschkeProduct,
    Compose,
    Const,
    Identity,
    LogTest,
    Monomial,
    Polynomial,
    Product,
    ReciprocalShift,
    Scale,
    Sum,
    eval_with_derivative,
    evaluate,
    power,
    rotation,
)
from .grid import DiskGrid
from .isometry import mult_isometry_check, power_norm_bound, power_norm_check
from .operators import (
    OperatorSpec,
    composition_bounds,
    default_family,
    empirical_norm_lower,
    mult_bounds,
    wco_bounds,
)
from .spectra import (
    RotationSpec,
    det_closed_form,
    eigenfunction_check,
    mult_spectrum,
    mult_spectrum_membership,
    resolvent_matrix,
    rotation_comp_spectrum,
    rotation_resolvent_solve,
    weighted_iso_spectrum,
)

DEFAULT_SEED = 20260101


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def random_disk_points(rng: np.random.Generator, count: int, rmax: float = 1 - 1e-6) -> np.ndarray:
    r = rmax * np.sqrt(rng.random(count))
    return r * np.exp(2j * np.pi * rng.random(count))


def random_unimodular(rng: np.random.Generator) -> complex:
    return cmath.exp(2j * math.pi * rng.random())


# -- catalogues ---------------------------------------------------------------

def sandwich_pairs() -> list:
    e = cmath.exp
    return [
        ("identity operator", Const(1.0), Identity()),
        ("unimodular multiplier", Const(e(1j * math.pi / 7)), Identity()),
        ("contraction z/2", Const(1.0), Scale(0.5, Identity())),
        ("C_phi, phi automorphism", Const(1.0), Automorphism(1.0, 0.6)),
        ("2 * point evaluation at 0.9", Const(2.0), Const(0.9)),
        ("z * C_{z/2}", Identity(), Scale(0.5, Identity())),
        ("M_psi, psi automorphism", Automorphism(1.0, 0.3), Identity()),
        ("M_psi, psi Blaschke", BlaschkeProduct((0, 0.5)), Identity()),
        ("rotation by i", Const(1.0), rotation(1j)),
        ("eta C_rotation", Const(e(1j)), rotation(e(2j * math.pi / 5))),
        ("Blaschke weight, automorphism symbol", BlaschkeProduct((0.5,)), Automorphism(1.0, 0.3)),
        ("linear weight, contraction", Polynomial((0.2, 0.5)), Scale(0.7, Identity())),
        ("C_phi, phi Blaschke", Const(1.0), BlaschkeProduct((0, 0.5))),
        ("constant weight, affine contraction", Const(0.5), Polynomial((0.3, 0.5))),
    ]


def isometry_catalogue() -> list:
    """30 symbols; the first seven are unimodular constants, some non-structurally."""
    e = cmath.exp
    unimodular = [
        Const(1.0),
        Const(-1.0),
        Const(1j),
        Const(e(1j * math.pi / 7)),
        Scale(e(0.4j), Const(1.0)),
        Product(Const(e(1j)), Const(e(-0.25j))),
        Compose(Const(e(2.5j)), Identity()),
    ]
    others = [
        Const(0.5),
        Const(2.0),
        Const(0.6 + 0.8j * 0.999),
        Identity(),
        Monomial(2),
        Monomial(3),
        Scale(0.5, Identity()),
        Automorphism(1.0, 0.3),
        Automorphism(1j, 0.5 + 0.2j),
        BlaschkeProduct((0, 0.5)),
        BlaschkeProduct((0.3j, -0.6, 0.8)),
        BlaschkeProduct((0.5,), e(0.3j)),
        Polynomial((0.5, 0.25)),
        Polynomial((1.0, 0.0, 0.1)),
        Sum(Const(1.0), Scale(1e-3, Identity())),
        LogTest(0.0),
        Product(Identity(), Automorphism(1.0, 0.4)),
        Compose(Monomial(2), Automorphism(1.0, 0.2)),
        Scale(e(0.9j), Monomial(4)),
        Sum(Identity(), Monomial(2)),
        Polynomial((0.0, 0.5, 0.5)),
        ReciprocalShift(Identity(), 2.0),
        Compose(Automorphism(1.0, 0.5), Scale(0.5, Identity())),
    ]
    return [(f, True) for f in unimodular] + [(f, False) for f in others]


def inequality_catalogue() -> list:
    """Ten bounded symbols with closed-form sup norms (Schwarz-Pick needs the exact value)."""
    e = cmath.exp
    return [
        Identity(),
        Monomial(2),
        Monomial(5),
        Automorphism(1.0, 0.4),
        Automorphism(e(0.7j), 0.5 + 0.2j),
        BlaschkeProduct((0, 0.5)),
        BlaschkeProduct((0.3j, -0.6, 0.8), e(1.1j)),
        Scale(0.5, BlaschkeProduct((0.2 + 0.1j, -0.7j))),
        Product(Identity(), Automorphism(1.0, -0.3 + 0.3j)),
        Const(0.3 + 0.4j),
    ]


def growth_catalogue() -> list:
    return inequality_catalogue()[:7] + [LogTest(0.0), LogTest(2.1), Polynomial((0.1, 1.0, -0.5, 0.25))]


def derivative_catalogue() -> list:
    """One representative per tree variant."""
    return [
        ("const", Const(0.3 - 0.2j)),
        ("identity", Identity()),
        ("monomial", Monomial(7)),
        ("polynomial", Polynomial((0.1, -0.5j, 2.0, 0.3 + 0.1j))),
        ("automorphism", Automorphism(cmath.exp(0.4j), 0.6 - 0.3j)),
        ("blaschke", BlaschkeProduct((0, 0.5, 0.9j, -0.4 + 0.3j), cmath.exp(-1j))),
        ("logtest", LogTest(1.3)),
        ("sum", Sum(Monomial(3), LogTest(0.2))),
        ("product", Product(Automorphism(1.0, 0.5), Polynomial((1.0, 1.0)))),
        ("scale", Scale(2 - 1j, BlaschkeProduct((0.2, -0.7j)))),
        ("compose", Compose(LogTest(0.5), BlaschkeProduct((0.3, 0.6j)))),
        ("reciprocal_shift", ReciprocalShift(Automorphism(1.0, 0.2), 1.5 + 0.5j)),
    ]


@lru_cache(maxsize=None)
def _family(grid: DiskGrid, phi0_phase):
    phi = None if phi0_phase is None else Const(0.5 * cmath.exp(1j * phi0_phase))
    return default_family(grid, phi)


def family_for(grid: DiskGrid, phi):
    p0 = evaluate(phi, 0j)
    return _family(grid, None if p0 == 0 else cmath.phase(p0))


# -- criteria -----------------------------------------------------------------

def check_logtest_norm(grid: DiskGrid, rng) -> CheckResult:
    errs = [abs(bloch_norm(LogTest(t), grid) - 1) for t in (0.0, math.pi / 3, 2.1)]
    return CheckResult("1 logtest bloch norm = 1 (tol 1e-3)", max(errs) <= 1e-3, f"max |err| = {max(errs):.3e}")


def check_automorphism_norm(grid: DiskGrid, rng) -> CheckResult:
    eta = cmath.exp(0.7j)
    worst_norm, worst_sigma, ok = 0.0, math.inf, True
    for a in (0.3, 0.5 + 0.2j, 0.85j):
        psi = Automorphism(eta, a)
        err = abs(bloch_norm(psi, grid) - (abs(a) + 1))
        sigma = sigma_infty(psi, Identity(), grid).value
        lb = math.atanh(abs(a))
        worst_norm = max(worst_norm, err)
        worst_sigma = min(worst_sigma, sigma - (lb - 1e-6))
        ok &= err <= 1e-3 and sigma >= lb - 1e-6 and lb > abs(a)
    return CheckResult(
        "2 automorphism norm = |a|+1 (1e-3), sigma >= artanh|a| - 1e-6 > |a|",
        bool(ok),
        f"max norm err = {worst_norm:.3e}, min sigma slack = {worst_sigma:.3e}",
    )


def check_power_bound(grid: DiskGrid, rng) -> CheckResult:
    bounds = [power_norm_bound(n) for n in range(2, 65)]
    below_one = max(bounds) < 1
    eq_err = max(
        abs(bloch_seminorm(power(Identity(), n), grid).value - power_norm_bound(n)) for n in range(2, 11)
    )
    worst = -math.inf
    for _ in range(10):
        k = int(rng.integers(1, 4))
        zeros = (0j,) + tuple(random_disk_points(rng, k, 0.9))
        psi = BlaschkeProduct(zeros, random_unimodular(rng))
        rep = power_norm_check(psi, 6, grid)
        worst = max(worst, max(b - bound for _, b, bound in rep.per_n))
    ok = below_one and eq_err <= 1e-6 and worst <= 1e-6
    return CheckResult(
        "3 power bound b(n) < 1, beta(z^n) = b(n) (1e-6), beta(psi^n) <= b(n) + 1e-6",
        bool(ok),
        f"max b = {max(bounds):.6f}, equality err = {eq_err:.3e}, worst excess = {worst:.3e}",
    )


def check_sandwich(grid: DiskGrid, rng) -> CheckResult:
    worst_lo, worst_hi = math.inf, math.inf
    for _, psi, phi in sandwich_pairs():
        bounds = wco_bounds(psi, phi, grid)
        best = empirical_norm_lower(OperatorSpec.weighted(psi, phi), family_for(grid, phi), grid).best
        worst_lo = min(worst_lo, best + 1e-6 - bounds.lower)
        worst_hi = min(worst_hi, bounds.upper + 1e-6 - best)
    ok = worst_lo >= 0 and worst_hi >= 0
    return CheckResult(
        f"4 norm sandwich lower <= empirical <= upper over {len(sandwich_pairs())} pairs (1e-6)",
        bool(ok),
        f"min slack lower = {worst_lo:.3e}, upper = {worst_hi:.3e}",
    )


def check_degeneracy(grid: DiskGrid, rng) -> CheckResult:
    worst = 0.0
    for phi in (Scale(0.5, Identity()), Automorphism(1.0, 0.6), BlaschkeProduct((0, 0.5)),
                Polynomial((0.3, 0.5)), rotation(1j)):
        w = wco_bounds(Const(1.0), phi, grid, check=False)
        x = composition_bounds(phi, grid)
        worst = max(worst, abs(w.lower - x.lower), abs(w.upper - x.upper))
    for psi in (Identity(), Automorphism(1.0, 0.3), BlaschkeProduct((0, 0.5)), Const(cmath.exp(0.3j)),
                Polynomial((0.2, 0.5))):
        w = wco_bounds(psi, Identity(), grid, check=False)
        m = mult_bounds(psi, grid)
        worst = max(
            worst,
            abs(w.upper - m.upper),
            abs(w.components["tau"] - m.components["sup_norm_psi"]),
            abs(w.lower - m.components["bloch_norm_psi"]),
        )
    return CheckResult("5 degenerate kinds reproduce composition / multiplication bounds (1e-12)",
                       worst <= 1e-12, f"max diff = {worst:.3e}")


def check_isometry_characterization(grid: DiskGrid, rng) -> CheckResult:
    family = _family(grid, None)
    wrong, drift, sq = [], 0.0, {}
    for f, expected in isometry_catalogue():
        v = mult_isometry_check(f, grid, family)
        if v.is_isometry != expected:
            wrong.append(repr(f))
        if v.is_isometry:
            drift = max(drift, v.evidence["max_norm_drift"])
    for name, f in (("z", Identity()), ("z^2", Monomial(2))):
        v = mult_isometry_check(f, grid, family)
        sq[name] = v.evidence.get("bloch_norm_psi_squared", math.nan)
    ok = not wrong and drift <= 1e-6 and all(s < 1 for s in sq.values())
    return CheckResult(
        f"6 isometric multipliers = unimodular constants ({len(isometry_catalogue())} symbols)",
        bool(ok),
        f"misclassified = {len(wrong)}, max drift = {drift:.3e}, ||psi^2||_B = "
        + ", ".join(f"{k}: {v:.6f}" for k, v in sq.items()),
    )


def _random_mu_off(rng, n: int) -> complex:
    while True:
        mu = random_unimodular(rng)
        if abs(mu ** n - 1) > 0.1:
            return mu


def check_rotation_spectra(grid: DiskGrid, rng) -> CheckResult:
    zeta = RotationSpec.rational(1, 5)
    spec = rotation_comp_spectrum(zeta)
    eig = max(eigenfunction_check(zeta, k, grid).residual for k in range(1, 6))
    set_ok = len(spec.points) == 5 and all(abs(p ** 5 - 1) < 1e-12 for p in spec.points)
    det_err = 0.0
    for n in range(2, 13):
        for _ in range(20):
            mu = complex(rng.normal(), rng.normal())
            _, det = resolvent_matrix(n, mu)
            closed = det_closed_form(n, mu)
            det_err = max(det_err, abs(det - closed) / abs(closed))
    gs = (Const(1.0), Identity(), Monomial(2), LogTest(0.0))
    resid = 0.0
    for n in range(1, 9):
        z = RotationSpec.rational(1, n)
        for g in gs:
            for _ in range(5):
                resid = max(resid, rotation_resolvent_solve(z, _random_mu_off(rng, n), g).residual)
    ok = set_ok and eig < 1e-12 and det_err <= 1e-10 and resid < 1e-8
    return CheckResult(
        "7 rotation spectra: 5th roots + eigenfunctions, det identity, cyclic resolvent",
        bool(ok),
        f"eigen residual = {eig:.3e}, det rel err = {det_err:.3e}, solve residual = {resid:.3e}",
    )


def check_mult_spectra(grid: DiskGrid, rng) -> CheckResult:
    eta = cmath.exp(0.9j)
    diam = mult_spectrum(Const(eta), grid).diameter
    out = mult_spectrum_membership(Identity(), 2.0, grid)
    inside = mult_spectrum_membership(Identity(), 0.5, grid)
    ok = (diam < 1e-14 and not out.in_spectrum and out.resolvent_residual <= 1e-10
          and inside.in_spectrum)
    return CheckResult(
        "8 multiplication spectra: constant cloud, resolvent outside, membership inside",
        bool(ok),
        f"diameter = {diam:.1e}, resolvent residual = {out.resolvent_residual:.1e}, "
        f"in(0.5) = {inside.in_spectrum}",
    )


def check_weighted_spectra(grid: DiskGrid, rng) -> CheckResult:
    err, ok = 0.0, True
    for _ in range(5):
        eta = random_unimodular(rng)
        for n in (1, 2, 3, 4, 6):
            zeta = RotationSpec.rational(1, n)
            got = weighted_iso_spectrum(eta, zeta).points
            want = [eta * p for p in rotation_comp_spectrum(zeta).points]
            ok &= len(got) == len(want)
            err = max(err, max(abs(a - b) for a, b in zip(got, want)))
    return CheckResult("9 weighted spectra = eta * rotation spectra (1e-12)", bool(ok and err <= 1e-12),
                       f"max diff = {err:.1e}")


def check_inequalities(grid: DiskGrid, rng) -> CheckResult:
    zs = random_disk_points(rng, 10_000)
    sp = max(schwarz_pick_check(f, zs).max_violation for f in inequality_catalogue())
    gb = max(growth_bound_check(f, zs, grid).max_violation for f in growth_catalogue())
    fd = 0.0
    h = 1e-6
    for _, f in derivative_catalogue():
        pts = random_disk_points(rng, 1000, 0.99)
        _, d = eval_with_derivative(f, pts)
        for step in (h, 1j * h):
            approx = (evaluate(f, pts + step) - evaluate(f, pts - step)) / (2 * step)
            # relative to the largest exact derivative on the sample
            scale = float(np.max(np.abs(d))) or 1.0
            fd = max(fd, float(np.max(np.abs(d - approx))) / scale)
    ok = sp <= 1e-9 and gb <= 1e-9 and fd <= 1e-5
    return CheckResult(
        "10 Schwarz-Pick / growth bound (1e-9), exact vs finite-difference derivative (1e-5)",
        bool(ok),
        f"Schwarz-Pick = {sp:.3e}, growth = {gb:.3e}, derivative = {fd:.3e}",
    )


CHECKS = (
    check_logtest_norm,
    check_automorphism_norm,
    check_power_bound,
    check_sandwich,
    check_degeneracy,
    check_isometry_characterization,
    check_rotation_spectra,
    check_mult_spectra,
    check_weighted_spectra,
    check_inequalities,
)


def run_suite(grid: DiskGrid | None = None, seed: int = DEFAULT_SEED) -> list:
    grid = grid or DiskGrid.default()
    results = []
    for i, check in enumerate(CHECKS):
        results.append(check(grid, np.random.default_rng([seed, i])))
    return results
