"""Isometric multiplication and composition operators.

M_psi is an isometry exactly for unimodular constants psi; C_phi is an
isometry exactly when phi(0) = 0 and beta_phi = 1.  The checks here decide the
first structurally and back every verdict with numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analysis import bloch_norm, bloch_seminorm, sup_norm
from .errors import DomainError
from .functions import (
    AnalyticFn,
    BlaschkeProduct,
    Compose,
    Const,
    Identity,
    Polynomial,
    Product,
    Scale,
    Sum,
    evaluate,
    eval_with_derivative,
    is_self_map,
    multiply,
    power,
)
from .grid import DiskGrid
from .operators import OperatorSpec, TestFamily, apply, default_family, empirical_norm_lower

REASONS = (
    "unimodular_constant",
    "not_constant",
    "constant_wrong_modulus",
    "origin_fixed_and_zero",
    "seminorm_below_one",
    "norm_drift",
)
# reasons that come with a positive verdict: a unimodular constant symbol for
# M_psi, and phi(0) = 0 with beta_phi = 1 for C_phi
ACCEPTING = ("unimodular_constant", "origin_fixed_and_zero")
UNIMODULAR_TOL = 1e-12
NORM_TOL = 1e-6
BETA_BAND = (1 - 1e-3, 1 + 1e-6)


@dataclass(frozen=True)
class IsometryVerdict:
    is_isometry: bool
    reason: str
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.reason not in REASONS:
            raise ValueError(f"unknown reason {self.reason!r}")
        if self.is_isometry != (self.reason in ACCEPTING):
            raise ValueError(f"verdict {self.is_isometry} inconsistent with reason {self.reason!r}")


def structurally_constant(f: AnalyticFn) -> bool:
    if isinstance(f, Const):
        return True
    if isinstance(f, BlaschkeProduct):
        return not f.zeros
    if isinstance(f, Polynomial):
        return all(c == 0 for c in f.coeffs[1:])
    if isinstance(f, Scale):
        return f.c == 0 or structurally_constant(f.inner)
    if isinstance(f, (Sum, Product)):
        return structurally_constant(f.lhs) and structurally_constant(f.rhs)
    if isinstance(f, Compose):
        return structurally_constant(f.outer) or structurally_constant(f.inner)
    return False


_PROBES = None


def _probe_points() -> np.ndarray:
    global _PROBES
    if _PROBES is None:
        # 64 fixed points spread over the disk (golden-angle spiral)
        k = np.arange(64)
        _PROBES = 0.95 * np.sqrt((k + 0.5) / 64) * np.exp(1j * k * math.pi * (3 - math.sqrt(5)))
    return _PROBES


def constant_value(f: AnalyticFn):
    """The constant value of f, or None.  Structure first, then 64-point evaluation."""
    if structurally_constant(f):
        return evaluate(f, 0j)
    vals = evaluate(f, _probe_points())
    if np.max(np.abs(vals - vals[0])) <= 1e-12:
        return complex(vals[0])
    return None


def mult_isometry_check(psi: AnalyticFn, grid: DiskGrid, family: TestFamily | None = None) -> IsometryVerdict:
    c = constant_value(psi)
    if c is not None:
        if abs(abs(c) - 1) > UNIMODULAR_TOL:
            return IsometryVerdict(False, "constant_wrong_modulus", {"constant": c, "modulus": abs(c)})
        family = family or default_family(grid)
        op = OperatorSpec.multiplication(psi)
        drift = [
            abs(bloch_norm(apply(op, f), grid) - bloch_norm(f, grid)) for f in family.members
        ]
        evidence = {"constant": c, "max_norm_drift": max(drift), "family_size": len(drift)}
        if max(drift) > NORM_TOL:
            return IsometryVerdict(False, "norm_drift", evidence)
        return IsometryVerdict(True, "unimodular_constant", evidence)

    # M_psi(1) = psi and M_psi(psi) = psi^2: an isometry needs both at norm 1
    psi0 = evaluate(psi, 0j)
    norm_psi = bloch_norm(psi, grid)
    norm_psi_sq = bloch_norm(multiply(psi, psi), grid)
    evidence = {
        "psi_at_origin": psi0,
        "bloch_norm_psi": norm_psi,
        "bloch_norm_psi_squared": norm_psi_sq,
    }
    if abs(norm_psi - 1) > NORM_TOL:
        reason = "norm_drift"
    elif norm_psi_sq < 1 - NORM_TOL:
        reason = "seminorm_below_one"
    else:
        reason = "not_constant"
    return IsometryVerdict(False, reason, evidence)


def power_norm_bound(n: int) -> float:
    """2n/(n+1) * ((n-1)/(n+1))**((n-1)/2): the Bloch norm ceiling for psi**n."""
    if n < 2:
        raise DomainError("power_norm_bound needs n >= 2")
    return 2 * n / (n + 1) * ((n - 1) / (n + 1)) ** ((n - 1) / 2)


@dataclass(frozen=True)
class PowerNormReport:
    per_n: tuple  # (n, beta of psi**n, bound)
    all_within: bool


def power_norm_check(psi: AnalyticFn, n_max: int, grid: DiskGrid, tol: float = 1e-6) -> PowerNormReport:
    if abs(evaluate(psi, 0j)) > 1e-12:
        raise DomainError("power_norm_check needs psi(0) = 0")
    if sup_norm(psi, grid).value > 1 + 1e-9:
        raise DomainError("power_norm_check needs ||psi||_inf <= 1")
    rows = []
    for n in range(2, n_max + 1):
        beta = bloch_seminorm(power(psi, n), grid).value
        rows.append((n, beta, power_norm_bound(n)))
    return PowerNormReport(tuple(rows), all(b <= bound + tol for _, b, bound in rows))


def comp_isometry_check(phi: AnalyticFn, grid: DiskGrid, family: TestFamily | None = None) -> IsometryVerdict:
    phi0 = evaluate(phi, 0j)
    selfmap = is_self_map(phi, grid)
    beta = bloch_seminorm(phi, grid)
    evidence = {
        "phi_at_origin": phi0,
        "beta_phi": beta.value,
        "self_map": selfmap.ok,
        "max_modulus": selfmap.max_modulus,
    }
    if selfmap.ok:
        family = family or default_family(grid)
        op = OperatorSpec.composition(phi)
        res = empirical_norm_lower(op, family, grid)
        evidence["max_norm_drift"] = max(abs(v - 1) for v in res.ratios)
    lo, hi = BETA_BAND
    if not selfmap.ok or abs(phi0) > UNIMODULAR_TOL or beta.value > hi:
        return IsometryVerdict(False, "norm_drift", evidence)
    if beta.value < lo:
        return IsometryVerdict(False, "seminorm_below_one", evidence)
    return IsometryVerdict(True, "origin_fixed_and_zero", evidence)


@dataclass(frozen=True)
class ZerosLemmaReport:
    g_norm: float
    psi_zero_at_origin: bool
    applicable: bool
    branch: str
    near_extremal_zeros: tuple  # (zero, (1-|a|^2)|psi'(a)|)
    max_seminorm_at_zeros: float


def zeros_lemma_experiment(psi: AnalyticFn, grid: DiskGrid) -> ZerosLemmaReport:
    """Examine g(z) = z psi(z) against the unit-norm/zeros alternative.

    With ||psi||_inf <= 1 and ||g||_B = 1, psi is either a unimodular constant
    or has zeros a_n with (1-|a_n|^2)|psi'(a_n)| tending to 1.  Only finite
    Blaschke products expose their zeros, so only they get a zero table.
    """
    if sup_norm(psi, grid).value > 1 + 1e-9:
        raise DomainError("zeros lemma needs ||psi||_inf <= 1")
    g_norm = bloch_norm(multiply(Identity(), psi), grid)
    at_origin = abs(evaluate(psi, 0j)) <= 1e-12
    applicable = abs(g_norm - 1) <= 1e-3
    c = constant_value(psi)
    if not applicable:
        return ZerosLemmaReport(g_norm, at_origin, False, "inapplicable", (), 0.0)
    if c is not None:
        return ZerosLemmaReport(g_norm, at_origin, True, "unimodular_constant", (), 0.0)
    if isinstance(psi, BlaschkeProduct) and psi.zeros:
        zs = np.asarray(psi.zeros)
        _, d = eval_with_derivative(psi, zs)
        vals = (1 - np.abs(zs) ** 2) * np.abs(d)
        rows = tuple((complex(a), float(v)) for a, v in zip(zs, vals))
        return ZerosLemmaReport(g_norm, at_origin, True, "zeros", rows, float(vals.max()))
    return ZerosLemmaReport(g_norm, at_origin, True, "zeros_unavailable", (), 0.0)


def separation_products(zeros) -> np.ndarray:
    """p_j = prod_{k != j} |(a_j - a_k) / (1 - conj(a_j) a_k)| for each zero."""
    a = np.asarray(zeros, dtype=complex)
    diff = a[:, None] - a[None, :]
    den = 1 - a.conj()[:, None] * a[None, :]
    rho = np.abs(diff / den)
    np.fill_diagonal(rho, 1.0)
    return np.prod(rho, axis=1)


@dataclass(frozen=True)
class ThinBlaschkeSpec:
    zeros: tuple
    eta: complex
    separation: tuple
    target_beta: float = 1.0

    def __post_init__(self):
        if 0 not in self.zeros:
            raise DomainError("thin Blaschke builds must vanish at the origin")

    @property
    def function(self) -> BlaschkeProduct:
        return BlaschkeProduct(self.zeros, self.eta)

    @property
    def min_separation(self) -> float:
        return min(self.separation)


def build_thin_blaschke(count: int, ray_angle: float = 0.0, growth: float = 0.1,
                        first_radius: float = 0.9, eta: complex = 1.0) -> ThinBlaschkeSpec:
    """Zeros {0} + {r_j e^{i ray_angle}} with 1 - r_{j+1} = growth (1 - r_j).

    ``count`` includes the zero at the origin.
    """
    if count < 2:
        raise DomainError("need at least two zeros")
    if not 0 < growth < 1:
        raise DomainError("growth must lie in (0, 1)")
    if not 0 < first_radius < 1:
        raise DomainError("first_radius must lie in (0, 1)")
    gaps = (1 - first_radius) * growth ** np.arange(count - 1)
    if np.any(gaps < 1e-15):
        raise DomainError("zeros closer to the circle than double precision resolves")
    unit = complex(math.cos(ray_angle), math.sin(ray_angle))
    zeros = (0j,) + tuple(complex((1 - gap) * unit) for gap in gaps)
    sep = separation_products(zeros)
    return ThinBlaschkeSpec(zeros, complex(eta), tuple(float(p) for p in sep))


@dataclass(frozen=True)
class WeightedIsometryProbe:
    ratios: tuple
    min_ratio: float
    max_ratio: float
    anomalies: tuple


def weighted_isometry_probe(psi: AnalyticFn, phi: AnalyticFn, grid: DiskGrid,
                            family: TestFamily | None = None) -> WeightedIsometryProbe:
    """||W f||_B / ||f||_B over a unit-norm family; reports ratios, decides nothing.

    An anomaly is a pair whose ratios all sit at 1 while psi or phi alone fails
    its own isometry check.
    """
    family = family or default_family(grid, phi)
    res = empirical_norm_lower(OperatorSpec.weighted(psi, phi), family, grid)
    ratios = res.ratios
    anomalies = []
    if max(abs(r - 1) for r in ratios) <= NORM_TOL:
        mult = mult_isometry_check(psi, grid, family)
        comp = comp_isometry_check(phi, grid, family)
        if not (mult.is_isometry and comp.is_isometry):
            anomalies.append("ratios all 1 but symbols not individually isometric")
    return WeightedIsometryProbe(ratios, min(ratios), max(ratios), tuple(anomalies))
