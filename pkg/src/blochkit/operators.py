"""Multiplication, composition and weighted composition operators on the Bloch space.

Norm bounds:

* upper  max{||psi||_B, log_term + tau + sigma}
* lower  max{||psi||_B, log_term}

with ``log_term = |psi(0)| * artanh(|phi(0)|)``, i.e. half the log of
(1+|phi(0)|)/(1-|phi(0)|) scaled by |psi(0)|.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ._parallel import pmap
from .analysis import (
    SupremumEstimate,
    _phi_modulus,
    _vd,
    bloch_norm,
    one_minus_sq,
    ring_maxima,
    sigma_infty,
    sup_norm,
    sup_over_disk,
    tau_infty,
    tau_integrand,
)
from .errors import DomainError, PreconditionError
from .functions import (
    AnalyticFn,
    Automorphism,
    Compose,
    Const,
    Identity,
    LogTest,
    Monomial,
    Product,
    Scale,
    evaluate,
    is_self_map,
)
from .grid import DiskGrid

KINDS = ("multiplication", "composition", "weighted")
NORMALIZATION_TOL = 1e-6
# rings compared when judging whether a boundary statistic has stopped growing
TAIL_RINGS = 5
GROWTH_RTOL = 1e-3


@dataclass(frozen=True)
class OperatorSpec:
    kind: str
    psi: AnalyticFn = field(default_factory=lambda: Const(1.0))
    phi: AnalyticFn = field(default_factory=Identity)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown operator kind {self.kind!r}")
        if self.kind == "multiplication" and self.phi != Identity():
            raise DomainError("a multiplication operator has phi = identity")
        if self.kind == "composition" and self.psi != Const(1.0):
            raise DomainError("a composition operator has psi = 1")
        report = is_self_map(self.phi, DiskGrid.default(angles=128, refine=0))
        if not report.ok:
            raise DomainError(
                f"phi is not a self-map of the disk: |phi({report.witness})| = {report.max_modulus}"
            )

    @classmethod
    def multiplication(cls, psi: AnalyticFn) -> "OperatorSpec":
        return cls("multiplication", psi, Identity())

    @classmethod
    def composition(cls, phi: AnalyticFn) -> "OperatorSpec":
        return cls("composition", Const(1.0), phi)

    @classmethod
    def weighted(cls, psi: AnalyticFn, phi: AnalyticFn) -> "OperatorSpec":
        return cls("weighted", psi, phi)


def apply(op: OperatorSpec, f: AnalyticFn) -> AnalyticFn:
    """psi * (f o phi), collapsed to psi*f or f o phi for the degenerate kinds."""
    if op.kind == "multiplication":
        return Product(op.psi, f)
    if op.kind == "composition":
        return Compose(f, op.phi)
    return Product(op.psi, Compose(f, op.phi))


def _tail_stops_growing(tail: np.ndarray) -> bool:
    last = tail[-TAIL_RINGS:]
    return bool(last[-1] <= last[0] * (1 + GROWTH_RTOL) + 1e-12)


@dataclass(frozen=True)
class BrownShieldsReport:
    sup_stat: float
    stat_tail: tuple
    sup_norm_tail: tuple
    boundedness_plausible: bool


def brown_shields_check(psi: AnalyticFn, grid: DiskGrid) -> BrownShieldsReport:
    """Evidence (not proof) for psi in H^inf with |psi'| = O(1/((1-r) log(1/(1-r)))).

    Plausible when both the sup-norm and the growth statistic stop increasing
    across the outermost rings of the grid.
    """

    def stat(z):
        dist = 1 - np.abs(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.abs(_vd(psi, z)[1]) * dist * np.log(1 / dist)
        return np.where(dist >= 1, 0.0, s)

    radii = [r for r in grid.radii if r > 0]
    stat_tail = ring_maxima(stat, radii, grid.angles_per_ring)
    mod_tail = ring_maxima(lambda z: np.abs(_vd(psi, z)[0]), radii, grid.angles_per_ring)
    pts = grid.points()
    sup_stat = float(np.max(stat(pts)))
    plausible = _tail_stops_growing(stat_tail) and _tail_stops_growing(mod_tail)
    return BrownShieldsReport(sup_stat, tuple(stat_tail.tolist()), tuple(mod_tail.tolist()), plausible)


@dataclass(frozen=True)
class OhnoZhaoReport:
    cond1: SupremumEstimate
    cond2: SupremumEstimate
    bounded_plausible: bool


def ohno_zhao_check(psi: AnalyticFn, phi: AnalyticFn, grid: DiskGrid) -> OhnoZhaoReport:
    """Both boundedness suprema for W_{psi,phi}; plausible when their outer-ring maxima level off."""

    def cond1_integrand(z):
        m = _phi_modulus(_vd(phi, z)[0])
        return one_minus_sq(z) * np.abs(_vd(psi, z)[1]) * np.log(2 / ((1 - m) * (1 + m)))

    cond2_integrand = tau_integrand(psi, phi)
    cond1 = sup_over_disk(cond1_integrand, grid)
    cond2 = sup_over_disk(cond2_integrand, grid)
    radii = [r for r in grid.radii if r > 0]
    plausible = all(
        _tail_stops_growing(ring_maxima(f, radii, grid.angles_per_ring))
        for f in (cond1_integrand, cond2_integrand)
    )
    return OhnoZhaoReport(cond1, cond2, plausible)


@dataclass(frozen=True)
class NormBounds:
    lower: float
    upper: float
    components: dict

    def __post_init__(self):
        if self.lower > self.upper + 1e-9:
            raise ValueError(f"inconsistent bounds: lower {self.lower} > upper {self.upper}")

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "components": dict(self.components)}


def log_term(psi: AnalyticFn, phi: AnalyticFn) -> float:
    return abs(evaluate(psi, 0j)) * math.atanh(abs(evaluate(phi, 0j)))


def wco_bounds(psi: AnalyticFn, phi: AnalyticFn, grid: DiskGrid, check: bool = True) -> NormBounds:
    if check:
        report = ohno_zhao_check(psi, phi, grid)
        if not report.bounded_plausible:
            raise PreconditionError("W_{psi,phi} does not look bounded on the sampled grid")
    norm_psi = bloch_norm(psi, grid)
    lt = log_term(psi, phi)
    tau = tau_infty(psi, phi, grid).value
    sigma = sigma_infty(psi, phi, grid).value
    return NormBounds(
        lower=max(norm_psi, lt),
        upper=max(norm_psi, lt + tau + sigma),
        components={"bloch_norm_psi": norm_psi, "tau": tau, "sigma": sigma, "log_term": lt},
    )


def wco_upper_bound(psi: AnalyticFn, phi: AnalyticFn, grid: DiskGrid) -> float:
    return wco_bounds(psi, phi, grid).upper


def wco_lower_bound(psi: AnalyticFn, phi: AnalyticFn, grid: DiskGrid) -> float:
    return max(bloch_norm(psi, grid), log_term(psi, phi))


def composition_bounds(phi: AnalyticFn, grid: DiskGrid) -> NormBounds:
    """Estimates for ||C_phi|| written directly in terms of tau_phi."""
    lt = math.atanh(abs(evaluate(phi, 0j)))
    tau_phi = tau_infty(Const(1.0), phi, grid).value
    return NormBounds(
        lower=max(1.0, lt),
        upper=max(1.0, lt + tau_phi),
        components={"tau": tau_phi, "log_term": lt},
    )


def mult_bounds(psi: AnalyticFn, grid: DiskGrid) -> NormBounds:
    """max{||psi||_B, ||psi||_inf} <= ||M_psi|| <= max{||psi||_B, ||psi||_inf + sigma_psi}."""
    norm_psi = bloch_norm(psi, grid)
    sup = sup_norm(psi, grid).value
    sigma = sigma_infty(psi, Identity(), grid).value
    components = {"bloch_norm_psi": norm_psi, "sup_norm_psi": sup, "sigma": sigma, "log_term": 0.0}
    if abs(evaluate(psi, 0j)) <= 1e-12:
        components["origin_fixed_lower"] = sup
        components["origin_fixed_upper"] = sup + sigma
    return NormBounds(max(norm_psi, sup), max(norm_psi, sup + sigma), components)


@dataclass(frozen=True)
class OpenQuestionRecord:
    bloch_norm: float
    sup_norm: float
    sigma: float
    inequality_holds: bool


def mult_open_question_record(psi: AnalyticFn, grid: DiskGrid) -> OpenQuestionRecord:
    """Record (||psi||_B, ||psi||_inf, sigma_psi) and whether ||psi||_B <= ||psi||_inf + sigma_psi.

    A False flag marks a candidate worth a closer look, nothing more: all three
    numbers are grid estimates.
    """
    nb = bloch_norm(psi, grid)
    sn = sup_norm(psi, grid).value
    sg = sigma_infty(psi, Identity(), grid).value
    return OpenQuestionRecord(nb, sn, sg, bool(nb <= sn + sg + 1e-6))


@dataclass(frozen=True)
class TestFamily:
    members: tuple
    labels: tuple
    __test__ = False

    def __post_init__(self):
        if len(self.members) != len(self.labels):
            raise ValueError("one label per member")


def normalized_family(members, labels, grid: DiskGrid) -> TestFamily:
    norms = pmap(lambda f: bloch_norm(f, grid), members)
    bad = [(lab, n) for lab, n in zip(labels, norms) if abs(n - 1) > NORMALIZATION_TOL]
    if bad:
        raise ValueError(f"family members not of unit Bloch norm: {bad}")
    return TestFamily(tuple(members), tuple(labels))


def default_family(grid: DiskGrid, phi: AnalyticFn | None = None) -> TestFamily:
    """1, log test functions, normalized monomials and normalized automorphisms."""
    members, labels = [Const(1.0)], ["1"]
    thetas = [2 * math.pi * k / 8 for k in range(8)]
    if phi is not None:
        p0 = evaluate(phi, 0j)
        if p0 != 0:
            thetas.insert(0, cmath.phase(p0))
    for th in thetas:
        members.append(LogTest(th))
        labels.append(f"logtest({th:.6g})")
    for n in (1, 2, 3, 5, 8):
        f = Monomial(n)
        members.append(Scale(1 / bloch_norm(f, grid), f))
        labels.append(f"z^{n}/norm")
    for a in (0.5, -0.3 + 0.6j, 0.8j):
        f = Automorphism(1.0, a)
        members.append(Scale(1 / bloch_norm(f, grid), f))
        labels.append(f"aut({a})/norm")
    return normalized_family(members, labels, grid)


@dataclass(frozen=True)
class EmpiricalNorm:
    best: float
    argmax_member: str
    ratios: tuple


def empirical_norm_lower(op: OperatorSpec, family: TestFamily, grid: DiskGrid) -> EmpiricalNorm:
    """max over unit-norm family members f of ||op f||_B; a lower bound for ||op||."""
    vals = pmap(lambda f: bloch_norm(apply(op, f), grid), family.members)
    i = int(np.argmax(vals))
    return EmpiricalNorm(float(vals[i]), family.labels[i], tuple(float(v) for v in vals))
