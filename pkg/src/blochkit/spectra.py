"""Spectra of multiplication operators and of rotation-type (weighted) composition operators."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .analysis import maximize_over_disk
from .errors import DomainError, PoleError, PreconditionError, SingularMatrix
from .functions import (
    AnalyticFn,
    BlaschkeProduct,
    Compose,
    Const,
    Identity,
    Monomial,
    ReciprocalShift,
    Scale,
    Sum,
    evaluate,
    rotation,
)
from .grid import DiskGrid
from .isometry import comp_isometry_check
from .operators import OperatorSpec, apply, brown_shields_check

MEMBERSHIP_MARGIN = 1e-3
SINGULAR_TOL = 1e-12
BOUNDARY_RADIUS = 1 - 2.0 ** -20
_QUARTERS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class RotationSpec:
    """zeta = exp(2 pi i p/q) (rational) or exp(i angle) (declared irrational)."""

    p: Optional[int] = None
    q: Optional[int] = None
    angle: Optional[float] = None

    def __post_init__(self):
        if self.angle is not None:
            if self.p is not None or self.q is not None:
                raise DomainError("give either p/q or an angle, not both")
            object.__setattr__(self, "angle", float(self.angle))
            return
        if self.p is None or self.q is None or self.q < 1:
            raise DomainError("rational rotation needs integers p and q >= 1")
        frac = Fraction(int(self.p), int(self.q))
        object.__setattr__(self, "p", frac.numerator % frac.denominator)
        object.__setattr__(self, "q", frac.denominator)

    @classmethod
    def rational(cls, p: int, q: int) -> "RotationSpec":
        return cls(p=p, q=q)

    @classmethod
    def irrational(cls, angle: float) -> "RotationSpec":
        return cls(angle=angle)

    @property
    def is_rational(self) -> bool:
        return self.angle is None

    def power(self, k: int) -> complex:
        """zeta**k; exact exponent reduction mod q in the rational case."""
        if self.is_rational:
            m = (self.p * k) % self.q
            if (4 * m) % self.q == 0:
                return _QUARTERS[4 * m // self.q]
            return cmath.exp(2j * math.pi * m / self.q)
        return cmath.exp(1j * self.angle * k)

    @property
    def zeta(self) -> complex:
        return self.power(1)

    def as_function(self) -> Scale:
        return rotation(self.zeta)


def order_of(zeta: RotationSpec) -> Union[int, float]:
    """q for rational rotations, math.inf for declared-irrational ones."""
    return zeta.q if zeta.is_rational else math.inf


@dataclass(frozen=True)
class FiniteSet:
    points: tuple
    variant = "finite_set"

    def to_json(self) -> dict:
        return {"variant": self.variant, "points": [[p.real, p.imag] for p in self.points]}


@dataclass(frozen=True)
class UnitCircle:
    variant = "unit_circle"

    def to_json(self) -> dict:
        return {"variant": self.variant}


@dataclass(frozen=True)
class ClosedUnitDisk:
    notes: tuple = ()
    variant = "closed_unit_disk"

    def to_json(self) -> dict:
        return {"variant": self.variant, "notes": list(self.notes)}


@dataclass(frozen=True)
class RangeClosure:
    samples: np.ndarray = field(compare=False)
    boundary_samples: np.ndarray = field(compare=False)
    variant = "range_closure"

    @property
    def diameter(self) -> float:
        pts = np.concatenate([self.samples, self.boundary_samples])
        if np.abs(pts - pts[0]).max() == 0:
            return 0.0
        xy = np.column_stack([pts.real, pts.imag])
        try:
            xy = xy[ConvexHull(xy).vertices]
        except QhullError:
            # collinear cloud: the spread along the line is the diameter
            u = pts[np.argmax(np.abs(pts - pts[0]))] - pts[0]
            return float(np.ptp(((pts - pts[0]) * np.conj(u)).real) / abs(u))
        d = xy[:, None, :] - xy[None, :, :]
        return float(np.sqrt((d ** 2).sum(-1)).max())

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "samples": [[p.real, p.imag] for p in self.samples],
            "boundary_samples": [[p.real, p.imag] for p in self.boundary_samples],
        }


SpectrumResult = Union[FiniteSet, UnitCircle, ClosedUnitDisk, RangeClosure]


def mult_spectrum(psi: AnalyticFn, grid: DiskGrid, check: bool = True) -> RangeClosure:
    """Sample cloud of psi(D); its closure is the spectrum of M_psi."""
    if check and not brown_shields_check(psi, grid).boundedness_plausible:
        raise PreconditionError("M_psi does not look bounded")
    return RangeClosure(evaluate(psi, grid.points()), evaluate(psi, grid.ring(BOUNDARY_RADIUS)))


@dataclass(frozen=True)
class MembershipReport:
    in_spectrum: bool
    distance: float
    witness: complex
    resolvent: Optional[AnalyticFn] = None
    resolvent_residual: Optional[float] = None
    resolvent_bounded_plausible: Optional[bool] = None


def mult_spectrum_membership(psi: AnalyticFn, lam: complex, grid: DiskGrid,
                             margin: float = MEMBERSHIP_MARGIN) -> MembershipReport:
    """Distance from lam to psi(D), refined locally; builds 1/(psi - lam) when separated."""
    lam = complex(lam)
    near = maximize_over_disk(lambda z: -np.abs(psi._vd(np.asarray(z, dtype=complex))[0] - lam), grid)
    dist = -near.value
    if dist <= margin:
        return MembershipReport(True, dist, near.witness)
    g = ReciprocalShift(psi, lam)
    k = np.arange(200)
    pts = 0.999 * np.sqrt((k + 0.5) / 200) * np.exp(1j * k * math.pi * (3 - math.sqrt(5)))
    try:
        resid = float(np.max(np.abs((evaluate(psi, pts) - lam) * evaluate(g, pts) - 1)))
    except PoleError:
        return MembershipReport(True, 0.0, near.witness)
    bs = brown_shields_check(g, grid).boundedness_plausible
    return MembershipReport(False, dist, near.witness, g, resid, bs)


def rotation_comp_spectrum(zeta: RotationSpec) -> Union[FiniteSet, UnitCircle]:
    n = order_of(zeta)
    if n == math.inf:
        return UnitCircle()
    return FiniteSet(tuple(zeta.power(k) for k in range(1, n + 1)))


def _is_rotation(phi: AnalyticFn) -> bool:
    if isinstance(phi, Identity):
        return True
    if isinstance(phi, Monomial):
        return phi.n == 1
    if isinstance(phi, Scale):
        return abs(abs(phi.c) - 1) <= 1e-12 and _is_rotation(phi.inner)
    return False


def nonrotation_comp_spectrum(phi: AnalyticFn, grid: DiskGrid) -> ClosedUnitDisk:
    """Closed disk for isometric C_phi with phi not a rotation (C_phi is then not onto)."""
    if _is_rotation(phi):
        raise PreconditionError("phi is a rotation; use rotation_comp_spectrum")
    verdict = comp_isometry_check(phi, grid)
    if not verdict.is_isometry:
        raise PreconditionError(f"C_phi is not an isometry ({verdict.reason})")
    notes = []
    if isinstance(phi, BlaschkeProduct) and len(phi.zeros) >= 2:
        a, a2 = phi.zeros[0], phi.zeros[1]
        notes.append(
            f"h(z) = z - ({a:.6g}) is not f o phi for any f: phi({a:.6g}) = phi({a2:.6g}) = 0 "
            "while h takes different values there"
        )
    return ClosedUnitDisk(tuple(notes))


def resolvent_matrix(n: int, mu: complex):
    """Cyclic system matrix: -mu on the diagonal, 1 on the superdiagonal and in the corner.

    For n = 1 the diagonal and corner coincide and the 1x1 matrix is [1 - mu].
    Returns (matrix, det) with det from a generic LU determinant.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    mu = complex(mu)
    a = -mu * np.eye(n, dtype=complex)
    a += np.eye(n, k=1, dtype=complex)
    a[n - 1, 0] += 1
    if abs(mu ** n - 1) < SINGULAR_TOL:
        raise SingularMatrix(f"mu^{n} = 1: mu lies in the cyclic group")
    return a, complex(np.linalg.det(a))


def det_closed_form(n: int, mu: complex) -> complex:
    return (-1) ** n * (complex(mu) ** n - 1)


@dataclass(frozen=True)
class ResolventSolve:
    n: int
    mu: complex
    matrix_det: complex
    solution: AnalyticFn
    residual: float


def _residual_points(count: int = 200) -> np.ndarray:
    k = np.arange(count)
    return 0.99 * np.sqrt((k + 0.5) / count) * np.exp(1j * k * math.pi * (3 - math.sqrt(5)))


def rotation_resolvent_solve(zeta: RotationSpec, mu: complex, g: AnalyticFn) -> ResolventSolve:
    """Solve f(zeta z) - mu f(z) = g(z) as a combination of g o zeta^j z."""
    n = order_of(zeta)
    if n == math.inf:
        raise PreconditionError("the cyclic solve needs a rotation of finite order")
    mu = complex(mu)
    if abs(mu ** n - 1) < SINGULAR_TOL:
        raise SingularMatrix(f"mu^{n} = 1: mu lies in the cyclic group")
    if n == 1:
        det = 1 - mu
        f = Scale(1 / (1 - mu), g)
    else:
        a, det = resolvent_matrix(n, mu)
        # f(z) = x_1 = sum_j (A^-1)_{1j} g(zeta^{j-1} z)
        coeffs = np.linalg.solve(a.T, np.eye(n, dtype=complex)[:, 0])
        terms = [Scale(coeffs[0], g)] + [
            Scale(coeffs[j], Compose(g, rotation(zeta.power(j)))) for j in range(1, n)
        ]
        f = terms[0]
        for t in terms[1:]:
            f = Sum(f, t)
    pts = _residual_points()
    lhs = evaluate(f, zeta.zeta * pts) - mu * evaluate(f, pts)
    residual = float(np.max(np.abs(lhs - evaluate(g, pts))))
    return ResolventSolve(n, mu, complex(det), f, residual)


@dataclass(frozen=True)
class EigenReport:
    eigenvalue: complex
    residual: float


def eigenfunction_check(zeta: RotationSpec, k: int, grid: DiskGrid) -> EigenReport:
    """C_phi z^k = zeta^k z^k for phi(z) = zeta z, checked over the grid."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    f = Const(1.0) if k == 0 else Monomial(k)
    lam = zeta.power(k)
    pts = grid.points()
    image = evaluate(apply(OperatorSpec.composition(zeta.as_function()), f), pts)
    return EigenReport(lam, float(np.max(np.abs(image - lam * evaluate(f, pts)))))


def weighted_iso_spectrum(eta: complex, zeta_or_phi, grid: Optional[DiskGrid] = None) -> SpectrumResult:
    """Spectrum of eta C_phi: lam is in it iff lam conj(eta) is in the spectrum of C_phi."""
    eta = complex(eta)
    if abs(abs(eta) - 1) > 1e-12:
        raise DomainError("eta must be unimodular")
    if isinstance(zeta_or_phi, RotationSpec):
        base = rotation_comp_spectrum(zeta_or_phi)
        if isinstance(base, FiniteSet):
            return FiniteSet(tuple(eta * p for p in base.points))
        return base
    return nonrotation_comp_spectrum(zeta_or_phi, grid or DiskGrid.default())
