"""Analytic functions on the unit disk as immutable expression trees.

Every node evaluates its value and its exact first derivative together, on
scalars or numpy arrays of complex points.  Derivatives come from the usual
structural rules (sum, product, chain, quotient); nothing here differences.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, PoleError
from .grid import DiskGrid

UNIMODULAR_TOL = 1e-12
POLE_TOL = 1e-14


class EvalPair(NamedTuple):
    value: complex
    derivative: complex


class AnalyticFn:
    """Base node.  Subclasses implement ``_vd(z) -> (value, derivative)``."""

    def _vd(self, z: np.ndarray):
        raise NotImplementedError

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        return add(self, _lift(other))

    def __radd__(self, other):
        return add(_lift(other), self)

    def __mul__(self, other):
        if isinstance(other, AnalyticFn):
            return multiply(self, other)
        return scale(other, self)

    def __rmul__(self, other):
        return scale(other, self)


def _lift(x) -> AnalyticFn:
    return x if isinstance(x, AnalyticFn) else Const(x)


def _unimodular(eta: complex, what: str) -> complex:
    eta = complex(eta)
    if abs(abs(eta) - 1.0) > UNIMODULAR_TOL:
        raise DomainError(f"{what}: |eta| = {abs(eta)!r} is not 1")
    return eta


@dataclass(frozen=True)
class Const(AnalyticFn):
    c: complex

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))

    def _vd(self, z):
        return np.full(z.shape, self.c, dtype=complex), np.zeros(z.shape, dtype=complex)


@dataclass(frozen=True)
class Identity(AnalyticFn):
    def _vd(self, z):
        return z.copy(), np.ones(z.shape, dtype=complex)


@dataclass(frozen=True)
class Monomial(AnalyticFn):
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"monomial degree must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    def _vd(self, z):
        return z ** self.n, self.n * z ** (self.n - 1)


@dataclass(frozen=True)
class Polynomial(AnalyticFn):
    """Coefficients in ascending order: ``coeffs[k]`` multiplies ``z**k``."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not coeffs:
            raise DomainError("polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    def _vd(self, z):
        v = np.full(z.shape, self.coeffs[-1], dtype=complex)
        d = np.zeros(z.shape, dtype=complex)
        for c in reversed(self.coeffs[:-1]):
            d = d * z + v
            v = v * z + c
        return v, d


@dataclass(frozen=True)
class Automorphism(AnalyticFn):
    """z -> eta (a - z) / (1 - conj(a) z)."""

    eta: complex
    a: complex

    def __post_init__(self):
        object.__setattr__(self, "eta", _unimodular(self.eta, "automorphism"))
        a = complex(self.a)
        if abs(a) >= 1:
            raise DomainError(f"automorphism parameter must lie in the disk, got {a!r}")
        object.__setattr__(self, "a", a)

    def _vd(self, z):
        den = 1 - self.a.conjugate() * z
        if np.any(np.abs(den) < POLE_TOL):
            raise PoleError("automorphism denominator vanished")
        return (
            self.eta * (self.a - z) / den,
            self.eta * (abs(self.a) ** 2 - 1) / den ** 2,
        )


@dataclass(frozen=True)
class BlaschkeProduct(AnalyticFn):
    """eta * prod_k (a_k - z) / (1 - conj(a_k) z) over a finite zero list."""

    zeros: tuple
    eta: complex = 1.0

    def __post_init__(self):
        zeros = tuple(complex(a) for a in self.zeros)
        bad = [a for a in zeros if abs(a) >= 1]
        if bad:
            raise DomainError(f"Blaschke zeros must lie in the open disk: {bad!r}")
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "eta", _unimodular(self.eta, "Blaschke product"))

    def _vd(self, z):
        if not self.zeros:
            return Const(self.eta)._vd(z)
        a = np.asarray(self.zeros)[:, None]
        zz = z.reshape(1, -1)
        den = 1 - a.conj() * zz
        if np.any(np.abs(den) < POLE_TOL):
            raise PoleError("Blaschke factor denominator vanished")
        fac = (a - zz) / den
        dfac = (np.abs(a) ** 2 - 1) / den ** 2
        # products of all factors but the k-th, without dividing by factors
        ones = np.ones((1, zz.shape[1]), dtype=complex)
        prefix = np.cumprod(np.vstack([ones, fac[:-1]]), axis=0)
        suffix = np.cumprod(np.vstack([ones, fac[:0:-1]]), axis=0)[::-1]
        v = self.eta * np.prod(fac, axis=0)
        d = self.eta * np.sum(dfac * prefix * suffix, axis=0)
        return v.reshape(z.shape), d.reshape(z.shape)


@dataclass(frozen=True)
class LogTest(AnalyticFn):
    """z -> 1/2 Log((1 + w z) / (1 - w z)) with w = exp(-i theta), principal Log."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))

    def _vd(self, z):
        w = cmath.exp(-1j * self.theta)
        u = w * z
        den = 1 - u
        if np.any(np.abs(den) < POLE_TOL):
            raise PoleError("log test function hit its logarithmic singularity")
        ratio = (1 + u) / den
        if np.any(ratio.real <= 0):
            raise DomainError("log argument crossed the principal branch cut")
        return 0.5 * np.log(ratio), w / (den * (1 + u))


@dataclass(frozen=True)
class Sum(AnalyticFn):
    lhs: AnalyticFn
    rhs: AnalyticFn

    def _vd(self, z):
        v1, d1 = self.lhs._vd(z)
        v2, d2 = self.rhs._vd(z)
        return v1 + v2, d1 + d2


@dataclass(frozen=True)
class Product(AnalyticFn):
    lhs: AnalyticFn
    rhs: AnalyticFn

    def _vd(self, z):
        v1, d1 = self.lhs._vd(z)
        v2, d2 = self.rhs._vd(z)
        return v1 * v2, d1 * v2 + v1 * d2


@dataclass(frozen=True)
class Scale(AnalyticFn):
    c: complex
    inner: AnalyticFn

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))

    def _vd(self, z):
        v, d = self.inner._vd(z)
        return self.c * v, self.c * d


@dataclass(frozen=True)
class Compose(AnalyticFn):
    """z -> outer(inner(z))."""

    outer: AnalyticFn
    inner: AnalyticFn

    def _vd(self, z):
        vi, di = self.inner._vd(z)
        vo, do = self.outer._vd(vi)
        return vo, do * di


@dataclass(frozen=True)
class ReciprocalShift(AnalyticFn):
    """z -> 1 / (inner(z) - lam).  Build only after checking lam is off the range."""

    inner: AnalyticFn
    lam: complex

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))

    def _vd(self, z):
        vi, di = self.inner._vd(z)
        den = vi - self.lam
        if np.any(np.abs(den) < POLE_TOL):
            raise PoleError(f"1/(f - {self.lam}) has a pole: f attains lambda")
        return 1 / den, -di / den ** 2


def _prepare(z):
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError("evaluation points must be finite")
    if np.any(np.abs(arr) >= 1):
        raise DomainError("evaluation points must lie in the open unit disk")
    return arr


def _out(x, scalar: bool):
    return complex(x.reshape(-1)[0]) if scalar else x


def evaluate(f: AnalyticFn, z):
    """Value of ``f`` at a point or array of points in the open disk."""
    arr = _prepare(z)
    v, _ = f._vd(arr.reshape(-1))
    return _out(v.reshape(arr.shape), arr.ndim == 0)


def eval_with_derivative(f: AnalyticFn, z) -> EvalPair:
    arr = _prepare(z)
    v, d = f._vd(arr.reshape(-1))
    scalar = arr.ndim == 0
    return EvalPair(_out(v.reshape(arr.shape), scalar), _out(d.reshape(arr.shape), scalar))


def add(f: AnalyticFn, g: AnalyticFn) -> Sum:
    return Sum(f, g)


def multiply(f: AnalyticFn, g: AnalyticFn) -> Product:
    return Product(f, g)


def scale(c, f: AnalyticFn) -> Scale:
    return Scale(c, f)


def compose(f: AnalyticFn, g: AnalyticFn) -> Compose:
    """``f`` after ``g``."""
    return Compose(f, g)


def power(f: AnalyticFn, n: int) -> AnalyticFn:
    """n-fold product tree f * f * ... * f."""
    if n < 1:
        raise DomainError("power needs n >= 1")
    out = f
    for _ in range(n - 1):
        out = Product(out, f)
    return out


def rotation(zeta: complex) -> Scale:
    return Scale(_unimodular(zeta, "rotation"), Identity())


@dataclass(frozen=True)
class SelfMapReport:
    max_modulus: float
    witness: complex
    ok: bool


def is_self_map(phi: AnalyticFn, grid: DiskGrid) -> SelfMapReport:
    pts = grid.points()
    mods = np.abs(evaluate(phi, pts))
    i = int(np.argmax(mods))
    return SelfMapReport(float(mods[i]), complex(pts[i]), bool(mods[i] < 1.0))
