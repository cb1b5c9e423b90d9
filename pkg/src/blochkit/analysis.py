"""Suprema over the disk and the Bloch-space quantities built on them.

``sup_over_disk`` samples an integrand on a ``DiskGrid`` and then polishes the
best local maxima by coordinate-wise golden-section search in (radius, angle).
Estimates are lower bounds of the true supremum; refinement never loses the
incumbent, so stage values are nondecreasing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import NumericalOverflow
from .functions import (
    AnalyticFn,
    Automorphism,
    BlaschkeProduct,
    Const,
    Identity,
    Monomial,
    Product,
    Scale,
    evaluate,
    eval_with_derivative,
)
from .grid import DiskGrid

PHI_CUTOFF = 1.0 - 1e-12
N_SEEDS = 5
GOLDEN_ITERS = 60
CONVERGENCE_RTOL = 1e-6
_INVPHI = (np.sqrt(5.0) - 1) / 2

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SupremumEstimate:
    value: float
    witness: complex
    stage_values: tuple
    converged: bool

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "witness": [self.witness.real, self.witness.imag],
            "stages": list(self.stage_values),
            "converged": self.converged,
        }


def one_minus_sq(z) -> np.ndarray:
    """1 - |z|^2, computed as (1 - |z|)(1 + |z|) to keep digits near the circle."""
    r = np.abs(z)
    return (1 - r) * (1 + r)


def _checked(integrand: Integrand, z: np.ndarray) -> np.ndarray:
    vals = np.asarray(integrand(z), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise NumericalOverflow("integrand produced a non-finite value")
    return vals


def _golden(obj, lo, hi):
    """Vectorized golden-section maximization; one bracket per seed."""
    a, b = lo.copy(), hi.copy()
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = obj(c), obj(d)
    for _ in range(GOLDEN_ITERS):
        left = fc >= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = np.where(left, b - _INVPHI * (b - a), d)
        new_d = np.where(left, c, a + _INVPHI * (b - a))
        probe = np.where(left, new_c, new_d)
        fp = obj(probe)
        fc, fd = np.where(left, fp, fd), np.where(left, fc, fp)
        c, d = new_c, new_d
    x = np.where(fc >= fd, c, d)
    return x, np.maximum(fc, fd)


def _local_maxima(grid: DiskGrid, vals: np.ndarray) -> list:
    """Indices (into grid.points()) of grid points not beaten by a ring neighbour."""
    has_origin = grid.radii[0] == 0.0
    n = grid.angles_per_ring
    body = vals[1:] if has_origin else vals
    arr = body.reshape(-1, n)
    ok = (arr >= np.roll(arr, 1, axis=1)) & (arr >= np.roll(arr, -1, axis=1))
    pad = np.full((1, n), -np.inf)
    ok &= arr >= np.vstack([pad, arr[:-1]])
    ok &= arr >= np.vstack([arr[1:], pad])
    if has_origin:
        ok[0] &= arr[0] >= vals[0]
    idx = np.flatnonzero(ok.ravel()) + (1 if has_origin else 0)
    out = idx[np.argsort(-vals[idx], kind="stable")].tolist()
    if has_origin and (vals[0] >= body[: n].max()):
        out.insert(0, 0)
    return out


def maximize_over_disk(objective: Integrand, grid: DiskGrid) -> SupremumEstimate:
    """Grid sample plus golden-section refinement; no sign requirement."""
    pts = grid.points()
    vals = _checked(objective, pts)
    best_i = int(np.argmax(vals))
    best_val, best_z = float(vals[best_i]), complex(pts[best_i])
    stages = [best_val]

    seeds = [best_i] + [i for i in _local_maxima(grid, vals) if i != best_i]
    seeds = np.asarray(seeds[:N_SEEDS])
    radii = np.asarray(grid.radii)
    rmax = grid.max_radius
    r = np.abs(pts[seeds])
    t = np.angle(pts[seeds])
    cur = vals[seeds].astype(float)
    j = np.clip(np.searchsorted(radii, r - 1e-15), 0, len(radii) - 1)
    left_gap = np.where(j > 0, radii[j] - radii[np.maximum(j - 1, 0)], 0.0)
    right_gap = np.where(j < len(radii) - 1, radii[np.minimum(j + 1, len(radii) - 1)] - radii[j], 0.0)
    dr = np.maximum(left_gap, right_gap)
    dt = np.full(len(seeds), 2 * np.pi / grid.angles_per_ring)

    for _ in range(grid.refinement_rounds):
        tt = t
        x, fx = _golden(
            lambda rr: _checked(objective, rr * np.exp(1j * tt)),
            np.clip(r - dr, 0.0, rmax),
            np.clip(r + dr, 0.0, rmax),
        )
        better = fx > cur
        r, cur = np.where(better, x, r), np.where(better, fx, cur)
        rr_ = r
        x, fx = _golden(lambda th: _checked(objective, rr_ * np.exp(1j * th)), t - dt, t + dt)
        better = fx > cur
        t, cur = np.where(better, x, t), np.where(better, fx, cur)
        dr, dt = dr / 2, dt / 2
        k = int(np.argmax(cur))
        if cur[k] > best_val:
            best_val, best_z = float(cur[k]), complex(r[k] * np.exp(1j * t[k]))
        stages.append(best_val)

    on_edge = abs(best_z) >= rmax * (1 - 1e-12) and rmax > 0
    converged = (
        len(stages) >= 2
        and abs(stages[-1] - stages[-2]) <= CONVERGENCE_RTOL * abs(stages[-1])
        and not on_edge
    )
    return SupremumEstimate(best_val, best_z, tuple(stages), bool(converged))


def sup_over_disk(integrand: Integrand, grid: DiskGrid) -> SupremumEstimate:
    """Supremum of a nonnegative pointwise map over the disk."""

    def checked(z):
        v = _checked(integrand, z)
        if np.any(v < 0):
            raise ValueError("sup_over_disk expects a nonnegative integrand")
        return v

    return maximize_over_disk(checked, grid)


def _vd(f: AnalyticFn, z):
    return f._vd(np.asarray(z, dtype=complex))


def seminorm_integrand(f: AnalyticFn) -> Integrand:
    return lambda z: one_minus_sq(z) * np.abs(_vd(f, z)[1])


def bloch_seminorm(f: AnalyticFn, grid: DiskGrid) -> SupremumEstimate:
    return sup_over_disk(seminorm_integrand(f), grid)


def bloch_norm(f: AnalyticFn, grid: DiskGrid) -> float:
    return abs(evaluate(f, 0j)) + bloch_seminorm(f, grid).value


def sup_norm(f: AnalyticFn, grid: DiskGrid) -> SupremumEstimate:
    return sup_over_disk(lambda z: np.abs(_vd(f, z)[0]), grid)


def exact_sup_norm(f: AnalyticFn) -> Optional[float]:
    """Closed-form sup norm for inner-type trees, None when not known in closed form."""
    if isinstance(f, Const):
        return abs(f.c)
    if isinstance(f, (Identity, Monomial, Automorphism)):
        return 1.0
    if isinstance(f, BlaschkeProduct):
        return 1.0
    if isinstance(f, Scale):
        inner = exact_sup_norm(f.inner)
        return None if inner is None else abs(f.c) * inner
    if isinstance(f, Product):
        # products of inner functions are inner; nothing else is known here
        return 1.0 if _is_inner(f) else None
    return None


def _is_inner(f: AnalyticFn) -> bool:
    if isinstance(f, (Identity, Monomial, Automorphism, BlaschkeProduct)):
        return True
    if isinstance(f, Const):
        return abs(abs(f.c) - 1) <= 1e-12
    if isinstance(f, Scale):
        return abs(abs(f.c) - 1) <= 1e-12 and _is_inner(f.inner)
    if isinstance(f, Product):
        return _is_inner(f.lhs) and _is_inner(f.rhs)
    return False


@dataclass(frozen=True)
class LittleBlochReport:
    tail_values: tuple
    trending_to_zero: bool


def ring_maxima(integrand: Integrand, radii, angles: int = 512) -> np.ndarray:
    th = 2 * np.pi * np.arange(angles) / angles
    pts = np.asarray(radii)[:, None] * np.exp(1j * th)[None, :]
    return _checked(integrand, pts.ravel()).reshape(pts.shape).max(axis=1)


def little_bloch_check(f: AnalyticFn, angles: int = 512) -> LittleBlochReport:
    radii = [1.0 - 2.0 ** -k for k in range(4, 21)]
    tail = ring_maxima(seminorm_integrand(f), radii, angles)
    if tail[0] <= 1e-15:
        return LittleBlochReport(tuple(tail.tolist()), bool(np.all(tail <= 1e-15)))
    last5 = tail[-5:]
    decreasing = bool(np.all(np.diff(last5) <= 1e-15 * tail[0]))
    return LittleBlochReport(tuple(tail.tolist()), decreasing and bool(tail[-1] < 0.05 * tail[0]))


@dataclass(frozen=True)
class ViolationReport:
    max_violation: float
    witness: complex


def growth_bound_check(f: AnalyticFn, zs, grid: DiskGrid) -> ViolationReport:
    """|f(z)| <= |f(0)| + beta_f/2 * log((1+|z|)/(1-|z|)), checked at each z."""
    zs = np.asarray(zs, dtype=complex)
    beta = bloch_seminorm(f, grid).value
    f0 = abs(evaluate(f, 0j))
    bound = f0 + beta * np.arctanh(np.abs(zs))
    gap = np.abs(evaluate(f, zs)) - bound
    i = int(np.argmax(gap))
    return ViolationReport(float(gap[i]), complex(zs[i]))


def schwarz_pick_check(psi: AnalyticFn, zs, sup_norm_value: Optional[float] = None,
                       grid: Optional[DiskGrid] = None) -> ViolationReport:
    """Scaled Schwarz-Pick: (1-|z|^2)|psi'|/M <= 1 - |psi|^2/M^2 with M = ||psi||_inf.

    ``M`` is taken from the argument, else the closed form, else a grid estimate;
    it is never allowed to sit below a sampled |psi(z)|.
    """
    zs = np.asarray(zs, dtype=complex)
    v, d = eval_with_derivative(psi, zs)
    m = sup_norm_value
    if m is None:
        m = exact_sup_norm(psi)
    if m is None:
        m = sup_norm(psi, grid or DiskGrid.default()).value
    m = max(m, float(np.max(np.abs(v))))
    if m <= 0:
        raise ValueError("Schwarz-Pick check needs a nonzero sup norm")
    gap = one_minus_sq(zs) * np.abs(d) / m - (1 - (np.abs(v) / m) ** 2)
    i = int(np.argmax(gap))
    return ViolationReport(float(gap[i]), complex(zs[i]))


def _phi_modulus(phi_vals: np.ndarray) -> np.ndarray:
    m = np.abs(phi_vals)
    if np.any(m >= PHI_CUTOFF):
        raise NumericalOverflow("|phi(z)| reached the 1 - 1e-12 cutoff")
    return m


def tau_integrand(psi: AnalyticFn, phi: AnalyticFn) -> Integrand:
    def f(z):
        pv, _ = _vd(psi, z)
        fv, fd = _vd(phi, z)
        m = _phi_modulus(fv)
        return one_minus_sq(z) / ((1 - m) * (1 + m)) * np.abs(pv) * np.abs(fd)

    return f


def sigma_integrand(psi: AnalyticFn, phi: AnalyticFn) -> Integrand:
    def f(z):
        _, pd = _vd(psi, z)
        fv, _ = _vd(phi, z)
        # 1/2 log((1+m)/(1-m)) = artanh(m)
        return one_minus_sq(z) * np.abs(pd) * np.arctanh(_phi_modulus(fv))

    return f


def tau_infty(psi: AnalyticFn, phi: AnalyticFn, grid: DiskGrid) -> SupremumEstimate:
    return sup_over_disk(tau_integrand(psi, phi), grid)


def sigma_infty(psi: AnalyticFn, phi: AnalyticFn, grid: DiskGrid) -> SupremumEstimate:
    return sup_over_disk(sigma_integrand(psi, phi), grid)
