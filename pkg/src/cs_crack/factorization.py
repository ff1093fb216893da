"""Multiplicative Wiener-Hopf factorization of the normalized kernel.

``k(z)`` (even, positive, -> 1 at 0 and infinity on the real axis) is split
as ``k = k_minus / k_plus`` with factors analytic and zero-free in the
lower/upper half-planes, built from the Cauchy transform

    R(z) = -(z / (pi i)) * PV int_0^inf log k(t) / (t^2 - z^2) dt ,

so that ``k_plus = exp(R)`` above the axis, ``k_minus = exp(R)`` below, and
on the axis ``k_plus = exp(R)/sqrt(k)``, ``k_minus = sqrt(k) exp(R)``.

On the real axis R is purely imaginary; its imaginary part (the "phase")
is precomputed on a dense logarithmic grid at construction and spline
interpolated afterwards, because the field inversions sample k_minus at
hundreds of thousands of points.  The principal value is handled by
subtracting log k(|z|), using PV int_0^inf dt/(t^2 - a^2) = 0, which makes
both folded integrands smooth for every real z (no special casing at
|z| = 1).  The half-line is folded onto (0, 1] by t -> 1/t.

Two scalar constants complete the solution of the functional equation:

* ``Xi``: removes the load pole from the plus side; evaluated at the
  imaginary point i*ell/L where R is a smooth real integral.
* ``F``: the Liouville constant pinned by zero crack opening at the tip,
  computed from the ratio of two real-line integrals of the minus-side
  transform (u^2 substitution at the origin, fitted algebraic tails).
"""

from __future__ import annotations

import cmath
import math
import warnings
from functools import cached_property

import numpy as np
from scipy.interpolate import CubicSpline

from .kernel import KernelContext, k_kernel, log_k, psi
from .quadrature import (
    DEFAULT_SPEC,
    QuadratureError,
    QuadratureSpec,
    gauss_panel_nodes,
    integrate_adaptive,
)

__all__ = [
    "split_sqrt_plus",
    "split_sqrt_minus",
    "FactorizedKernel",
    "xi_constant",
    "liouville_F",
    "log_k_moment",
]


def split_sqrt_plus(z):
    """Branch ``z_+^(1/2)``: sqrt(z) for z > 0, cut from 0 to -i*inf.

    Real-axis limits: sqrt(z) for z > 0 and i*sqrt(-z) for z < 0; on the
    positive imaginary axis (ia) -> e^{i pi/4} sqrt(a).
    """
    if np.iscomplexobj(z) and np.ndim(z) == 0:
        return cmath.exp(0.25j * math.pi) * cmath.sqrt(-1j * complex(z))
    if np.iscomplexobj(z):
        return np.exp(0.25j * math.pi) * np.sqrt(-1j * np.asarray(z))
    z = np.asarray(z, dtype=float)
    root = np.sqrt(np.abs(z)).astype(complex)
    out = np.where(z >= 0, root, 1j * root)
    return out if out.ndim else complex(out)

def split_sqrt_minus(z):
    """Branch ``z_-^(1/2)``: sqrt(z) for z > 0, cut from 0 to +i*inf.

    Real-axis limits: sqrt(z) for z > 0 and -i*sqrt(-z) for z < 0.  The
    product with :func:`split_sqrt_plus` is |z| on the real line.
    """
    if np.iscomplexobj(z) and np.ndim(z) == 0:
        return cmath.exp(-0.25j * math.pi) * cmath.sqrt(1j * complex(z))
    if np.iscomplexobj(z):
        return np.exp(-0.25j * math.pi) * np.sqrt(1j * np.asarray(z))
    z = np.asarray(z, dtype=float)
    root = np.sqrt(np.abs(z)).astype(complex)
    out = np.where(z >= 0, root, -1j * root)
    return out if out.ndim else complex(out)


def _t_panel_nodes():
    """Composite GL nodes on (0, 1], log-dense near 0 (folded half-line)."""
    edges = np.concatenate([np.geomspace(1e-8, 0.5, 60), np.linspace(0.52, 1.0, 25)])
    return gauss_panel_nodes(edges)


class FactorizedKernel:
    """Factorization data for one admissible configuration and load length.

    Immutable after construction; safe to share across threads.  Building
    performs the phase-table quadrature (vectorized over a log grid) and
    evaluates the two constants.
    """

    def __init__(
        self,
        ctx: KernelContext,
        L_over_ell: float = 1.0,
        spec: QuadratureSpec = DEFAULT_SPEC,
        *,
        phase_points: int = 1200,
    ):
        if L_over_ell <= 0:
            raise ValueError("L_over_ell must be positive")
        self.ctx = ctx
        self.L_over_ell = float(L_over_ell)
        self.spec = spec
        feature = max(ctx.c, ctx.d, 1.0)
        self._xi_lo = 1e-6
        self._xi_hi = max(2.0e4, 64.0 * feature)
        self._build_phase_table(phase_points)

    # -- phase of exp(R) on the real axis -------------------------------

    def _build_phase_table(self, n_points):
        ctx = self.ctx
        xs = np.geomspace(self._xi_lo, self._xi_hi, n_points)
        t, wt = _t_panel_nodes()
        lk_t = log_k(t, ctx)
        lk_inv = log_k(1.0 / t, ctx)
        lk_a = log_k(xs, ctx)
        T, W = t[None, :], wt[None, :]
        A, KA = xs[:, None], lk_a[:, None]
        den1 = T * T - A * A
        den2 = 1.0 - A * A * T * T
        # removable points t = a and t = 1/a: floor the denominators; the
        # subtracted numerators vanish there at the same rate
        tiny = 1e-14
        den1 = np.where(np.abs(den1) < tiny, np.copysign(tiny, den1), den1)
        den2 = np.where(np.abs(den2) < tiny, np.copysign(tiny, den2), den2)
        I1 = np.sum(W * (lk_t[None, :] - KA) / den1, axis=1)
        I2 = np.sum(W * (lk_inv[None, :] - KA) / den2, axis=1)
        rho = xs / np.pi * (I1 + I2)
        self._phase_spline = CubicSpline(np.log(xs), rho * xs)
        self._phase_lo_slope = rho[0] / xs[0]
        self._phase_hi_value = rho[-1] * xs[-1]

    def phase(self, xi):
        """Im R on the real axis (odd); spline with 1/xi continuation."""
        xi = np.asarray(xi, dtype=float)
        ax = np.abs(xi)
        out = np.empty_like(ax)
        small = ax < self._xi_lo
        big = ax > self._xi_hi
        mid = ~(small | big)
        out[mid] = self._phase_spline(np.log(ax[mid])) / ax[mid]
        out[small] = ax[small] * self._phase_lo_slope
        out[big] = self._phase_hi_value / np.maximum(ax[big], 1e-300)
        out = np.where(xi >= 0, out, -out)
        return out if out.ndim else float(out)

    # -- Cauchy transform, direct evaluation ----------------------------

    def R(self, z) -> complex:
        """Cauchy transform of log k at a point (principal value on axis).

        Real z uses the smooth subtracted form; purely imaginary and
        general off-axis arguments integrate directly.  Odd: R(-z) = -R(z).
        """
        ctx, spec = self.ctx, self.spec
        zc = complex(z)
        if zc == 0:
            return 0.0j
        if abs(zc.imag) < 1e-300:
            a = abs(zc.real)
            lk_a = log_k(a, ctx)

            def fold1(t):
                den = (t - a) * (t + a)
                if abs(den) < 1e-13 * (1.0 + a * a):
                    h = 1e-6 * (1.0 + a)
                    return 0.5 * (fold1(t + h) + fold1(t - h))
                return (log_k(t, ctx) - lk_a) / den

            def fold2(t):
                den = 1.0 - a * a * t * t
                if abs(den) < 1e-13:
                    h = 1e-6
                    return 0.5 * (fold2(t + h) + fold2(t - h))
                return (log_k(1.0 / t, ctx) - lk_a) / den

            I1, _ = integrate_adaptive(fold1, 0.0, 1.0, spec, points=[a] if a < 1 else None)
            I2, _ = integrate_adaptive(fold2, 0.0, 1.0, spec, points=[1.0 / a] if a > 1 else None)
            return 1j * (zc.real / math.pi) * (I1 + I2)
        if abs(zc.real) < 1e-300:
            a = zc.imag
            f1 = lambda t: log_k(t, ctx) / (t * t + a * a)
            f2 = lambda t: log_k(1.0 / t, ctx) / (1.0 + a * a * t * t)
            I1, _ = integrate_adaptive(f1, 0.0, 1.0, spec)
            I2, _ = integrate_adaptive(f2, 0.0, 1.0, spec)
            return complex(-(a / math.pi) * (I1 + I2))
        f1 = lambda t: log_k(t, ctx) / ((t - zc) * (t + zc))
        f2 = lambda t: log_k(1.0 / t, ctx) / (1.0 - zc * zc * t * t)
        I1, _ = integrate_adaptive(f1, 0.0, 1.0, spec)
        I2, _ = integrate_adaptive(f2, 0.0, 1.0, spec)
        return 1j * zc / math.pi * (I1 + I2)

    # -- the factors -----------------------------------------------------

    def k_minus_axis(self, xi):
        """Vectorized boundary values of k_minus on the real axis."""
        return np.sqrt(k_kernel(xi, self.ctx)) * np.exp(1j * self.phase(xi))

    def k_plus(self, z):
        """Plus factor; requires Im z >= 0."""
        if np.ndim(z) > 0:
            z = np.asarray(z)
            if np.iscomplexobj(z) and np.any(z.imag < 0):
                raise ValueError("k_plus is defined for Im z >= 0 only")
            if not np.iscomplexobj(z) or np.all(z.imag == 0):
                xi = np.real(z).astype(float)
                return np.exp(1j * self.phase(xi)) / np.sqrt(k_kernel(xi, self.ctx))
            return np.array([self.k_plus(complex(v)) for v in z.ravel()]).reshape(z.shape)
        zc = complex(z)
        if zc.imag < 0:
            raise ValueError("k_plus is defined for Im z >= 0 only")
        if zc.imag == 0:
            return cmath.exp(self.R(zc.real)) / math.sqrt(k_kernel(zc.real, self.ctx))
        return cmath.exp(self.R(zc))

    def k_minus(self, z):
        """Minus factor; requires Im z <= 0."""
        if np.ndim(z) > 0:
            z = np.asarray(z)
            if np.iscomplexobj(z) and np.any(z.imag > 0):
                raise ValueError("k_minus is defined for Im z <= 0 only")
            if not np.iscomplexobj(z) or np.all(z.imag == 0):
                return self.k_minus_axis(np.real(z).astype(float))
            return np.array([self.k_minus(complex(v)) for v in z.ravel()]).reshape(z.shape)
        zc = complex(z)
        if zc.imag > 0:
            raise ValueError("k_minus is defined for Im z <= 0 only")
        if zc.imag == 0:
            return math.sqrt(k_kernel(zc.real, self.ctx)) * cmath.exp(self.R(zc.real))
        return cmath.exp(self.R(zc))

    @cached_property
    def Xi(self) -> complex:
        return xi_constant(self)

    @cached_property
    def F(self) -> float:
        return liouville_F(self)


def xi_constant(fk: FactorizedKernel, L_over_ell: float | None = None) -> complex:
    """Load-split constant  k_plus(i ell/L) / (i ell/L)_+^(1/2).

    On the positive imaginary axis R is real, so the constant is a positive
    magnitude times e^{-i pi/4} -- exactly the phase that renders every
    field inversion real.
    """
    Lt = fk.L_over_ell if L_over_ell is None else float(L_over_ell)
    if Lt <= 0:
        raise ValueError("L_over_ell must be positive")
    a = 1.0 / Lt
    kp = cmath.exp(fk.R(1j * a))
    return kp / split_sqrt_plus(1j * a)


def _minus_side_base(fk: FactorizedKernel):
    ctx = fk.ctx

    def base(xi):
        xi = np.asarray(xi, dtype=float)
        root = np.sqrt(np.abs(xi)).astype(complex)
        minus_half = np.where(xi >= 0, root, -1j * root)
        return 1.0 / (minus_half * psi(xi, ctx) * fk.k_minus_axis(xi))
    return base


def liouville_F(fk: FactorizedKernel) -> float:
    """Entire-function constant from the tip-closure condition.

    Ratio of the two real-line integrals of the minus-side transform (with
    and without the moving-load factor).  Both integrands carry an
    integrable 1/sqrt|s| at the origin, removed by s = u^2 per side, and
    decay like |s|^(-7/2) and |s|^(-5/2); fitted algebraic tails close the
    truncation.  The imaginary part of the ratio must vanish by conjugate
    symmetry and is checked against the quadrature tolerance.
    """
    ctx, Lt, spec = fk.ctx, fk.L_over_ell, fk.spec
    base = _minus_side_base(fk)
    cutoff = max(600.0, 8.0 * max(ctx.c, ctx.d, 1.0 / Lt))
    u_edges = np.concatenate([[0.0], np.geomspace(1e-4, math.sqrt(cutoff), 240)])
    un, uw = gauss_panel_nodes(u_edges)
    un = np.maximum(un, 1e-300)
    num = 0.0j
    den = 0.0j
    for side in (1.0, -1.0):
        xi = side * un * un
        b = 2.0 * un * uw * base(xi)
        den += np.sum(b)
        num += np.sum(b / (1.0 + 1j * xi * Lt))
    # fitted tails: base ~ |s|^(-5/2), load-weighted ~ |s|^(-7/2)
    for side in (1.0, -1.0):
        pts = cutoff * np.geomspace(1.0, 4.0, 6)
        for weighted, p0 in ((False, -2.5), (True, -3.5)):
            vals = base(side * pts)
            if weighted:
                vals = vals / (1.0 + 1j * side * pts * Lt)
            powers = p0 - np.arange(3, dtype=float)
            design = pts[:, None] ** powers[None, :]
            coef, *_ = np.linalg.lstsq(design, vals, rcond=None)
            tail = np.sum(coef * np.array([-cutoff ** (p + 1) / (p + 1) for p in powers]))
            if weighted:
                num += tail
            else:
                den += tail
    if abs(den) < 1e3 * spec.abs_tol:
        raise QuadratureError("degenerate denominator in the tip-closure constant")
    ratio = num / den
    rel_imag = abs(ratio.imag) / max(abs(ratio.real), 1e-300)
    if rel_imag > 1e-6:
        warnings.warn(
            f"tip-closure constant has relative imaginary part {rel_imag:.2e}; "
            "quadrature may be under-resolved",
            stacklevel=2,
        )
    return float(ratio.real)


def log_k_moment(ctx: KernelContext, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Zeroth moment  int_-inf^inf log k(t) dt  (real, finite: log k ~ t^-2)."""
    f1 = lambda t: log_k(t, ctx)
    f2 = lambda t: log_k(1.0 / t, ctx) / (t * t)
    I1, _ = integrate_adaptive(f1, 0.0, 1.0, spec)
    I2, _ = integrate_adaptive(f2, 0.0, 1.0, spec)
    return 2.0 * (I1 + I2)
