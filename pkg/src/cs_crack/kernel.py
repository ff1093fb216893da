"""Wiener-Hopf kernel ingredients on the real transform axis.

Everything here is an explicit closed form in the normalized transform
variable z = s*ell.  With q = (h0*m)^2 and sigma = sqrt(1 - 2q):

    chi(z)   = sqrt(1 + 2(1-h0^2) m^2 z^2 + h0^4 m^4 z^4)
    alpha(z) = sqrt(1 + (1-q) z^2 + chi)
    beta(z)  = sqrt(1 + (1-q) z^2 - chi)
    f(z)     = [alpha beta (alpha^2+beta^2+2 eta z^2) + alpha^2 beta^2
                - eta^2 z^4] / (alpha+beta)
    k(z)     = f(z) / (|z| Psi(z)),   Psi(z) = Upsilon z^2 + 2 sqrt(1-m^2)

All branches are fixed positive on the real axis.  Two exact algebraic
rewrites keep the evaluation stable:

* alpha^2 beta^2 = sigma^2 z^2 (z^2 + c^2) with c^2 = 2(1-m^2)/sigma^2, so
  beta is computed as (|z| sigma sqrt(z^2+c^2)) / alpha -- no cancellation
  in 1 + (1-q) z^2 - chi;
* k is evaluated with f/|z| folded in analytically, so the 0/0 at z = 0 is
  removed and k(0) = 1 holds exactly.

Evaluation is restricted to the real axis: the factorization and all field
inversions only ever consume real-axis values (plus the Cauchy transform at
isolated imaginary points, which needs no off-axis alpha/beta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import subsonic_bound, upsilon

__all__ = [
    "InadmissibleRegimeError",
    "PsiCoefficients",
    "KernelContext",
    "chi",
    "alpha_beta",
    "f_kernel",
    "k_kernel",
    "log_k",
    "psi",
    "f_zero_inertia",
    "tau23_numerator",
    "tau23_numerator_zero_inertia",
]


class InadmissibleRegimeError(ValueError):
    """The configuration is outside the admissible steady-state regime."""


@dataclass(frozen=True)
class PsiCoefficients:
    """Quadratic-plus-constant factor pulled out of the kernel: quad*z^2 + const."""

    quad: float
    const: float

    def __call__(self, z):
        return self.quad * np.square(z) + self.const


@dataclass(frozen=True)
class KernelContext:
    """Precomputed constants for one admissible (m, h0, eta) configuration.

    Attributes
    ----------
    c : float
        Branch-point magnitude sqrt(2(1-m^2)/(1-2 h0^2 m^2)).
    sigma : float
        sqrt(1 - 2 h0^2 m^2); positive in the subsonic regime.
    d : float
        Pole magnitude of k: Psi(+-i d) = 0, d = sqrt(2 sqrt(1-m^2)/Upsilon).
    b : float or None
        chi branch point 1/(sqrt(2) m) for h0 = 0 (None when m = 0).
    b1, b2 : complex or None
        chi branch points (scaled by 1/(h0^2 m)) for h0 > 0; complex when
        h0 > 1/sqrt(2).  Informational: nothing evaluates chi off-axis.
    """

    m: float
    h0: float
    eta: float
    q: float
    sigma: float
    upsilon: float
    c: float
    d: float
    psi: PsiCoefficients
    b: float | None
    b1: complex | None
    b2: complex | None

    @classmethod
    def from_normalized(cls, m: float, h0: float, eta: float) -> "KernelContext":
        if not (0.0 <= m < subsonic_bound(h0)):
            raise InadmissibleRegimeError(
                f"crack speed m={m} outside the subsonic range [0, {subsonic_bound(h0)}) for h0={h0}"
            )
        if not (-1.0 < eta < 1.0):
            raise InadmissibleRegimeError(f"eta must be in (-1, 1), got {eta}")
        q = (h0 * m) ** 2
        ups = upsilon(eta, h0 * m)
        if not (ups > 0.0):
            raise InadmissibleRegimeError(
                f"kernel growth coefficient {ups} <= 0 at (eta={eta}, h0*m={h0 * m}); "
                "no steady-state solution in this range"
            )
        sigma = math.sqrt(1.0 - 2.0 * q)
        c = math.sqrt(2.0 * (1.0 - m * m)) / sigma
        psi_ = PsiCoefficients(quad=ups, const=2.0 * math.sqrt(1.0 - m * m))
        d = math.sqrt(psi_.const / ups)
        b = None
        b1 = b2 = None
        if h0 == 0.0:
            b = 1.0 / (math.sqrt(2.0) * m) if m > 0 else None
        elif m > 0:
            inner = complex(1.0 - 2.0 * h0 * h0) ** 0.5
            scale = 1.0 / (h0 * h0 * m)
            b1 = scale * (1.0 - h0 * h0 + inner) ** 0.5
            b2 = scale * (1.0 - h0 * h0 - inner) ** 0.5
        return cls(m=m, h0=h0, eta=eta, q=q, sigma=sigma, upsilon=ups, c=c, d=d,
                   psi=psi_, b=b, b1=b1, b2=b2)

    @classmethod
    def from_setup(cls, setup) -> "KernelContext":
        m, h0, eta, _ = setup.normalized()
        return cls.from_normalized(m, h0, eta)


def chi(z, ctx: KernelContext):
    """Inner square root of the kernel; even, positive on the real axis."""
    z2 = np.square(np.asarray(z, dtype=float))
    m2 = ctx.m * ctx.m
    h02 = ctx.h0 * ctx.h0
    return np.sqrt(1.0 + 2.0 * (1.0 - h02) * m2 * z2 + h02 * h02 * m2 * m2 * z2 * z2)

def alpha_beta(z, ctx: KernelContext):
    """Decay exponents (alpha, beta) of the transformed half-plane solution.

    Both are non-negative on the real axis with alpha(0) = sqrt(2),
    beta(0) = 0 and alpha >= beta.  beta uses the product identity
    alpha*beta = |z| sigma sqrt(z^2 + c^2) to avoid cancellation.
    """
    z = np.asarray(z, dtype=float)
    z2 = np.square(z)
    ch = chi(z, ctx)
    alpha = np.sqrt(1.0 + (1.0 - ctx.q) * z2 + ch)
    beta = np.abs(z) * ctx.sigma * np.sqrt(z2 + ctx.c * ctx.c) / alpha
    return alpha, beta

def psi(z, ctx: KernelContext):
    """Quadratic factor Upsilon z^2 + 2 sqrt(1 - m^2)."""
    return ctx.psi(z)

def f_kernel(z, ctx: KernelContext):
    """Full kernel f(z); odd-|z| growth: 2 sqrt(1-m^2)|z| at 0, Upsilon|z|^3 at inf."""
    z = np.asarray(z, dtype=float)
    z2 = np.square(z)
    alpha, beta = alpha_beta(z, ctx)
    p = alpha * beta
    s2 = alpha * alpha + beta * beta
    out = (p * (s2 + 2.0 * ctx.eta * z2) + p * p - ctx.eta * ctx.eta * z2 * z2) / (alpha + beta)
    return out if out.ndim else float(out)

def k_kernel(z, ctx: KernelContext):
    """Normalized kernel k(z) = f(z)/(|z| Psi(z)); k > 0, k -> 1 at 0 and inf.

    Evaluated through the factored form

        k = [g (alpha^2+beta^2+2 eta z^2) + |z| (g^2 - eta^2 z^2)]
            / ((alpha+beta) Psi),   g = sigma sqrt(z^2 + c^2) = alpha*beta/|z|,

    which is finite and exact at z = 0 (value 1).
    """
    z = np.asarray(z, dtype=float)
    z2 = np.square(z)
    alpha, beta = alpha_beta(z, ctx)
    g = ctx.sigma * np.sqrt(z2 + ctx.c * ctx.c)
    s2 = alpha * alpha + beta * beta
    num = g * (s2 + 2.0 * ctx.eta * z2) + np.abs(z) * (g * g - ctx.eta * ctx.eta * z2)
    out = num / ((alpha + beta) * ctx.psi(z))
    return out if out.ndim else float(out)

def log_k(z, ctx: KernelContext):
    """log k(z) on the real axis; integrable against 1/t^2 at both ends."""
    return np.log(k_kernel(z, ctx))

def f_zero_inertia(z, m: float, eta: float):
    """Reference closed form of f for vanishing rotational inertia (h0 = 0).

    Kept verbatim as an independent check: the general :func:`f_kernel`
    must coincide with this expression at h0 = 0.
    """
    z2 = np.square(np.asarray(z, dtype=float))
    ch = np.sqrt(1.0 + 2.0 * m * m * z2)
    alpha = np.sqrt(1.0 + z2 + ch)
    beta = np.sqrt(np.maximum(1.0 + z2 - ch, 0.0))
    out = (alpha * beta * (alpha + beta) ** 2 - (alpha * beta - eta * z2) ** 2) / (alpha + beta)
    return out if out.ndim else float(out)

def tau23_numerator(z, ctx: KernelContext):
    """Skew-symmetric stress numerator (general inertia), divided by (alpha+beta)."""
    z = np.asarray(z, dtype=float)
    z2 = np.square(z)
    alpha, beta = alpha_beta(z, ctx)
    ab = alpha * beta
    num = (ab * ab
           + (alpha * alpha + beta * beta + ab) * ctx.eta * z2
           - ctx.sigma * ctx.sigma * z2 * (ctx.eta * z2 - ab))
    out = num / (alpha + beta)
    return out if out.ndim else float(out)

def tau23_numerator_zero_inertia(z, m: float, eta: float):
    """Reference h0 = 0 skew-stress numerator over (alpha+beta).

    Uses c^2 = 2(1-m^2) and sqrt(z^2) sqrt(z^2+c^2) for the product term.
    """
    z = np.asarray(z, dtype=float)
    z2 = np.square(z)
    ch = np.sqrt(1.0 + 2.0 * m * m * z2)
    alpha = np.sqrt(1.0 + z2 + ch)
    beta = np.sqrt(np.maximum(1.0 + z2 - ch, 0.0))
    c2 = 2.0 * (1.0 - m * m)
    num = (1.0 + eta) * z2 * z2 + z2 * (
        c2 + 2.0 * eta + (1.0 + eta) * np.sqrt(z2) * np.sqrt(z2 + c2)
    )
    out = num / (alpha + beta)
    return out if out.ndim else float(out)
