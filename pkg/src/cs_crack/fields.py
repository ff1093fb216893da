"""Crack-line (and upper half-plane) field reconstruction.

All outputs are normalized for direct figure comparison:

* crack opening            w * G / T0         versus X/ell  (X < 0)
* reduced traction         p3 * ell / T0      versus X/ell  (X > 0)
* symmetric shear          sigma23 * ell / T0
* skew-symmetric shear     tau23 * ell / T0
* total shear              t23 = sigma23 + tau23 (single combined inversion
  by default; the sum of the two separate inversions is kept as a
  cross-check mode)
* couple stress            mu22 / T0

Every field is a full-line Fourier inversion of an explicit transform built
from the factorized kernel; the shared factor is

    Phi(xi) = [1 - F (1 + i xi L/ell)]
              / (xi_-^(1/2) (1 + i xi L/ell) Psi(xi) k_minus(xi)).

The traction and skew-stress transforms grow like |xi|^(1/2), so their
inversions subtract the exact leading symbol C (xi_+)^(1/2) (closed-form
transform, supported ahead of the tip) and invert the O(|xi|^(-1/2))
remainder numerically; the couple stress likewise uses its (xi_+)^(-1/2)
symbol.  The symbol coefficients below also expose the near-tip
asymptotics, e.g. t23 ~ -|C_t| sqrt(pi) (X/ell)^(-3/2) as X -> 0+ while
1 - 2 h0^2 m^2 + eta > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .factorization import FactorizedKernel
from .kernel import KernelContext, alpha_beta, k_kernel, psi, tau23_numerator
from .model import ProblemSetup
from .quadrature import (
    InversionResult,
    QuadratureSpec,
    oscillatory_inverse_many,
)

__all__ = [
    "FieldSample",
    "LoadProfile",
    "CrackLineFields",
    "displacement_coefficients",
    "solver_for",
    "FIELD_NAMES",
]

FIELD_NAMES = ("w", "p3", "sigma23", "tau23", "t23", "mu22")

# fields are plotted, not fed downstream: looser default than factorization
FIELD_SPEC = QuadratureSpec(rel_tol=1e-6, abs_tol=1e-10)


@dataclass(frozen=True)
class FieldSample:
    """One normalized field value with its imaginary-part diagnostic."""

    X: float
    value: float
    imag_residual: float


@dataclass(frozen=True)
class LoadProfile:
    """Exponential face loading tau(X) = (T0/L) exp(X/L) for X < 0."""

    T0: float
    L: float

    def __post_init__(self):
        if self.L <= 0:
            raise ValueError("load decay length must be positive")

    def tau(self, X):
        X = np.asarray(X, dtype=float)
        out = np.where(X < 0, (self.T0 / self.L) * np.exp(X / self.L), 0.0)
        return out if out.ndim else float(out)


def displacement_coefficients(z, ctx: KernelContext):
    """Ratios C/w_bar and D/w_bar of the two decaying half-plane modes.

    The combination enforcing the zero reduced couple traction on the
    crack line is exact: C alpha^2 + D beta^2 + eta z^2 (C + D) = 0.
    """
    z = np.asarray(z, dtype=float)
    z2 = np.square(z)
    alpha, beta = alpha_beta(z, ctx)
    two_chi = alpha * alpha - beta * beta
    c_coef = -(beta * beta + ctx.eta * z2) / two_chi
    d_coef = (alpha * alpha + ctx.eta * z2) / two_chi
    return c_coef, d_coef


class CrackLineFields:
    """Field evaluator bound to one factorized kernel and load length.

    Evaluation at distinct X values is independent; the underlying
    factorization is shared read-only.
    """

    def __init__(self, fk: FactorizedKernel, spec: QuadratureSpec | None = None):
        self.fk = fk
        self.ctx = fk.ctx
        self.spec = spec if spec is not None else FIELD_SPEC
        ctx = self.ctx
        self.L_over_ell = fk.L_over_ell
        # truncation radius: past every kernel feature (branch points, pole)
        self._xi_max = float(np.clip(4.0 * max(ctx.c, ctx.d, 1.0), 500.0, 4000.0))
        sigma, eta, ups = ctx.sigma, ctx.eta, ctx.upsilon
        XiF = fk.Xi * fk.F
        self._sym_t23 = XiF * (sigma * sigma + eta) / (2.0 * math.pi * ups)
        self._sym_p3 = XiF / (2.0 * math.pi)
        self._sym_mu22 = (1j * XiF * (1.0 + eta) * (sigma - eta)
                          / (math.pi * ups * (1.0 + sigma)))

    # -- transforms ------------------------------------------------------

    def _minus_half(self, xi):
        root = np.sqrt(np.abs(xi)).astype(complex)
        return np.where(xi >= 0, root, -1j * root)

    def _plus_half(self, xi):
        root = np.sqrt(np.abs(xi)).astype(complex)
        return np.where(xi >= 0, root, 1j * root)

    def _common(self, xi):
        load = 1.0 + 1j * xi * self.L_over_ell
        return ((1.0 - self.fk.F * load)
                / (self._minus_half(xi) * load * psi(xi, self.ctx)
                   * self.fk.k_minus_axis(xi)))

    def _g_w(self, xi):
        return (self.fk.Xi / math.pi) * self._common(xi)

    def _g_p3(self, xi):
        # plus-side transform; the minus-side load term is added analytically
        load = 1.0 + 1j * xi * self.L_over_ell
        k_plus = np.exp(1j * self.fk.phase(xi)) / np.sqrt(k_kernel(xi, self.ctx))
        return (-(self.fk.Xi / (2.0 * math.pi)) * self._plus_half(xi)
                * (1.0 - self.fk.F * load) / (load * k_plus))

    def _g_sigma23(self, xi):
        alpha, beta = alpha_beta(xi, self.ctx)
        num = (alpha * beta - self.ctx.eta * np.square(xi)) / (alpha + beta)
        return -(self.fk.Xi / math.pi) * num * self._common(xi)

    def _g_tau23(self, xi):
        return (-(self.fk.Xi / (2.0 * math.pi)) * tau23_numerator(xi, self.ctx)
                * self._common(xi))

    def _g_t23(self, xi):
        alpha, beta = alpha_beta(xi, self.ctx)
        sym_part = 2.0 * (alpha * beta - self.ctx.eta * np.square(xi)) / (alpha + beta)
        return (-(self.fk.Xi / (2.0 * math.pi))
                * (sym_part + tau23_numerator(xi, self.ctx)) * self._common(xi))

    def _g_mu22(self, xi):
        alpha, beta = alpha_beta(xi, self.ctx)
        num = xi * (alpha * beta - self.ctx.eta * np.square(xi)) / (alpha + beta)
        return (-(1j * self.fk.Xi / math.pi) * (1.0 + self.ctx.eta)
                * num * self._common(xi))

    def _field_plan(self, what):
        plans = {
            "w": (self._g_w, -2.5, None),
            "p3": (self._g_p3, -0.5, (self._sym_p3, 0.5)),
            "sigma23": (self._g_sigma23, -1.5, None),
            "tau23": (self._g_tau23, -0.5, (self._sym_t23, 0.5)),
            "t23": (self._g_t23, -0.5, (self._sym_t23, 0.5)),
            "mu22": (self._g_mu22, -1.5, (self._sym_mu22, -0.5)),
        }
        if what not in plans:
            raise ValueError(f"unknown field {what!r}; expected one of {FIELD_NAMES}")
        return plans[what]

    # -- inversion -------------------------------------------------------

    def invert_many(self, what: str, xs, spec: QuadratureSpec | None = None) -> list[InversionResult]:
        """Batched inversion of one field transform at coordinates xs.

        For p3 the analytic face-load part (support X < 0) is included, so
        the result is the full traction on the crack line at any X.
        ``spec`` overrides the field tolerance (scans use a lighter one).
        """
        g, decay, symbol = self._field_plan(what)
        use = spec if spec is not None else self.spec
        res = oscillatory_inverse_many(
            g, xs, use, decay_power=decay, symbol=symbol,
            xi_max=use.truncation if use.truncation is not None else self._xi_max,
        )
        if what == "p3":
            Lt = self.L_over_ell
            for r, x in zip(res, np.asarray(xs, dtype=float)):
                if x < 0:
                    r.value += math.exp(x / Lt) / Lt
        return res

    def invert(self, what: str, X: float) -> InversionResult:
        return self.invert_many(what, np.array([float(X)]))[0]

    def samples(self, what: str, xs) -> list[FieldSample]:
        """FieldSample rows for CSV emission (values normalized)."""
        return [
            FieldSample(X=float(x), value=r.value.real, imag_residual=r.value.imag)
            for x, r in zip(np.asarray(xs, dtype=float), self.invert_many(what, xs))
        ]

    # -- named operations --------------------------------------------------

    def crack_opening(self, X: float) -> float:
        """Normalized sliding displacement w*G/T0 on the upper face, X < 0."""
        if X >= 0:
            raise ValueError("crack opening is defined on the crack face X < 0")
        return self.invert("w", X).value.real

    def traction_ahead(self, X: float) -> float:
        """Normalized reduced traction p3*ell/T0 ahead of the tip, X > 0."""
        if X <= 0:
            raise ValueError("traction_ahead is defined ahead of the tip, X > 0")
        return self.invert("p3", X).value.real

    def sigma23(self, X: float) -> float:
        """Normalized symmetric shear stress ahead of the tip."""
        if X <= 0:
            raise ValueError("sigma23 is evaluated ahead of the tip, X > 0")
        return self.invert("sigma23", X).value.real

    def tau23(self, X: float) -> float:
        """Normalized skew-symmetric shear stress ahead of the tip."""
        if X <= 0:
            raise ValueError("tau23 is evaluated ahead of the tip, X > 0")
        return self.invert("tau23", X).value.real

    def mu22(self, X: float) -> float:
        """Normalized couple stress mu22/T0 ahead of the tip."""
        if X <= 0:
            raise ValueError("mu22 is evaluated ahead of the tip, X > 0")
        return self.invert("mu22", X).value.real

    def total_shear(self, X: float, mode: str = "combined") -> float:
        """Total shear t23 = sigma23 + tau23 ahead of the tip.

        ``mode='combined'`` inverts the single summed transform (default);
        ``mode='sum'`` adds the two separate inversions (cross-check path).
        """
        if X <= 0:
            raise ValueError("total_shear is evaluated ahead of the tip, X > 0")
        if mode == "combined":
            return self.invert("t23", X).value.real
        if mode == "sum":
            return (self.invert("sigma23", X).value.real
                    + self.invert("tau23", X).value.real)
        raise ValueError("mode must be 'combined' or 'sum'")

    def total_shear_curve(self, xs, spec: QuadratureSpec | None = None) -> np.ndarray:
        """Vectorized t23 over a coordinate grid (combined transform)."""
        return np.array([r.value.real for r in self.invert_many("t23", xs, spec=spec)])

    def halfplane_displacement(self, X: float, y: float) -> float:
        """Normalized displacement w*G/T0 at height y >= 0 above the crack line.

        Reduces to the crack-face opening at y = 0, X < 0 and to ~0 ahead
        of the tip; decays with y through the two exponential modes.
        """
        return self.halfplane_sample(X, y).value

    def halfplane_sample(self, X: float, y: float) -> FieldSample:
        """Half-plane displacement with its imaginary-part diagnostic."""
        if y < 0:
            raise ValueError("upper half-plane only: y >= 0")

        def g(xi):
            alpha, beta = alpha_beta(xi, self.ctx)
            c_coef, d_coef = displacement_coefficients(xi, self.ctx)
            modes = c_coef * np.exp(-alpha * y) + d_coef * np.exp(-beta * y)
            return (self.fk.Xi / math.pi) * self._common(xi) * modes

        res = oscillatory_inverse_many(
            g, np.array([float(X)]), self.spec, decay_power=-2.5, xi_max=self._xi_max,
        )[0]
        return FieldSample(X=float(X), value=res.value.real,
                           imag_residual=res.value.imag)


def solver_for(setup: ProblemSetup, spec: QuadratureSpec | None = None,
               fk_spec: QuadratureSpec | None = None) -> CrackLineFields:
    """Build the full pipeline (context, factorization, fields) for a setup.

    Raises
    ------
    InadmissibleRegimeError
        If the setup is outside the admissible steady-state range.
    """
    ctx = KernelContext.from_setup(setup)
    fk = FactorizedKernel(ctx, L_over_ell=setup.L_over_ell,
                          spec=fk_spec if fk_spec is not None else QuadratureSpec())
    return CrackLineFields(fk, spec=spec)
