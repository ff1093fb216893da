"""Maximum-shear-stress extraction, parameter sweeps, and stability.

The fracture criterion compares the bounded positive maximum of the total
shear stress ahead of the tip, t23_max, against a critical level tau_C.
For each configuration :func:`locate_max_shear` finds

* X0    -- size of the near-tip zone with negative total shear (smallest
           positive root of t23), zero when the near-tip field is already
           positive (which happens once 1 - 2 h0^2 m^2 + eta <= 0, where
           the tip asymptotics change sign and the shear maximum migrates
           to the scan edge);
* X_max -- location of the maximum beyond X0;
* t23_max -- its value.

Speed sweeps of t23_max classify propagation stability: an interval where
t23_max grows with m is unstable under the criterion (faster cracks would
need ever-lower driving stress).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .fields import CrackLineFields, solver_for
from .kernel import InadmissibleRegimeError
from .model import ProblemSetup
from .quadrature import QuadratureError, QuadratureSpec

__all__ = [
    "AnalysisError",
    "NoInteriorMaximumError",
    "ShearMaximum",
    "SweepRecord",
    "StabilityReport",
    "ScanWindow",
    "locate_max_shear",
    "sweep",
    "critical_speed",
    "stability_report",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class AnalysisError(RuntimeError):
    """A post-processing step could not produce a well-defined result."""


class NoInteriorMaximumError(AnalysisError):
    """t23 has no positive maximum inside the scan window."""


@dataclass(frozen=True)
class ShearMaximum:
    """Peak of the total shear stress ahead of the tip (normalized)."""

    t23_max: float
    X_max: float
    X0: float


@dataclass(frozen=True)
class ScanWindow:
    """Coordinate window and grid density for the t23 scan.

    The default window [1e-3, 20]*ell brackets all documented structure
    (the near-tip zone stays within a few ell).  Shrinking x_min below 1e-3
    trades accuracy for cost near the stress singularity.
    """

    x_min: float = 1e-3
    x_max: float = 20.0
    n_coarse: int = 200

    def grid(self):
        return np.geomspace(self.x_min, self.x_max, self.n_coarse)


@dataclass(frozen=True)
class SweepRecord:
    """One sweep point: parameter value, result or failure, diagnostics."""

    param: str
    value: float
    maximum: ShearMaximum | None
    ok: bool
    message: str = ""

    @property
    def failed(self) -> bool:
        return not self.ok


@dataclass(frozen=True)
class StabilityReport:
    """Pointwise stability labels along an m-sweep.

    ``stable[i]`` is True where d t23_max / d m < 0 (centered differences,
    one-sided at the ends).  ``intervals`` lists maximal runs as
    (m_start, m_end, 'stable'|'unstable').
    """

    m: tuple
    t23_max: tuple
    stable: tuple
    intervals: tuple


def locate_max_shear(
    fields: CrackLineFields,
    window: ScanWindow = ScanWindow(),
    *,
    x0_tol: float = 1e-6,
    refine_rel: float = 1e-4,
) -> ShearMaximum:
    """Locate the negative-zone size and the shear maximum beyond it.

    Coarse log-grid scan, bisection for the sign change (to ``x0_tol`` in
    X/ell), golden-section refinement of the maximum (to ``refine_rel``
    relative bracket width).  When the whole window is positive the
    negative zone is below resolution and X0 = 0 is reported; when it is
    entirely negative there is no interior maximum and an error is raised.

    The coarse scan runs at a lighter tolerance than the scalar
    refinements; it only brackets the root and the maximum.
    """
    xs = window.grid()
    tv = fields.total_shear_curve(xs, spec=QuadratureSpec(rel_tol=1e-5, abs_tol=1e-9))
    sign = np.sign(tv)
    crossings = np.where((sign[:-1] < 0) & (sign[1:] >= 0))[0]
    if len(crossings):
        lo, hi = xs[crossings[0]], xs[crossings[0] + 1]
        while hi - lo > x0_tol:
            mid = 0.5 * (lo + hi)
            if fields.total_shear(mid) < 0:
                lo = mid
            else:
                hi = mid
        X0 = float(0.5 * (lo + hi))
    elif np.all(tv > 0):
        X0 = 0.0
    else:
        raise NoInteriorMaximumError(
            f"t23 has no sign change and no positive values in [{window.x_min}, {window.x_max}]"
        )

    beyond = xs > X0
    if not np.any(beyond):
        raise NoInteriorMaximumError("negative zone fills the scan window")
    idx = np.flatnonzero(beyond)
    i_rel = int(np.argmax(tv[idx]))
    i = idx[i_rel]
    if i_rel == 0:
        # maximum at the window edge (singular-tip regime): report the edge
        return ShearMaximum(t23_max=float(tv[i]), X_max=float(xs[i]), X0=X0)
    lo = xs[i - 1] if i > 0 else xs[i]
    hi = xs[i + 1] if i + 1 < len(xs) else xs[i]
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc = fields.total_shear(c)
    fd = fields.total_shear(d)
    while b - a > refine_rel * max(1e-6, b):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fields.total_shear(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fields.total_shear(d)
    X_max = float(0.5 * (a + b))
    return ShearMaximum(t23_max=float(fields.total_shear(X_max)), X_max=X_max, X0=X0)


def _setup_with(base: ProblemSetup, param: str, value: float) -> ProblemSetup:
    mat = base.material
    if param == "m":
        return replace(base, m=float(value))
    if param == "eta":
        return replace(base, material=replace(mat, eta=float(value)))
    if param == "h0":
        J = 4.0 * mat.rho * (float(value) * mat.ell) ** 2
        return replace(base, material=replace(mat, J=J))
    raise ValueError(f"sweep parameter must be one of m, eta, h0; got {param!r}")


def _sweep_point(args):
    param, value, base, window, spec_kwargs = args
    try:
        setup = _setup_with(base, param, value)
        fields = solver_for(setup, **spec_kwargs)
        peak = locate_max_shear(fields, window)
        return SweepRecord(param=param, value=float(value), maximum=peak, ok=True)
    except (InadmissibleRegimeError, QuadratureError, AnalysisError, ValueError) as exc:
        return SweepRecord(param=param, value=float(value), maximum=None,
                           ok=False, message=f"{type(exc).__name__}: {exc}")


def sweep(
    param: str,
    values,
    base: ProblemSetup,
    *,
    window: ScanWindow = ScanWindow(),
    jobs: int = 1,
    spec: QuadratureSpec | None = None,
) -> list[SweepRecord]:
    """Evaluate the shear maximum along a parameter grid.

    Inadmissible or failed points are flagged in their records rather than
    dropped; records come back in grid order regardless of ``jobs``.
    """
    values = [float(v) for v in values]
    spec_kwargs = {"spec": spec} if spec is not None else {}
    tasks = [(param, v, base, window, spec_kwargs) for v in values]
    if jobs <= 1 or len(tasks) <= 1:
        return [_sweep_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks), os.cpu_count() or 1)) as pool:
        return list(pool.map(_sweep_point, tasks))


def critical_speed(
    base: ProblemSetup,
    tau_C: float,
    *,
    m_min: float = 1e-3,
    m_max: float | None = None,
    points: int = 25,
    tol: float = 1e-4,
    window: ScanWindow = ScanWindow(),
) -> float | None:
    """Smallest crack speed with t23_max(m) = tau_C, or None if never attained.

    Scans an m-grid for a bracket and bisects it; tau_C is in the same
    normalization as t23_max (stress times ell/T0).
    """
    if tau_C <= 0:
        raise ValueError("critical stress must be positive")
    from .model import subsonic_bound
    bound = subsonic_bound(base.material.h0)
    hi = bound - 1e-3 if m_max is None else m_max
    grid = np.linspace(m_min, hi, points)
    records = sweep("m", grid, base, window=window)
    vals = [(r.value, r.maximum.t23_max - tau_C) for r in records if r.ok]
    if len(vals) < 2:
        return None
    for (m0, f0), (m1, f1) in zip(vals[:-1], vals[1:]):
        if f0 == 0.0:
            return m0
        if f0 * f1 < 0:
            lo, hi_ = m0, m1
            while hi_ - lo > tol:
                mid = 0.5 * (lo + hi_)
                rec = _sweep_point(("m", mid, base, window, {}))
                if not rec.ok:
                    return None
                fm = rec.maximum.t23_max - tau_C
                if f0 * fm <= 0:
                    hi_ = mid
                else:
                    lo = mid
            return 0.5 * (lo + hi_)
    return None


def stability_report(records: list[SweepRecord]) -> StabilityReport:
    """Classify each point of an m-sweep as stable or unstable.

    Propagation is unstable where the shear maximum increases with crack
    speed.  Uses centered finite differences (one-sided at the ends) on
    the successful sweep points; requires at least three.
    """
    pts = [(r.value, r.maximum.t23_max) for r in records if r.ok]
    if len(pts) < 3:
        raise AnalysisError(f"stability needs >= 3 successful sweep points, got {len(pts)}")
    m = np.array([p[0] for p in pts])
    t = np.array([p[1] for p in pts])
    dt = np.gradient(t, m)
    stable = dt < 0.0
    intervals = []
    start = 0
    for i in range(1, len(m) + 1):
        if i == len(m) or stable[i] != stable[start]:
            intervals.append((float(m[start]), float(m[i - 1]),
                              "stable" if stable[start] else "unstable"))
            start = i
    return StabilityReport(
        m=tuple(float(v) for v in m),
        t23_max=tuple(float(v) for v in t),
        stable=tuple(bool(s) for s in stable),
        intervals=tuple(intervals),
    )
