"""Shear-wave dispersion in couple-stress media with rotational inertia.

Plane shear waves obey the quartic relation (in units of ell and c_s)

    k^4 + 2 (1 - omega^2 h0^2) k^2 - 2 omega^2 = 0,

whose propagating branch gives the phase speed.  The parameter h0 controls
the dispersive character: increasing phase speed for h0 < 1/sqrt(2),
non-dispersive exactly at h0 = 1/sqrt(2), decreasing beyond.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "phase_speed_of_frequency",
    "phase_speed_of_wavenumber",
    "dispersion_residual",
    "classify",
    "dispersion_curve",
]

_H0_STAR = 1.0 / math.sqrt(2.0)
_CLASSIFY_TOL = 1e-12


def phase_speed_of_frequency(omega, h0):
    """Normalized phase speed c~/c_s at normalized radian frequency omega*ell/c_s.

    Parameters
    ----------
    omega : array_like
        Non-negative normalized frequency.
    h0 : float
        Rotational-inertia ratio.

    Returns
    -------
    ndarray or float
        c~/c_s; tends to 1 as omega -> 0 and to 1/(sqrt(2) h0) as
        omega -> inf for h0 > 0.
    """
    w2 = np.square(np.asarray(omega, dtype=float))
    a = 1.0 - w2 * h0 * h0
    c2 = 0.5 * (a + np.sqrt(a * a + 2.0 * w2))
    out = np.sqrt(c2)
    return out if out.ndim else float(out)

def phase_speed_of_wavenumber(k, h0):
    """Normalized phase speed at normalized wavenumber k*ell (k > 0).

    c~^2/c_s^2 = (k^2 + 2) / (2 (k^2 h0^2 + 1)).
    """
    k2 = np.square(np.asarray(k, dtype=float))
    out = np.sqrt(0.5 * (k2 + 2.0) / (k2 * h0 * h0 + 1.0))
    return out if out.ndim else float(out)

def dispersion_residual(k, omega, h0):
    """Residual of the dispersion quartic; zero iff (k, omega) is on the curve."""
    k = np.asarray(k, dtype=float)
    w2 = np.square(np.asarray(omega, dtype=float))
    out = k**4 + 2.0 * (1.0 - w2 * h0 * h0) * k * k - 2.0 * w2
    return out if out.ndim else float(out)

def classify(h0: float) -> str:
    """Dispersive character: 'increasing', 'nondispersive' or 'decreasing'.

    The boundary h0 = 1/sqrt(2) is exact in the model; it is detected with
    an absolute tolerance of 1e-12.
    """
    if abs(h0 - _H0_STAR) <= _CLASSIFY_TOL:
        return "nondispersive"
    return "increasing" if h0 < _H0_STAR else "decreasing"

def dispersion_curve(h0: float, omega_max: float, points: int):
    """Sample (omega, c~) on a uniform frequency grid for CSV emission."""
    if points < 2:
        raise ValueError("need at least 2 points")
    omega = np.linspace(0.0, omega_max, points)
    return omega, phase_speed_of_frequency(omega, h0)
