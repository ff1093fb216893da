"""Material parameters, derived constants, and admissibility checks.

Couple-stress antiplane elasticity is parametrized by the shear modulus G,
mass density rho, the characteristic length ``ell``, the torsion/bending
ratio ``eta`` in (-1, 1), and the rotational inertia J >= 0.  All field
computations run on the dimensionless group (m, h0, eta, L/ell):

* ``m``  -- crack speed over the classical shear wave speed c_s,
* ``h0`` -- rotational-inertia length h = sqrt(J / (4 rho)) over ``ell``,
* ``L``  -- decay length of the exponential face loading.

Lengths are measured in units of ``ell``, stresses in T0/ell, displacements
in T0/G and speeds in c_s throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import dispersion

__all__ = [
    "InvalidParameterError",
    "MaterialParams",
    "DerivedConstants",
    "ProblemSetup",
    "RegimeReport",
    "derive_constants",
    "subsonic_bound",
    "upsilon",
    "validate",
    "regime_report",
]

SQRT2_INV = 1.0 / math.sqrt(2.0)


class InvalidParameterError(ValueError):
    """A physical parameter violates its admissible range."""


@dataclass(frozen=True)
class MaterialParams:
    """Couple-stress material constants (SI units).

    Parameters
    ----------
    G : float
        Shear modulus [Pa].
    rho : float
        Mass density [kg/m^3].
    ell : float
        Couple-stress characteristic length [m].
    eta : float
        Torsion/bending ratio, -1 < eta < 1.  eta = -1 (vanishing torsion
        length) is excluded; the solution family degenerates there.
    J : float, optional
        Rotational inertia [kg/m].  J = 0 switches off micro-inertia and is
        represented exactly (h0 = 0).
    """

    G: float
    rho: float
    ell: float
    eta: float
    J: float = 0.0

    def __post_init__(self):
        if not (self.G > 0):
            raise InvalidParameterError(f"shear modulus must be positive, got G={self.G}")
        if not (self.rho > 0):
            raise InvalidParameterError(f"density must be positive, got rho={self.rho}")
        if not (self.ell > 0):
            raise InvalidParameterError(f"characteristic length must be positive, got ell={self.ell}")
        if not (-1.0 < self.eta < 1.0):
            raise InvalidParameterError(
                f"torsion/bending ratio must satisfy -1 < eta < 1 (eta = -1 excluded), got eta={self.eta}"
            )
        if self.J < 0:
            raise InvalidParameterError(f"rotational inertia must be non-negative, got J={self.J}")

    @property
    def c_s(self) -> float:
        """Classical shear wave speed sqrt(G/rho)."""
        return math.sqrt(self.G / self.rho)

    @property
    def h(self) -> float:
        """Micro-inertia length c_s/theta = sqrt(J/(4 rho)); zero iff J = 0."""
        return math.sqrt(self.J / (4.0 * self.rho))

    @property
    def h0(self) -> float:
        """Dimensionless rotational-inertia ratio h/ell."""
        return self.h / self.ell

    @property
    def ell_b(self) -> float:
        """Characteristic length in bending, ell/sqrt(2)."""
        return self.ell / math.sqrt(2.0)

    @property
    def ell_t(self) -> float:
        """Characteristic length in torsion, ell*sqrt(1+eta)."""
        return self.ell * math.sqrt(1.0 + self.eta)


@dataclass(frozen=True)
class DerivedConstants:
    """Derived material constants; see :func:`derive_constants`."""

    c_s: float
    h: float
    h0: float
    ell_b: float
    ell_t: float


def derive_constants(material: MaterialParams) -> DerivedConstants:
    """Compute the derived constant set {c_s, h, h0, ell_b, ell_t}.

    Raises
    ------
    InvalidParameterError
        If the material violates its invariants (checked at construction,
        re-raised here for defensive use with duck-typed inputs).
    """
    if not isinstance(material, MaterialParams):
        material = MaterialParams(material.G, material.rho, material.ell, material.eta, material.J)
    return DerivedConstants(
        c_s=material.c_s,
        h=material.h,
        h0=material.h0,
        ell_b=material.ell_b,
        ell_t=material.ell_t,
    )


def subsonic_bound(h0: float) -> float:
    """Upper bound of the admissible crack speed ratio, min{1, 1/(sqrt(2) h0)}.

    For h0 <= 1/sqrt(2) the bound is the classical value 1; beyond it the
    high-frequency shear wave speed c_s/(sqrt(2) h0) limits the motion.
    """
    if h0 < 0:
        raise InvalidParameterError(f"h0 must be non-negative, got {h0}")
    if h0 == 0.0:
        return 1.0
    return min(1.0, 1.0 / (math.sqrt(2.0) * h0))


def upsilon(eta: float, hm: float) -> float:
    """Leading cubic-growth coefficient of the Wiener-Hopf kernel numerator.

    ``hm`` is the product h0*m.  Admissible steady states require the value
    to be positive; the region where it is <= 0 is rejected upstream.

    Raises
    ------
    InvalidParameterError
        If hm >= 1/sqrt(2) (the inner square root turns imaginary).
    """
    q = hm * hm
    if 2.0 * q >= 1.0:
        raise InvalidParameterError(
            f"h0*m must be below 1/sqrt(2) for a real kernel, got {hm}"
        )
    s = math.sqrt(1.0 - 2.0 * q)
    return (1.0 - eta * eta - 2.0 * q + 2.0 * s * (1.0 + eta - q)) / (1.0 + s)


@dataclass(frozen=True)
class ProblemSetup:
    """A loaded, steadily moving crack configuration.

    Construction checks only basic sanity (T0 != 0, L > 0, m >= 0); regime
    admissibility (subsonic condition and positivity of the kernel growth
    coefficient) is reported by :func:`validate` so that inadmissible
    configurations can be inspected rather than rejected outright.
    Downstream solvers refuse inadmissible setups.
    """

    material: MaterialParams
    m: float
    T0: float
    L: float

    def __post_init__(self):
        if self.m < 0:
            raise InvalidParameterError(f"crack speed ratio must be non-negative, got m={self.m}")
        if self.T0 == 0:
            raise InvalidParameterError("load resultant T0 must be nonzero")
        if not (self.L > 0):
            raise InvalidParameterError(f"load decay length must be positive, got L={self.L}")

    @property
    def L_over_ell(self) -> float:
        return self.L / self.material.ell

    def normalized(self) -> tuple[float, float, float, float]:
        """Return the dimensionless driving group (m, h0, eta, L/ell)."""
        return (self.m, self.material.h0, self.material.eta, self.L_over_ell)


@dataclass(frozen=True)
class RegimeReport:
    """Outcome of the admissibility analysis of a setup."""

    subsonic: bool
    subsonic_bound: float
    upsilon: float
    admissible: bool
    dispersion_class: str


def regime_report(eta: float, h0: float, m: float) -> RegimeReport:
    """Classify a dimensionless configuration; never raises.

    ``admissible`` is true iff the motion is subsonic, -1 < eta < 1 and the
    kernel growth coefficient is positive.  When h0*m reaches the wave-speed
    bound the coefficient is reported as ``nan``.
    """
    bound = subsonic_bound(h0)
    subsonic = m < bound
    hm = h0 * m
    if 2.0 * hm * hm < 1.0:
        ups = upsilon(eta, hm)
    else:
        ups = float("nan")
    admissible = subsonic and (-1.0 < eta < 1.0) and (ups > 0.0)
    return RegimeReport(
        subsonic=subsonic,
        subsonic_bound=bound,
        upsilon=ups,
        admissible=admissible,
        dispersion_class=dispersion.classify(h0),
    )


def validate(setup: ProblemSetup) -> RegimeReport:
    """Validate a :class:`ProblemSetup`; pure function of its inputs."""
    return regime_report(setup.material.eta, setup.material.h0, setup.m)
