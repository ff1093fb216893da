"""Steady-state antiplane (Mode III) crack propagation in couple-stress media.

The package solves, in closed analytical form plus quadrature, the steady
propagation of a semi-infinite crack under exponential face loading in an
elastic solid with couple stresses and rotational micro-inertia:

* :mod:`cs_crack.dispersion` -- shear-wave dispersion and regime classes;
* :mod:`cs_crack.model` -- parameters, derived constants, admissibility;
* :mod:`cs_crack.kernel` -- the functional-equation kernel on the real axis;
* :mod:`cs_crack.factorization` -- its multiplicative Wiener-Hopf split,
  the load constant Xi and the tip-closure constant F;
* :mod:`cs_crack.fields` -- crack-line stresses, couple stress, opening;
* :mod:`cs_crack.analysis` -- shear-stress maxima, sweeps, stability;
* :mod:`cs_crack.cli` -- the ``cs-crack`` command.

Quick start::

    from cs_crack import MaterialParams, ProblemSetup, solver_for

    mat = MaterialParams(G=1.0, rho=1.0, ell=1.0, eta=0.0, J=0.0)
    setup = ProblemSetup(material=mat, m=0.5, T0=1.0, L=1.0)
    fields = solver_for(setup)
    print(fields.total_shear(1.0))      # t23 * ell / T0 at X = ell
    print(fields.crack_opening(-1.0))   # w * G / T0 at X = -ell
"""

from .analysis import (
    ScanWindow,
    ShearMaximum,
    StabilityReport,
    SweepRecord,
    critical_speed,
    locate_max_shear,
    stability_report,
    sweep,
)
from .dispersion import (
    classify,
    dispersion_residual,
    phase_speed_of_frequency,
    phase_speed_of_wavenumber,
)
from .factorization import FactorizedKernel, liouville_F, split_sqrt_minus, split_sqrt_plus, xi_constant
from .fields import CrackLineFields, FieldSample, LoadProfile, solver_for
from .kernel import InadmissibleRegimeError, KernelContext
from .model import (
    DerivedConstants,
    InvalidParameterError,
    MaterialParams,
    ProblemSetup,
    RegimeReport,
    derive_constants,
    regime_report,
    subsonic_bound,
    upsilon,
    validate,
)
from .quadrature import (
    InversionResult,
    QuadratureError,
    QuadratureSpec,
    integrate_adaptive,
    oscillatory_inverse,
    principal_value,
)

__version__ = "0.1.0"

__all__ = [
    "MaterialParams",
    "DerivedConstants",
    "ProblemSetup",
    "RegimeReport",
    "derive_constants",
    "subsonic_bound",
    "upsilon",
    "validate",
    "regime_report",
    "InvalidParameterError",
    "InadmissibleRegimeError",
    "classify",
    "dispersion_residual",
    "phase_speed_of_frequency",
    "phase_speed_of_wavenumber",
    "KernelContext",
    "FactorizedKernel",
    "split_sqrt_plus",
    "split_sqrt_minus",
    "xi_constant",
    "liouville_F",
    "CrackLineFields",
    "FieldSample",
    "LoadProfile",
    "solver_for",
    "QuadratureSpec",
    "QuadratureError",
    "InversionResult",
    "integrate_adaptive",
    "principal_value",
    "oscillatory_inverse",
    "ShearMaximum",
    "SweepRecord",
    "StabilityReport",
    "ScanWindow",
    "locate_max_shear",
    "sweep",
    "critical_speed",
    "stability_report",
    "__version__",
]
