#!/usr/bin/env python3
"""Crack-speed stability under the maximum-shear-stress criterion.

Sweeps the shear maximum over the crack speed for three microstructural
settings and labels stable/unstable ranges:

* (eta=0,    h0=0):   t23_max falls monotonically -> stable throughout;
* (eta=-0.9, h0=0.1): shallow fall, late rise near the wave speed;
* (eta=-0.9, h0=1):   strong rotational inertia -- the maximum explodes at
  a finite speed well below the shear wave speed (the near-tip coefficient
  1 - 2 h0^2 m^2 + eta changes sign), an unstable branch with a limit
  speed far below c_s.

Also solves the fracture criterion t23_max = tau_C for a critical speed.
"""

import os

import numpy as np

from cs_crack import MaterialParams, ProblemSetup, critical_speed, stability_report, sweep
from cs_crack.analysis import ScanWindow

OUT = os.path.join(os.path.dirname(__file__), "demo_output")
os.makedirs(OUT, exist_ok=True)

WINDOW = ScanWindow(x_min=1e-3, x_max=20.0, n_coarse=160)


def base_setup(eta, h0, m=0.1):
    mat = MaterialParams(G=1.0, rho=1.0, ell=1.0, eta=eta, J=4.0 * h0 * h0)
    return ProblemSetup(material=mat, m=m, T0=1.0, L=1.0)


CASES = [
    (0.0, 0.0, np.linspace(0.05, 0.95, 10)),
    (-0.9, 0.1, np.linspace(0.05, 0.99, 10)),
    (-0.9, 1.0, np.array([0.01, 0.1, 0.18, 0.22, 0.26, 0.30])),
]

rows = ["eta,h0,m,t23_max,X_max,X0,stable"]
for eta, h0, grid in CASES:
    records = sweep("m", grid, base_setup(eta, h0), window=WINDOW)
    rep = stability_report(records)
    print(f"\n(eta={eta}, h0={h0}):")
    for iv in rep.intervals:
        print(f"  m in [{iv[0]:.3f}, {iv[1]:.3f}]: {iv[2]}")
    flags = dict(zip(rep.m, rep.stable))
    for r in records:
        if r.ok:
            rows.append(
                f"{eta!r},{h0!r},{r.value!r},{r.maximum.t23_max!r},"
                f"{r.maximum.X_max!r},{r.maximum.X0!r},{int(flags[r.value])}"
            )
        else:
            rows.append(f"{eta!r},{h0!r},{r.value!r},nan,nan,nan,-1")

csv_path = os.path.join(OUT, "stability_sweeps.csv")
with open(csv_path, "w") as fh:
    fh.write("\n".join(rows) + "\n")
print(f"\nwrote {csv_path}")

# fracture criterion: the speed at which the shear maximum reaches a
# critical level ten times the slow-crack value (only the inertia-heavy
# branch ever gets there)
setup = base_setup(-0.9, 1.0)
records = sweep("m", [0.01], setup, window=WINDOW)
tau_c = 10.0 * records[0].maximum.t23_max
m_star = critical_speed(setup, tau_c, m_min=0.05, m_max=0.31, points=7,
                        tol=1e-3, window=WINDOW)
print(f"\ncritical speed for tau_C = {tau_c:.4f}: m* = {m_star:.4f}" if m_star
      else "\ncriterion level never reached")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for eta, h0, _ in CASES:
        pts = [(float(r[2]), float(r[3])) for r in
               (line.split(",") for line in rows[1:])
               if float(r[0]) == eta and float(r[1]) == h0 and r[3] != "nan"]
        arr = np.array(pts)
        ax.semilogy(arr[:, 0], arr[:, 1], "o-", label=f"$\\eta={eta}, h_0={h0}$")
    ax.set_xlabel("$m$")
    ax.set_ylabel(r"$t_{23}^{max}\,\ell/T_0$")
    ax.legend()
    ax.set_title("shear maximum versus crack speed")
    fig.tight_layout()
    png = os.path.join(OUT, "stability_sweeps.png")
    fig.savefig(png, dpi=150)
    print(f"wrote {png}")
except ImportError:
    print("matplotlib not installed; skipped the figure")
