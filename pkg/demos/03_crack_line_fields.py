#!/usr/bin/env python3
"""Crack-line fields for a steadily moving crack.

Reconstructs every field along the crack line for a few crack speeds:
total/symmetric/skew shear stress and couple stress ahead of the tip, the
opening profile behind it.  Demonstrates the near-tip structure - the
negative total-shear zone of size X0, the bounded positive maximum beyond
it - and the internal consistency relation p3 = t23 + mu22'/2.
"""

import os

import numpy as np

from cs_crack import MaterialParams, ProblemSetup, locate_max_shear, solver_for

OUT = os.path.join(os.path.dirname(__file__), "demo_output")
os.makedirs(OUT, exist_ok=True)

ETA, H0 = 0.0, 0.0
SPEEDS = [0.01, 0.5, 0.99]
xs = np.geomspace(0.01, 10.0, 120)

rows = ["m,field,X_over_ell,value"]
for m in SPEEDS:
    mat = MaterialParams(G=1.0, rho=1.0, ell=1.0, eta=ETA, J=4.0 * H0 * H0)
    solver = solver_for(ProblemSetup(material=mat, m=m, T0=1.0, L=1.0))

    peak = locate_max_shear(solver)
    print(f"m = {m}:")
    print(f"  negative zone X0     = {peak.X0:.4f} ell")
    print(f"  shear maximum        = {peak.t23_max:.6f} at X = {peak.X_max:.4f} ell")

    h = 1e-3
    x_probe = 1.0
    dmu = (solver.mu22(x_probe + h) - solver.mu22(x_probe - h)) / (2 * h)
    p3 = solver.traction_ahead(x_probe)
    t23 = solver.total_shear(x_probe)
    print(f"  traction identity at X = 1: p3 = {p3:.6f} vs t23 + mu22'/2 = {t23 + 0.5 * dmu:.6f}")

    for what in ("t23", "sigma23", "tau23", "mu22"):
        for s in solver.samples(what, xs):
            rows.append(f"{m!r},{what},{s.X!r},{s.value!r}")
    for s in solver.samples("w", -xs):
        rows.append(f"{m!r},w,{s.X!r},{s.value!r}")

csv_path = os.path.join(OUT, "crack_line_fields.csv")
with open(csv_path, "w") as fh:
    fh.write("\n".join(rows) + "\n")
print(f"\nwrote {csv_path}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    data = {}
    for line in rows[1:]:
        m, what, x, v = line.split(",")
        data.setdefault((float(m), what), []).append((float(x), float(v)))
    fig, axes = plt.subplots(2, 2, figsize=(9, 7), sharex=True)
    for ax, what, label in zip(
        axes.ravel(),
        ("t23", "sigma23", "tau23", "mu22"),
        (r"$t_{23}\ell/T_0$", r"$\sigma_{23}\ell/T_0$",
         r"$\tau_{23}\ell/T_0$", r"$\mu_{22}/T_0$"),
    ):
        for m in SPEEDS:
            arr = np.array(data[(m, what)])
            ax.plot(arr[:, 0], arr[:, 1], label=f"$m={m}$")
        ax.set_xlim(0, 5)
        ax.set_ylabel(label)
        ax.axhline(0.0, color="k", lw=0.5)
    for ax in axes[1]:
        ax.set_xlabel(r"$X/\ell$")
    axes[0, 0].legend()
    fig.tight_layout()
    png = os.path.join(OUT, "crack_line_fields.png")
    fig.savefig(png, dpi=150)
    print(f"wrote {png}")
except ImportError:
    print("matplotlib not installed; skipped the figure")
