"""Command-line front end: config handling, subcommands, CSV emission.

Subcommands
-----------
dispersion   normalized phase-speed curve c~(omega) for one h0
fields       one crack-line field on an X/ell grid
profile      crack-face opening profile (optionally at height y > 0)
sweep        shear-maximum sweep over m, eta or h0
stability    m-sweep with pointwise stability labels
preset       canned parameter grids (multi-curve CSV bundles)

Physical inputs are SI (config keys G, rho, ell, eta, J, m, T0, L, plus the
convenience key h0 which sets J = 4 rho (h0 ell)^2); every emitted number
is normalized (lengths by ell, stresses by T0/ell, displacements by T0/G,
speeds by c_s).  Numbers are written with full round-trip precision, so a
given config reproduces byte-identical CSV files.

Exit status: 0 success, 1 computation failure (the diagnostic names the
failing stage: validation | factorization | inversion | analysis), 2 usage.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import analysis, dispersion
from .fields import FIELD_NAMES, CrackLineFields, solver_for
from .kernel import InadmissibleRegimeError
from .model import InvalidParameterError, MaterialParams, ProblemSetup, validate
from .quadrature import QuadratureError, QuadratureSpec

__all__ = ["main", "RunConfig", "build_preset", "PRESETS"]

PRESETS = ("dispersion", "speed-grid", "inertia-grid", "stability-map")

_MATERIAL_KEYS = ("G", "rho", "ell", "eta", "J", "m", "T0", "L", "h0")


class StageError(RuntimeError):
    """Computation failure tagged with the pipeline stage that raised it."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
        self.stage = stage


@dataclass
class RunConfig:
    """Validated inputs of one CLI invocation."""

    setup: ProblemSetup
    quad: QuadratureSpec
    jobs: int = 1
    out: str | None = None
    options: dict = field(default_factory=dict)


def _parse_config_file(path: str) -> dict:
    """Flat key = value format; [section] prefixes keys with 'section.'."""
    values: dict[str, str] = {}
    section = ""
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1].strip()
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            values[f"{section}.{key}" if section else key] = val
    return values


def _resolve_config(args) -> RunConfig:
    """Merge config-file values and CLI flags into one validated RunConfig."""
    cfg: dict[str, str] = {}
    if getattr(args, "config", None):
        cfg = _parse_config_file(args.config)

    def pick(key, default):
        flag = getattr(args, key, None)
        if flag is not None:
            return float(flag)
        if key in cfg:
            return float(cfg[key])
        return default

    material_kwargs = dict(
        G=pick("G", 1.0), rho=pick("rho", 1.0), ell=pick("ell", 1.0),
        eta=pick("eta", 0.0), J=pick("J", 0.0),
    )
    h0 = pick("h0", None)
    if h0 is not None:
        material_kwargs["J"] = 4.0 * material_kwargs["rho"] * (h0 * material_kwargs["ell"]) ** 2
    material = MaterialParams(**material_kwargs)
    setup = ProblemSetup(
        material=material,
        m=pick("m", 0.0),
        T0=pick("T0", 1.0),
        L=pick("L", material.ell),
    )
    def pick_quad(flag_name, cfg_key, default):
        flag = getattr(args, flag_name, None)
        if flag is not None:
            return float(flag)
        if cfg_key in cfg:
            return float(cfg[cfg_key])
        return default

    quad = QuadratureSpec(
        rel_tol=pick_quad("rel_tol", "quad.rel_tol", 1e-6),
        abs_tol=pick_quad("abs_tol", "quad.abs_tol", 1e-10),
        truncation=pick_quad("truncation", "quad.truncation", None),
    )
    consumed = set(_MATERIAL_KEYS) | {
        "config", "rel_tol", "abs_tol", "truncation", "jobs", "out", "func", "command",
    }
    return RunConfig(
        setup=setup,
        quad=quad,
        jobs=int(getattr(args, "jobs", 1) or 1),
        out=getattr(args, "out", None),
        options={k: v for k, v in vars(args).items() if k not in consumed},
    )


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(float(v))
    return str(v)


def _write_csv(path: str | None, header: list[str], rows) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _write_plot_script(csv_path: str | None, script_path: str, xcol: str, ycol: str, title: str):
    src = csv_path if csv_path else "data.csv"
    body = (
        "import matplotlib.pyplot as plt\n"
        "import numpy as np\n"
        f"data = np.genfromtxt({src!r}, delimiter=',', names=True)\n"
        f"plt.plot(data[{xcol!r}], data[{ycol!r}])\n"
        f"plt.xlabel({xcol!r}); plt.ylabel({ycol!r}); plt.title({title!r})\n"
        "plt.show()\n"
    )
    with open(script_path, "w", encoding="utf-8") as fh:
        fh.write(body)


def _build_solver(setup: ProblemSetup, quad: QuadratureSpec) -> CrackLineFields:
    report = validate(setup)
    if not report.admissible:
        raise StageError("validation", InadmissibleRegimeError(
            f"setup not admissible: subsonic={report.subsonic} "
            f"(bound {report.subsonic_bound:.6g}), upsilon={report.upsilon:.6g}"
        ))
    try:
        return solver_for(setup, spec=quad)
    except (QuadratureError, ValueError) as exc:
        raise StageError("factorization", exc) from exc


def _grid(args) -> np.ndarray:
    if args.points < 2:
        raise StageError("validation", ValueError("need at least 2 points"))
    if getattr(args, "log_x", False):
        if args.x_min <= 0:
            raise StageError("validation", ValueError("--log-x needs positive --x-min"))
        return np.geomspace(args.x_min, args.x_max, args.points)
    return np.linspace(args.x_min, args.x_max, args.points)


# ---------------------------------------------------------------------------
# subcommand bodies


def _cmd_dispersion(args) -> int:
    h0 = args.h0
    if h0 is None or h0 < 0:
        raise StageError("validation", ValueError("dispersion requires --h0 >= 0"))
    omega, c = dispersion.dispersion_curve(h0, args.omega_max, args.points)
    _write_csv(args.out, ["omega", "c_tilde"], zip(omega.tolist(), np.asarray(c).tolist()))
    if args.plot_script:
        _write_plot_script(args.out, args.plot_script, "omega", "c_tilde",
                           f"phase speed, h0={h0}")
    return 0


def _cmd_fields(args) -> int:
    run = _resolve_config(args)
    solver = _build_solver(run.setup, run.quad)
    xs = _grid(args)
    if args.what == "w":
        xs = -xs  # opening lives on the crack face
    try:
        samples = solver.samples(args.what, xs)
    except QuadratureError as exc:
        raise StageError("inversion", exc) from exc
    _write_csv(run.out, ["X_over_ell", "value", "imag_residual"],
               ((s.X, s.value, s.imag_residual) for s in samples))
    if args.plot_script:
        _write_plot_script(run.out, args.plot_script, "X_over_ell", "value", args.what)
    return 0


def _cmd_profile(args) -> int:
    run = _resolve_config(args)
    solver = _build_solver(run.setup, run.quad)
    xs = -_grid(args)
    try:
        if args.y and args.y > 0:
            samples = [solver.halfplane_sample(float(x), args.y) for x in xs]
        else:
            samples = solver.samples("w", xs)
        rows = [(s.X, s.value, s.imag_residual) for s in samples]
    except QuadratureError as exc:
        raise StageError("inversion", exc) from exc
    _write_csv(run.out, ["X_over_ell", "w", "imag_residual"], rows)
    return 0


def _sweep_rows(records, with_flags):
    flags = [""] * len(records)
    if with_flags:
        try:
            rep = analysis.stability_report(records)
            by_m = dict(zip(rep.m, rep.stable))
            flags = [("stable" if by_m[r.value] else "unstable") if r.ok and r.value in by_m
                     else "failed" for r in records]
        except analysis.AnalysisError:
            flags = ["" if r.ok else "failed" for r in records]
    else:
        flags = ["" if r.ok else "failed" for r in records]
    for rec, flag in zip(records, flags):
        if rec.ok:
            yield (rec.value, rec.maximum.t23_max, rec.maximum.X_max, rec.maximum.X0, flag)
        else:
            yield (rec.value, "nan", "nan", "nan", flag or "failed")


def _cmd_sweep(args) -> int:
    run = _resolve_config(args)
    values = np.linspace(getattr(args, "from"), args.to, args.points)
    try:
        records = analysis.sweep(args.param, values, run.setup,
                                 jobs=run.jobs, spec=run.quad)
    except analysis.AnalysisError as exc:
        raise StageError("analysis", exc) from exc
    _write_csv(run.out, ["param", "t23_max", "X_max", "X0", "stable_flag"],
               _sweep_rows(records, with_flags=(args.param == "m")))
    return 0


def _cmd_stability(args) -> int:
    run = _resolve_config(args)
    from .model import subsonic_bound
    m_max = (args.m_max if args.m_max is not None
             else subsonic_bound(run.setup.material.h0) - 1e-3)
    values = np.linspace(args.m_min, m_max, args.points)
    try:
        records = analysis.sweep("m", values, run.setup,
                                 jobs=run.jobs, spec=run.quad)
        rows = list(_sweep_rows(records, with_flags=True))
    except analysis.AnalysisError as exc:
        raise StageError("analysis", exc) from exc
    _write_csv(run.out, ["param", "t23_max", "X_max", "X0", "stable_flag"], rows)
    return 0


def build_preset(name: str) -> dict:
    """Fully specified parameter grids for the canned figure-style runs."""
    if name == "dispersion":
        return {
            "kind": "dispersion",
            "h0": [0.0, 0.3, 1.0 / math.sqrt(2.0), 1.0, 2.0],
            "omega_max": 20.0,
            "points": 400,
        }
    if name == "speed-grid":
        return {
            "kind": "fields",
            "eta": [-0.9, 0.0, 0.9],
            "m": [0.01, 0.5, 0.99],
            "h0": [0.0],
            "what": ["t23", "sigma23", "tau23", "mu22", "w"],
            "x_min": 0.01, "x_max": 10.0, "points": 80,
        }
    if name == "inertia-grid":
        return {
            "kind": "fields",
            "eta": [-0.9, 0.0, 0.9],
            "m": [0.8],
            "h0": [0.0, 0.2, 0.35],
            "what": ["t23", "sigma23", "tau23", "mu22", "w"],
            "x_min": 0.01, "x_max": 10.0, "points": 80,
        }
    if name == "stability-map":
        return {
            "kind": "stability",
            "eta": [-0.9, 0.0, 0.9],
            "h0": [0.1, 0.5, 1.0],
            "points": 12,
        }
    raise ValueError(f"unknown preset {name!r}; choose from {PRESETS}")


def _cmd_preset(args) -> int:
    spec = build_preset(args.name)
    out_dir = args.out_dir or "."
    os.makedirs(out_dir, exist_ok=True)
    quad = QuadratureSpec(rel_tol=1e-6, abs_tol=1e-10)

    if spec["kind"] == "dispersion":
        rows = []
        for h0 in spec["h0"]:
            omega, c = dispersion.dispersion_curve(h0, spec["omega_max"], spec["points"])
            rows += [(h0, o, cv) for o, cv in zip(omega.tolist(), np.asarray(c).tolist())]
        _write_csv(os.path.join(out_dir, "dispersion.csv"), ["h0", "omega", "c_tilde"], rows)
        return 0

    if spec["kind"] == "fields":
        xs = np.geomspace(spec["x_min"], spec["x_max"], spec["points"])
        per_field: dict[str, list] = {w: [] for w in spec["what"]}
        for eta in spec["eta"]:
            for m in spec["m"]:
                for h0 in spec["h0"]:
                    mat = MaterialParams(G=1.0, rho=1.0, ell=1.0, eta=eta, J=4.0 * h0 * h0)
                    setup = ProblemSetup(material=mat, m=m, T0=1.0, L=1.0)
                    if not validate(setup).admissible:
                        print(f"# skipping inadmissible point eta={eta} m={m} h0={h0}",
                              file=sys.stderr)
                        continue
                    solver = _build_solver(setup, quad)
                    for what in spec["what"]:
                        grid = -xs if what == "w" else xs
                        for s in solver.samples(what, grid):
                            per_field[what].append((eta, m, h0, s.X, s.value, s.imag_residual))
        for what, rows in per_field.items():
            _write_csv(os.path.join(out_dir, f"{what}.csv"),
                       ["eta", "m", "h0", "X_over_ell", "value", "imag_residual"], rows)
        return 0

    # stability map
    rows = []
    for eta in spec["eta"]:
        for h0 in spec["h0"]:
            mat = MaterialParams(G=1.0, rho=1.0, ell=1.0, eta=eta, J=4.0 * h0 * h0)
            setup = ProblemSetup(material=mat, m=0.01, T0=1.0, L=1.0)
            from .model import subsonic_bound
            values = np.linspace(0.01, subsonic_bound(h0) - 1e-3, spec["points"])
            records = analysis.sweep("m", values, setup, jobs=args.jobs)
            for row in _sweep_rows(records, with_flags=True):
                rows.append((eta, h0) + row)
    _write_csv(os.path.join(out_dir, "stability_map.csv"),
               ["eta", "h0", "param", "t23_max", "X_max", "X0", "stable_flag"], rows)
    return 0


# ---------------------------------------------------------------------------


def _add_setup_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("problem setup (SI; defaults G=rho=ell=T0=1, L=ell)")
    for key in _MATERIAL_KEYS:
        g.add_argument(f"--{key}", type=float, default=None)
    g.add_argument("--config", type=str, default=None,
                   help="key = value file; flags override file values")
    q = p.add_argument_group("quadrature")
    q.add_argument("--rel-tol", type=float, default=None, dest="rel_tol")
    q.add_argument("--abs-tol", type=float, default=None, dest="abs_tol")
    q.add_argument("--truncation", type=float, default=None)


def _make_parser() -> argparse.ArgumentParser:
    jobs_default = int(os.environ.get("CS_CRACK_JOBS", "1"))
    p = argparse.ArgumentParser(
        prog="cs-crack",
        description="Steady antiplane crack propagation in couple-stress media",
    )
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dispersion", help="phase-speed curve c~(omega)")
    d.add_argument("--h0", type=float, required=True)
    d.add_argument("--omega-max", type=float, default=10.0)
    d.add_argument("--points", type=int, default=200)
    d.add_argument("--out", type=str, default=None)
    d.add_argument("--plot-script", type=str, default=None)
    d.set_defaults(func=_cmd_dispersion)

    f = sub.add_parser("fields", help="one crack-line field on an X/ell grid")
    f.add_argument("--what", choices=FIELD_NAMES, required=True)
    f.add_argument("--x-min", type=float, default=1e-3)
    f.add_argument("--x-max", type=float, default=10.0)
    f.add_argument("--points", type=int, default=100)
    f.add_argument("--log-x", action="store_true")
    f.add_argument("--out", type=str, default=None)
    f.add_argument("--plot-script", type=str, default=None)
    _add_setup_flags(f)
    f.set_defaults(func=_cmd_fields)

    pr = sub.add_parser("profile", help="crack-face opening profile")
    pr.add_argument("--x-min", type=float, default=1e-3)
    pr.add_argument("--x-max", type=float, default=10.0)
    pr.add_argument("--points", type=int, default=100)
    pr.add_argument("--log-x", action="store_true")
    pr.add_argument("--y", type=float, default=0.0,
                    help="evaluate at height y/ell above the crack line")
    pr.add_argument("--out", type=str, default=None)
    _add_setup_flags(pr)
    pr.set_defaults(func=_cmd_profile)

    s = sub.add_parser("sweep", help="shear-maximum sweep over m, eta or h0")
    s.add_argument("--param", choices=("m", "eta", "h0"), required=True)
    s.add_argument("--from", type=float, required=True)
    s.add_argument("--to", type=float, required=True)
    s.add_argument("--points", type=int, default=10)
    s.add_argument("--jobs", type=int, default=jobs_default)
    s.add_argument("--out", type=str, default=None)
    _add_setup_flags(s)
    s.set_defaults(func=_cmd_sweep)

    st = sub.add_parser("stability", help="m-sweep with stability labels")
    st.add_argument("--m-min", type=float, default=0.01)
    st.add_argument("--m-max", type=float, default=None)
    st.add_argument("--points", type=int, default=12)
    st.add_argument("--jobs", type=int, default=jobs_default)
    st.add_argument("--out", type=str, default=None)
    _add_setup_flags(st)
    st.set_defaults(func=_cmd_stability)

    pre = sub.add_parser("preset", help="canned parameter grids")
    pre.add_argument("--name", choices=PRESETS, required=True)
    pre.add_argument("--out-dir", type=str, default=None)
    pre.add_argument("--jobs", type=int, default=jobs_default)
    pre.set_defaults(func=_cmd_preset)
    return p


def main(argv=None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StageError as exc:
        print(f"cs-crack: {exc}", file=sys.stderr)
        return 1
    except (InvalidParameterError, InadmissibleRegimeError) as exc:
        print(f"cs-crack: [validation] {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except QuadratureError as exc:
        print(f"cs-crack: [inversion] {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except analysis.AnalysisError as exc:
        print(f"cs-crack: [analysis] {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"cs-crack: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
