"""CSV and gnuplot artifact emission.

CSV convention: comma separated, one header row, %.9e numbers, LF line
endings. Plot output is a .dat/.gp pair per figure family; scripts are
deterministic (no timestamps) so re-emission is byte identical.
"""

from __future__ import annotations

import math
from pathlib import Path

from .errors import ConfigError

FMT = "%.9e"


def _fmt(x) -> str:
    return FMT % float(x)


def write_csv(path: Path, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def read_csv(path: Path, required=()):
    """Minimal reader for our own CSVs; checks required columns by name."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines:
        raise ConfigError(f"{path}: empty CSV")
    header = lines[0].split(",")
    missing = [c for c in required if c not in header]
    if missing:
        raise ConfigError(f"{path}: missing column(s) {missing}")
    rows = [[float(x) for x in ln.split(",")] for ln in lines[1:]]
    return header, rows


SUMMARY_COLUMNS = [
    "cycle", "Q_mean", "Q_peak", "Q_min", "lambda_cycle",
    "tau_peak", "tau_min", "tau_amplitude", "Nu_throat_mean", "Nu_max",
    "F_peak", "u_center_phase0", "theta_center_phase0", "theta_center_mean",
    "periodicity_defect",
]


def _summary_row(c):
    return [c.index, c.Q_mean, c.Q_peak, c.Q_min, c.lambda_cycle,
            c.tau_peak, c.tau_min, c.tau_amplitude, c.Nu_throat_mean, c.Nu_max,
            c.F_peak, c.u_center_phase0, c.theta_center_phase0,
            c.theta_center_mean, c.periodicity_defect]


def write_run_artifacts(result, out_dir: Path, resolved_config: str | None = None):
    """profiles.csv, timeseries.csv, axial.csv, summary.csv, report.txt."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if resolved_config is not None:
        (out_dir / "config_resolved.cfg").write_text(resolved_config)

    prof_rows = []
    for p in result.profiles:
        for j, x in enumerate(result.xi):
            prof_rows.append((p.phase, x, p.u[j], p.w[j], p.theta[j], p.F[j]))
    write_csv(out_dir / "profiles.csv",
              ["phase", "xi", "u", "w", "theta", "F"], prof_rows)

    write_csv(out_dir / "timeseries.csv",
              ["t", "T", "Q", "tau_w", "lambda_inst"], result.timeseries)

    axial_rows = list(zip(result.z, result.tau_peak_z, result.nu_mean_z))
    write_csv(out_dir / "axial.csv", ["z", "tau_w", "Nu"], axial_rows)

    write_csv(out_dir / "summary.csv", SUMMARY_COLUMNS,
              [_summary_row(c) for c in result.measured])

    report = [
        f"periodicity defect     : {result.defect:.6e}",
        f"stability margin used  : {result.stability_margin_used:.4f} (dt / dt_max)",
        f"measured cycles        : {len(result.measured)}",
        f"steps taken            : {result.state.step}",
        f"wall-clock seconds     : {result.walltime:.3f}",
        "",
    ]
    (out_dir / "report.txt").write_text("\n".join(report))


# ---------------------------------------------------------------------------
# gnuplot emission

# panel -> (title, xlabel, ylabel, source csv, x column, y column)
_RADIAL_PANELS = {
    "fig2a": ("axial velocity vs radius, Hartmann family", "u"),
    "fig2b": ("axial velocity vs radius, viscosity-ratio family", "u"),
    "fig2c": ("axial velocity vs radius, body-acceleration family", "u"),
    "fig3a": ("microrotation vs radius, viscosity-ratio family", "w"),
    "fig3b": ("microrotation vs radius, material-constant family", "w"),
    "fig3c": ("microrotation vs radius, constriction family", "w"),
    "fig4a": ("temperature vs radius", "theta"),
    "fig7a": ("fluid acceleration vs radius, body-acceleration family", "F"),
    "fig7b": ("fluid acceleration vs radius, Hartmann family", "F"),
}
_AXIAL_PANELS = {
    "fig4b": ("Nusselt number along the tube", "Nu"),
    "fig5a": ("wall shear stress along the tube", "tau_w"),
}
_TIME_PANELS = {
    "fig5b": ("wall shear stress vs time, Hartmann family", "tau_w"),
    "fig5c": ("wall shear stress vs time, body-acceleration family", "tau_w"),
    "fig5d": ("wall shear stress vs time, viscosity-ratio family", "tau_w"),
    "fig6a": ("flow rate vs time, Hartmann family", "Q"),
    "fig6b": ("flow rate vs time, viscosity-ratio family", "Q"),
    "fig6c": ("flow rate vs time, body-acceleration family", "Q"),
}
_SWEEP_PANELS = {
    "fig8a": ("flow resistance vs constriction depth, body-acceleration family",),
    "fig8b": ("flow resistance vs constriction depth, Hartmann family",),
    "fig8c": ("flow resistance vs constriction depth, viscosity-ratio family",),
}


def _gp_script(name, title, xlabel, ylabel, plot_clauses):
    lines = [
        f'set title "{title}"',
        f'set xlabel "{xlabel}"',
        f'set ylabel "{ylabel}"',
        "set key outside",
        f'set terminal pngcairo size 900,600',
        f'set output "{name}.png"',
        "plot " + ", \\\n     ".join(plot_clauses),
        "",
    ]
    return "\n".join(lines)


def _emit_radial(out, name, title, column, csv="profiles.csv"):
    header, rows = read_csv(out / csv, required=["phase", "xi", column])
    ci = {c: k for k, c in enumerate(header)}
    phases = sorted({r[ci["phase"]] for r in rows})
    dat = []
    for ph in phases:
        for r in rows:
            if r[ci["phase"]] == ph:
                dat.append((r[ci["xi"]], r[ci[column]], ph))
        dat.append(None)  # gnuplot blank-line block separator
    _write_dat(out / f"{name}.dat", ("xi", column, "phase"), dat)
    clauses = [
        f'"{name}.dat" index {k} using 1:2 with lines title "phase {ph:.3f}"'
        for k, ph in enumerate(phases)
    ]
    (out / f"{name}.gp").write_text(_gp_script(name, title, "xi", column, clauses))


def _write_dat(path, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write("# " + " ".join(header) + "\n")
        for row in rows:
            if row is None:
                fh.write("\n")
            else:
                fh.write(" ".join(_fmt(x) for x in row) + "\n")


def _emit_xy(out, name, title, csv, xcol, ycol, xlabel=None, ylabel=None):
    header, rows = read_csv(out / csv, required=[xcol, ycol])
    ci = {c: k for k, c in enumerate(header)}
    dat = [(r[ci[xcol]], r[ci[ycol]]) for r in rows]
    _write_dat(out / f"{name}.dat", (xcol, ycol), dat)
    clause = [f'"{name}.dat" using 1:2 with lines title "{ycol}"']
    (out / f"{name}.gp").write_text(
        _gp_script(name, title, xlabel or xcol, ylabel or ycol, clause))


def emit_plots(run_dir: Path) -> list[str]:
    """Write .dat/.gp pairs for every figure family supported by the artifacts.

    Returns the list of family names emitted. For a sweep directory the
    single-run families overlay all points and the resistance-vs-depth
    family is added when the sweep covers ``delta``.
    """
    run_dir = Path(run_dir)
    if (run_dir / "sweep_summary.csv").exists():
        return _emit_sweep_plots(run_dir)
    names = []
    for name, (title, col) in _RADIAL_PANELS.items():
        _emit_radial(run_dir, name, title, col)
        names.append(name)
    for name, (title, col) in _AXIAL_PANELS.items():
        _emit_xy(run_dir, name, title, "axial.csv", "z", col)
        names.append(name)
    for name, (title, col) in _TIME_PANELS.items():
        _emit_xy(run_dir, name, title, "timeseries.csv", "T", col)
        names.append(name)
    return sorted(names)


def _emit_sweep_plots(sweep_dir: Path) -> list[str]:
    header, rows = read_csv(sweep_dir / "sweep_summary.csv", required=["point"])
    ci = {c: k for k, c in enumerate(header)}
    points = [int(r[ci["point"]]) for r in rows]
    names = []

    swept = [c for c in header[1:] if c in
             ("delta", "Kr", "phi_r", "a0", "b", "phi_g", "Kbar", "Kp",
              "K", "J", "m", "alpha", "H", "Ec", "Pr", "f_p")]

    def point_dir(p):
        return sweep_dir / f"point_{p:03d}"

    def labels():
        out = []
        for r in rows:
            out.append(", ".join(f"{c}={r[ci[c]]:g}" for c in swept))
        return out

    labs = labels()
    for name, (title, col) in _RADIAL_PANELS.items():
        clauses = []
        for p, lab in zip(points, labs):
            sub = point_dir(p)
            if not (sub / "profiles.csv").exists():
                continue
            _emit_radial(sub, name, title, col)
            clauses.append(f'"point_{p:03d}/{name}.dat" index 0 using 1:2 '
                           f'with lines title "{lab}"')
        if clauses:
            (sweep_dir / f"{name}.gp").write_text(
                _gp_script(name, title, "xi", col, clauses))
            names.append(name)
    for name, (title, col) in {**_AXIAL_PANELS, **_TIME_PANELS}.items():
        csv, xcol = (("axial.csv", "z") if name in _AXIAL_PANELS
                     else ("timeseries.csv", "T"))
        clauses = []
        for p, lab in zip(points, labs):
            sub = point_dir(p)
            if not (sub / csv).exists():
                continue
            _emit_xy(sub, name, title, csv, xcol, col)
            clauses.append(f'"point_{p:03d}/{name}.dat" using 1:2 '
                           f'with lines title "{lab}"')
        if clauses:
            (sweep_dir / f"{name}.gp").write_text(
                _gp_script(name, title, xcol, col, clauses))
            names.append(name)

    if "delta" in swept and "lambda_cycle" in ci:
        others = [c for c in swept if c != "delta"]
        groups = {}
        for r in rows:
            key = tuple((c, r[ci[c]]) for c in others)
            groups.setdefault(key, []).append((r[ci["delta"]], r[ci["lambda_cycle"]]))
        dat = []
        keys = sorted(groups)
        for key in keys:
            for x, y in sorted(groups[key]):
                dat.append((x, y))
            dat.append(None)
        for name, (title,) in _SWEEP_PANELS.items():
            _write_dat(sweep_dir / f"{name}.dat", ("delta", "lambda_cycle"), dat)
            clauses = []
            for k, key in enumerate(keys):
                lab = ", ".join(f"{c}={v:g}" for c, v in key) or "sweep"
                clauses.append(f'"{name}.dat" index {k} using 1:2 '
                               f'with linespoints title "{lab}"')
            (sweep_dir / f"{name}.gp").write_text(
                _gp_script(name, title, "delta", "lambda", clauses))
            names.append(name)
    return sorted(names)
