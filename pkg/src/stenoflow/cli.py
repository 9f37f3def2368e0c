"""Command-line interface.

Subcommands:
  run      --config FILE --out DIR     single simulation, CSV artifacts
  sweep    --config FILE --out DIR     one artifact set per sweep point
  validate                             oracle + invariant self-checks
  plot     --in DIR                    gnuplot .dat/.gp emission

Exit codes: 0 success, 1 configuration error, 2 solver divergence,
3 validation failure.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import reporting
from .config import format_config, parse_config, with_overrides
from .errors import ConfigError, DivergenceError
from .runner import run_simulation


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems map to the config exit code
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _load_config(path: str | None):
    text = Path(path).read_text() if path else ""
    return parse_config(text)


def _run_one(cfg, out_dir: Path):
    result = run_simulation(cfg.params, cfg.numerics, cadence=cfg.cadence)
    reporting.write_run_artifacts(result, out_dir,
                                  resolved_config=format_config(cfg))
    return result


def cmd_run(args) -> int:
    cfg = _load_config(args.config)
    result = _run_one(cfg, Path(args.out))
    s = result.summary
    print(f"run complete: {result.state.step} steps, "
          f"Q_mean = {s.Q_mean:.6g}, lambda = {s.lambda_cycle:.6g}, "
          f"defect = {result.defect:.3e}")
    print(f"artifacts in {args.out}")
    return 0


def _sweep_point(payload):
    """Worker entry: run one sweep point, return its summary row values."""
    cfg, overrides, out_dir = payload
    try:
        point_cfg = with_overrides(cfg, overrides)
        result = _run_one(point_cfg, out_dir)
        s = result.summary
        return ("ok", s.Q_mean, s.lambda_cycle, s.tau_peak, s.Nu_max,
                s.u_center_phase0)
    except (ConfigError, DivergenceError, RuntimeError) as exc:
        (Path(out_dir)).mkdir(parents=True, exist_ok=True)
        (Path(out_dir) / "error.txt").write_text(f"{type(exc).__name__}: {exc}\n")
        return ("error", float("nan"), float("nan"), float("nan"), float("nan"),
                float("nan"))


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "config_resolved.cfg").write_text(format_config(cfg))

    points = cfg.sweep_points()
    names = [name for name, _ in cfg.sweep]
    payloads = [(cfg, overrides, out / f"point_{k:03d}")
                for k, overrides in enumerate(points)]

    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            outcomes = list(pool.map(_sweep_point, payloads))
    else:
        outcomes = [_sweep_point(p) for p in payloads]

    header = (["point"] + names +
              ["Q_mean", "lambda_cycle", "tau_peak", "Nu_max", "u_center_phase0",
               "status"])
    lines = [",".join(header)]
    n_fail = 0
    for k, (overrides, outcome) in enumerate(zip(points, outcomes)):
        status, *vals = outcome
        n_fail += status != "ok"
        row = ([str(k)] + [reporting.FMT % overrides[n] for n in names]
               + [reporting.FMT % v for v in vals] + [status])
        lines.append(",".join(row))
    (out / "sweep_summary.csv").write_text("\n".join(lines) + "\n")
    print(f"sweep complete: {len(points)} points, {n_fail} failed; "
          f"summary in {out / 'sweep_summary.csv'}")
    return 0


def cmd_plot(args) -> int:
    names = reporting.emit_plots(Path(args.indir))
    print(f"emitted {len(names)} plot families: {', '.join(names)}")
    return 0


def cmd_validate(args) -> int:
    from .validate import run_validation

    ok = run_validation(verbose=True)
    return 0 if ok else 3


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="stenoflow",
                 description="pulsatile magneto-micropolar flow in a stenosed tube")
    sub = ap.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single simulation")
    p_run.add_argument("--config", help="key=value config file (defaults if omitted)")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="parameter sweep")
    p_sweep.add_argument("--config", help="config file with sweep_<name> keys")
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--workers", type=int, default=1,
                         help="concurrent sweep points (default 1)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_val = sub.add_parser("validate", help="oracle and invariant checks")
    p_val.set_defaults(func=cmd_validate)

    p_plot = sub.add_parser("plot", help="emit gnuplot files for an artifact dir")
    p_plot.add_argument("--in", dest="indir", required=True)
    p_plot.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except DivergenceError as exc:
        print(f"divergence: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
