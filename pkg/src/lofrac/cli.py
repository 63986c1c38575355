"""Command-line surface: probes, scans, maps and model fitting.

Commands emit deterministic CSV or JSON; function specs are passed as JSON
strings or file paths, thresholds and schedule come from a single JSON
config file.  Exit codes: 0 success, 2 validation error, 3 inconclusive
computation, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from . import directional, taylor
from .catalog import Kind, param_schema, spec_from_json
from .lfd import (
    InconclusiveLimitError,
    Side,
    Thresholds,
    WindowSchedule,
    critical_order,
    lfd_at,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INCONCLUSIVE = 3
EXIT_IO = 4


@dataclass(frozen=True)
class RunConfig:
    thresholds: Thresholds
    schedule: WindowSchedule
    output_format: str = "csv"
    output_path: str | None = None
    parallelism: int = 0


def _load_config(path: str | None) -> RunConfig:
    raw: dict = {}
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValueError("config file must hold a JSON object")
    th = raw.get("thresholds", {})
    sc = raw.get("schedule", {})
    fmt = raw.get("output_format", "csv")
    if fmt not in ("csv", "json"):
        raise ValueError(f"output_format must be 'csv' or 'json', got {fmt!r}")
    par = int(raw.get("parallelism", 0))
    if par < 0:
        raise ValueError(f"parallelism must be >= 0, got {par}")
    return RunConfig(
        thresholds=Thresholds(**th),
        schedule=WindowSchedule(**sc),
        output_format=fmt,
        output_path=raw.get("output_path"),
        parallelism=par,
    )


def _load_spec(text: str):
    text = text.strip()
    if text.startswith("{"):
        return spec_from_json(text)
    with open(text, "r", encoding="utf-8") as fh:
        return spec_from_json(json.load(fh))


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return f"{x:.17g}"


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _side(name: str) -> Side:
    return Side.Right if name.lower() == "right" else Side.Left


def _parse_pairs(text: str) -> list[tuple[float, float]]:
    """Parse 'x,y;x,y;...' into pairs."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'x,y' pairs separated by ';', got {chunk!r}")
        out.append((float(parts[0]), float(parts[1])))
    if not out:
        raise ValueError("no pairs given")
    return out


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def _cmd_catalog(args, cfg: RunConfig) -> int:
    if args.kind is not None:
        try:
            kind = Kind(args.kind)
        except ValueError:
            known = ", ".join(k.value for k in Kind)
            raise ValueError(f"unknown kind {args.kind!r}; known kinds: {known}")
        doc = {"kind": kind.value, "params": param_schema(kind)}
        _write_output(json.dumps(doc, indent=2), cfg.output_path)
        return EXIT_OK
    doc = {
        "kinds": [
            {"kind": k.value, "params": param_schema(k)} for k in Kind
        ],
        "spec_format": {"kind": "string", "params": "object", "arity": "int (optional)"},
    }
    _write_output(json.dumps(doc, indent=2), cfg.output_path)
    return EXIT_OK


def _record_text(record: dict, cfg: RunConfig) -> str:
    if cfg.output_format == "json":
        return json.dumps(record, indent=2)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    keys = [k for k in record if not isinstance(record[k], (list, dict))]
    writer.writerow(keys)
    writer.writerow(
        [_fmt(record[k]) if isinstance(record[k], float) else record[k] for k in keys]
    )
    return buf.getvalue()


def _cmd_lfd(args, cfg: RunConfig) -> int:
    spec = _load_spec(args.spec)
    est = lfd_at(spec, args.y, args.q, _side(args.side), cfg.schedule, cfg.thresholds)
    diag = est.diagnostics
    record = {
        "y": args.y,
        "q": args.q,
        "side": args.side,
        "classification": est.classification.value,
        "value": est.value,
        "sigma": diag.sigma,
        "r2": diag.r2,
        "windows": [
            {"delta": d, "value": v, "amplitude": a}
            for d, v, a in zip(diag.window_sizes, diag.values, diag.amplitudes)
        ],
    }
    _write_output(_record_text(record, cfg), cfg.output_path)
    return EXIT_OK


def _cmd_critical_order(args, cfg: RunConfig) -> int:
    spec = _load_spec(args.spec)
    est = critical_order(
        spec, args.y, _side(args.side), cfg.schedule, thresholds=cfg.thresholds
    )
    record = {
        "y": args.y,
        "side": args.side,
        "alpha": "inf" if est.is_infinite else est.alpha,
        "bracket": ["inf" if math.isinf(b) else b for b in est.bracket],
        "method": est.method.value,
        "per_q": [{"q": q, "estimate": e} for q, e in est.per_q_estimates],
    }
    _write_output(_record_text(record, cfg), cfg.output_path)
    return EXIT_OK


def _cmd_direction_map(args, cfg: RunConfig) -> int:
    spec = _load_spec(args.spec)
    if spec.arity != 2:
        raise ValueError("direction-map needs an arity-2 spec")
    grid = _parse_pairs(args.points)
    if args.directions is not None:
        dirs = _parse_pairs(args.directions)
    else:
        dirs = list(directional.direction_fan(args.fan))
    field = directional.critical_order_map(
        spec, grid, dirs,
        sched=cfg.schedule, thresholds=cfg.thresholds,
        workers=cfg.parallelism,
    )
    if field.failed_count == len(grid) * len(dirs):
        raise InconclusiveLimitError("every map entry failed")
    if cfg.output_format == "json":
        text = json.dumps(directional.field_to_json(field), indent=2)
    else:
        text = directional.field_to_csv(field)
    _write_output(text, cfg.output_path)
    return EXIT_OK


def _cmd_taylor_fit(args, cfg: RunConfig) -> int:
    spec = _load_spec(args.spec)
    a, b = args.interval
    pm = taylor.piecewise_scaling_approx(
        spec, (a, b), args.knots,
        sched=cfg.schedule, thresholds=cfg.thresholds,
        workers=cfg.parallelism,
    )
    doc = taylor.piecewise_to_json(pm)
    reports = []
    offsets = [args.report_offset * (k + 1) / 8.0 for k in range(8)]
    for knot, model in zip(pm.knots, pm.right_pieces):
        rep = taylor.remainder_profile(spec, model, offsets, cfg.thresholds)
        reports.append(
            {
                "y": knot,
                "offsets": list(rep.offsets),
                "residuals": list(rep.residuals),
                "decay_slope": rep.decay_slope,
                "exact": rep.exact,
            }
        )
    doc["reports"] = reports
    _write_output(json.dumps(doc, indent=2), cfg.output_path)
    return EXIT_OK


# --------------------------------------------------------------------------
# Entry point
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    # Global flags live on a parent so they work before or after the
    # subcommand; SUPPRESS keeps the subcommand parse from clobbering
    # values given up front.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON config file")
    common.add_argument("--output", default=argparse.SUPPRESS,
                        help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS,
                        help="parallel entries")

    parser = argparse.ArgumentParser(
        prog="lofrac",
        description="Local fractional derivatives, critical orders and "
        "fractional Taylor models.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common],
                       help="list catalog kinds and parameter schemas")
    p.add_argument("--kind", default=None)
    p.set_defaults(run=_cmd_catalog)

    p = sub.add_parser("lfd", parents=[common],
                       help="classify one local fractional derivative")
    p.add_argument("--spec", required=True, help="function spec (JSON string or path)")
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--side", choices=("right", "left"), default="right")
    p.set_defaults(run=_cmd_lfd)

    p = sub.add_parser("critical-order", parents=[common],
                       help="estimate the critical order at a point")
    p.add_argument("--spec", required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--side", choices=("right", "left"), default="right")
    p.set_defaults(run=_cmd_critical_order)

    p = sub.add_parser("direction-map", parents=[common],
                       help="critical orders over points x directions")
    p.add_argument("--spec", required=True)
    p.add_argument("--points", required=True, help="'x,y;x,y;...'")
    p.add_argument("--fan", type=int, default=8, help="evenly spaced direction count")
    p.add_argument("--directions", default=None, help="'dx,dy;...' (overrides --fan)")
    p.set_defaults(run=_cmd_direction_map)

    p = sub.add_parser("taylor-fit", parents=[common],
                       help="piecewise-scaling approximation")
    p.add_argument("--spec", required=True)
    p.add_argument("--interval", type=float, nargs=2, required=True, metavar=("A", "B"))
    p.add_argument("--knots", type=int, required=True)
    p.add_argument("--report-offset", type=float, default=0.05,
                   help="largest residual-report offset per knot")
    p.set_defaults(run=_cmd_taylor_fit)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", None)
    out = getattr(args, "output", None)
    workers = getattr(args, "workers", None)
    try:
        cfg = _load_config(getattr(args, "config", None))
        cfg = RunConfig(
            thresholds=cfg.thresholds,
            schedule=cfg.schedule,
            output_format=fmt if fmt is not None else cfg.output_format,
            output_path=out if out is not None else cfg.output_path,
            parallelism=workers if workers is not None else cfg.parallelism,
        )
        return args.run(args, cfg)
    except InconclusiveLimitError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
