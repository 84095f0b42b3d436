"""Command-line front end.

Every command prints line-delimited JSON (or writes CSV for ``plot-data``).
Exit codes: 0 success, 2 input/schema error, 3 fit failure, 4 lookup failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import models
from .dataset import ingest, validate
from .errors import ChanfitError, FitError, InputError, NotFound
from .fitting import refit_catalog
from .registry import registry_load, registry_query
from .sampling import sample_lsp
from .synthetic import registry_path, release_filter, standard_plan
from .types import (
    Condition,
    ModelKey,
    ModelSet,
    PenLoss,
    Scenario,
    SourceType,
    StatisticKind,
    check_freq,
    parse_parameter,
)

EXIT_OK, EXIT_INPUT, EXIT_FIT, EXIT_LOOKUP = 0, 2, 3, 4


def num(x: float) -> float:
    """Round to 6 significant digits for output."""
    return float(f"{x:.6g}")


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    count: int = 50
    spacing: str = "log"

    def __post_init__(self):
        check_freq(self.lo, "grid")
        check_freq(self.hi, "grid")
        if not self.lo < self.hi:
            raise argparse.ArgumentTypeError(f"grid needs lo < hi, got {self.lo}:{self.hi}")
        if self.count < 2:
            raise argparse.ArgumentTypeError("grid needs at least 2 points")
        if self.spacing not in ("log", "lin"):
            raise argparse.ArgumentTypeError("grid spacing must be log or lin")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) != 4:
            raise argparse.ArgumentTypeError(f"expected lo:hi:n:{{log,lin}}, got {text!r}")
        try:
            return cls(float(parts[0]), float(parts[1]), int(parts[2]), parts[3])
        except (ValueError, ChanfitError) as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    def points(self) -> list[float]:
        if self.spacing == "log":
            xs = np.geomspace(self.lo, self.hi, self.count)
        else:
            xs = np.linspace(self.lo, self.hi, self.count)
        return [num(x) for x in xs]


@dataclass(frozen=True)
class RunConfig:
    dataset: Optional[Path]
    registry: Optional[Path]
    out: Optional[Path]
    strict: bool
    seed: int
    grid: Optional[GridSpec]

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            dataset=Path(args.dataset) if args.dataset else None,
            registry=Path(args.registry) if args.registry else None,
            out=Path(args.out) if args.out else None,
            strict=args.strict,
            seed=args.seed,
            grid=args.grid,
        )


def _emit(obj: dict, stream=None) -> None:
    print(json.dumps(obj), file=stream or sys.stdout)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _key_from_args(args, require_set: bool = True) -> ModelKey:
    parameter = parse_parameter(args.param)
    model_set = args.set
    if model_set is None:
        if isinstance(parameter, PenLoss):
            model_set = ModelSet.Rel19Only.value
        elif require_set:
            raise InputError("--set is required")
    scenario = Scenario.parse(args.scenario) if args.scenario else None
    condition = Condition.parse(args.condition) if args.condition else None
    if not isinstance(parameter, PenLoss) and (scenario is None or condition is None):
        raise InputError("--scenario and --condition are required")
    return ModelKey(scenario, condition, parameter, StatisticKind.parse(args.stat), ModelSet.parse(model_set))


def _load_points(cfg: RunConfig):
    result = ingest(cfg.dataset, strict=cfg.strict)
    for d in result.diagnostics:
        _warn(f"skipped line {d.line}: {d.message}")
    return result


def cmd_ingest(cfg: RunConfig, args) -> int:
    result = _load_points(cfg)
    _emit({"points": len(result.points), "diagnostics": len(result.diagnostics), **result.manifest.to_dict()})
    return EXIT_OK


def cmd_validate(cfg: RunConfig, args) -> int:
    result = ingest(cfg.dataset, strict=False)
    diags = result.diagnostics + validate(result.points)
    for d in diags:
        _emit(d.to_dict())
    return EXIT_INPUT if cfg.strict and diags else EXIT_OK


def _select_plan(args):
    plan = standard_plan()
    want = {
        "scenario": args.scenario,
        "condition": args.condition,
        "parameter": args.param,
        "statistic": args.stat,
        "set": args.set,
    }
    out = []
    for key, spec in plan:
        d = models.key_to_dict(key)
        if all(v is None or d[k] == v for k, v in want.items()):
            out.append((key, spec))
    return out


def cmd_fit(cfg: RunConfig, args) -> int:
    if cfg.dataset is None:
        raise InputError("--dataset is required")
    points = _load_points(cfg).points
    plan = _select_plan(args)
    if not plan:
        _warn("plan selector matched no models")
    lines = []
    failed = False
    for entry in refit_catalog(points, plan):
        row = models.key_to_dict(entry.key)
        row["method"] = entry.spec.method.value
        if entry.ok:
            r = entry.result
            row.update(
                basis=r.form.basis.value,
                slope=num(r.form.slope),
                intercept=num(r.form.intercept),
                fit_lo_ghz=entry.spec.range_ghz[0],
                fit_hi_ghz=entry.spec.range_ghz[1],
                n_points=r.n_points,
                rmse=num(r.rmse),
            )
        else:
            failed = True
            row.update(error=type(entry.error).__name__, message=str(entry.error))
        lines.append(json.dumps(row))
    text = "".join(line + "\n" for line in lines)
    sys.stdout.write(text)
    if cfg.out is not None:
        cfg.out.mkdir(parents=True, exist_ok=True)
        (cfg.out / "fit_report.jsonl").write_text(text, encoding="utf-8")
    return EXIT_FIT if failed else EXIT_OK


def cmd_eval(cfg: RunConfig, args) -> int:
    if args.freq is None:
        raise InputError("--freq is required")
    value = models.evaluate(models.lookup(_key_from_args(args)), args.freq)
    _emit({"value": num(value.value), "extrapolated": value.extrapolated})
    return EXIT_OK


def _grid_or_freq(cfg: RunConfig, args, default_range) -> list[float]:
    if cfg.grid is not None:
        return cfg.grid.points()
    if args.freq is not None:
        return [args.freq]
    return GridSpec(*default_range).points()


def cmd_compare(cfg: RunConfig, args) -> int:
    key_a = _key_from_args(args)
    key_b = key_a.with_set(ModelSet.parse(args.against))
    grid = _grid_or_freq(cfg, args, models.lookup(key_a).fit_range_ghz)
    for row in models.compare(key_a, key_b, grid):
        _emit({"f": num(row.f), "a": num(row.a), "b": num(row.b), "delta": num(row.delta)})
    return EXIT_OK


def cmd_sample(cfg: RunConfig, args) -> int:
    if args.freq is None:
        raise InputError("--freq is required")
    key = _key_from_args(args)
    mean = models.lookup(key.with_statistic(StatisticKind.Mean))
    std = models.lookup(key.with_statistic(StatisticKind.Std))
    s = sample_lsp(mean, std, args.freq, args.n, cfg.seed)
    if s.sigma_clamped:
        _warn(f"std model is negative ({s.sigma_raw:.6g}) at {args.freq:g} GHz; clamped to 0")
    _emit(
        {
            "mu": num(s.mu),
            "sigma": num(s.sigma),
            "sigma_clamped": s.sigma_clamped,
            "unit": s.unit,
            "seed": cfg.seed,
            "values": [num(v) for v in s.values],
        }
    )
    return EXIT_OK


def plot_rows(key: ModelKey, grid: Sequence[float], points=()) -> list[tuple[str, float, float]]:
    model = models.lookup(key)
    rows = []
    lo, hi = model.fit_range_ghz
    releases = release_filter(model) if key.set is not ModelSet.Legacy38901 else None
    for p in points:
        if not p.matches(model.key):
            continue
        if releases is not None and (p.release not in releases or not lo <= p.f <= hi):
            continue
        series = "scatter_meas" if p.source_type is SourceType.Meas else "scatter_rt"
        rows.append((series, num(p.f), num(p.value)))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    rows += [("fit", x, num(models.evaluate(model, x).value)) for x in grid]
    if key.set is not ModelSet.Legacy38901:
        legacy = models.DATABASE.legacy_for(key)
        if legacy is not None:
            rows += [("legacy", x, num(models.evaluate(legacy, x).value)) for x in grid]
    return rows


def cmd_plot_data(cfg: RunConfig, args) -> int:
    key = _key_from_args(args)
    model = models.lookup(key)
    grid = cfg.grid.points() if cfg.grid else GridSpec(*model.fit_range_ghz).points()
    points = _load_points(cfg).points if cfg.dataset else ()
    rows = plot_rows(key, grid, points)
    out_dir = cfg.out or Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    name = re.sub(r"[^A-Za-z0-9]+", "_", str(key)).strip("_") + ".csv"
    path = out_dir / name
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("series", "x", "y"))
        w.writerows((s, f"{x:.6g}", f"{y:.6g}") for s, x, y in rows)
    _emit({"path": str(path), "rows": len(rows)})
    return EXIT_OK


def cmd_registry(cfg: RunConfig, args) -> int:
    records = registry_load(cfg.registry or registry_path())
    freq_range = None
    if args.freq_range:
        lo, _, hi = args.freq_range.partition(":")
        freq_range = (float(lo), float(hi))
    hits = registry_query(
        records,
        scenario=Scenario.parse(args.scenario) if args.scenario else None,
        parameter=parse_parameter(args.param) if args.param else None,
        kind=SourceType.parse(args.kind) if args.kind else None,
        freq_range_ghz=freq_range,
        source=args.source,
    )
    for r in hits:
        _emit(r.to_dict())
    return EXIT_OK


COMMANDS = {
    "ingest": cmd_ingest,
    "validate": cmd_validate,
    "fit": cmd_fit,
    "eval": cmd_eval,
    "compare": cmd_compare,
    "sample": cmd_sample,
    "plot-data": cmd_plot_data,
    "registry": cmd_registry,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dataset", help="statistics CSV")
    common.add_argument("--registry", help="campaign registry CSV (default: bundled)")
    common.add_argument("--out", help="output directory")
    common.add_argument("--strict", action="store_true", help="fail on any row diagnostic")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--scenario")
    common.add_argument("--condition")
    common.add_argument("--param")
    common.add_argument("--stat")
    common.add_argument("--set", choices=[s.value for s in ModelSet])
    common.add_argument("--freq", type=float, help="frequency in GHz")
    common.add_argument("--grid", type=GridSpec.parse, help="lo:hi:n:{log,lin}")
    common.add_argument("--n", type=int, default=1, help="sample count")

    parser = argparse.ArgumentParser(prog="chanfit", description="Evaluate and refit large-scale channel parameter models.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "compare":
            p.add_argument("--against", choices=[s.value for s in ModelSet], default="legacy")
        if name == "registry":
            p.add_argument("--kind", choices=[k.value for k in SourceType])
            p.add_argument("--freq-range", help="lo:hi in GHz")
            p.add_argument("--source")
    return parser


_KEY_COMMANDS = ("eval", "compare", "sample", "plot-data")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.stat is None and args.command in _KEY_COMMANDS:
        args.stat = StatisticKind.Mean.value
    if args.param is None and args.command in _KEY_COMMANDS:
        print("error: --param is required", file=sys.stderr)
        return EXIT_INPUT
    cfg = RunConfig.from_args(args)
    try:
        return COMMANDS[args.command](cfg, args)
    except NotFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOOKUP
    except FitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIT
    except (ChanfitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
