"""Command-line front end: ``sweep``, ``report`` and ``selftest``.

Exit codes: 0 success, 1 usage or input error, 2 numeric failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .ancilla import PostSelectionError, WraparoundError
from .fock import EPS_TRUNC, OpKind, StateFormatError, TwoModeKet, real_expectation
from .report import QUANTITIES, coherent_oracle, state_report, tmsv_oracle
from .states import (CutoffError, ModeSplit, coherent_pair, random_pure, tmsv,
                     tmsv_nbar, xi_from_nbar)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2
STATE_KINDS = ("coherent_pair", "tmsv", "custom_file", "random")
DEFAULT_GRID = "0:5:0.1"
_UNSET = object()
NUMERIC_ERRORS = (CutoffError, PostSelectionError, WraparoundError,
                  ArithmeticError, FloatingPointError, ZeroDivisionError)


class UsageError(Exception):
    pass


@dataclass
class SweepConfig:
    state_kind: str = "coherent_pair"
    nbar_grid: list[float] = field(default_factory=list)
    alpha1: complex | None = None
    alpha2: complex | None = None
    xi: complex | None = None
    theta: float = math.pi / 2
    phi: float = 0.0
    delta: float = 0.0
    state_file: str | None = None
    quantities: list[str] = field(default_factory=lambda: list(QUANTITIES))
    cutoff: int | None = None
    eps_trunc: float = EPS_TRUNC
    seed: int = 0
    output_path: str | None = None
    format: str = "csv"

    def validate(self) -> None:
        if self.state_kind not in STATE_KINDS:
            raise UsageError(f"unknown state kind {self.state_kind!r}")
        if not self.quantities:
            raise UsageError("no quantities requested")
        unknown = [q for q in self.quantities if q not in QUANTITIES]
        if unknown:
            raise UsageError(f"unknown quantities: {', '.join(unknown)}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.state_kind == "custom_file" and not self.state_file:
            raise UsageError("custom_file needs --state-file")
        if self.state_kind == "random" and self.cutoff is None:
            raise UsageError("random states need a fixed --cutoff")
        if any(n < 0 or not math.isfinite(n) for n in self.nbar_grid):
            raise UsageError("nbar grid values must be finite and nonnegative")


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` (inclusive) or a comma-separated list."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            if step <= 0 or stop < start:
                raise UsageError(f"bad grid range {text!r}")
            count = int(round((stop - start) / step)) + 1
            return [round(start + i * step, 12) for i in range(count)]
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}") from exc


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _cutoff(text: str) -> int | None:
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("cutoff must be an integer or 'auto'") from exc
    if value < 0:
        raise argparse.ArgumentTypeError("cutoff must be nonnegative")
    return value


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def _load_state_file(path: str, eps_trunc: float) -> TwoModeKet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read state file {path}: {exc.strerror}") from exc
    try:
        return TwoModeKet.from_json(text, eps_trunc)
    except StateFormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def sweep_points(cfg: SweepConfig):
    """Yield ``(nbar, state, oracle_fn)`` in grid order."""
    kind = cfg.state_kind
    if kind == "custom_file":
        psi = _load_state_file(cfg.state_file, cfg.eps_trunc)
        nbar = real_expectation([OpKind.N_total], psi)
        yield nbar, psi, lambda q: None
        return
    if kind == "random":
        psi = random_pure(cfg.seed, cfg.cutoff)
        yield real_expectation([OpKind.N_total], psi), psi, lambda q: None
        return
    if kind == "coherent_pair":
        if cfg.alpha1 is not None or cfg.alpha2 is not None:
            a1, a2 = cfg.alpha1 or 0j, cfg.alpha2 or 0j
            points = [(abs(a1) ** 2 + abs(a2) ** 2, a1, a2)]
        else:
            points = [(n, *ModeSplit.from_nbar(n, cfg.theta, cfg.phi, cfg.delta).alphas)
                      for n in cfg.nbar_grid]
        for nbar, a1, a2 in points:
            psi = coherent_pair(a1, a2, cfg.cutoff, cfg.eps_trunc)
            yield nbar, psi, (lambda q, a1=a1, a2=a2: coherent_oracle(q, a1, a2))
        return
    if cfg.xi is not None:
        if not abs(cfg.xi) < 1:
            raise UsageError(f"|xi| must be < 1, got {abs(cfg.xi)}")
        points = [(tmsv_nbar(cfg.xi), cfg.xi)]
    else:
        points = [(n, xi_from_nbar(n)) for n in cfg.nbar_grid]
    for nbar, xi in points:
        psi = tmsv(xi, cfg.cutoff, cfg.eps_trunc)
        yield nbar, psi, (lambda q, nbar=nbar: tmsv_oracle(q, nbar))


def run_sweep(cfg: SweepConfig) -> tuple[list[str], list[dict]]:
    cfg.validate()
    rows = []
    for nbar, psi, oracle_fn in sweep_points(cfg):
        row = {"nbar": nbar, "cutoff": psi.cutoff}
        for q in cfg.quantities:
            value = QUANTITIES[q](psi)
            ref = oracle_fn(q)
            row[q] = value
            row[f"{q}_oracle"] = ref
            row[f"{q}_absdiff"] = None if ref is None else abs(value - ref)
        rows.append(row)
    columns = ["nbar", "cutoff"]
    for q in cfg.quantities:
        columns.append(q)
        if any(r[f"{q}_oracle"] is not None for r in rows):
            columns += [f"{q}_oracle", f"{q}_absdiff"]
    return columns, rows


def render(columns: list[str], rows: list[dict], fmt: str, cfg: SweepConfig | None = None) -> str:
    if fmt == "json":
        payload = {
            "columns": columns,
            "rows": [{c: r.get(c) for c in columns} for r in rows],
        }
        if cfg is not None:
            payload["config"] = _config_json(cfg)
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([r["cutoff"] if c == "cutoff" else _fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def _config_json(cfg: SweepConfig) -> dict:
    out = asdict(cfg)
    for key in ("alpha1", "alpha2", "xi"):
        if out[key] is not None:
            out[key] = [out[key].real, out[key].imag]
    return out


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def config_from_args(args: argparse.Namespace) -> SweepConfig:
    data = {}
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot load config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        known = set(SweepConfig.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise UsageError(f"unknown config keys: {', '.join(sorted(extra))}")
        for key in ("alpha1", "alpha2", "xi"):
            if isinstance(data.get(key), list):
                data[key] = complex(*data[key])
        if isinstance(data.get("nbar_grid"), str):
            data["nbar_grid"] = parse_grid(data["nbar_grid"])
    cfg = SweepConfig(**data)
    overrides = {
        "state_kind": args.state, "alpha1": args.alpha1, "alpha2": args.alpha2,
        "xi": args.xi, "state_file": args.state_file, "eps_trunc": args.eps_trunc,
        "seed": args.seed, "theta": args.theta, "phi": args.phi, "delta": args.delta,
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    if args.cutoff is not _UNSET:
        cfg.cutoff = args.cutoff
    if getattr(args, "nbar_grid", None) is not None:
        cfg.nbar_grid = parse_grid(args.nbar_grid)
    elif not cfg.nbar_grid:
        cfg.nbar_grid = parse_grid(DEFAULT_GRID)
    if getattr(args, "quantities", None) is not None:
        cfg.quantities = [q.strip() for q in args.quantities.split(",") if q.strip()]
    if getattr(args, "out", None) is not None:
        cfg.output_path = args.out
    if getattr(args, "format", None) is not None:
        cfg.format = args.format
    return cfg


def _state_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", choices=STATE_KINDS, default=None)
    p.add_argument("--state-file", default=None, help="JSON state {cutoff, amps}")
    p.add_argument("--alpha1", type=_complex, default=None)
    p.add_argument("--alpha2", type=_complex, default=None)
    p.add_argument("--xi", type=_complex, default=None)
    p.add_argument("--theta", type=float, default=None, help="mode split angle for nbar grids")
    p.add_argument("--phi", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--cutoff", type=_cutoff, default=_UNSET, help="integer or 'auto'")
    p.add_argument("--eps-trunc", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="protoent",
        description="Number-polarization entanglement of two-mode pure states.")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="evaluate quantities over a grid of mean photon numbers")
    _state_args(sweep)
    sweep.add_argument("--config", default=None, help="JSON file mirroring the sweep options")
    sweep.add_argument("--nbar-grid", default=None, help="start:stop:step or comma list")
    sweep.add_argument("--quantities", default=None,
                       help=f"comma list from {', '.join(QUANTITIES)}")
    sweep.add_argument("--format", choices=("csv", "json"), default=None)

    report = sub.add_parser("report", help="full diagnostic of one state as JSON")
    _state_args(report)

    selftest = sub.add_parser("selftest", help="compare numerics against closed forms")
    selftest.add_argument("--verbose", action="store_true")
    return parser


def _cmd_sweep(args) -> int:
    cfg = config_from_args(args)
    columns, rows = run_sweep(cfg)
    _write(render(columns, rows, cfg.format, cfg), cfg.output_path)
    return EXIT_OK


def _cmd_report(args) -> int:
    args.config = None
    cfg = config_from_args(args)
    if cfg.state_kind == "custom_file" or (args.state is None and cfg.state_file):
        psi = _load_state_file(cfg.state_file, cfg.eps_trunc)
    elif cfg.state_kind == "random":
        cfg.validate()
        psi = random_pure(cfg.seed, cfg.cutoff)
    elif cfg.state_kind == "tmsv":
        if cfg.xi is None:
            raise UsageError("report on tmsv needs --xi")
        psi = tmsv(cfg.xi, cfg.cutoff, cfg.eps_trunc)
    else:
        psi = coherent_pair(cfg.alpha1 or 0j, cfg.alpha2 or 0j, cfg.cutoff, cfg.eps_trunc)
    _write(json.dumps(state_report(psi), indent=2) + "\n", cfg.output_path)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from .selftest import run_checks
    results = run_checks()
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
    failed = sum(not ok for _, ok, _ in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_NUMERIC


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    handlers = {"sweep": _cmd_sweep, "report": _cmd_report, "selftest": _cmd_selftest}
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NUMERIC_ERRORS as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
