"""Command-line entry point: ``covox <command> ...``.

Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 numerical check failed.

Tables go to standard output (or ``--output``) as CSV or JSON.  Floats are
written with ``repr`` so every value round-trips exactly.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import little_group as lg
from .covariant_oscillator import (
    WaveGrid,
    default_extent,
    expansion_coefficients,
    psi_boosted,
    truncation_order,
)
from .errors import CovoxError, DomainError, ToleranceError
from .observables import (
    coherent_form_factor,
    effective_terms,
    entropy,
    mass_spectrum,
    static_form_factor,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

FORM_FACTOR_TOL = 1e-8
NORM_TOL = 0.02


class UsageError(CovoxError):
    pass


@dataclass(frozen=True)
class RunConfig:
    grid_extent: float | None = None
    grid_count: int = 801
    truncation_tol: float = 1e-10
    output_format: str = "csv"
    output_path: str | None = None

    def validate(self) -> RunConfig:
        if self.grid_extent is not None and not self.grid_extent > 0:
            raise UsageError(f"grid_extent must be positive, got {self.grid_extent}")
        if self.grid_count < 3 or self.grid_count % 2 == 0:
            raise UsageError(f"grid_count must be odd and at least 3, got {self.grid_count}")
        if not 0.0 < self.truncation_tol < 1.0:
            raise UsageError(f"truncation_tol must lie in (0, 1), got {self.truncation_tol}")
        if self.output_format not in ("csv", "json"):
            raise UsageError(f"output_format must be csv or json, got {self.output_format!r}")
        return self


def load_config(path: str | os.PathLike) -> RunConfig:
    """Read ``key = value`` pairs (TOML syntax) into a RunConfig."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"cannot parse config {path}: {exc}") from None
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    try:
        cfg = RunConfig(
            grid_extent=float(data["grid_extent"]) if "grid_extent" in data else None,
            grid_count=int(data.get("grid_count", RunConfig.grid_count)),
            truncation_tol=float(data.get("truncation_tol", RunConfig.truncation_tol)),
            output_format=str(data.get("output_format", RunConfig.output_format)),
            output_path=str(data["output_path"]) if "output_path" in data else None,
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad config value: {exc}") from None
    return cfg.validate()


def parse_sweep(text: str) -> list[float]:
    """``start:stop:step`` inclusive of stop within half a step, or a single number."""
    parts = text.split(":")
    try:
        nums = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"bad sweep {text!r}; expected a number or start:stop:step") from None
    if len(nums) == 1:
        return nums
    if len(nums) != 3:
        raise UsageError(f"bad sweep {text!r}; expected start:stop:step")
    start, stop, step = nums
    if step <= 0 or stop < start:
        raise UsageError(f"sweep {text!r} needs step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 0.5)) + 1
    return [start + i * step for i in range(count)]


def _fmt(x) -> str:
    if isinstance(x, bool) or isinstance(x, str):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def render_table(columns: list[str], rows: list[tuple], fmt: str) -> str:
    if fmt == "json":
        records = [dict(zip(columns, (r if isinstance(r, (int, str)) else float(r) for r in row))) for row in rows]
        return json.dumps(records, indent=2) + "\n"
    lines = [",".join(columns)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def read_table(text: str) -> list[dict]:
    """Parse a table emitted by :func:`render_table` in either format."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        return json.loads(text)
    lines = text.splitlines()
    header = lines[0].split(",")
    out = []
    for line in lines[1:]:
        if line:
            out.append({k: _parse_cell(v) for k, v in zip(header, line.split(","))})
    return out


def _parse_cell(v: str):
    try:
        return int(v)
    except ValueError:
        try:
            return float(v)
        except ValueError:
            return v


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        _write_text(Path(output), text)


def _output_root() -> Path:
    return Path(os.environ.get("COVOX_OUTPUT_DIR", "."))


# commands


def cmd_wavefunction(args, cfg: RunConfig) -> int:
    n, eta = args.n, args.eta
    extent = cfg.grid_extent if cfg.grid_extent is not None else default_extent(eta)
    grid = WaveGrid.from_function(
        lambda z, t: psi_boosted(n, eta, z, t), extent, cfg.grid_count, n=n, eta=eta
    )
    norm = grid.norm()
    norm2 = norm * norm
    var_z = grid.moment(lambda z, t: z * z) / norm2
    var_t = grid.moment(lambda z, t: t * t) / norm2
    if cfg.output_path is not None:
        csv_path = Path(cfg.output_path)
    else:
        csv_path = _output_root() / f"wavefunction_n{n}_eta{eta!r}.csv"
    sidecar = grid.descriptor()
    sidecar.update({"norm": norm, "var_z": var_z, "var_t": var_t})
    _write_text(csv_path, grid.to_csv())
    _write_text(csv_path.with_suffix(".json"), json.dumps(sidecar, sort_keys=True, indent=2) + "\n")
    if abs(norm - 1.0) > NORM_TOL:
        print(f"covox: discrete norm {norm!r} differs from 1 by more than {NORM_TOL}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_expansion(args, cfg: RunConfig) -> int:
    tol = args.tol if args.tol is not None else cfg.truncation_tol
    if not 0.0 < tol < 1.0:
        raise UsageError(f"--tol must lie in (0, 1), got {tol}")
    K = truncation_order(args.n, args.eta, tol)
    spec = expansion_coefficients(args.n, args.eta, K)
    rows = []
    acc = []
    for k, c in enumerate(spec.coefficients):
        p = float(c) ** 2
        acc.append(p)
        rows.append((k, float(c), p, math.fsum(acc)))
    if rows[-1][3] < 1.0 - tol - 1e-12:
        print(f"covox: cumulative probability {rows[-1][3]!r} below 1 - tol", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(render_table(["k", "C_k", "p_k", "cumulative"], rows, cfg.output_format), args.output or cfg.output_path)
    return EXIT_OK


def cmd_entropy(args, cfg: RunConfig) -> int:
    rows = []
    for eta in parse_sweep(args.eta):
        rows.append((args.n, eta, entropy(args.n, eta), effective_terms(args.n, eta)))
    _emit(render_table(["n", "eta", "entropy", "effective_terms"], rows, cfg.output_format),
          args.output or cfg.output_path)
    return EXIT_OK


def cmd_formfactor(args, cfg: RunConfig) -> int:
    rows = []
    for eta in parse_sweep(args.eta):
        q2, f = coherent_form_factor(eta)
        closed = 1.0 / math.cosh(2.0 * eta)
        if abs(f - closed) > FORM_FACTOR_TOL:
            print(f"covox: form factor quadrature {f!r} differs from {closed!r} at eta={eta!r}", file=sys.stderr)
            return EXIT_NUMERIC
        rows.append((eta, q2, f, static_form_factor(math.sqrt(q2))))
    _emit(render_table(["eta", "q_squared", "F_coherent", "F_static"], rows, cfg.output_format),
          args.output or cfg.output_path)
    return EXIT_OK


def cmd_spectrum(args, cfg: RunConfig) -> int:
    entries = mass_spectrum(args.lambda_max, args.m0sq)
    for e in entries:
        if e.degeneracy != (e.lam + 1) * (e.lam + 2) // 2:
            print(f"covox: degeneracy {e.degeneracy} at lambda={e.lam} disagrees with closed form", file=sys.stderr)
            return EXIT_NUMERIC
    rows = [(e.lam, e.mass_squared, e.degeneracy) for e in entries]
    _emit(render_table(["lambda", "mass_squared", "degeneracy"], rows, cfg.output_format),
          args.output or cfg.output_path)
    return EXIT_OK


def cmd_littlegroup(args, cfg: RunConfig) -> int:
    if args.action == "classify":
        m = lg.Unimodular2.from_json(args.matrix)
        out = {"kind": lg.classify(m, args.tol).value, "trace": m.trace}
    elif args.action == "equidiag":
        m = lg.Unimodular2.from_json(args.matrix)
        form = lg.equi_diagonalize(m)
        out = {"angle": form.angle, "matrix": form.matrix.to_dict(),
               "kind": lg.classify(form.matrix, args.tol).value}
    else:
        m = lg.contraction_sequence(args.gamma, args.eta)
        out = {"gamma": args.gamma, "eta": args.eta, "matrix": m.to_dict(),
               "distance_to_triangular": m.max_distance(lg.triangular(args.gamma))}
    _emit(json.dumps(out, indent=2) + "\n", args.output or cfg.output_path)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="covox", description="Covariant harmonic oscillator calculations.")
    parser.add_argument("--config", help="TOML file with RunConfig settings")
    parser.add_argument("--format", choices=["csv", "json"], help="table output format")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("wavefunction", help="sample the boosted state on a (z, t) grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--extent", type=float)
    p.add_argument("--count", type=int)
    p.add_argument("--output", help="CSV path; the JSON sidecar goes next to it")
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("expansion", help="coefficients of the boosted state over rest-frame states")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--tol", type=float)
    p.add_argument("--output")
    p.set_defaults(func=cmd_expansion)

    p = sub.add_parser("entropy", help="excitation entropy over a rapidity sweep")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--eta", required=True, help="value or start:stop:step")
    p.add_argument("--output")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("formfactor", help="coherent and static form factors over a rapidity sweep")
    p.add_argument("--eta", required=True, help="value or start:stop:step")
    p.add_argument("--output")
    p.set_defaults(func=cmd_formfactor)

    p = sub.add_parser("spectrum", help="mass-squared ladder and degeneracies")
    p.add_argument("--lambda-max", dest="lambda_max", type=int, required=True)
    p.add_argument("--m0sq", type=float, default=0.0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("littlegroup", help="2x2 little-group matrix operations")
    p.add_argument("--output")
    lsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("classify", "equidiag"):
        q = lsub.add_parser(name)
        q.add_argument("--matrix", required=True, help='JSON like {"a":1,"b":0,"c":5,"d":1}')
        q.add_argument("--tol", type=float, default=1e-9)
        q.add_argument("--output", default=argparse.SUPPRESS)
    q = lsub.add_parser("contract")
    q.add_argument("--gamma", type=float, required=True)
    q.add_argument("--eta", type=float, required=True)
    q.add_argument("--output", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_littlegroup)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        overrides = {}
        if args.format:
            overrides["output_format"] = args.format
        if getattr(args, "extent", None) is not None:
            overrides["grid_extent"] = args.extent
        if getattr(args, "count", None) is not None:
            overrides["grid_count"] = args.count
        if args.command == "wavefunction" and args.output is not None:
            overrides["output_path"] = args.output
        cfg = replace(cfg, **overrides).validate()
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"covox: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ToleranceError as exc:
        print(f"covox: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        # precondition violations on user-supplied values
        print(f"covox: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"covox: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
