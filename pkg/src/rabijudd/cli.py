"""Command line front end.

Subcommands:

  juddian     isolated exact points up to a maximal baseline index
  spectrum    low-lying parity-resolved levels over a coupling grid
  verify      cross-check exact points against a truncated diagonalization
  oscillator  displaced / squeezed oscillator levels vs closed forms
  plot        render a spectrum CSV (plus optional points) to SVG

All tabular output is plain text with fixed formatting, so repeated runs on
the same inputs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bosons import displaced_osc_hamiltonian, squeezed_osc_hamiltonian
from .juddian import juddian_points, verify_point
from .numerics import (
    FullRankError,
    NonConvergenceError,
    RootCountError,
    sym_eig,
)
from .rabi import ModelParams, spectrum_sweep
from .svgplot import render_figure

_JUDDIAN_HEADER = "N,index,lambda,g,E,det_residual"
_SPECTRUM_HEADER = "g,parity,level,energy"


class CLIError(Exception):
    """Bad input or a failed run that should abort with exit status 2."""


def _write_text(out: str | None, text: str) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CLIError(f"cannot write {out}: {exc}") from exc


def _model_params(args) -> ModelParams:
    try:
        return ModelParams(omega=args.omega, omega0=args.omega0)
    except ValueError as exc:
        raise CLIError(str(exc)) from exc


# ---------------------------------------------------------------------------
# juddian

def cmd_juddian(args) -> int:
    if args.max_n < 1:
        raise CLIError("--max-n must be at least 1")
    params = _model_params(args)
    points = []
    for n in range(1, args.max_n + 1):
        try:
            points.extend(juddian_points(n, params))
        except RootCountError as exc:
            raise CLIError(f"root search failed for N = {n}: {exc}") from exc

    if args.format == "json":
        rows = [
            {
                "N": p.N,
                "index": p.root_index,
                "lambda": round(p.lam, 10),
                "g": round(p.g, 10),
                "E": round(p.E, 10),
            }
            for p in points
        ]
        text = json.dumps(rows, indent=2) + "\n"
    else:
        lines = [_JUDDIAN_HEADER]
        for p in points:
            lines.append(
                f"{p.N},{p.root_index},{p.lam:.10f},{p.g:.10f},"
                f"{p.E:.10f},{p.det_residual:.10e}"
            )
        text = "\n".join(lines) + "\n"
    _write_text(args.out, text)
    return 0


# ---------------------------------------------------------------------------
# spectrum

def cmd_spectrum(args) -> int:
    single = args.g_steps == 1
    if single:
        if args.g_min != args.g_max:
            raise CLIError("--g-steps 1 requires --g-min equal to --g-max")
    else:
        if args.g_steps < 2:
            raise CLIError("--g-steps must be 1 (single point) or at least 2")
        if not args.g_min < args.g_max:
            raise CLIError("--g-min must be strictly below --g-max")
    params = _model_params(args)
    grid = (
        np.array([args.g_min])
        if single
        else np.linspace(args.g_min, args.g_max, args.g_steps)
    )
    try:
        table = spectrum_sweep(
            params,
            grid,
            cutoff=args.cutoff,
            levels_per_block=args.levels,
            scaled=not args.unscaled,
        )
    except NonConvergenceError as exc:
        raise CLIError(
            f"eigensolver failed on the grid [{args.g_min:g}, {args.g_max:g}]: {exc}"
        ) from exc
    except ValueError as exc:
        raise CLIError(str(exc)) from exc

    lines = [_SPECTRUM_HEADER]
    for i, g in enumerate(table.g_values):
        for parity, block in ((1, table.levels_plus), (-1, table.levels_minus)):
            for level in range(block.shape[1]):
                lines.append(f"{g:.12g},{parity},{level},{block[i, level]:.12g}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    if args.n < 1:
        raise CLIError("--n must be at least 1")
    try:
        points = juddian_points(args.n, ModelParams())
    except RootCountError as exc:
        raise CLIError(f"root search failed for N = {args.n}: {exc}") from exc

    gap_tol = 1e-6
    res_tol = 1e-6
    header = (
        f"{'index':>5}  {'g':>14}  {'E':>14}  {'det_resid':>11}  "
        f"{'gap':>11}  {'eig_resid':>11}  status"
    )
    print(header)
    all_ok = True
    for p in points:
        try:
            report = verify_point(p, cutoff=args.cutoff)
        except (RuntimeError, ValueError, FullRankError) as exc:
            print(
                f"{p.root_index:>5}  {p.g:>14.10f}  {p.E:>14.10f}  "
                f"{p.det_residual:>11.3e}  {'-':>11}  {'-':>11}  FAIL ({exc})"
            )
            all_ok = False
            continue
        ok = report.degeneracy_gap <= gap_tol and report.eigen_residual <= res_tol
        all_ok = all_ok and ok
        print(
            f"{p.root_index:>5}  {p.g:>14.10f}  {p.E:>14.10f}  "
            f"{p.det_residual:>11.3e}  {report.degeneracy_gap:>11.3e}  "
            f"{report.eigen_residual:>11.3e}  {'ok' if ok else 'FAIL'}"
        )
    if all_ok:
        print(f"all {len(points)} points verified at cutoff {args.cutoff}")
        return 0
    print(
        f"verification FAILED at cutoff {args.cutoff}; "
        "a larger --cutoff may be needed",
        file=sys.stderr,
    )
    return 1


# ---------------------------------------------------------------------------
# oscillator

def cmd_oscillator(args) -> int:
    if args.levels < 1:
        raise CLIError("--levels must be at least 1")
    if args.levels > args.cutoff + 1:
        raise CLIError("--levels cannot exceed --cutoff + 1")
    try:
        if args.osc_type == "displaced":
            ham = displaced_osc_hamiltonian(args.lam, cutoff=args.cutoff)
            exact = np.arange(args.levels) + 0.5
        else:
            ham = squeezed_osc_hamiltonian(args.lam, cutoff=args.cutoff)
            omega_eff = np.sqrt(1.0 - 4.0 * args.lam * args.lam)
            exact = (np.arange(args.levels) + 0.5) * omega_eff
    except ValueError as exc:
        raise CLIError(str(exc)) from exc
    numeric = sym_eig(ham).values[: args.levels]
    dev = np.abs(numeric - exact)
    print(f"{'n':>4}  {'numeric':>18}  {'closed form':>18}  {'deviation':>11}")
    for n in range(args.levels):
        print(f"{n:>4}  {numeric[n]:>18.12f}  {exact[n]:>18.12f}  {dev[n]:>11.3e}")
    print(f"max deviation = {dev.max():.3e}")
    return 0


# ---------------------------------------------------------------------------
# plot

def _load_spectrum_csv(path: str) -> list[tuple[float, int, int, float]]:
    try:
        with open(path) as fh:
            raw = fh.read()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc}") from exc
    lines = raw.splitlines()
    if not lines or lines[0].strip() != _SPECTRUM_HEADER:
        raise CLIError(
            f"{path}, line 1: expected header '{_SPECTRUM_HEADER}'"
        )
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != 4:
            raise CLIError(f"{path}, line {i}: expected 4 comma-separated fields")
        try:
            g = float(fields[0])
            parity = int(fields[1])
            level = int(fields[2])
            energy = float(fields[3])
        except ValueError as exc:
            raise CLIError(f"{path}, line {i}: {exc}") from exc
        if parity not in (1, -1):
            raise CLIError(f"{path}, line {i}: parity must be 1 or -1")
        rows.append((g, parity, level, energy))
    if not rows:
        raise CLIError(f"{path}: no data rows")
    return rows


def _load_points_json(path: str) -> list[dict]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CLIError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, list):
        raise CLIError(f"{path}: expected a JSON array of point objects")
    for k, entry in enumerate(data):
        if not isinstance(entry, dict):
            raise CLIError(f"{path}, entry {k}: expected an object")
        for key in ("N", "lambda", "g", "E"):
            if key not in entry:
                raise CLIError(f"{path}, entry {k}: missing key '{key}'")
            if not isinstance(entry[key], (int, float)) or isinstance(
                entry[key], bool
            ):
                raise CLIError(f"{path}, entry {k}: key '{key}' must be a number")
    return data


def cmd_plot(args) -> int:
    rows = _load_spectrum_csv(args.spectrum)
    points = _load_points_json(args.points) if args.points else []
    svg = render_figure(rows, points, baselines=args.baselines == "on")
    _write_text(args.out, svg)
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rabijudd",
        description="Isolated exact points and numerical spectra of the Rabi model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("juddian", help="compute isolated exact points")
    p.add_argument("--max-n", type=int, required=True, metavar="N",
                   help="largest baseline index to search")
    p.add_argument("--omega", type=float, default=1.0, help="field frequency")
    p.add_argument("--omega0", type=float, default=1.0,
                   help="level splitting frequency")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, metavar="PATH",
                   help="output file (default: stdout)")
    p.set_defaults(func=cmd_juddian)

    p = sub.add_parser("spectrum", help="sweep the low-lying spectrum over g")
    p.add_argument("--g-min", type=float, default=0.05)
    p.add_argument("--g-max", type=float, default=0.8)
    p.add_argument("--g-steps", type=int, default=201)
    p.add_argument("--cutoff", type=int, default=100, metavar="M",
                   help="boson basis cutoff")
    p.add_argument("--levels", type=int, default=8,
                   help="levels kept per parity block")
    p.add_argument("--omega", type=float, default=1.0, help="field frequency")
    p.add_argument("--omega0", type=float, default=1.0,
                   help="level splitting frequency")
    p.add_argument("--unscaled", action="store_true",
                   help="report energies of the unscaled Hamiltonian")
    p.add_argument("--out", default=None, metavar="PATH",
                   help="output file (default: stdout)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="cross-check exact points numerically")
    p.add_argument("--n", type=int, required=True, metavar="N",
                   help="baseline index whose points are checked")
    p.add_argument("--cutoff", type=int, default=100, metavar="M")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oscillator", help="shifted-oscillator spectra")
    p.add_argument("--type", dest="osc_type", required=True,
                   choices=("displaced", "squeezed"))
    p.add_argument("--lambda", dest="lam", type=float, required=True,
                   help="coupling strength")
    p.add_argument("--cutoff", type=int, default=100, metavar="M")
    p.add_argument("--levels", type=int, default=10)
    p.set_defaults(func=cmd_oscillator)

    p = sub.add_parser("plot", help="render a spectrum CSV to SVG")
    p.add_argument("--spectrum", required=True, metavar="CSV")
    p.add_argument("--points", default=None, metavar="JSON")
    p.add_argument("--baselines", choices=("on", "off"), default="on")
    p.add_argument("--out", required=True, metavar="SVG")
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RootCountError, NonConvergenceError, FullRankError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
