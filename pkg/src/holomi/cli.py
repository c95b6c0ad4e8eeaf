"""
Command-line front end: parameter scans written as CSV.

Every subcommand builds a :class:`ScanResult` and writes it with
:func:`write_csv`.  Floats are printed with 17 significant digits so that
:func:`read_csv` gives back the exact values.  Exit status: 0 on success, 1 when
the computation fails (for ``x0-scan``: when no row brackets a root), 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import __version__
from .errors import DomainError, HolomiError, NoBracket
from .geometry import DEFAULT_UV_CUTOFF, BulkGeometry, geodesic_length, thermal_scales
from .mera import build_network, centered_pair, cone_overlap_level, minimal_cut, regime_classify
from .observables import (
    IntervalPair,
    TorusModel,
    crossover_separation,
    interval_entropy,
    locate_crossover,
    log_two_point_correlator,
    mutual_information,
    transition_point,
)
from .theta import DEFAULT_TOL


@dataclass
class ScanResult:
    header: list[str]
    rows: list[tuple] = field(default_factory=list)
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.header):
                raise ValueError(f"row {row!r} does not match header {self.header!r}")

    def column(self, name: str) -> list:
        i = self.header.index(name)
        return [row[i] for row in self.rows]


class UsageError(Exception):
    pass


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".16e")
    return str(value)


def _parse(text: str) -> Any:
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


def write_csv(result: ScanResult, stream, header_comments: bool = False) -> None:
    if header_comments:
        for key, value in result.metadata.items():
            stream.write(f"# {key}={value}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(result.header)
    for row in result.rows:
        writer.writerow([_fmt(v) for v in row])


def to_csv(result: ScanResult, header_comments: bool = False) -> str:
    buf = io.StringIO()
    write_csv(result, buf, header_comments)
    return buf.getvalue()


def read_csv(text: str) -> ScanResult:
    metadata = {}
    lines = text.splitlines()
    body_start = 0
    for i, line in enumerate(lines):
        if not line.startswith("#"):
            body_start = i
            break
        key, _, value = line[1:].strip().partition("=")
        metadata[key] = value
    else:
        body_start = len(lines)
    reader = csv.reader(lines[body_start:])
    header = next(reader, [])
    rows = [tuple(_parse(cell) for cell in row) for row in reader]
    return ScanResult(list(header), rows, metadata)


# ---- argument handling -------------------------------------------------------


def _grid(start: float, stop: float, steps: int, log: bool) -> list[float]:
    if steps < 1:
        raise UsageError("--steps must be at least 1")
    if log:
        if not (start > 0 and stop > 0):
            raise UsageError("a log grid needs positive end points")
        return [float(v) for v in np.geomspace(start, stop, steps)]
    return [float(v) for v in np.linspace(start, stop, steps)]


def _geometry(args) -> BulkGeometry:
    kw = dict(ads_radius=args.ads_radius, uv_cutoff=args.uv_cutoff,
              central_charge=args.central_charge)
    try:
        if args.geometry == "ads":
            return BulkGeometry.pure_ads(**kw)
        if args.r_plus is None:
            raise UsageError(f"--geometry {args.geometry} needs --r-plus")
        if args.geometry == "btz":
            return BulkGeometry.btz(args.r_plus, **kw)
        if args.r_minus is None:
            raise UsageError("--geometry btz-rot needs --r-minus")
        return BulkGeometry.rotating_btz(args.r_plus, args.r_minus, **kw)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _base_metadata(args, geometry: BulkGeometry | None = None) -> dict[str, str]:
    meta = {"tool": "holomi", "version": __version__, "command": args.command}
    for key, value in sorted(vars(args).items()):
        if key in ("command", "func", "out", "header_comments"):
            continue
        meta[key] = _fmt(value) if value is not None else ""
    if geometry is not None:
        meta["newton_constant"] = _fmt(geometry.newton_constant)
    return meta


def cmd_geodesic(args) -> ScanResult:
    geom = _geometry(args)
    rows = [(dx, geodesic_length(geom, 0.0, dx))
            for dx in _grid(args.start, args.stop, args.steps, args.log_grid)]
    return ScanResult(["dx", "length"], rows, _base_metadata(args, geom))


def cmd_entropy(args) -> ScanResult:
    geom = _geometry(args)
    rows = [(la, interval_entropy(geom, 0.0, la))
            for la in _grid(args.start, args.stop, args.steps, args.log_grid)]
    return ScanResult(["l_A", "entropy"], rows, _base_metadata(args, geom))


def cmd_mi_scan(args) -> ScanResult:
    l = args.l
    if not l > 0:
        raise UsageError("--l must be positive")
    if args.tie_horizon:
        if args.geometry != "btz":
            raise UsageError("--tie-horizon applies to --geometry btz")
        # beta = 2 pi l  <=>  r_plus = ads_radius**2 / l
        args.r_plus = args.ads_radius**2 / l
    geom = _geometry(args)
    if args.x_from is not None or args.x_to is not None:
        if args.x_from is None or args.x_to is None:
            raise UsageError("give both --x-from and --x-to")
        xs = _grid(args.x_from, args.x_to, args.steps, args.log_grid)
        if not all(0 < x < 1 for x in xs):
            raise UsageError("cross ratios must lie in (0, 1)")
        ds = [l * (1.0 / math.sqrt(x) - 1.0) for x in xs]
    else:
        if args.d_from is None or args.d_to is None:
            raise UsageError("give a separation range (--d-from/--d-to) or --x-from/--x-to")
        ds = _grid(args.d_from, args.d_to, args.steps, args.log_grid)
    rows = []
    for d in ds:
        try:
            pair = IntervalPair.from_size(l, d)
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
        res = mutual_information(geom, pair)
        rows.append((d, pair.cross_ratio_x, res.unclamped, res.value, res.phase.value))
    return ScanResult(["d", "x", "I_unclamped", "I", "phase"], rows,
                      _base_metadata(args, geom))


def cmd_x0_scan(args) -> ScanResult:
    model = TorusModel(args.model)
    if args.taus:
        taus = list(args.taus)
    else:
        taus = _grid(args.tau_from, args.tau_to, args.steps, args.log_grid)
    if not all(t > 0 for t in taus):
        raise UsageError("tau_abs values must be positive")
    rows, failures = [], 0
    for tau in taus:
        try:
            x0 = transition_point(model, tau, args.sector, l_over_L=args.l_over_L, tol=args.tol)
        except NoBracket as exc:
            print(f"warning: tau_abs={tau:g}: {exc}", file=sys.stderr)
            x0, failures = math.nan, failures + 1
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
        rows.append((tau, 1.0 / tau, x0))
    meta = _base_metadata(args)
    meta["failed_rows"] = str(failures)
    result = ScanResult(["tau_abs", "inv_tau_abs", "x0"], rows, meta)
    if rows and failures == len(rows):
        raise _AllRowsFailed(result)
    return result


class _AllRowsFailed(Exception):
    def __init__(self, result: ScanResult):
        super().__init__("no row produced a transition point")
        self.result = result


def cmd_correlator(args) -> ScanResult:
    geom = _geometry(args)
    if not args.delta > 0:
        raise UsageError("--delta must be positive")
    dxs = _grid(args.start, args.stop, args.steps, args.log_grid)
    if len(dxs) < 3:
        raise UsageError("the correlator scan needs at least 3 points")
    log_c = np.array([log_two_point_correlator(geom, args.delta, 0.0, dx) for dx in dxs])
    x = np.asarray(dxs)
    slope = np.gradient(log_c, x)
    power = np.gradient(log_c, np.log(x))
    rows = [(float(a), float(math.exp(b)), float(b), float(s), float(p))
            for a, b, s, p in zip(x, log_c, slope, power)]
    meta = _base_metadata(args, geom)
    if geom.kind.value != "ads":
        meta["z_plus"] = _fmt(crossover_separation(geom))
        meta["z_left"] = _fmt(thermal_scales(geom).z_left)
        try:
            meta["crossover"] = _fmt(locate_crossover(x, log_c))
        except DomainError:
            meta["crossover"] = "nan"
    return ScanResult(["dx", "corr", "log_corr", "log_slope", "local_power"], rows, meta)


def cmd_mera(args) -> ScanResult:
    try:
        net = build_network(args.n_sites, args.branch)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    meta = _base_metadata(args)
    meta["depth"] = str(net.depth)
    if args.single_block:
        rows = []
        for l in args.l:
            start = (net.n_sites - l) // 2
            if not 0 < l <= net.n_sites:
                raise UsageError(f"block size {l} does not fit")
            rows.append((l, minimal_cut(net, [(start, start + l - 1)]).length))
        return ScanResult(["l", "cut_length"], rows, meta)
    if not args.d:
        raise UsageError("give separations with --d (or use --single-block)")
    rows = []
    for l in args.l:
        for d in args.d:
            try:
                a, b = centered_pair(net, l, d)
            except DomainError as exc:
                raise UsageError(str(exc)) from exc
            level = cone_overlap_level(net, a, b)
            cut = minimal_cut(net, [a, b])
            rows.append((l, d, -1 if level is None else level, cut.cut_connected,
                         cut.cut_disconnected, cut.routing.value,
                         regime_classify(l, d, args.branch).value))
    meta["overlap_sentinel"] = "-1"
    return ScanResult(["l", "d", "overlap_level", "cut_connected", "cut_disconnected",
                       "routing", "regime"], rows, meta)


# ---- parser ------------------------------------------------------------------


def _common(parser: argparse.ArgumentParser, geometry: bool = True) -> None:
    if geometry:
        parser.add_argument("--geometry", choices=["ads", "btz", "btz-rot"], default="ads")
        parser.add_argument("--r-plus", type=float)
        parser.add_argument("--r-minus", type=float)
        parser.add_argument("--ads-radius", type=float, default=1.0)
        parser.add_argument("--uv-cutoff", type=float, default=DEFAULT_UV_CUTOFF)
        parser.add_argument("--central-charge", type=float,
                            help="fixes the Newton constant through c = 3 l / (2 G)")
    parser.add_argument("--out", help="output file (default: standard output)")
    parser.add_argument("--log-grid", action="store_true", help="logarithmic grid spacing")
    parser.add_argument("--header-comments", action="store_true",
                        help="prefix the CSV with '# key=value' metadata lines")


def _range(parser: argparse.ArgumentParser, steps: int = 50) -> None:
    parser.add_argument("--from", dest="start", type=float, required=True)
    parser.add_argument("--to", dest="stop", type=float, required=True)
    parser.add_argument("--steps", type=int, default=steps)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holomi", description="Holographic entanglement and MERA scans, written as CSV.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("geodesic", help="geodesic length against boundary separation")
    _common(p)
    _range(p)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("entropy", help="single-interval entanglement entropy")
    _common(p)
    _range(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("mi-scan", help="mutual information of two equal intervals")
    _common(p)
    p.add_argument("--l", type=float, required=True, help="interval size")
    p.add_argument("--d-from", type=float)
    p.add_argument("--d-to", type=float)
    p.add_argument("--x-from", type=float)
    p.add_argument("--x-to", type=float)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--tie-horizon", action="store_true",
                   help="place the horizon at the interval size (beta = 2 pi l)")
    p.set_defaults(func=cmd_mi_scan)

    p = sub.add_parser("x0-scan", help="finite-size transition point against tau_abs")
    _common(p, geometry=False)
    p.add_argument("--model", choices=[m.value for m in TorusModel], default="non-rotating")
    p.add_argument("--sector", type=int, choices=[3, 4], default=3)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="theta series tolerance")
    p.add_argument("--tau-from", type=float, default=0.5)
    p.add_argument("--tau-to", type=float, default=50.0)
    p.add_argument("--steps", type=int, default=7)
    p.add_argument("--taus", type=float, nargs="+", help="explicit tau_abs values")
    p.add_argument("--l-over-L", dest="l_over_L", type=float,
                   help="fix l/L instead of tying the horizon to the interval size")
    p.set_defaults(func=cmd_x0_scan)

    p = sub.add_parser("correlator", help="holographic two-point function")
    _common(p)
    _range(p, steps=200)
    p.add_argument("--delta", type=float, default=1.0, help="scaling dimension")
    p.set_defaults(func=cmd_correlator)

    p = sub.add_parser("mera", help="causal cones and minimal cuts of a MERA network")
    _common(p, geometry=False)
    p.add_argument("--branch", type=int, choices=[2, 3], default=2)
    p.add_argument("--n-sites", type=int, default=2**16)
    p.add_argument("--l", type=int, nargs="+", required=True)
    p.add_argument("--d", type=int, nargs="+")
    p.add_argument("--single-block", action="store_true",
                   help="emit (l, cut_length) for single blocks")
    p.set_defaults(func=cmd_mera)
    return parser


def _emit(result: ScanResult, args) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(result, fh, args.header_comments)
    else:
        write_csv(result, sys.stdout, args.header_comments)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except _AllRowsFailed as exc:
        _emit(exc.result, args)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except HolomiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        _emit(result, args)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); nothing left to report
        sys.stderr.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
