"""Command-line entry point: every computation as a reproducible table plus manifest.

Usage::

    quadbath <command> [options] [--format csv|json] [--output PATH] [--config FILE]

``--config`` takes a ``key=value`` text file (or a run manifest written by a
previous run); explicit flags override its values. Sweeps use
``min:max:count:spacing`` with spacing ``lin`` or ``log``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import platform
import sys
import time
import warnings
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .core import ModelParams, QuadratureConfig, QuadratureError, derive_scales, DerivedScales
from .fdt import SpectralFunction, cf_from_imchi, imchi_from_cf
from .linear_bath import LinearCase, imresponse_linear
from .fdt import msd_from_imresponse
from .quadratic_bath import (
    PositionDistribution,
    ck_residual,
    cumulant_closed,
    cumulant_seminumeric,
    diagram_kernel_bruteforce,
    diagram_kernel_closed,
    force_psd_quadratic,
    imchi_quadratic,
    imresponse_quadratic,
    pdf_eval,
    pdf_moment,
    pdf_sample,
)
from .thermal import (
    LangevinConfig,
    default_workers,
    empirical_cumulants,
    force_psd_thermal,
    langevin_ensemble,
    msd_curve,
    msd_slope,
    transport,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4
DEFAULT_SEED = 20240601
# manifest fields that change between otherwise identical runs
VOLATILE = ("wall_time_s", "created_unix")
# execution details kept out of the data table itself
PLACEMENT = ("output", "threads")


class UsageError(ValueError):
    pass


# --- parsing helpers ---------------------------------------------------------


def parse_sweep(raw: str) -> np.ndarray:
    """``"min:max:count:spacing"`` or a single number."""
    parts = str(raw).split(":")
    if len(parts) == 1:
        return np.array([float(parts[0])])
    if len(parts) not in (3, 4):
        raise UsageError(f"sweep must look like min:max:count[:lin|log], got {raw!r}")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    spacing = parts[3] if len(parts) == 4 else "lin"
    if count < 1 or hi < lo or (count > 1 and hi == lo):
        raise UsageError(f"invalid sweep range {raw!r}")
    if spacing == "lin":
        return np.linspace(lo, hi, count)
    if spacing == "log":
        if lo <= 0:
            raise UsageError("log spacing needs a positive minimum")
        return np.geomspace(lo, hi, count)
    raise UsageError(f"spacing must be lin or log, got {spacing!r}")


def parse_ints(raw: str) -> list[int]:
    try:
        return [int(x) for x in str(raw).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {raw!r}") from None


def parse_floats(raw: str) -> list[float]:
    try:
        return [float(x) for x in str(raw).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of numbers, got {raw!r}") from None


def read_config(path: str) -> dict[str, str]:
    """Options from a ``key=value`` file or from the ``config`` block of a manifest."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        payload = json.loads(text)
        config = payload.get("manifest", payload).get("config", {})
        return {k: str(v) for k, v in config.items() if v is not None}
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def _plain(value):
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


# --- commands ------------------------------------------------------------------


def _quadcfg(args) -> QuadratureConfig:
    return QuadratureConfig(epsabs=args.epsabs, epsrel=args.epsrel, uv_cutoff=args.uv)


def _local_slope(x, y, log_y=True):
    x, y = np.log(np.asarray(x)), np.asarray(y, dtype=float)
    if log_y:
        y = np.log(y)
    if len(x) < 2:
        return np.full(len(x), math.nan)
    return np.gradient(y, x)


def cmd_cumulants(args):
    params = ModelParams(args.m, args.gamma)
    scales = derive_scales(params)
    cfg = _quadcfg(args)
    times = parse_sweep(args.t)
    rows = []
    summary = {}
    for n in parse_ints(args.n):
        closed = np.array([cumulant_closed(n, t, scales) for t in times])
        if args.seminumeric and n >= 4:
            semi = np.array([cumulant_seminumeric(n, t, params, cfg) for t in times])
        else:
            semi = np.full(len(times), math.nan)
        slope = _local_slope(times, closed, log_y=n >= 4)
        if len(times) > 1 and n >= 4:
            summary[f"fitted_loglog_slope_n{n}"] = float(np.polyfit(np.log(times), np.log(closed), 1)[0])
        for t, c, s, k in zip(times, closed, semi, slope):
            rows.append({"n": n, "t": t, "closed": c, "seminumeric": s, "loglog_slope": k})
    return rows, summary


def cmd_msd(args):
    cfg = _quadcfg(args)
    times = parse_sweep(args.t)
    rows = []
    for model in [m.strip() for m in args.model.split(",") if m.strip()]:
        if model in ("a", "b"):
            imR = imresponse_linear(LinearCase(model.upper(), args.g), args.m)
        elif model == "quadratic":
            imR = imresponse_quadratic(args.m)
        else:
            raise UsageError(f"unknown model {model!r}; use a, b or quadratic")
        msd = np.array([msd_from_imresponse(imR, t, cfg) for t in times])
        slope = _local_slope(times, msd, log_y=False)
        for t, v, k in zip(times, msd, slope):
            rows.append({"model": model, "t": t, "msd": v, "log_slope": k})
    return rows, {}


def _distribution(args) -> PositionDistribution:
    if args.lambda_tilde is not None and args.vt is not None:
        return PositionDistribution(args.lambda_tilde, args.vt)
    if args.time is None:
        raise UsageError("give --lambda-tilde and --vt, or --m, --gamma and --time")
    return PositionDistribution.at_time(derive_scales(ModelParams(args.m, args.gamma)), args.time)


def cmd_pdf(args):
    dist = _distribution(args)
    rows = [{"kind": "normalization", "order": 0, "x": math.nan, "value": dist.mass}]
    lt, vt = dist.lam_tilde, dist.vt
    for n in parse_ints(args.moments):
        rows.append({"kind": "moment", "order": n, "x": math.nan, "value": pdf_moment(n, dist)})
        if n == 2:
            lead = 2 * lt**2 * math.log(vt / lt)
        elif n >= 4 and n % 2 == 0:
            lead = 2 * lt**2 * vt ** (n - 2) / (n - 2)
        else:
            lead = 0.0
        rows.append({"kind": "moment_leading", "order": n, "x": math.nan, "value": lead})
    xs = parse_sweep(args.x) if args.x else np.linspace(0.0, 1.2 * vt, 25)
    for x in xs:
        rows.append({"kind": "density", "order": math.nan, "x": x, "value": pdf_eval(dist, x)})
    return rows, {"lambda_tilde": lt, "vt": vt}


def cmd_sample(args):
    dist = _distribution(args)
    x = pdf_sample(dist, args.count, args.seed, workers=args.threads or default_workers())
    rows = [{"i": i, "x": v} for i, v in enumerate(x)]
    return rows, {"lambda_tilde": dist.lam_tilde, "vt": dist.vt}


def cmd_langevin(args):
    cfg = LangevinConfig(T=args.T, dt=args.dt, steps=args.steps, paths=args.paths,
                         seed=args.seed, record_every=args.record_every)
    ens = langevin_ensemble(cfg, workers=args.threads or None)
    msd = msd_curve(ens)
    orders = parse_ints(args.orders)
    rows = []
    for i, t in enumerate(ens.times):
        row = {"t": t, "msd": msd[i]}
        for n in orders:
            if t > 0:
                value, err = empirical_cumulants(ens, n, t)
            else:
                value, err = 0.0, 0.0
            row[f"k{n}"], row[f"k{n}_err"] = value, err
        rows.append(row)
    slope, err = msd_slope(ens)
    return rows, {"msd_slope": slope, "msd_slope_err": err, "expected_slope": 1.0 / args.T}


def cmd_fdt_check(args):
    temps = parse_floats(args.T)
    omega = np.geomspace(1e-3, 1e2, args.points)
    cf = SpectralFunction.sampled(omega, omega**3)
    rows = []
    for T in temps:
        back = cf_from_imchi(imchi_from_cf(cf, T), T)
        rows.append({"check": "roundtrip_max_rel", "T": T,
                     "value": float(np.max(np.abs(back.values / cf.values - 1)))})
    w = np.concatenate([-omega[::-1], omega])
    closure = np.max(np.abs(imchi_quadratic(w) / (np.sign(w) * force_psd_quadratic(np.abs(w))) - 1))
    rows.append({"check": "quadratic_fdt_closure_max_rel", "T": 0.0, "value": float(closure)})
    positive = [T for T in temps if T > 0]
    cfg = _quadcfg(args)
    cf0 = [force_psd_thermal(0.0, T, cfg) for T in positive]
    for T, c in zip(positive, cf0):
        rows.append({"check": "thermal_cf_zero_freq", "T": T, "value": c})
    summary = {}
    if len(positive) > 1:
        exponent = float(np.polyfit(np.log(positive), np.log(cf0), 1)[0])
        rows.append({"check": "thermal_cf_exponent", "T": math.nan, "value": exponent})
        summary["thermal_cf_exponent"] = exponent
    return rows, summary


def cmd_diagrams(args):
    cfg = _quadcfg(args)
    rows = []
    for n in parse_ints(args.n):
        for w in parse_floats(args.omega):
            closed = diagram_kernel_closed(n, w)
            brute = diagram_kernel_bruteforce(n, w, cfg)
            rows.append({"n": n, "omega": w, "closed": closed, "bruteforce": brute,
                         "rel_err": abs(brute / closed - 1)})
    return rows, {}


def cmd_transport(args):
    rows = []
    for T in parse_sweep(args.T):
        mu, D = transport(T)
        rows.append({"T": T, "mobility": mu, "diffusion": D})
    return rows, {}


def cmd_ck(args):
    scales = DerivedScales.from_cutoffs(args.lambda_tilde, args.v)
    cfg = _quadcfg(args)
    rows = []
    for t1 in parse_floats(args.t1):
        for t2 in parse_floats(args.t2):
            r = ck_residual(t1, t2, scales, cfg, points=args.points)
            rows.append({"t1": t1, "t2": t2, "residual": r, "tolerance": cfg.epsabs})
    return rows, {}


COMMANDS = {
    "cumulants": (cmd_cumulants, "closed and semi-numeric displacement cumulants over a time sweep"),
    "msd": (cmd_msd, "mean-square displacement of the linear and quadratic models"),
    "pdf": (cmd_pdf, "power-law density table, moments and normalization"),
    "sample": (cmd_sample, "inverse-transform samples of the power-law density"),
    "langevin": (cmd_langevin, "finite-temperature Langevin ensemble summary"),
    "fdt-check": (cmd_fdt_check, "fluctuation-dissipation round trip and closure residuals"),
    "diagrams": (cmd_diagrams, "diagram kernel, closed form vs brute-force enumeration"),
    "transport": (cmd_transport, "mobility and diffusion constant over a temperature sweep"),
    "ck": (cmd_ck, "Chapman-Kolmogorov residual of the power-law density"),
}


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="quadbath", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    subs = {}
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--config", default=None, help="key=value file or run manifest")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default="-", help="output path ('-' for stdout)")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--epsabs", type=float, default=1e-12)
        p.add_argument("--epsrel", type=float, default=1e-10)
        p.add_argument("--uv", type=float, default=1e3, help="UV frequency cutoff")
        p.add_argument("--threads", type=int, default=0, help="worker threads (0: auto)")
        subs[name] = p

    p = subs["cumulants"]
    p.add_argument("--n", default="4", help="even orders, comma-separated")
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=0.1)
    p.add_argument("--t", default="1e3:1e5:5:log")
    p.add_argument("--seminumeric", action=argparse.BooleanOptionalAction, default=True)

    p = subs["msd"]
    p.add_argument("--model", default="a,b,quadratic")
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--g", type=float, default=1.0)
    p.add_argument("--t", default="1e2:1e4:5:log")

    for name in ("pdf", "sample"):
        p = subs[name]
        p.add_argument("--lambda-tilde", type=float, default=None)
        p.add_argument("--vt", type=float, default=None)
        p.add_argument("--m", type=float, default=1.0)
        p.add_argument("--gamma", type=float, default=0.1)
        p.add_argument("--time", type=float, default=None)
    subs["pdf"].add_argument("--moments", default="2,4,6")
    subs["pdf"].add_argument("--x", default=None, help="position sweep for the density table")
    subs["sample"].add_argument("--count", type=int, default=1000)

    p = subs["langevin"]
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=0.02)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--paths", type=int, default=10000)
    p.add_argument("--record-every", type=int, default=10)
    p.add_argument("--orders", default="2,4")

    p = subs["fdt-check"]
    p.add_argument("--T", default="0,0.5,1")
    p.add_argument("--points", type=int, default=200)

    p = subs["diagrams"]
    p.add_argument("--n", default="2,4,6,8")
    p.add_argument("--omega", default="0.5,1,2")

    subs["transport"].add_argument("--T", default="0.5:4:8:lin")

    p = subs["ck"]
    p.add_argument("--lambda-tilde", type=float, default=1.0)
    p.add_argument("--v", type=float, default=0.2)
    p.add_argument("--t1", default="50")
    p.add_argument("--t2", default="50")
    p.add_argument("--points", type=int, default=200)
    return parser, subs


def parse_args(argv) -> argparse.Namespace:
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        sub = subs[args.command]
        known = {a.dest: a for a in sub._actions}
        defaults = {}
        for key, raw in read_config(args.config).items():
            if key in ("command", "config"):
                continue
            if key not in known:
                raise UsageError(f"unknown config key {key!r} for {args.command}")
            action = known[key]
            if isinstance(action, argparse.BooleanOptionalAction):
                defaults[key] = raw.lower() in ("1", "true", "yes", "on")
            elif raw.lower() == "none" and action.default is None:
                defaults[key] = None
            else:
                defaults[key] = action.type(raw) if action.type else raw
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def _config_of(args) -> dict:
    return {k: _plain(v) for k, v in sorted(vars(args).items()) if k not in ("config",)}


def render(rows, fmt_name: str, manifest: dict) -> str:
    columns = list(rows[0]) if rows else []
    if fmt_name == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt(row[c]) for c in columns])
        return buf.getvalue()
    stable = {k: v for k, v in manifest.items() if k not in VOLATILE}
    stable["config"] = {k: v for k, v in manifest["config"].items() if k not in PLACEMENT}
    data = [{c: _plain(row[c]) for c in columns} for row in rows]
    return json.dumps({"manifest": stable, "data": data}, indent=1, allow_nan=False) + "\n"


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    start = time.perf_counter()
    try:
        args = parse_args(argv)
    except UsageError as exc:
        print(f"quadbath: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"quadbath: error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except SystemExit as exc:
        return int(exc.code or 0)
    func = COMMANDS[args.command][0]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rows, summary = func(args)
    except QuadratureError as exc:
        print(f"quadbath: numerical failure in {args.command}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, NotImplementedError) as exc:
        print(f"quadbath: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    manifest = {
        "tool": "quadbath",
        "version": __version__,
        "command": args.command,
        "config": _config_of(args),
        "seed": args.seed,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "columns": list(rows[0]) if rows else [],
        "rows": len(rows),
        "summary": {k: _plain(v) for k, v in summary.items()},
        "created_unix": time.time(),
        "wall_time_s": time.perf_counter() - start,
    }
    text = render(rows, args.format, manifest)
    if args.output == "-":
        stdout.write(text)
        return EXIT_OK
    try:
        out = Path(args.output)
        out.write_text(text, encoding="utf-8")
        Path(f"{out}.manifest.json").write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")
    except OSError as exc:
        print(f"quadbath: error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run())
