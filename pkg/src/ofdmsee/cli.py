"""Command-line interface.

Subcommands cover the scenario sweeps (se-sweep, ee-sweep, tradeoff), the
switching-schedule frontier (pas-frontier), Monte Carlo validation
(mc-validate), datasheet inspection (datasheet), and the loading-factor
optimizers (optimal-xi). All outputs embed the resolved configuration in a
comment header and are byte-identical across reruns with the same inputs.
"""

import argparse
import json
import math
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .ee_engine import ee_sweep, xi_ee_opt, pareto_window
from .mc_oracle import FrameConfig, empirical_pdf_distance, estimate_mi, simulate_frames
from .pa_models import (
    drain_efficiency,
    embedded_datasheet,
    find_pa,
    load_datasheet,
)
from .pas_engine import Duplex, PaArm, PasConfig, pas_frontier
from .power_models import BS_PRESETS
from .se_engine import build_scenario, se, se_sweep, xi_se_opt

_FIGURES = {
    "se-sweep": "se-vs-loading",
    "ee-sweep": "ee-vs-loading",
    "tradeoff": "se-ee-tradeoff",
    "pas-frontier": "pas-frontier",
    "mc-validate": "mc-validation",
    "datasheet": "pa-datasheet",
    "optimal-xi": "optimal-loading",
}


# ---------------------------------------------------------------------------
# Argument plumbing


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError("grid must be min:max:n or min:max:n:log")
    lo, hi = float(parts[0]), float(parts[1])
    n = int(parts[2])
    spacing = parts[3].lower() if len(parts) == 4 else "lin"
    if spacing not in ("lin", "linear", "log"):
        raise argparse.ArgumentTypeError("grid spacing must be 'lin' or 'log'")
    if not (0.0 < lo < hi <= 1.0):
        raise argparse.ArgumentTypeError("grid needs 0 < min < max <= 1")
    if n < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 points")
    if spacing == "log":
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


def _parse_float_list(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated list of numbers")


def _resolve_pa(token):
    """PA lookup: embedded model name / row id, or file.csv:row."""
    if ":" in token:
        path, _, row = token.rpartition(":")
        specs = load_datasheet(path)
        for spec in specs:
            if spec.model_name == row:
                return spec
        try:
            return specs[int(row)]
        except (ValueError, IndexError):
            raise KeyError(f"row {row!r} not found in {path}") from None
    return find_pa(token)


def _channel_args(parser):
    parser.add_argument("--g-db", type=float, default=5.0, help="channel gain constant, dB")
    parser.add_argument("--alpha", type=float, default=3.76, help="path-loss exponent")
    parser.add_argument("--d-km", type=float, default=0.2, help="link distance, km")
    parser.add_argument(
        "--noise-psd", type=float, default=-174.0, help="noise PSD, dBm/Hz"
    )
    parser.add_argument("--bandwidth", type=float, default=1e7, help="bandwidth, Hz")


def _common_args(parser, default_grid="0.005:1:80:log"):
    parser.add_argument("--config", default=None, help="key=value config file")
    parser.add_argument("--pa", default="SM2122-44L", help="PA preset, row id, or file:row")
    parser.add_argument(
        "--bs-type", default="macro", choices=sorted(BS_PRESETS), help="transmitter preset"
    )
    parser.add_argument(
        "--xi-grid", type=_parse_grid, default=_parse_grid(default_grid),
        help="loading grid min:max:n[:log]",
    )
    parser.add_argument("--seed", type=int, default=12345, help="RNG seed")
    parser.add_argument("--out", default=None, help="output path")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    _channel_args(parser)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ofdmsee",
        description="Spectral/energy efficiency of clipped OFDM links and "
        "amplifier-switching schedules",
    )
    parser.add_argument("--version", action="version", version=f"ofdmsee {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("se-sweep", help="spectral efficiency vs loading factor")
    _common_args(p)

    p = sub.add_parser("ee-sweep", help="energy efficiency vs loading factor")
    _common_args(p)
    p.add_argument("--n-ways", type=int, default=2, help="Doherty way count")

    p = sub.add_parser("tradeoff", help="joined SE-EE curve over the loading grid")
    _common_args(p)
    p.add_argument("--n-ways", type=int, default=2)

    p = sub.add_parser("optimal-xi", help="optimal loading factors, all methods")
    _common_args(p)
    p.add_argument("--n-ways", type=int, default=2)

    p = sub.add_parser("pas-frontier", help="SE-EE frontier of a two-PA switching schedule")
    _common_args(p, default_grid="0.02:1:48:log")
    p.add_argument("--pa-low", default="SM2122-44L")
    p.add_argument("--pa-high", default="SM1720-50")
    p.add_argument("--n-ways", type=int, default=2)
    p.add_argument("--frames", type=int, default=20, help="frames per schedule window")
    p.add_argument("--frame-length", type=float, default=0.01, help="frame length, s")
    p.add_argument("--duplex", choices=("tdd", "fdd"), default=None)
    p.add_argument("--eps", type=float, default=None, help="switching dead time, s")
    p.add_argument("--gs-db", type=float, default=None, help="switch insertion loss, dB")
    p.add_argument("--xi-mode", choices=("shared", "per_pa"), default="shared")
    p.add_argument("--targets", type=_parse_float_list, default=None,
                   help="explicit SE targets, b/s/Hz")

    p = sub.add_parser("mc-validate", help="Monte Carlo validation of the analytic engine")
    _common_args(p)
    p.add_argument("--xi", type=_parse_float_list, default=[0.05, 0.1, 0.2, 0.4])
    p.add_argument("--samples", type=int, default=200000)
    p.add_argument("--n-sub", type=int, default=256, help="subcarriers per frame")
    p.add_argument("--cp", type=int, default=16, help="cyclic-prefix length")

    p = sub.add_parser("datasheet", help="list amplifier table with drain efficiency")
    p.add_argument("--config", default=None)
    p.add_argument("--file", default=None, help="CSV datasheet to load instead of the embedded table")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    return parser


def _read_config_file(path):
    pairs = []
    with open(path, "r") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, _, value = line.partition("=")
            flag = "--" + key.strip().replace("_", "-")
            pairs.extend([flag, value.strip()])
    return pairs


def _effective_argv(argv):
    """Insert config-file entries after the subcommand so flags override them."""
    if not argv or "--config" not in " ".join(argv):
        return argv
    cfg_path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            cfg_path = argv[i + 1]
            break
        if tok.startswith("--config="):
            cfg_path = tok.split("=", 1)[1]
            break
    if cfg_path is None:
        return argv
    file_args = _read_config_file(cfg_path)
    return [argv[0]] + file_args + argv[1:]


# ---------------------------------------------------------------------------
# Output plumbing


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return "%.12g" % value
    return str(value)


def _render_csv(command, params, columns, rows):
    lines = [f"# tool: ofdmsee {__version__}", f"# figure: {_FIGURES[command]}"]
    for key in sorted(params):
        lines.append(f"# {key} = {_fmt(params[key])}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _render_json(command, params, columns, rows):
    doc = {
        "tool": "ofdmsee",
        "version": __version__,
        "figure": _FIGURES[command],
        "config": {k: _fmt(v) for k, v in params.items()},
        "columns": list(columns),
        "rows": [[_fmt(v) for v in row] for row in rows],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _note(args, text):
    """Human-facing summary line; '#'-prefixed so stdout stays a valid table."""
    if getattr(args, "format", "csv") == "json" and getattr(args, "out", None) is None:
        return
    print(f"# {text}")


def _write_table(args, command, params, columns, rows):
    fmt = getattr(args, "format", "csv")
    text = (_render_json if fmt == "json" else _render_csv)(command, params, columns, rows)
    out = getattr(args, "out", None)
    if out is None:
        sys.stdout.write(text)
        return None
    with open(out, "w", newline="") as fh:
        fh.write(text)
    print(f"wrote {out} ({len(rows)} rows)")
    return out


def _scenario_params(args, spec):
    return {
        "pa": spec.model_name,
        "bs_type": args.bs_type,
        "g_db": args.g_db,
        "alpha": args.alpha,
        "d_km": args.d_km,
        "noise_psd_dbm_hz": args.noise_psd,
        "bandwidth_hz": args.bandwidth,
        "xi_grid_min": float(args.xi_grid[0]),
        "xi_grid_max": float(args.xi_grid[-1]),
        "xi_grid_points": int(args.xi_grid.size),
        "seed": args.seed,
    }


def _make_scenario(args, spec):
    return build_scenario(args.g_db, args.alpha, args.d_km, args.noise_psd, args.bandwidth, spec)


def _power_params(args, spec):
    # site overhead from the preset, amplifier size from the actual PA
    return replace(BS_PRESETS[args.bs_type], p_max_out=spec.p_max_out)


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_se_sweep(args):
    spec = _resolve_pa(args.pa)
    scen = _make_scenario(args, spec)
    data = se_sweep(scen, args.xi_grid)
    params = _scenario_params(args, spec)
    params["gamma_db"] = 10.0 * math.log10(scen.gamma)
    columns = ("xi", "se_exact", "se_ideal", "se_ibo", "pr_clip")
    rows = list(zip(*(data[c] for c in columns)))
    _write_table(args, "se-sweep", params, columns, rows)
    best = int(np.argmax(data["se_exact"]))
    _note(args, f"max SE {_fmt(data['se_exact'][best])} b/s/Hz at xi = {_fmt(data['xi'][best])}")
    return 0


def _cmd_ee_sweep(args):
    spec = _resolve_pa(args.pa)
    scen = _make_scenario(args, spec)
    power = _power_params(args, spec)
    data = ee_sweep(scen, power, args.xi_grid, n_ways=args.n_ways)
    params = _scenario_params(args, spec)
    params.update({"n_ways": args.n_ways, "p_fix_w": power.p_fix, "c_slope": power.c})
    columns = ("xi", "ee_exact", "ee_linear", "ee_ideal", "pc_watts")
    rows = list(zip(*(data[c] for c in columns)))
    _write_table(args, "ee-sweep", params, columns, rows)
    best = int(np.argmax(data["ee_exact"]))
    _note(args, f"max EE {_fmt(data['ee_exact'][best])} b/J at xi = {_fmt(data['xi'][best])}")
    return 0


def _cmd_tradeoff(args):
    spec = _resolve_pa(args.pa)
    scen = _make_scenario(args, spec)
    power = _power_params(args, spec)
    se_data = se_sweep(scen, args.xi_grid)
    ee_data = ee_sweep(scen, power, args.xi_grid, n_ways=args.n_ways)
    window = pareto_window(scen, power, n_ways=args.n_ways)
    params = _scenario_params(args, spec)
    params.update(
        {"n_ways": args.n_ways, "window_lo": window[0], "window_hi": window[1]}
    )
    columns = ("xi", "se_exact", "ee_exact", "se_approx", "ee_approx")
    rows = list(
        zip(
            se_data["xi"],
            se_data["se_exact"],
            ee_data["ee_exact"],
            se_data["se_ibo"],
            ee_data["ee_linear"],
        )
    )
    _write_table(args, "tradeoff", params, columns, rows)
    _note(args, f"tradeoff window: xi in [{_fmt(window[0])}, {_fmt(window[1])}]")
    return 0


def _cmd_optimal_xi(args):
    spec = _resolve_pa(args.pa)
    scen = _make_scenario(args, spec)
    power = _power_params(args, spec)
    xi_se_cf = xi_se_opt(scen, method="closed_form")
    xi_se_ex = xi_se_opt(scen, method="exact_root")
    xi_ee_cf, piece_cf = xi_ee_opt(scen, power, method="closed_form", n_ways=args.n_ways)
    xi_ee_ex, piece_ex = xi_ee_opt(scen, power, method="exact", n_ways=args.n_ways)
    params = _scenario_params(args, spec)
    params["n_ways"] = args.n_ways
    columns = ("quantity", "method", "xi", "piece")
    rows = [
        ("xi_se", "closed-form", xi_se_cf, ""),
        ("xi_se", "stationarity-root", xi_se_ex, ""),
        ("xi_ee", "closed-form", xi_ee_cf, piece_cf),
        ("xi_ee", "derivative-root", xi_ee_ex, piece_ex),
    ]
    for quantity, label, value, piece in rows:
        suffix = f" (piece {piece})" if piece != "" else ""
        print(f"{quantity} {label}: {_fmt(value)}{suffix}")
    if args.out is not None:
        _write_table(args, "optimal-xi", params, columns, rows)
    return 0


def _make_arm(args, pa_token):
    spec = _resolve_pa(pa_token)
    scen = _make_scenario(args, spec)
    return PaArm(spec=spec, scenario=scen, power=_power_params(args, spec))


_PAS_PRESETS = (
    ("ideal", Duplex.TDD, 0.0, 0.0),
    ("tdd-gs1db", Duplex.TDD, 0.0, 1.0),
    ("fdd-eps10us", Duplex.FDD, 1e-5, 1.0),
    ("fdd-eps1ms", Duplex.FDD, 1e-3, 1.0),
)


def _cmd_pas_frontier(args):
    low = _make_arm(args, args.pa_low)
    high = _make_arm(args, args.pa_high)
    explicit = not (args.duplex is None and args.eps is None and args.gs_db is None)
    if explicit:
        runs = [
            (
                "custom",
                Duplex(args.duplex or "fdd"),
                args.eps if args.eps is not None else 0.0,
                args.gs_db if args.gs_db is not None else 0.0,
            )
        ]
    else:
        runs = list(_PAS_PRESETS)
    if args.targets is None:
        probe = PasConfig(
            pa_low=low, pa_high=high, frame_length=args.frame_length,
            frame_count=args.frames, kappa=0.0, n_ways=args.n_ways,
        )
        high_se = [se(x, probe.pa_high.scenario) for x in args.xi_grid]
        targets = np.linspace(0.2, 1.0, 17) * max(high_se)
    else:
        targets = np.asarray(args.targets, dtype=float)
    stem = args.out if args.out is not None else "pas-frontier"
    for ext in (".csv", ".json"):
        if stem.endswith(ext):
            stem = stem[: -len(ext)]
    status = 0
    for name, duplex, eps, gs_db in runs:
        config = PasConfig(
            pa_low=low,
            pa_high=high,
            frame_length=args.frame_length,
            frame_count=args.frames,
            kappa=0.0,
            insertion_loss_db=gs_db,
            switching_time=eps,
            duplex=duplex,
            n_ways=args.n_ways,
        )
        points = pas_frontier(targets, config, xi_mode=args.xi_mode, xi_grid=args.xi_grid)
        params = {
            "pa_low": low.spec.model_name,
            "pa_high": high.spec.model_name,
            "bs_type": args.bs_type,
            "duplex": duplex.value,
            "eps_s": eps,
            "gs_db": gs_db,
            "frames": args.frames,
            "frame_length_s": args.frame_length,
            "xi_mode": args.xi_mode,
            "variant": name,
        }
        columns = ("se_target", "ee", "kappa", "xi1", "xi2", "feasible")
        rows = [(p.se_target, p.ee, p.kappa, p.xi1, p.xi2, p.feasible) for p in points]
        run_args = argparse.Namespace(
            format=args.format,
            out=(stem + "-" + name + "." + args.format) if (args.out is not None or not explicit) else None,
        )
        if explicit and args.out is not None:
            run_args.out = stem + "." + args.format
        _write_table(run_args, "pas-frontier", params, columns, rows)
    return status


def _cmd_mc_validate(args):
    spec = _resolve_pa(args.pa)
    scen = _make_scenario(args, spec)
    frames = max(1, -(-args.samples // args.n_sub))
    params = _scenario_params(args, spec)
    params.update({"samples": frames * args.n_sub, "n_subcarriers": args.n_sub, "cp": args.cp})
    columns = ("xi", "samples", "ks_distance", "mi_estimate", "se_analytic", "error_bits")
    rows = []
    for xi in args.xi:
        config = FrameConfig(
            n_subcarriers=args.n_sub, cp_length=args.cp, n_frames=frames, seed=args.seed
        )
        samples = simulate_frames(config, xi, scen)
        ks = empirical_pdf_distance(samples, xi, scen)
        mi = estimate_mi(samples, scen)
        se_val = se(xi, scen)
        rows.append((xi, samples.size, ks, mi, se_val, mi - se_val))
        _note(
            args,
            f"xi={_fmt(xi)}: ks={_fmt(ks)} mi={_fmt(mi)} "
            f"se={_fmt(se_val)} err={_fmt(mi - se_val)}",
        )
    _write_table(args, "mc-validate", params, columns, rows)
    return 0


def _cmd_datasheet(args):
    specs = embedded_datasheet() if args.file is None else load_datasheet(args.file)
    params = {"source": args.file if args.file is not None else "embedded"}
    columns = ("model", "p_max_out_w", "gain", "p_max_in_w", "drain_efficiency", "turn_on_s")
    rows = []
    for spec in specs:
        eta = drain_efficiency(spec)
        rows.append(
            (
                spec.model_name,
                spec.p_max_out,
                spec.gain,
                spec.p_max_in,
                eta if eta is not None else "",
                spec.turn_on_time if spec.turn_on_time is not None else "",
            )
        )
    _write_table(args, "datasheet", params, columns, rows)
    if getattr(args, "out", None) is None:
        etas = [drain_efficiency(s) for s in specs]
        etas = [e for e in etas if e is not None]
        if etas:
            _note(args, f"median drain efficiency: {_fmt(float(np.median(etas)))}")
    return 0


_COMMANDS = {
    "se-sweep": _cmd_se_sweep,
    "ee-sweep": _cmd_ee_sweep,
    "tradeoff": _cmd_tradeoff,
    "optimal-xi": _cmd_optimal_xi,
    "pas-frontier": _cmd_pas_frontier,
    "mc-validate": _cmd_mc_validate,
    "datasheet": _cmd_datasheet,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _effective_argv(argv)
    except (OSError, ValueError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except Exception as exc:  # fail with a machine-readable record
        record = {
            "error": type(exc).__name__,
            "message": str(exc),
            "command": args.command,
        }
        sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
