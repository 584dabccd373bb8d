"""Command-line front door for the clutch, linkage, control, EMG, and sim tools.

Data CSVs carry full float precision so fits round-trip; printed summaries
use six significant digits. Exit codes: 0 success, 1 domain error,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .clutch import ClutchConfig, fit_force_voltage, force_to_power_ratio, peak_holding_force, power_consumption
from .control import ControlState, SensorSample, Thresholds, apply_command, control_step, pwm_duty
from .emg import AnalysisWindow, EmgTrace, bandpass, iemg, mdf, rms_windowed
from .kinetics import LinkageGeometry, load_geometry, support_force
from .report import (
    PUBLISHED_SUPPORT_AT_2V,
    coefficient_mismatch_summary,
    discrepancy_report,
    format_report,
    published_support_polynomial,
)
from .sim import SIMLOG_COLUMNS, load_scenario, run_scenario, scenario_to_dict
from .waveform import SwitchMode, SwitchingProfile, sample_profile, switching_voltage


def _fmt(x) -> str:
    """Display formatting: six significant digits."""
    return format(float(x), ".6g")


def _full(x) -> str:
    """Data formatting: shortest round-trip representation."""
    return repr(float(x))


def _resolve_outdir(args) -> str:
    outdir = getattr(args, "outdir", None) or os.environ.get("MRGRIP_OUTDIR") or "."
    os.makedirs(outdir, exist_ok=True)
    return outdir


def _write_manifest(args, argv, extra=None) -> None:
    outdir = _resolve_outdir(args)
    manifest = {
        "tool": "mrgrip",
        "version": __version__,
        "argv": list(argv),
        "seed": getattr(args, "seed", None),
    }
    if extra:
        manifest.update(extra)
    with open(os.path.join(outdir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _open_out(args):
    out = getattr(args, "out", None)
    if out:
        return open(out, "w", encoding="utf-8", newline="")
    return sys.stdout


def _close_out(fh) -> None:
    if fh is not sys.stdout:
        fh.close()


def cmd_clutch_curve(args, argv) -> int:
    if args.step <= 0:
        raise ValueError(f"--step must be positive, got {args.step:.6g}")
    if args.v_to < args.v_from:
        raise ValueError("--to must be >= --from")
    cfg = ClutchConfig()
    _write_manifest(args, argv)
    fh = _open_out(args)
    try:
        fh.write("voltage_v,peak_force_n,power_w,ratio_n_per_w\n")
        n = int(math.floor((args.v_to - args.v_from) / args.step + 1e-9)) + 1
        for k in range(n):
            v = args.v_from + k * args.step
            force = peak_holding_force(v, cfg.force_model)
            power = power_consumption(v, cfg)
            ratio = force_to_power_ratio(v, cfg) if v > 0 else float("nan")
            fh.write(f"{_full(v)},{_full(force)},{_full(power)},{_full(ratio)}\n")
    finally:
        _close_out(fh)
    return 0


def cmd_clutch_fit(args, argv) -> int:
    samples = []
    with open(args.input, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"voltage_v", "peak_force_n"} <= set(reader.fieldnames):
            raise ValueError(
                f"{args.input} must have a header with voltage_v and peak_force_n columns"
            )
        for row in reader:
            samples.append((float(row["voltage_v"]), float(row["peak_force_n"])))
    result = fit_force_voltage(samples, degree=args.degree)
    _write_manifest(args, argv)
    fh = _open_out(args)
    try:
        fh.write("name,value\n")
        for k, c in enumerate(result.model.coeffs):
            fh.write(f"c{k},{_full(c)}\n")
        fh.write(f"v_max,{_full(result.model.v_max)}\n")
        fh.write(f"rmse,{_full(result.rmse)}\n")
        fh.write(f"max_abs_residual,{_full(result.max_abs_residual)}\n")
        fh.write(f"n_samples,{len(samples)}\n")
    finally:
        _close_out(fh)
    return 0


def cmd_waveform(args, argv) -> int:
    profile = SwitchingProfile(
        v_current=args.vc, v_target=args.vt, tau=args.tau, m=args.m, mode=SwitchMode(args.mode)
    )
    _write_manifest(args, argv)
    if args.t is not None:
        print(f"{_fmt(switching_voltage(args.t, profile))} V")
        return 0
    dt = args.dt if args.dt is not None else profile.tau / 1000.0
    times, volts = sample_profile(profile, dt)
    fh = _open_out(args)
    try:
        fh.write("t_s,v_volts\n")
        for t, v in zip(times, volts):
            fh.write(f"{_full(t)},{_full(v)}\n")
    finally:
        _close_out(fh)
    return 0


def cmd_kinetics_support(args, argv) -> int:
    geom = load_geometry(args.geometry) if args.geometry else LinkageGeometry()
    _write_manifest(args, argv)
    v = args.volts
    print(f"support force at {_fmt(v)} V (composed model): {_fmt(support_force(v, geom))} N")
    print(
        f"support force at {_fmt(v)} V (published polynomial): "
        f"{_fmt(published_support_polynomial(v))} N"
    )
    if abs(v - 2.0) < 1e-9:
        print(
            f"support force at {_fmt(v)} V (published headline): "
            f"{_fmt(PUBLISHED_SUPPORT_AT_2V)} N"
        )
    return 0


def cmd_control_trace(args, argv) -> int:
    thr = Thresholds(th1=args.th1, th2=args.th2, debounce_n=args.debounce)
    rows = []
    with open(args.input, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        needed = {"t_s", "s1_volts", "s2_volts"}
        if reader.fieldnames is None or not needed <= set(reader.fieldnames):
            raise ValueError(f"{args.input} must have columns t_s,s1_volts,s2_volts")
        for row in reader:
            rows.append(
                (float(row["t_s"]), float(row["s1_volts"]), float(row["s2_volts"]))
            )
    _write_manifest(args, argv)
    state = ControlState()
    fh = _open_out(args)
    try:
        fh.write("t_s,mode,command,v_cmd_volts,duty\n")
        for t, s1, s2 in rows:
            state, command = control_step(state, SensorSample(s1=s1, s2=s2, t=t), thr)
            state = apply_command(state, command, v_on=args.v_on)
            duty = pwm_duty(state.v_command)
            fh.write(
                f"{_full(t)},{state.mode.value},{command.value},"
                f"{_full(state.v_command)},{_full(duty)}\n"
            )
    finally:
        _close_out(fh)
    return 0


def _read_emg_csv(path) -> list[EmgTrace]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0] != "t_s" or len(header) < 2:
            raise ValueError(f"{path} must have a header t_s,<channel>,...")
        data = np.array([[float(x) for x in row] for row in reader])
    if data.size == 0 or data.shape[0] < 3:
        raise ValueError(f"{path} holds too few samples")
    t = data[:, 0]
    dts = np.diff(t)
    dt_med = float(np.median(dts))
    if dt_med <= 0 or np.max(np.abs(dts - dt_med)) > 1e-6 * dt_med:
        raise ValueError(f"{path} is not uniformly sampled")
    rate = 1.0 / dt_med
    return [EmgTrace(data[:, k], rate, header[k]) for k in range(1, data.shape[1])]


def cmd_emg_analyze(args, argv) -> int:
    traces = _read_emg_csv(args.input)
    win = AnalysisWindow(length=args.window, overlap=args.overlap)
    outdir = _resolve_outdir(args)
    _write_manifest(args, argv)
    filtered = [bandpass(tr) for tr in traces]
    metrics = {}
    for name, fn in (("rms", rms_windowed), ("mdf", mdf)):
        per_channel = [fn(tr, win) for tr in filtered]
        times = per_channel[0][0]
        path = os.path.join(outdir, f"{name}.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("t_s," + ",".join(tr.label for tr in filtered) + "\n")
            for k, t in enumerate(times):
                vals = ",".join(_full(series[1][k]) for series in per_channel)
                fh.write(f"{_full(t)},{vals}\n")
        metrics[name] = per_channel
    iemg_path = os.path.join(outdir, "iemg.csv")
    with open(iemg_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("channel,iemg_mv_s\n")
        for tr in filtered:
            fh.write(f"{tr.label},{_full(iemg(tr))}\n")
    for k, tr in enumerate(filtered):
        print(
            f"{tr.label}: iemg {_fmt(iemg(tr))} mV*s, "
            f"mean rms {_fmt(np.mean(metrics['rms'][k][1]))} mV, "
            f"mean mdf {_fmt(np.mean(metrics['mdf'][k][1]))} Hz"
        )
    print(f"wrote rms.csv, mdf.csv, iemg.csv to {outdir}")
    return 0


def _plot_column(log, column, outdir) -> str:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    values = getattr(log, column)
    fig, ax = plt.subplots(figsize=(8, 3))
    ax.plot(log.t, values, lw=1.0)
    ax.set_xlabel("time (s)")
    ax.set_ylabel(column)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = os.path.join(outdir, f"{column}.svg")
    fig.savefig(path)
    plt.close(fig)
    return path


def cmd_sim_run(args, argv) -> int:
    scenario = load_scenario(args.scenario)
    geom = load_geometry(args.geometry) if args.geometry else LinkageGeometry()
    log = run_scenario(scenario, geom=geom)
    outdir = _resolve_outdir(args)
    _write_manifest(
        args, argv, extra={"scenario": scenario_to_dict(scenario), "seed": scenario.seed}
    )
    log_path = os.path.join(outdir, "simlog.csv")
    with open(log_path, "w", encoding="utf-8", newline="") as fh:
        log.write_csv(fh)
    print(f"log written to {log_path} ({len(log)} rows)")
    print(
        f"peak support {_fmt(log.f_support.max())} N, "
        f"peak residual {_fmt(log.f_muscle_residual.max())} N, "
        f"final mode {log.mode[-1]}"
    )
    numeric = [c for c in SIMLOG_COLUMNS if c not in ("t", "mode")]
    for column in args.plot or ():
        if column not in numeric:
            raise ValueError(f"cannot plot column {column!r}; numeric columns: {numeric}")
        print(f"plot written to {_plot_column(log, column, outdir)}")
    return 0


def cmd_report(args, argv) -> int:
    _write_manifest(args, argv)
    rows = discrepancy_report()
    sys.stdout.write(format_report(rows, fmt=args.format))
    if args.format == "text":
        print(coefficient_mismatch_summary())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrgrip",
        description="Digital twin tools for the MR clutch grip-assist exoskeleton.",
    )
    parser.add_argument("--version", action="version", version=f"mrgrip {__version__}")
    sub = parser.add_subparsers(dest="group", required=True)

    p_clutch = sub.add_parser("clutch", help="clutch force, power, and fitting tools")
    clutch_sub = p_clutch.add_subparsers(dest="cmd", required=True)
    p_curve = clutch_sub.add_parser("curve", help="CSV sweep of force, power, and ratio")
    p_curve.add_argument("--from", dest="v_from", type=float, default=0.0)
    p_curve.add_argument("--to", dest="v_to", type=float, default=3.0)
    p_curve.add_argument("--step", type=float, default=0.25)
    p_curve.add_argument("--out", help="output CSV path (default stdout)")
    p_curve.add_argument("--outdir", help="manifest directory")
    p_curve.set_defaults(func=cmd_clutch_curve)
    p_fit = clutch_sub.add_parser("fit", help="fit characterization CSV (voltage_v,peak_force_n)")
    p_fit.add_argument("--input", required=True)
    p_fit.add_argument("--degree", type=int, default=5)
    p_fit.add_argument("--out", help="output CSV path (default stdout)")
    p_fit.add_argument("--outdir", help="manifest directory")
    p_fit.set_defaults(func=cmd_clutch_fit)

    p_wave = sub.add_parser("waveform", help="soft-switching profile samples")
    p_wave.add_argument("--vc", type=float, required=True, help="voltage before the switch (V)")
    p_wave.add_argument("--vt", type=float, required=True, help="voltage after the switch (V)")
    p_wave.add_argument("--tau", type=float, default=0.05)
    p_wave.add_argument("--m", type=int, default=3)
    p_wave.add_argument(
        "--mode",
        choices=[m.value for m in SwitchMode],
        default=SwitchMode.BOUNDARY_CONSISTENT.value,
    )
    p_wave.add_argument("--t", type=float, help="evaluate at one instant instead of sweeping")
    p_wave.add_argument("--dt", type=float, help="sample step for the sweep (default tau/1000)")
    p_wave.add_argument("--out", help="output CSV path (default stdout)")
    p_wave.add_argument("--outdir", help="manifest directory")
    p_wave.set_defaults(func=cmd_waveform)

    p_kin = sub.add_parser("kinetics", help="finger linkage force transmission")
    kin_sub = p_kin.add_subparsers(dest="cmd", required=True)
    p_sup = kin_sub.add_parser("support-force", help="whole-hand support force at a voltage")
    p_sup.add_argument("--volts", type=float, required=True)
    p_sup.add_argument("--geometry", help="JSON geometry override file")
    p_sup.add_argument("--outdir", help="manifest directory")
    p_sup.set_defaults(func=cmd_kinetics_support)

    p_ctl = sub.add_parser("control", help="grip-intent state machine")
    ctl_sub = p_ctl.add_subparsers(dest="cmd", required=True)
    p_trace = ctl_sub.add_parser("trace", help="run the latch over a sensor CSV")
    p_trace.add_argument("--input", required=True, help="CSV with t_s,s1_volts,s2_volts")
    p_trace.add_argument("--th1", type=float, default=1.0)
    p_trace.add_argument("--th2", type=float, default=2.0)
    p_trace.add_argument("--debounce", type=int, default=3)
    p_trace.add_argument("--v-on", dest="v_on", type=float, default=2.0)
    p_trace.add_argument("--out", help="output CSV path (default stdout)")
    p_trace.add_argument("--outdir", help="manifest directory")
    p_trace.set_defaults(func=cmd_control_trace)

    p_emg = sub.add_parser("emg", help="surface-EMG metrics")
    emg_sub = p_emg.add_subparsers(dest="cmd", required=True)
    p_an = emg_sub.add_parser("analyze", help="bandpass + RMS/iEMG/MDF over an EMG CSV")
    p_an.add_argument("--input", required=True, help="CSV with t_s,<channel>,...")
    p_an.add_argument("--window", type=float, default=0.5, help="analysis window (s)")
    p_an.add_argument("--overlap", type=float, default=0.5)
    p_an.add_argument("--outdir", help="metric CSV directory")
    p_an.set_defaults(func=cmd_emg_analyze)

    p_sim = sub.add_parser("sim", help="scenario engine")
    sim_sub = p_sim.add_subparsers(dest="cmd", required=True)
    p_run = sim_sub.add_parser("run", help="run a scenario JSON into a per-step CSV log")
    p_run.add_argument("--scenario", required=True, help="scenario JSON file")
    p_run.add_argument("--geometry", help="JSON geometry override file")
    p_run.add_argument("--outdir", help="output directory")
    p_run.add_argument("--plot", action="append", help="also write an SVG of this column")
    p_run.set_defaults(func=cmd_sim_run)

    p_rep = sub.add_parser("report", help="published-vs-model cross-checks")
    rep_sub = p_rep.add_subparsers(dest="cmd", required=True)
    p_disc = rep_sub.add_parser("discrepancies", help="list conflicting published figures")
    p_disc.add_argument("--format", choices=["text", "csv"], default="text")
    p_disc.add_argument("--outdir", help="manifest directory")
    p_disc.set_defaults(func=cmd_report)

    return parser


def cli_dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, argv)
    except (ValueError, OSError) as exc:
        message = " ".join(str(exc).split())
        print(f"error: {message}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
