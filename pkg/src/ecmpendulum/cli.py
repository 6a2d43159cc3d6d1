"""Command-line entry point.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import entropy as ent
from . import experiment as exp
from . import kernel as ker
from . import oscillator as osc
from . import physics as phy
from . import records, table
from .errors import NumericalError, ValidationError
from .regime import RegimeQuery, Thresholds, classify, classify_pendulum

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _thresholds(args) -> Thresholds:
    return Thresholds.parse(args.thresholds) if args.thresholds else Thresholds()


def _state_from_args(args) -> osc.OscillatorState:
    if args.omega is not None:
        omega = args.omega
    elif args.length is not None:
        omega = phy.angular_frequency(phy.PendulumSpec(args.length, args.mass, 0.0, args.g))
    else:
        raise ValidationError("give either --omega or --length")
    return osc.OscillatorState(args.mass, omega, args.level)


def cmd_table1(args) -> None:
    rows = table.build_table1(g=args.g, n=args.level, D=args.diameter, thresholds=_thresholds(args))
    if args.csv:
        flat = []
        for r in rows:
            d = r.as_dict()
            for key in ("lambda_min", "period", "amplitude", "angle"):
                d[f"paper_{key}"] = (r.paper_values or {}).get(key)
                d[f"delta_{key}"] = (r.deltas or {}).get(key)
            d["flags"] = "; ".join(r.flags)
            flat.append(d)
        cols = [
            "l_m", "M_kg", "omega_rad_s", "lambda_min_m", "paper_lambda_min", "delta_lambda_min",
            "amplitude_cm_m", "amplitude_free_end_m", "paper_amplitude", "delta_amplitude",
            "angle_deg", "paper_angle", "delta_angle", "period_s", "paper_period", "delta_period",
            "ratio", "regime", "flags",
        ]
        _emit(records.csv_text(flat, cols))
        return
    _emit(
        records.dumps(
            {
                "level_n": args.level,
                "diameter_m": args.diameter,
                "gravity_m_s2": args.g,
                "definitions": {
                    "angle": table.ANGLE_DEFINITION,
                    "amplitude": table.AMPLITUDE_DEFINITION,
                    "deltas": "(computed - printed) / printed",
                },
                "rows": [r.as_dict() for r in rows],
            }
        )
    )


def cmd_classify(args) -> None:
    report = classify(RegimeQuery(args.wavelength, args.size, args.freedom), _thresholds(args))
    _emit(records.dumps(report.as_dict()))


def cmd_pendulum(args) -> None:
    spec = phy.PendulumSpec(args.length, args.mass, args.diameter, args.g)
    n = args.level
    omega = phy.angular_frequency(spec)
    state = osc.OscillatorState(spec.mass_M, omega, n)
    out = {
        "arm_length_m": spec.arm_length_l,
        "mass_kg": spec.mass_M,
        "size_m": spec.size_D,
        "gravity_m_s2": spec.gravity_g,
        "level_n": n,
        "omega_rad_s": omega,
        "period_s": phy.classical_period(spec),
        "energy_J": state.energy,
        "lambda_min_m": phy.lambda_min(spec, n),
        "turning_point_cm_m": phy.turning_point(spec, n),
        "turning_point_free_end_m": phy.free_end_amplitude(spec, n),
        "regime": classify_pendulum(spec, n, _thresholds(args)).as_dict(),
    }
    _emit(records.dumps(out))


def cmd_eigenstate(args) -> None:
    state = _state_from_args(args)
    x = np.linspace(-args.span, args.span, args.grid) * state.turning_point
    rows = [
        {"x_m": xi, "psi": p, "density": p * p}
        for xi, p in zip(x, np.atleast_1d(osc.psi(state, x)))
    ]
    if args.json:
        _emit(records.dumps({"level_n": state.level_n, "mass_kg": state.mass_M, "omega_rad_s": state.omega,
                             "energy_J": state.energy, "turning_point_m": state.turning_point, "rows": rows}))
    else:
        _emit(records.csv_text(rows, ("x_m", "psi", "density")))


def cmd_sample(args) -> None:
    state = _state_from_args(args)
    config = osc.SamplerConfig(seed=args.seed, method=args.method)
    xs = osc.sample_positions(state, config, args.count, stream=args.stream)
    if args.json:
        _emit(records.dumps({"seed": args.seed, "stream": args.stream, "method": config.method,
                             "level_n": state.level_n, "positions_m": xs}))
    else:
        _emit(records.csv_text(({"position_m": x} for x in xs), ("position_m",)))


def cmd_entropy(args) -> None:
    prof = ent.entropy_profile(args.mass, args.dbar, args.tmin, args.tmax, args.points, args.count)
    rows = [
        {"T": t, "S/NkB": s, "S_J_per_K": sj}
        for t, s, sj in zip(prof.temperatures, prof.per_particle, prof.entropies)
    ]
    if args.json:
        _emit(records.dumps({"T_star_K": prof.T_star, "T_zero_K": prof.T_zero,
                             "negative_entropy_interval_K": prof.negative_interval(), "rows": rows}))
    else:
        _emit(records.csv_text(rows, ("T", "S/NkB", "S_J_per_K")))


def cmd_kernel(args) -> None:
    q = ker.KernelQuery.from_displacements(args.m, args.dR, args.D, args.dt)
    _emit(records.dumps(ker.compare(q).as_dict()))


def cmd_simulate(args) -> None:
    spec = phy.PendulumSpec(args.length, args.mass, args.diameter, args.g)
    config = exp.ExperimentConfig(
        pendulum=spec,
        level_n=args.level,
        mode=args.mode,
        observation_rate=args.rate,
        duration=args.duration,
        seed=args.seed,
        report_point=args.report_point,
        sampler=osc.SamplerConfig(seed=args.seed, method=args.method),
    )
    series = exp.simulate(config)
    records.write_events(series, args.out, config)
    probes = exp.default_probes(spec, args.level, config.report_point)
    counts = exp.detector_counts(series, probes)
    _emit(records.dumps({
        "events_csv": str(args.out),
        "envelope_json": str(records.envelope_path(args.out)),
        "event_count": len(series),
        "probes": [{"center_m": p.center, "aperture_m": p.aperture, "count": c} for p, c in zip(probes, counts)],
        **config.as_dict(),
    }))


def cmd_periodtest(args) -> None:
    series = records.read_events(args.input)
    result = exp.detect_period(series, threshold=args.threshold)
    out = result.as_dict()
    out["event_count"] = len(series)
    if series.mode is not None:
        out["mode"] = series.mode.value
    _emit(records.dumps(out))


def cmd_sweep(args) -> None:
    spec = table.SweepSpec(
        variable=args.variable,
        range=(args.min, args.max),
        points=args.points,
        fixed=phy.PendulumSpec(args.length, args.mass, args.diameter, args.g),
        n=args.level,
        spacing=args.spacing,
    )
    rows = table.sweep(spec, _thresholds(args))
    if args.json:
        _emit(records.dumps(rows))
    else:
        _emit(records.csv_text(rows, table.SWEEP_COLUMNS))


def cmd_crossover(args) -> None:
    if (args.mass is None) == (args.density is None):
        raise ValidationError("give exactly one of --mass or --density")
    mass = args.mass if args.mass is not None else (lambda l, rho=args.density: rho * l)
    root = table.crossover_length(mass, args.level, args.diameter, args.threshold, (args.lmin, args.lmax), args.g)
    _emit(records.dumps({"crossover_length_m": root, "threshold": args.threshold, "level_n": args.level}))


def _add_thresholds(p):
    p.add_argument("--thresholds", metavar="Q,C", help="quantum,classical ratio thresholds (default 10,0.1)")


def _add_g(p):
    p.add_argument("--g", type=float, default=phy.G_DEFAULT, help="gravity in m/s^2 (default 9.8)")


def _add_state(p, level_default=5):
    p.add_argument("--level", type=int, default=level_default)
    p.add_argument("--mass", type=float, required=True, help="kg")
    p.add_argument("--omega", type=float, help="rad/s")
    p.add_argument("--length", type=float, help="arm length in m (alternative to --omega)")
    _add_g(p)


def _add_pendulum(p, mass_required=True):
    p.add_argument("--length", type=float, required=True, help="arm length in m")
    p.add_argument("--mass", type=float, required=mass_required, help="kg")
    p.add_argument("--diameter", type=float, default=table.DEFAULT_DIAMETER, help="m")
    p.add_argument("--level", type=int, default=5)
    _add_g(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecmpendulum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="reproduce the CNT pendulum table with deltas")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--level", type=int, default=table.DEFAULT_LEVEL)
    p.add_argument("--diameter", type=float, default=table.DEFAULT_DIAMETER)
    _add_g(p)
    _add_thresholds(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("classify", help="regime verdict for a wavelength and size")
    p.add_argument("--lambda", dest="wavelength", type=float, required=True, help="m")
    p.add_argument("--size", type=float, required=True, help="m")
    p.add_argument("--freedom", default="tangential")
    _add_thresholds(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("pendulum", help="full report for one pendulum")
    _add_pendulum(p)
    _add_thresholds(p)
    p.set_defaults(func=cmd_pendulum)

    p = sub.add_parser("eigenstate", help="psi_n and |psi_n|^2 on a grid")
    _add_state(p)
    p.add_argument("--grid", type=int, default=401)
    p.add_argument("--span", type=float, default=2.0, help="half width in turning points")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eigenstate)

    p = sub.add_parser("sample", help="random positions from |psi_n|^2")
    _add_state(p)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--method", choices=[m.value for m in osc.SamplerMethod], default="inverse-cdf")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("entropy", help="classical ideal-gas entropy profile")
    p.add_argument("--mass", type=float, required=True, help="particle mass, kg")
    p.add_argument("--dbar", type=float, required=True, help="mean free path, m")
    p.add_argument("--tmin", type=float, required=True)
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--count", type=int, default=1, help="particle number N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("kernel", help="centre-of-mass kernel phase error for a dimer")
    p.add_argument("--m", type=float, required=True, help="mass of each constituent, kg")
    p.add_argument("--dR", type=float, required=True, help="centre-of-mass displacement, m")
    p.add_argument("--D", type=float, required=True, help="change of half separation, m")
    p.add_argument("--dt", type=float, required=True, help="s")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("simulate", help="simulate the two-probe experiment")
    _add_pendulum(p)
    p.add_argument("--mode", choices=[m.value for m in exp.Mode], required=True)
    p.add_argument("--rate", type=float, help="observation rate in Hz (default 37.1 per period)")
    p.add_argument("--duration", type=float, help="s (default 100 periods)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report-point", choices=[r.value for r in exp.ReportPoint], default="centre-of-mass")
    p.add_argument("--method", choices=[m.value for m in osc.SamplerMethod], default="inverse-cdf")
    p.add_argument("--out", required=True, help="events CSV; the JSON envelope goes next to it")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("periodtest", help="autocorrelation period test on an event log")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    p.set_defaults(func=cmd_periodtest)

    p = sub.add_parser("sweep", help="scan length, mass or level")
    _add_pendulum(p)
    p.add_argument("--variable", choices=["length", "mass", "level"], required=True)
    p.add_argument("--min", type=float, required=True)
    p.add_argument("--max", type=float, required=True)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--spacing", choices=["log", "linear"], default="log")
    p.add_argument("--json", action="store_true")
    _add_thresholds(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("crossover", help="arm length where lambda_min/D hits a threshold")
    p.add_argument("--mass", type=float, help="fixed mass, kg")
    p.add_argument("--density", type=float, help="linear mass density, kg/m")
    p.add_argument("--diameter", type=float, default=table.DEFAULT_DIAMETER)
    p.add_argument("--level", type=int, default=table.DEFAULT_LEVEL)
    p.add_argument("--threshold", type=float, default=10.0)
    p.add_argument("--lmin", type=float, default=1e-10)
    p.add_argument("--lmax", type=float, default=1e2)
    _add_g(p)
    p.set_defaults(func=cmd_crossover)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
