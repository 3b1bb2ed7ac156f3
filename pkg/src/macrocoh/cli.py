"""Command-line surface: batch analysis reports as deterministic CSV files.

Commands: decoherence-report, testability, vacuum-report, mission-report.
Every output file gets a sidecar <name>.manifest.json recording the resolved
inputs that produced it; timestamps live only in the manifest so repeated
runs produce byte-identical data files.

Exit codes: 0 success, 1 computation failure or budget mismatch warning,
2 input validation failure.
"""

import argparse
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, expansion, mission, vacuum
from .config import ConfigError
from .decoherence import qm_channel_rates
from .expansion import ExpansionKinematics, InfiniteCoherenceError
from .numerics import QuadratureError
from .scenario import load_scenario, scenario_kinematics
from .testability import (MODEL_PRESETS, SweepConfig, scenario_presets, sweep,
                          violation_intervals, write_intervals_csv,
                          write_sweep_csv)


@dataclass(frozen=True)
class RunManifest:
    """Provenance record pairing an output with its resolved inputs."""

    command: str
    tool_version: str
    created_utc: str
    inputs: tuple
    outputs: tuple
    parameters: dict

    def to_json(self):
        return json.dumps(
            {
                "command": self.command,
                "tool_version": self.tool_version,
                "created_utc": self.created_utc,
                "inputs": list(self.inputs),
                "outputs": list(self.outputs),
                "parameters": self.parameters,
            },
            indent=2, sort_keys=True) + "\n"


def atomic_write_text(path, text):
    """Write via a temp file in the target directory plus rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_manifest(command, inputs, outputs, parameters):
    manifest = RunManifest(
        command=command,
        tool_version=__version__,
        created_utc=datetime.now(timezone.utc).isoformat(),
        inputs=tuple(str(p) for p in inputs),
        outputs=tuple(str(p) for p in outputs),
        parameters=parameters,
    )
    for out in outputs:
        atomic_write_text(str(out) + ".manifest.json", manifest.to_json())


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _resolve_scenario(args):
    if args.scenario is not None:
        return load_scenario(args.scenario), str(args.scenario)
    presets = scenario_presets()
    if args.preset not in presets:
        raise ConfigError(
            f"unknown preset {args.preset!r}; available: {sorted(presets)}")
    return presets[args.preset], f"preset:{args.preset}"


# ---------------------------------------------------------------- commands


def cmd_decoherence_report(args):
    scenario, source = _resolve_scenario(args)
    mass, x0, v_m = scenario_kinematics(scenario)
    kin = ExpansionKinematics(x0=x0, v_m=v_m)
    rates = qm_channel_rates(scenario)
    spec = rates.as_decoherence_spec()
    try:
        cet = expansion.solve_cet(spec, kin)
        ced = v_m * cet
        factors = expansion.visibility_factor(expansion.gamma(cet, spec, kin))
        amplitude, visibility = factors.amplitude, factors.visibility
    except InfiniteCoherenceError:
        cet = ced = math.inf
        amplitude = visibility = math.nan

    rows = [
        ("particle_radius", scenario.particle.radius, "m"),
        ("particle_mass", mass, "kg"),
        ("ground_state_width", x0, "m"),
        ("expansion_velocity", v_m, "m/s"),
        ("gas_rate", rates.gas_rate, "1/s"),
        ("lambda_bb_scatter", rates.lambda_bb_scatter, "1/(m^2 s)"),
        ("lambda_bb_absorb", rates.lambda_bb_absorb, "1/(m^2 s)"),
        ("lambda_bb_emit", rates.lambda_bb_emit, "1/(m^2 s)"),
        ("lambda_total", rates.total_lambda, "1/(m^2 s)"),
        ("cet", cet, "s"),
        ("ced", ced, "m"),
        ("amplitude_factor_at_cet", amplitude, "1"),
        ("visibility_at_cet", visibility, "1"),
    ]
    text = "quantity,value,unit\n" + "".join(
        f"{name},{_fmt(value)},{unit}\n" for name, value, unit in rows)
    atomic_write_text(args.out, text)
    write_manifest("decoherence-report", [source], [args.out],
                   {"scenario": source, "label": scenario.label})
    cet_text = "inf" if math.isinf(cet) else f"{cet:.4e} s"
    ced_text = "inf" if math.isinf(ced) else f"{ced:.4e} m"
    print(f"{scenario.label or source}: lambda_total="
          f"{rates.total_lambda:.4e} 1/(m^2 s), cet={cet_text}, ced={ced_text}")
    print(f"wrote {args.out}")
    return 0


def _parse_models(spec_text):
    names = [name.strip() for name in spec_text.split(",") if name.strip()]
    if not names:
        raise ConfigError("--models: empty model list")
    unknown = [n for n in names if n not in MODEL_PRESETS]
    if unknown:
        raise ConfigError(
            f"--models: unknown {unknown}; available: {sorted(MODEL_PRESETS)}")
    return [MODEL_PRESETS[n] for n in names]


def cmd_testability(args):
    scenario, source = _resolve_scenario(args)
    models = _parse_models(args.models)
    config = SweepConfig(radius_min=args.radius_min, radius_max=args.radius_max,
                         points=args.points, grid=args.grid,
                         scenario=scenario, models=tuple(models))
    rows = sweep(config)
    names = [m.name for m in models]

    buf = io.StringIO()
    write_sweep_csv(rows, names, buf)
    atomic_write_text(args.out, buf.getvalue())
    intervals_out = args.intervals_out or str(args.out) + ".intervals.csv"
    buf = io.StringIO()
    write_intervals_csv(rows, names, buf)
    atomic_write_text(intervals_out, buf.getvalue())
    write_manifest("testability", [source], [args.out, intervals_out],
                   {"scenario": source, "radius_min": args.radius_min,
                    "radius_max": args.radius_max, "points": args.points,
                    "grid": args.grid, "models": names,
                    "highlight_radius": args.highlight_radius})

    for name in names:
        spans = violation_intervals(rows, name)
        pretty = "; ".join(f"[{lo:.3e}, {hi:.3e}] m" for lo, hi in spans) or "none"
        print(f"{name}: violation intervals {pretty}")
    nearest = min(rows, key=lambda row: abs(row.radius - args.highlight_radius))
    marks = ", ".join(f"ced_{n}={nearest.ced_model[n]:.3e} m" for n in names)
    print(f"highlight r={nearest.radius:.3e} m: ced_qm={nearest.ced_qm:.3e} m, {marks}")

    failed = [row for row in rows if row.errors]
    for row in failed:
        print(f"warning: r={row.radius:.3e} m: {row.errors}", file=sys.stderr)
    print(f"wrote {args.out} and {intervals_out}")
    if failed and len(failed) == len(rows):
        return 1
    return 0


def cmd_vacuum_report(args):
    if args.time < 0.0:
        raise ConfigError("--time: must be non-negative")
    temperature, _, summaries = vacuum.load_materials(args.materials)
    selected = list(summaries)
    if args.material:
        unknown = [n for n in args.material if n not in summaries]
        if unknown:
            raise ConfigError(
                f"--material: unknown {unknown}; available: {sorted(summaries)}")
        selected = list(args.material)

    header = ["material", "mass_loss_rate_kg_s", "gamma0_per_m2_s",
              "pressure_mbar", "number_density_per_m3", "collision_rate_per_s",
              "implied_area_m2"]
    with_dilution = args.patch_diameter is not None and args.distance is not None
    if with_dilution:
        header += ["diluted_density_per_m3", "dilution_factor"]
    if args.cold_temperature is not None:
        header += ["attenuation_at_10_Eroom", "attenuation_at_30_Eroom"]

    lines = [",".join(header)]
    for name in selected:
        row = summaries[name]
        decay = math.exp(-args.time / row.residence_time)
        gamma0 = row.gamma0 * decay
        state = vacuum.steady_state(gamma0, temperature, row.species_mass)
        cells = [
            name,
            _fmt(row.mass_loss_rate * decay),
            _fmt(gamma0),
            _fmt(state.pressure / vacuum.MBAR),
            _fmt(state.number_density),
            _fmt(vacuum.collision_rate(gamma0, args.sphere_radius)),
            _fmt(vacuum.implied_emitting_area(row.mass_loss_rate,
                                              row.species_mass, row.gamma0)),
        ]
        if with_dilution:
            patch_area = math.pi * (0.5 * args.patch_diameter) ** 2
            diluted = vacuum.dilution_from_patch(state.number_density,
                                                 patch_area, args.distance)
            cells += [_fmt(diluted), _fmt(diluted / state.number_density)]
        if args.cold_temperature is not None:
            cells += [
                _fmt(vacuum.pressure_attenuation(10.0, temperature,
                                                 args.cold_temperature)),
                _fmt(vacuum.pressure_attenuation(30.0, temperature,
                                                 args.cold_temperature)),
            ]
        lines.append(",".join(cells))

    atomic_write_text(args.out, "\n".join(lines) + "\n")
    write_manifest("vacuum-report",
                   [args.materials or "<packaged materials.yaml>"], [args.out],
                   {"sphere_radius": args.sphere_radius, "time": args.time,
                    "materials": selected,
                    "patch_diameter": args.patch_diameter,
                    "distance": args.distance,
                    "cold_temperature": args.cold_temperature})
    print(f"wrote {args.out} ({len(selected)} materials)")
    return 0


def cmd_mission_report(args):
    orbit, doc = mission.load_orbit(args.orbit)
    targets = doc.get("targets") or {}
    thrusters = doc.get("thrusters") or {}
    ledgers = mission.load_budgets(args.budgets)

    period = mission.orbital_period(orbit)
    gravity = mission.local_gravity(orbit, orbit.perigee_altitude)
    rows = [
        ("orbital_period_days", period / 86400.0,
         targets.get("period_days", ""), "day"),
        ("perigee_gravity", gravity.acceleration, "", "m/s^2"),
        ("perigee_gravity_g_fraction", gravity.g_fraction,
         targets.get("perigee_gravity_g", ""), "g"),
    ]

    band = targets.get("perigee_band_altitude_km")
    window = None
    if band:
        window = mission.altitude_window(orbit, band[0] * 1e3, band[1] * 1e3)
        rows.append(("perigee_window_minutes", window / 60.0,
                     targets.get("perigee_window_minutes", ""), "min"))
    psd = targets.get("accel_psd_m_s2_sqrtHz")
    if psd and window:
        acc = mission.integrated_accuracy(psd, window,
                                          reference_accel=gravity.acceleration)
        rows.append(("integrated_accuracy", acc.absolute,
                     targets.get("integrated_accuracy_m_s2", ""), "m/s^2"))
        rows.append(("integrated_fraction_of_perigee_g", acc.fractional, "", "1"))

    if thrusters:
        force = thrusters.get("force_psd_N_sqrtHz")
        craft_mass = thrusters.get("spacecraft_mass_kg")
        for claim in thrusters.get("position_hold_claims", []):
            noise = mission.thruster_position_noise(
                claim["duration_s"], force_psd=force, spacecraft_mass=craft_mass)
            rows.append((f"thruster_position_spread_{claim['duration_s']:g}s",
                         noise.position_spread, claim.get("position_m", ""), "m"))
        if force and craft_mass:
            rows.append(("thruster_accel_psd", force / craft_mass, "",
                         "(m/s^2)/sqrt(Hz)"))

    warnings = []
    for name in sorted(ledgers):
        check = mission.budget_check(ledgers[name])
        unit = ledgers[name].unit
        rows.append((f"budget_{name}_total", check.computed_total,
                     check.declared_total, unit))
        if abs(check.delta) > 0.5:
            warnings.append(
                f"budget {name}: line items sum to {check.computed_total:g} {unit}"
                f" but declare {check.declared_total:g} {unit}"
                f" (delta {check.delta:+g})")

    text = "quantity,computed,target,unit\n" + "".join(
        f"{name},{_fmt(value)},{_fmt(target)},{unit}\n"
        for name, value, target, unit in rows)
    atomic_write_text(args.out, text)
    write_manifest("mission-report",
                   [args.orbit or "<packaged orbit_heo.yaml>",
                    args.budgets or "<packaged budgets.yaml>"], [args.out],
                   {"orbit": str(args.orbit), "budgets": str(args.budgets)})

    print(f"period {period / 86400.0:.2f} d, perigee gravity "
          f"{gravity.g_fraction:.3f} g"
          + (f", window {window / 60.0:.1f} min" if window else ""))
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"wrote {args.out}")
    return 1 if warnings else 0


# ---------------------------------------------------------------- parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="macrocoh",
        description="Feasibility analysis for macroscopic superposition "
                    "experiments with optically trapped nanospheres.")
    sub = parser.add_subparsers(dest="command", required=True)

    deco = sub.add_parser("decoherence-report",
                          help="per-channel decoherence rates, CET, and CED "
                               "of one scenario")
    deco.add_argument("--scenario", type=Path, help="scenario YAML file")
    deco.add_argument("--preset", default="fig2_baseline",
                      help="packaged scenario preset (default fig2_baseline)")
    deco.add_argument("--out", type=Path, required=True, help="output CSV")
    deco.set_defaults(func=cmd_decoherence_report)

    testa = sub.add_parser("testability",
                           help="radius sweep comparing quantum-theory CED "
                                "against collapse models")
    testa.add_argument("--scenario", type=Path)
    testa.add_argument("--preset", default="fig2_baseline")
    testa.add_argument("--radius-min", type=float, default=1e-8,
                       help="smallest sphere radius in m (default 1e-8)")
    testa.add_argument("--radius-max", type=float, default=5e-7,
                       help="largest sphere radius in m (default 5e-7)")
    testa.add_argument("--points", type=int, default=50)
    testa.add_argument("--grid", choices=("log", "linear"), default="log")
    testa.add_argument("--models", default="csl,qg,k,dp",
                       help=f"comma list from {sorted(MODEL_PRESETS)}")
    testa.add_argument("--highlight-radius", type=float, default=9e-8,
                       help="radius in m whose row is echoed to stdout")
    testa.add_argument("--out", type=Path, required=True, help="sweep CSV")
    testa.add_argument("--intervals-out", type=Path,
                       help="violation intervals CSV "
                            "(default <out>.intervals.csv)")
    testa.set_defaults(func=cmd_testability)

    vac = sub.add_parser("vacuum-report",
                         help="outgassing summary: emission rates, pressures, "
                              "collision rates")
    vac.add_argument("--materials", type=Path, help="materials YAML "
                                                    "(default packaged presets)")
    vac.add_argument("--material", action="append",
                     help="restrict to this material (repeatable)")
    vac.add_argument("--sphere-radius", type=float, default=2e-7,
                     help="sphere radius in m for collision rates (default 2e-7)")
    vac.add_argument("--time", type=float, default=0.0,
                     help="elapsed outgassing time in s (default 0)")
    vac.add_argument("--patch-diameter", type=float,
                     help="emitting patch diameter in m for dilution columns")
    vac.add_argument("--distance", type=float,
                     help="patch distance in m for dilution columns")
    vac.add_argument("--cold-temperature", type=float,
                     help="cold operating temperature in K for attenuation "
                          "columns")
    vac.add_argument("--out", type=Path, required=True)
    vac.set_defaults(func=cmd_vacuum_report)

    mis = sub.add_parser("mission-report",
                         help="orbit figures, sensor integration, thruster "
                              "noise, and budget checks")
    mis.add_argument("--orbit", type=Path, help="orbit YAML (default packaged)")
    mis.add_argument("--budgets", type=Path,
                     help="budgets YAML (default packaged)")
    mis.add_argument("--out", type=Path, required=True)
    mis.set_defaults(func=cmd_mission_report)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 2
    except (QuadratureError, ArithmeticError) as exc:
        print(f"error: computation failed: {exc}", file=sys.stderr)
        return 1


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
