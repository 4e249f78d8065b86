"""Command-line front end: solve, sweep, scale, laws, machines.

Exit codes: 0 success, 1 computation failure, 2 configuration or validation
failure. All numeric flags accept scientific notation and the convenience
suffixes Pflop/s, PB/s, TB, mm2, etc.
"""
from __future__ import annotations

import json
import math
import re
import sys
from pathlib import Path

import click

from . import __version__
from .costs import AlgorithmCost, BUILTIN_COSTS, CostCoefficients, custom_cost
from .machines import available_presets, get_preset, preset
from .model import (ComputerSpec, CUBE_ROOT, DistanceFn, EvaluationError,
                    OptimizationError, classify_regime, optimal_volume,
                    time_breakdown)
from .scaling import (DEFAULT_V0_FACTOR, KPolicy, generalized_speedup,
                      scaled_problem_size, scaled_speedup, speedup_limit,
                      strong_efficiency, weak_efficiency)
from .sweep import AxisSpec, DEFAULT_RANGES, SweepGrid, run_sweep

CSV_COLUMNS = "pi,beta,s,c,V,n,v_star,t_work,t_io,t_lat,total,performance,regime"

# The idealized medium used when no machine preset is named: unit densities,
# speed of light, 3D geometry.
IDEAL_SPEC = ComputerSpec(pi=1.0, beta=1.0, s=1.0, c=3e8, V=1e6, distance=CUBE_ROOT)

_SUFFIXES = {
    "Eflop/s": 1e18, "Pflop/s": 1e15, "Tflop/s": 1e12, "Gflop/s": 1e9, "flop/s": 1.0,
    "EB/s": 1e18, "PB/s": 1e15, "TB/s": 1e12, "GB/s": 1e9, "MB/s": 1e6, "B/s": 1.0,
    "EB": 1e18, "PB": 1e15, "TB": 1e12, "GB": 1e9, "MB": 1e6, "KB": 1e3, "B": 1.0,
    "mm2": 1e-6, "cm2": 1e-4, "m2": 1.0, "m3": 1.0, "m/s": 1.0, "m": 1.0,
}


def parse_quantity(text: str) -> float:
    """'1e12', '122.3PB/s', '826mm2' ... -> SI base value."""
    text = text.strip()
    m = re.fullmatch(r"([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)\s*(.*)", text)
    if not m:
        raise click.UsageError(f"cannot parse number {text!r}")
    value, suffix = float(m.group(1)), m.group(2).strip()
    if not suffix:
        return value
    if suffix not in _SUFFIXES:
        raise click.UsageError(f"unknown unit suffix {suffix!r} in {text!r}")
    return value * _SUFFIXES[suffix]


class Quantity(click.ParamType):
    name = "quantity"

    def convert(self, value, param, ctx):
        if isinstance(value, (int, float)):
            return float(value)
        try:
            return parse_quantity(value)
        except click.UsageError as exc:
            self.fail(str(exc), param, ctx)


QUANTITY = Quantity()


def _load_config(path: str | None) -> dict[str, str]:
    if path is None:
        return {}
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        cfg[key.strip()] = value.strip()
    return cfg


def _resolve_spec(machine: str, cfg: dict[str, str], overrides: dict[str, float | None]) -> ComputerSpec:
    if machine == "ideal":
        spec = IDEAL_SPEC
    else:
        try:
            spec = preset(machine)
        except KeyError as exc:
            raise click.UsageError(str(exc.args[0]))

    fields = {"pi": spec.pi, "beta": spec.beta, "s": spec.s, "c": spec.c, "V": spec.V}
    dist_pref, dist_exp = spec.distance.prefactor, spec.distance.exponent
    for key in fields:
        if cfg.get(key) is not None and overrides.get(key) is None:
            overrides[key] = parse_quantity(cfg[key])
    for key, value in overrides.items():
        if value is None:
            continue
        if key == "distance_exponent":
            dist_exp = value
        elif key == "distance_prefactor":
            dist_pref = value
        else:
            fields[key] = value
    try:
        return ComputerSpec(**fields, distance=DistanceFn(dist_pref, dist_exp))
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _resolve_cost(alg: str, cfg: dict[str, str]) -> AlgorithmCost:
    alg = alg.lower()
    if alg in BUILTIN_COSTS:
        return BUILTIN_COSTS[alg]()
    if alg == "custom":
        kwargs = {}
        for field in ("a", "p", "q", "r", "b", "w", "l", "g", "h", "k", "out_exp"):
            key = f"cost_{field}"
            if key in cfg:
                kwargs[field] = float(cfg[key])
        try:
            return custom_cost(CostCoefficients(**kwargs))
        except ValueError as exc:
            raise click.UsageError(f"invalid custom cost: {exc}")
    raise click.UsageError(f"unknown algorithm {alg!r}; one of mxm, cg, fft, custom")


def _fmt(x: float) -> str:
    return f"{x:.8e}"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


def _parse_axis(text: str) -> AxisSpec:
    parts = text.split(":")
    name = parts[0]
    if name not in DEFAULT_RANGES and name != "v":
        raise click.UsageError(f"unknown sweep axis {name!r}")
    try:
        if len(parts) == 1:
            return AxisSpec.default(name)
        if len(parts) in (4, 5):
            lo, hi = parse_quantity(parts[1]), parse_quantity(parts[2])
            points = int(parts[3])
            spacing = parts[4] if len(parts) == 5 else "log"
            return AxisSpec(name, lo, hi, points, spacing)
    except ValueError as exc:
        raise click.UsageError(f"bad axis spec {text!r}: {exc}")
    raise click.UsageError(
        f"bad axis spec {text!r}; expected NAME or NAME:LO:HI:POINTS[:SPACING]")


def _parse_values(text: str) -> tuple[float, ...]:
    return tuple(parse_quantity(part) for part in text.split(","))


_SPEC_OPTIONS = [
    click.option("--machine", default="ideal", show_default=True,
                 help="Machine preset name, or 'ideal'."),
    click.option("--pi", type=QUANTITY, default=None, help="Override compute density."),
    click.option("--beta", type=QUANTITY, default=None, help="Override bandwidth density."),
    click.option("--s", type=QUANTITY, default=None, help="Override memory density."),
    click.option("--c", type=QUANTITY, default=None, help="Override signal speed."),
    click.option("--v-total", "v_total", type=QUANTITY, default=None, help="Override total volume."),
    click.option("--distance-exponent", type=float, default=None),
    click.option("--distance-prefactor", type=float, default=None),
    click.option("--config", "config_path", type=click.Path(exists=True), default=None,
                 help="key=value config file; flags override it."),
    click.option("--seed", type=int, default=0, show_default=True,
                 help="Recorded in output headers for provenance."),
]


def _spec_options(f):
    for option in reversed(_SPEC_OPTIONS):
        f = option(f)
    return f


def _overrides(pi, beta, s, c, v_total, distance_exponent, distance_prefactor):
    return {"pi": pi, "beta": beta, "s": s, "c": c, "V": v_total,
            "distance_exponent": distance_exponent,
            "distance_prefactor": distance_prefactor}


@click.group()
@click.version_option(__version__)
def main():
    """Best-case run times and scaling limits on a homogeneous computer."""


@main.command()
@_spec_options
@click.option("--alg", default="cg", show_default=True)
@click.option("--n", "n_", required=True, type=QUANTITY, help="Problem size.")
@click.option("--v", "v_", type=QUANTITY, default=None,
              help="Evaluate at this fixed active volume instead of optimizing.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json",
              show_default=True)
@click.option("--output", default=None, help="Write to file instead of stdout.")
def solve(machine, pi, beta, s, c, v_total, distance_exponent, distance_prefactor,
          config_path, seed, alg, n_, v_, fmt, output):
    """Minimize run time over the active volume (or evaluate at a fixed one)."""
    cfg = _load_config(config_path)
    machine = cfg.get("machine", machine) if machine == "ideal" else machine
    alg = cfg.get("alg", alg) if alg == "cg" else alg
    spec = _resolve_spec(machine, cfg,
                         _overrides(pi, beta, s, c, v_total, distance_exponent, distance_prefactor))
    cost = _resolve_cost(alg, cfg)

    try:
        if v_ is None:
            sol = optimal_volume(spec, cost, n_)
            b, regime = sol.breakdown, sol.regime
        else:
            b = time_breakdown(spec, cost, n_, v_)
            regime = classify_regime(b)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except (EvaluationError, OptimizationError) as exc:
        raise click.ClickException(str(exc))

    fields = {
        "machine": machine, "algorithm": cost.name, "n": n_,
        "v_star": b.v_used, "t_work": b.t_work, "t_io": b.t_io, "t_lat": b.t_lat,
        "total": b.total, "performance": b.performance, "regime": regime.value,
    }
    if fmt == "json":
        text = json.dumps(fields, indent=2) + "\n"
    else:
        width = max(len(k) for k in fields)
        lines = [f"{k:<{width}}  {_fmt(v) if isinstance(v, float) else v}"
                 for k, v in fields.items()]
        text = "\n".join(lines) + "\n"
    _emit(text, output)


@main.command()
@_spec_options
@click.option("--alg", default="cg", show_default=True, help="Comma list of algorithms.")
@click.option("--axis", "axes", multiple=True,
              help="Swept axis: NAME or NAME:LO:HI:POINTS[:SPACING]; repeatable.")
@click.option("--n", "n_", default=None, help="Fixed n, or comma list (becomes an axis).")
@click.option("--v", "v_", type=QUANTITY, default=None, help="Fixed active volume (skips optimization).")
@click.option("--output", default=None)
def sweep(machine, pi, beta, s, c, v_total, distance_exponent, distance_prefactor,
          config_path, seed, alg, axes, n_, v_, output):
    """Cartesian sweep; emits CSV with a '#' provenance header."""
    cfg = _load_config(config_path)
    machines = [m.strip() for m in machine.split(",")]
    algs = [a.strip() for a in alg.split(",")]

    axis_specs = [_parse_axis(a) for a in axes]
    fixed: dict[str, float] = {}
    if v_ is not None:
        fixed["v"] = v_
    if n_ is not None:
        values = _parse_values(n_)
        if len(values) == 1:
            fixed["n"] = values[0]
        else:
            axis_specs.append(AxisSpec("n", explicit=values))
    elif not any(a.name == "n" for a in axis_specs):
        raise click.UsageError("problem size required: pass --n or an n axis")

    grid = SweepGrid(axes=tuple(axis_specs), fixed=fixed)
    lines = [
        f"# homlim sweep seed={seed} machines={','.join(machines)} algs={','.join(algs)}",
        f"# axes={';'.join(a or 'none' for a in axes) or 'none'} fixed={fixed!r}",
        CSV_COLUMNS,
    ]
    for m in machines:
        spec = _resolve_spec(m, cfg, _overrides(pi, beta, s, c, v_total,
                                                distance_exponent, distance_prefactor))
        for a in algs:
            cost = _resolve_cost(a, cfg)
            if len(machines) > 1 or len(algs) > 1:
                lines.append(f"# machine={m} algorithm={cost.name}")
            try:
                records = run_sweep(grid, spec, cost)
            except ValueError as exc:
                raise click.UsageError(str(exc))
            for r in records:
                row = [_fmt(x) for x in (r.pi, r.beta, r.s, r.c, r.V, r.n, r.v_star,
                                         r.t_work, r.t_io, r.t_lat, r.total, r.performance)]
                row.append(r.regime if r.error is None else f"error:{r.error}")
                lines.append(",".join(row))
    _emit("\n".join(lines) + "\n", output)


@main.command()
@_spec_options
@click.option("--alg", default="cg", show_default=True)
@click.option("--mode", type=click.Choice(["strong", "weak"]), required=True)
@click.option("--n0", type=QUANTITY, required=True, help="Baseline problem size.")
@click.option("--v0", type=QUANTITY, default=None,
              help="Baseline volume; defaults to V*1e-6.")
@click.option("--v", "v_", default=None,
              help="Volumes: comma list or LO:HI:POINTS; defaults to 20 log points v0..V.")
@click.option("--k", "k_", type=click.Choice([p.value for p in KPolicy]), default="output",
              show_default=True, help="Weak-scaling K policy.")
@click.option("--output", default=None)
def scale(machine, pi, beta, s, c, v_total, distance_exponent, distance_prefactor,
          config_path, seed, alg, mode, n0, v0, v_, k_, output):
    """Strong or weak scaling efficiency; CSV columns v,n,total,efficiency."""
    cfg = _load_config(config_path)
    spec = _resolve_spec(machine, cfg, _overrides(pi, beta, s, c, v_total,
                                                  distance_exponent, distance_prefactor))
    cost = _resolve_cost(alg, cfg)
    policy = KPolicy(k_)
    if v0 is None:
        v0 = spec.V * DEFAULT_V0_FACTOR
    if v_ is None:
        volumes = AxisSpec("v", v0, spec.V, 20, "log").values()
    elif ":" in v_:
        lo, hi, points = v_.split(":")
        volumes = AxisSpec("v", parse_quantity(lo), parse_quantity(hi), int(points), "log").values()
    else:
        volumes = _parse_values(v_)

    lines = [f"# homlim scale mode={mode} machine={machine} alg={cost.name} "
             f"n0={_fmt(n0)} v0={_fmt(v0)} seed={seed}"]
    if mode == "weak":
        lines.append(f"# k_policy={policy.value}")
    lines.append("v,n,total,efficiency")
    try:
        for v in volumes:
            v = float(v)
            if mode == "strong":
                n = n0
                eff = strong_efficiency(spec, cost, n0, v0, v)
            else:
                n = scaled_problem_size(cost, policy, n0, v0, v)
                eff = weak_efficiency(spec, cost, policy, n0, v0, v)
            total = time_breakdown(spec, cost, n, v).total
            lines.append(",".join(_fmt(x) for x in (v, n, total, eff)))
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except (EvaluationError, OptimizationError) as exc:
        raise click.ClickException(str(exc))
    _emit("\n".join(lines) + "\n", output)


@main.command()
@_spec_options
@click.option("--alg", default="cg", show_default=True)
@click.option("--law", type=click.Choice(["amdahl", "gustafson"]), required=True)
@click.option("--n0", type=QUANTITY, required=True)
@click.option("--v0", type=QUANTITY, default=None)
@click.option("--v", "v_", default=None, help="Volumes: comma list or LO:HI:POINTS.")
@click.option("--output", default=None)
def laws(machine, pi, beta, s, c, v_total, distance_exponent, distance_prefactor,
         config_path, seed, alg, law, n0, v0, v_, output):
    """Generalized Amdahl/Gustafson speedups plus the propagation-limit line."""
    cfg = _load_config(config_path)
    spec = _resolve_spec(machine, cfg, _overrides(pi, beta, s, c, v_total,
                                                  distance_exponent, distance_prefactor))
    cost = _resolve_cost(alg, cfg)
    if v0 is None:
        v0 = spec.V * DEFAULT_V0_FACTOR
    if v_ is None:
        volumes = AxisSpec("v", v0, spec.V, 10, "log").values()
    elif ":" in v_:
        lo, hi, points = v_.split(":")
        volumes = AxisSpec("v", parse_quantity(lo), parse_quantity(hi), int(points), "log").values()
    else:
        volumes = _parse_values(v_)

    label = "speedup" if law == "amdahl" else "scaled_speedup"
    lines = [f"# homlim laws law={law} machine={machine} alg={cost.name} "
             f"n0={_fmt(n0)} v0={_fmt(v0)} seed={seed}",
             f"v,{label}"]
    try:
        for v in volumes:
            v = float(v)
            value = (generalized_speedup(spec, cost, n0, v0, v) if law == "amdahl"
                     else scaled_speedup(spec, cost, n0, v0, v))
            lines.append(f"{_fmt(v)},{_fmt(value)}")
        limit = speedup_limit(spec, cost, n0, v0)
        lines.append(f"# speedup_limit={'unbounded' if math.isinf(limit) else _fmt(limit)}")
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except (EvaluationError, OptimizationError) as exc:
        raise click.ClickException(str(exc))
    _emit("\n".join(lines) + "\n", output)


@main.group()
def machines():
    """Inspect the machine preset registry."""


@machines.command("list")
def machines_list():
    """Print available preset names."""
    for name in sorted(available_presets()):
        click.echo(name)


@machines.command("show")
@click.argument("name")
def machines_show(name):
    """Print totals, derived densities, and notes for one preset."""
    try:
        p = get_preset(name)
    except KeyError as exc:
        raise click.UsageError(str(exc.args[0]))
    spec = p.to_spec()
    rows = [
        ("name", p.name),
        ("Pi_total [flop/s]", _fmt(p.pi_total_flops)),
        ("B_total [byte/s]", _fmt(p.b_total_bytes)),
        ("S_total [byte]", _fmt(p.s_total_bytes)),
        ("V [volume-units]", _fmt(p.volume)),
        ("c [m/s]", _fmt(p.c)),
        ("D(v)", f"{p.distance.prefactor:g} * v^{p.distance.exponent:g}"),
        ("word_bytes", str(p.word_bytes)),
        ("pi [flop/(vu s)]", _fmt(spec.pi)),
        ("beta [word/(vu s)]", _fmt(spec.beta)),
        ("s [word/vu]", _fmt(spec.s)),
        ("notes", p.notes or "-"),
    ]
    width = max(len(k) for k, _ in rows)
    for key, value in rows:
        click.echo(f"{key:<{width}}  {value}")


if __name__ == "__main__":
    main()
