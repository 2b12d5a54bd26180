"""Command-line front end.

Subcommands cover the pipeline stages: equilibrium, spectrum, critical-set,
invariants, simulate, and atlas (everything combined).  Output is
deterministic JSON (12 significant digits, fixed field order); trajectories
export as CSV and optional SVG.  Module errors map to exit codes: bad input
2, numerical failure 3, algebraic inconsistency 4.
"""

from __future__ import annotations

import json
import math
import os
import sys

if os.environ.get("EQUIVIBE_THREADS"):
    os.environ.setdefault("NUMBA_NUM_THREADS", os.environ["EQUIVIBE_THREADS"])
    os.environ.setdefault("OMP_NUM_THREADS", os.environ["EQUIVIBE_THREADS"])

import click
import numpy as np

from .errors import DomainError, EquivibeError
from .model import PotentialParams, find_equilibrium, gradient
from .spectrum import (
    critical_set,
    isotypical_blocks,
    report_from_labeled_eigenvalues,
)


def _round12(x):
    return float(f"{float(x):.12g}")


def _jsonable(obj):
    if isinstance(obj, float):
        return _round12(obj)
    if isinstance(obj, (np.floating,)):
        return _round12(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(payload, output):
    text = json.dumps(_jsonable(payload), indent=2)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _fail(err: EquivibeError):
    payload = {"error": str(err), "type": type(err).__name__}
    diagnostics = getattr(err, "diagnostics", None)
    if diagnostics:
        payload["diagnostics"] = diagnostics
    click.echo(json.dumps(_jsonable(payload)), err=True)
    sys.exit(err.exit_code)


def _merge_config(ctx, values):
    """Apply config-file values for options not given on the command line."""
    cfg_path = values.pop("config", None)
    if not cfg_path:
        return values
    with open(cfg_path) as fh:
        cfg = json.load(fh)
    for key, val in cfg.items():
        key = key.replace("-", "_")
        if key not in values:
            continue
        source = ctx.get_parameter_source(key)
        if source is not None and source.name == "COMMANDLINE":
            continue
        values[key] = val
    return values


def _params(values) -> PotentialParams:
    return PotentialParams(
        n=int(values["n"]),
        A=float(values["a"]),
        B=float(values["b"]),
        sigma=float(values["sigma"]),
    )


def _model_options(fn):
    for deco in reversed(
        [
            click.option("--n", default=6, show_default=True, help="particle count"),
            click.option("--A", "a", default=0.2, show_default=True, help="attraction coefficient"),
            click.option("--B", "b", default=350.0, show_default=True, help="repulsion coefficient"),
            click.option("--sigma", default=0.25, show_default=True, help="Coulomb coefficient"),
            click.option("--config", type=click.Path(exists=True), help="JSON config file; flags win"),
            click.option("--output", type=click.Path(), help="write JSON here instead of stdout"),
        ]
    ):
        fn = deco(fn)
    return fn


def _load_reference(path, n):
    """Labeled eigenvalues {(j, tag): mu} from a JSON reference file."""
    with open(path) as fh:
        entries = json.load(fh)
    labeled = {}
    for entry in entries:
        labeled[(int(entry["j"]), entry.get("tag", ""))] = float(entry["mu"])
    return report_from_labeled_eigenvalues(n, labeled)


def _report(values, p):
    eq = find_equilibrium(p)
    if values.get("reference"):
        return eq, _load_reference(values["reference"], p.n)
    return eq, isotypical_blocks(eq, p)


def _spectrum_payload(report):
    payload = {
        "n": report.n,
        "eigenvalues": [
            {
                "j": rec.j,
                "tag": rec.tag,
                "value": rec.value,
                "multiplicity": rec.real_multiplicity,
                "axis": rec.axis,
            }
            for rec in report.eigenvalues
        ],
        "diagnostics": report.diagnostics,
    }
    if report.closed_blocks:
        payload["closed_form_blocks"] = [b.tolist() for b in report.closed_blocks]
        payload["oracle_blocks"] = [b.tolist() for b in report.oracle_blocks]
    return payload


def _critical_payload(report, l_max):
    values = critical_set(report, l_max)
    return [
        {
            "j": c.j,
            "l": c.l,
            "sign": c.sign,
            "lambda": c.lam,
            "limit_period": c.limit_period,
            "mu": c.mu,
        }
        for c in values
    ]


def _parse_crossing(text):
    parts = text.split(",")
    if len(parts) not in (2, 3):
        raise DomainError(f"crossing must be j,l or j,l,sign - got {text!r}")
    j, l = int(parts[0]), int(parts[1])
    sign = parts[2].strip() if len(parts) == 3 else ""
    if sign not in ("", "+", "-"):
        raise DomainError(f"crossing sign must be + or -, got {sign!r}")
    return j, l, sign


@click.group()
def main():
    """Vibration modes of symmetric planar particle rings."""


@main.command()
@_model_options
@click.pass_context
def equilibrium(ctx, **values):
    """Radius and configuration of the symmetric ring equilibrium."""
    values = _merge_config(ctx, values)
    try:
        p = _params(values)
        eq = find_equilibrium(p)
        g = gradient(eq.u0, p)
        _emit(
            {
                "n": p.n,
                "r0": eq.r0,
                "u0": [[z.real, z.imag] for z in eq.u0.u],
                "gradient_norm": float(np.linalg.norm(g)),
                "energy": eq.phi_min,
            },
            values["output"],
        )
    except EquivibeError as err:
        _fail(err)


@main.command()
@_model_options
@click.pass_context
def spectrum(ctx, **values):
    """Isotypical block spectrum of the Hessian at the equilibrium."""
    values = _merge_config(ctx, values)
    try:
        p = _params(values)
        eq = find_equilibrium(p)
        report = isotypical_blocks(eq, p)
        payload = {"r0": eq.r0}
        payload.update(_spectrum_payload(report))
        _emit(payload, values["output"])
    except EquivibeError as err:
        _fail(err)


@main.command("critical-set")
@_model_options
@click.option("--l-max", default=6, show_default=True, help="largest temporal mode")
@click.option("--reference", type=click.Path(exists=True), help="labeled eigenvalue JSON")
@click.pass_context
def critical_set_cmd(ctx, **values):
    """Critical frequencies lambda = l / sqrt(mu), sorted."""
    values = _merge_config(ctx, values)
    try:
        p = _params(values)
        _eq, report = _report(values, p)
        rows = _critical_payload(report, int(values["l_max"]))
        _emit({"n": p.n, "critical_set": rows}, values["output"])
        if not values["output"]:
            return
        for row in rows:
            click.echo(
                f"lambda_({row['j']},{row['l']}){row['sign']} = {row['lambda']:.8f}"
                f"  period {row['limit_period']:.8f}",
                err=True,
            )
    except EquivibeError as err:
        _fail(err)


@main.command()
@_model_options
@click.option("--l-max", default=6, show_default=True)
@click.option("--crossing", "crossings", multiple=True, help="j,l or j,l,sign; repeatable")
@click.option(
    "--mode",
    default="paper_style",
    show_default=True,
    type=click.Choice(["paper_style", "literal"]),
)
@click.option("--reference", type=click.Path(exists=True), help="labeled eigenvalue JSON")
@click.pass_context
def invariants(ctx, **values):
    """Bifurcation invariants omega at critical frequencies."""
    from .degrees import omega_invariant

    values = _merge_config(ctx, values)
    try:
        p = _params(values)
        _eq, report = _report(values, p)
        allc = critical_set(report, int(values["l_max"]))
        wanted = [_parse_crossing(t) for t in values["crossings"]]
        out = []
        for c in allc:
            if wanted and (c.j, c.l, c.sign) not in wanted:
                continue
            om = omega_invariant(c, report, mode=values["mode"])
            out.append(om.as_dict())
        if wanted and len(out) < len(wanted):
            raise DomainError("some requested crossings are not in the critical set")
        _emit({"n": p.n, "mode": values["mode"], "invariants": out}, values["output"])
    except EquivibeError as err:
        _fail(err)


@main.command()
@_model_options
@click.option("--mode", default="1,1", show_default=True, help="seed crossing j,l or j,l,sign")
@click.option("--eps", default=0.05, show_default=True, help="seed amplitude (times r0)")
@click.option("--dt", default=1e-3, show_default=True)
@click.option("--periods", default=1.0, show_default=True, help="duration in limit periods")
@click.option("--csv", "csv_path", type=click.Path(), help="trajectory CSV path")
@click.option("--svg", "svg_path", type=click.Path(), help="particle-path SVG")
@click.option("--shoot/--no-shoot", default=True, show_default=True,
              help="refine the seed into a periodic orbit before integrating")
@click.pass_context
def simulate(ctx, **values):
    """Integrate a seeded vibration mode; optionally refine it by shooting."""
    from .dynamics import find_periodic_orbit, integrate

    values = _merge_config(ctx, values)
    try:
        p = _params(values)
        eq = find_equilibrium(p)
        report = isotypical_blocks(eq, p)
        j, l, sign = _parse_crossing(values["mode"])
        matches = [
            c
            for c in critical_set(report, max(l, 1))
            if (c.j, c.l) == (j, l) and (not sign or c.sign == sign)
        ]
        if not matches:
            raise DomainError(f"no critical value with label ({j},{l},{sign!r})")
        crossing = matches[0]
        payload = {
            "n": p.n,
            "mode": {"j": crossing.j, "l": crossing.l, "sign": crossing.sign},
            "lambda_crossing": crossing.lam,
        }
        if values["shoot"]:
            orbit = find_periodic_orbit(
                crossing, float(values["eps"]), p, eq=eq, report=report
            )
            traj = orbit.trajectory
            payload.update(
                {
                    "lambda": orbit.lam,
                    "residual": orbit.residual,
                    "converged": orbit.converged,
                }
            )
        else:
            from .dynamics import _as_real, _mode_seed

            x0 = _as_real(eq.u0, p.n) + float(values["eps"]) * eq.r0 * _mode_seed(
                eq, report, crossing
            )
            traj = integrate(
                x0,
                np.zeros(2 * p.n),
                crossing.lam,
                float(values["periods"]) * crossing.limit_period,
                float(values["dt"]),
                p,
            )
            payload["lambda"] = crossing.lam
        payload["energy_drift"] = traj.energy_drift()
        payload["collided"] = traj.collided
        if values["csv_path"]:
            traj.to_csv(values["csv_path"])
            payload["csv"] = values["csv_path"]
        if values["svg_path"]:
            _write_svg(traj, p.n, values["svg_path"])
            payload["svg"] = values["svg_path"]
        _emit(payload, values["output"])
    except EquivibeError as err:
        _fail(err)


@main.command()
@_model_options
@click.option("--l-max", default=6, show_default=True)
@click.option(
    "--mode",
    default="paper_style",
    show_default=True,
    type=click.Choice(["paper_style", "literal"]),
)
@click.option("--reference", type=click.Path(exists=True), help="labeled eigenvalue JSON")
@click.pass_context
def atlas(ctx, **values):
    """Full mode atlas: equilibrium, spectrum, critical set, invariants."""
    from .degrees import omega_invariant

    values = _merge_config(ctx, values)
    try:
        p = _params(values)
        eq, report = _report(values, p)
        rows = _critical_payload(report, int(values["l_max"]))
        entries = []
        for c in critical_set(report, int(values["l_max"])):
            om = omega_invariant(c, report, mode=values["mode"])
            entries.append(om.as_dict())
        payload = {
            "n": p.n,
            "parameters": {"A": p.A, "B": p.B, "sigma": p.sigma},
            "r0": eq.r0,
            "spectrum": _spectrum_payload(report),
            "critical_set": rows,
            "modes": entries,
        }
        _emit(payload, values["output"])
    except EquivibeError as err:
        _fail(err)


def _write_svg(traj, n, path, size=640):
    xs = traj.positions[:, 0::2]
    ys = traj.positions[:, 1::2]
    lo = min(xs.min(), ys.min()) - 0.1
    hi = max(xs.max(), ys.max()) + 0.1
    span = hi - lo

    def sx(v):
        return (v - lo) / span * size

    def sy(v):
        return size - (v - lo) / span * size

    colors = [
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    ]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for k in range(n):
        pts = " ".join(
            f"{sx(xs[i, k]):.2f},{sy(ys[i, k]):.2f}" for i in range(len(xs))
        )
        color = colors[k % len(colors)]
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1"/>'
        )
        parts.append(
            f'<circle cx="{sx(xs[0, k]):.2f}" cy="{sy(ys[0, k]):.2f}" r="4" fill="{color}"/>'
        )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


if __name__ == "__main__":
    main()
