"""Command-line front end.

Exit codes form a stable contract:

* ``analyze``:  0 unique pure steady state, 2 unique but not pure,
  3 no unique steady state, 1 file/schema or internal error.
* ``engineer``: 0 rank condition holds, 4 rank condition failed, 1 error.
* ``simulate``: 0 success, 3 drift not Hurwitz (without ``--force``), 1 error.
"""

from __future__ import annotations

import sys as _sys

import click
import numpy as np

from . import catalog as cat
from . import dynamics, engineer, serialization, steady
from .errors import GausteadyError
from .model import (
    CovarianceMatrix,
    GaussianDynamics,
    GaussianState,
    drift_matrix,
)
from .numkit import is_hurwitz


def _parse_set(values: tuple[str, ...]) -> dict:
    out = {}
    for item in values:
        if "=" not in item:
            raise click.UsageError(f"--set expects name=value, got {item!r}")
        key, raw = item.split("=", 1)
        for cast in (int, float, complex):
            try:
                out[key] = cast(raw)
                break
            except ValueError:
                continue
        else:
            out[key] = raw
    return out


def _load_system(path, catalog_name, sets) -> GaussianDynamics:
    if (path is None) == (catalog_name is None):
        raise click.UsageError("give exactly one of SYSTEM_FILE or --catalog")
    if path is not None:
        if sets:
            raise click.UsageError("--set only applies to catalog entries")
        return serialization.system_from_dict(serialization.load_json(path))
    obj, _ = cat.build_entry(catalog_name, **_parse_set(sets))
    if not isinstance(obj, GaussianDynamics):
        raise click.UsageError(
            f"catalog entry {catalog_name!r} is a state spec, not a system"
        )
    return obj


def _fmt_matrix(M, indent="  "):
    M = np.asarray(M)
    if np.iscomplexobj(M):
        if np.allclose(M.imag, 0):
            M = M.real
    with np.printoptions(precision=6, suppress=True, linewidth=120):
        return "\n".join(indent + line for line in str(M).splitlines())


@click.group()
def main():
    """Analyze, engineer, and simulate Gaussian dissipative systems."""


@main.command("analyze")
@click.argument("system_file", required=False, type=click.Path(exists=True))
@click.option("--catalog", "catalog_name", help="catalog system entry to analyze")
@click.option("--set", "sets", multiple=True, help="override entry parameter, name=value")
@click.option("--json", "json_out", type=click.Path(), help="write the report as JSON")
@click.option(
    "--partition",
    help="comma-separated 1-based modes for the entanglement bipartition "
    "(default: mode 1 vs the rest)",
)
def cmd_analyze(system_file, catalog_name, sets, json_out, partition):
    """Steady-state analysis of a system (file or catalog entry)."""
    try:
        system = _load_system(system_file, catalog_name, sets)
        report = steady.analyze(system)
    except (GausteadyError, click.UsageError) as exc:
        click.echo(f"error: {exc}", err=True)
        _sys.exit(1)

    click.echo(f"modes: {system.n}, channels: {system.m}")
    eigs = ", ".join(f"{e:.6g}" for e in np.sort_complex(report.eigenvalues))
    click.echo(f"drift eigenvalues: {eigs}")
    click.echo(f"unique steady state: {report.unique}")

    log_neg = None
    if report.unique:
        click.echo(f"pure steady state: {report.pure}")
        click.echo(
            "condition (ii) residuals: "
            f"{report.cond_ii_residuals[0]:.3e}, {report.cond_ii_residuals[1]:.3e}"
        )
        click.echo(f"condition (iii) residual: {report.cond_iii_residual:.3e}")
        click.echo("steady covariance:")
        click.echo(_fmt_matrix(report.Vs.V))
        if system.n >= 2:
            if partition:
                modes = [int(k) - 1 for k in partition.split(",")]
            else:
                modes = [0]
            try:
                log_neg = steady.log_negativity(report.Vs, modes)
                click.echo(f"log-negativity E = {log_neg:.4f}")
            except GausteadyError as exc:
                click.echo(f"error: {exc}", err=True)
                _sys.exit(1)

    if json_out:
        doc = {
            "unique": report.unique,
            "eigenvalues": [[e.real, e.imag] for e in report.eigenvalues],
            "pure": report.pure,
            "cond_ii": report.cond_ii,
            "cond_ii_residuals": list(report.cond_ii_residuals or []),
            "cond_iii": report.cond_iii,
            "cond_iii_residual": report.cond_iii_residual,
            "Vs": None if report.Vs is None else [list(map(float, r)) for r in report.Vs.V],
            "Vs_formula": None
            if report.Vs_formula is None
            else [list(map(float, r)) for r in report.Vs_formula.V],
            "log_negativity": log_neg,
        }
        with open(json_out, "w") as fh:
            fh.write(serialization.canonical_dumps(doc))

    if not report.unique:
        _sys.exit(3)
    if not report.pure:
        _sys.exit(2)


@main.command("engineer")
@click.argument("spec_file", type=click.Path(exists=True))
@click.option("--params", "params_file", type=click.Path(exists=True))
@click.option(
    "--purely-dissipative",
    is_flag=True,
    help="use P = I, R = Gamma = 0 (no Hamiltonian)",
)
@click.option("--output", "-o", required=True, type=click.Path())
def cmd_engineer(spec_file, params_file, purely_dissipative, output):
    """Synthesize a dissipative system driving the target state of SPEC_FILE."""
    if (params_file is None) == (not purely_dissipative):
        raise click.UsageError("give exactly one of --params or --purely-dissipative")
    try:
        spec = serialization.spec_from_dict(serialization.load_json(spec_file))
        if purely_dissipative:
            params = engineer.EngineeringParameters(
                P=np.eye(spec.n, dtype=complex),
                R=np.zeros((spec.n, spec.n)),
                Gamma=np.zeros((spec.n, spec.n)),
            )
        else:
            params = serialization.params_from_dict(
                serialization.load_json(params_file)
            )
        system = engineer.synthesize(spec, params)
        Q = engineer.q_matrix(spec, params)
        ok, rank = engineer.rank_condition(params.P, Q)
        unique = engineer.theorem2_check(spec, system)
        profile = engineer.locality_profile(system)
    except GausteadyError as exc:
        click.echo(f"error: {exc}", err=True)
        _sys.exit(1)

    with open(output, "w") as fh:
        fh.write(serialization.canonical_dumps(serialization.system_to_dict(system)))

    click.echo(f"wrote system file: {output}")
    click.echo(f"rank condition: {'holds' if ok else 'FAILS'} (rank {rank} of {spec.n})")
    click.echo(f"unique steady state equals target: {unique}")
    for k, supp in enumerate(profile.channel_supports, start=1):
        modes = ", ".join(str(i + 1) for i in sorted(supp))
        click.echo(f"channel {k} acts on modes: {{{modes}}}")
    edges = ", ".join(f"{i + 1}-{j + 1}" for i, j in sorted(profile.hamiltonian_edges))
    click.echo(f"hamiltonian edges: {{{edges}}}")

    if not ok:
        _sys.exit(4)


def _initial_state(init: str, n: int) -> GaussianState:
    if init == "vacuum":
        V = 0.5 * np.eye(2 * n)
    elif init == "identity":
        V = np.eye(2 * n)
    else:
        try:
            scale = float(init)
        except ValueError:
            raise click.UsageError(
                f"--init must be 'vacuum', 'identity', or a scale factor, got {init!r}"
            )
        V = scale * np.eye(2 * n)
    return GaussianState(mean=np.zeros(2 * n), cov=CovarianceMatrix(V))


@main.command("simulate")
@click.argument("system_file", required=False, type=click.Path(exists=True))
@click.option("--catalog", "catalog_name", help="catalog system entry to simulate")
@click.option("--set", "sets", multiple=True, help="override entry parameter, name=value")
@click.option("--init", default="vacuum", show_default=True,
              help="initial covariance: vacuum (I/2), identity (I), or a scale s (sI)")
@click.option("--t-final", type=float, help="default: 40 / |max Re eigenvalue|")
@click.option("--dt", type=float, help="default: 0.01 / |max Re eigenvalue|")
@click.option("--output", "-o", required=True, type=click.Path())
@click.option("--force", is_flag=True, help="integrate even if the drift is not Hurwitz")
def cmd_simulate(system_file, catalog_name, sets, init, t_final, dt, output, force):
    """Integrate the moment equations and write a CSV trajectory."""
    try:
        system = _load_system(system_file, catalog_name, sets)
    except (GausteadyError, click.UsageError) as exc:
        click.echo(f"error: {exc}", err=True)
        _sys.exit(1)

    A = drift_matrix(system)
    if not is_hurwitz(A):
        if not force:
            click.echo("error: drift matrix is not Hurwitz (use --force to override)", err=True)
            _sys.exit(3)
        rate = 1.0
    else:
        rate = abs(np.max(np.linalg.eigvals(A).real))
    if t_final is None:
        t_final = 40.0 / rate
    if dt is None:
        dt = 0.01 / rate

    try:
        state = _initial_state(init, system.n)
        traj = dynamics.evolve(system, state, t_final, dt)
    except GausteadyError as exc:
        click.echo(f"error: {exc}", err=True)
        _sys.exit(1)

    n2 = 2 * system.n
    header = ["t", "fidelity", "purity"]
    header += [f"mean_{i + 1}" for i in range(n2)]
    header += [f"V_{i + 1}_{j + 1}" for i in range(n2) for j in range(i, n2)]
    with open(output, "w") as fh:
        fh.write(",".join(header) + "\n")
        for k in range(len(traj.times)):
            row = [traj.times[k], traj.fidelity[k], traj.purity[k]]
            row += list(traj.means[k])
            row += [traj.covs[k][i, j] for i in range(n2) for j in range(i, n2)]
            fh.write(",".join(format(x, ".12g") for x in row) + "\n")
    click.echo(f"wrote {len(traj.times)} samples to {output}")


@main.group("catalog")
def cmd_catalog():
    """Inspect and export the built-in presets."""


@cmd_catalog.command("list")
def catalog_list():
    """List entry names, kinds, and parameter defaults."""
    for name in sorted(cat.CATALOG):
        entry = cat.CATALOG[name]
        params = ", ".join(f"{k}={v}" for k, v in entry.defaults.items())
        click.echo(f"{name}  [{entry.kind}]  ({params})  {entry.description}")


@cmd_catalog.command("show")
@click.argument("name")
@click.option("--set", "sets", multiple=True, help="override entry parameter, name=value")
def catalog_show(name, sets):
    """Print the matrices of a catalog entry."""
    try:
        obj, params = cat.build_entry(name, **_parse_set(sets))
    except GausteadyError as exc:
        click.echo(f"error: {exc}", err=True)
        _sys.exit(1)
    click.echo(f"{name}: " + ", ".join(f"{k}={v}" for k, v in params.items()))
    if isinstance(obj, GaussianDynamics):
        click.echo("G =")
        click.echo(_fmt_matrix(obj.G))
        click.echo("C =")
        click.echo(_fmt_matrix(obj.C))
    else:
        click.echo("X =")
        click.echo(_fmt_matrix(obj.X))
        click.echo("Y =")
        click.echo(_fmt_matrix(obj.Y))


@cmd_catalog.command("export")
@click.argument("name")
@click.option("--set", "sets", multiple=True, help="override entry parameter, name=value")
@click.option("--output", "-o", required=True, type=click.Path())
def catalog_export(name, sets, output):
    """Write a catalog entry as a system or spec file."""
    try:
        obj, _ = cat.build_entry(name, **_parse_set(sets))
    except GausteadyError as exc:
        click.echo(f"error: {exc}", err=True)
        _sys.exit(1)
    if isinstance(obj, GaussianDynamics):
        doc = serialization.system_to_dict(obj)
    else:
        doc = serialization.spec_to_dict(obj)
    with open(output, "w") as fh:
        fh.write(serialization.canonical_dumps(doc))
    click.echo(f"wrote {output}")


if __name__ == "__main__":
    main()
