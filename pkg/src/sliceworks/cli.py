"""Command-line frontend.

Subcommands map one-to-one onto library operations: ``roots``, ``symmetrize``,
``conjugate``, ``star``, ``extend``, ``domain-info``, ``check``.  Every JSON
payload carries a top-level ``"schema": "sliceworks/1"`` and re-parses under
the module schemas; CSV output is RFC 4180.  All randomness flows through one
seed (flag or SLICEWORKS_SEED), so identical invocations produce identical
bytes.

Exit codes: 0 success, 1 parse error (with line/column where available),
2 precondition or domain-check failure, 3 numeric non-convergence.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

import click

from .domains import (
    SliceDomain,
    check_real_path_connected,
    check_self_stem_preserving,
    domain_from_json,
    radius_for_units,
    radius_path_ball,
    radius_two_units,
    slice_units,
)
from .errors import (
    DegenerateSlicePair,
    DomainCheckFailed,
    EmptyUnitSet,
    IdenticallyZero,
    IncompatibleDomains,
    InsufficientUnits,
    NoConvergence,
    NonRealSymmetrization,
    NotInSliceCone,
    NoWitnessPath,
    OutOfDomain,
    ParseError,
    StepOutOfRange,
)
from .functions import (
    SlicePolynomial,
    conjugation,
    function_from_json,
    function_to_json,
    representation_extend,
    star_product,
    symmetrization,
)
from .paths import PathCn
from .quaternion import ImaginaryUnit, Quaternion, sphere_sample
from .testkit import OracleConfig, run_property_suite, serialize_report
from .zeros import (
    SPHERICAL_ZERO,
    ZeroSet,
    find_zeros,
    sphere_propagation_check,
    zero_inclusion_check,
)

__all__ = ["main", "emit_plot_data"]

SCHEMA = "sliceworks/1"

_PRECONDITION_ERRORS = (
    IncompatibleDomains,
    OutOfDomain,
    DomainCheckFailed,
    EmptyUnitSet,
    InsufficientUnits,
    NoWitnessPath,
    StepOutOfRange,
    NotInSliceCone,
    DegenerateSlicePair,
    NonRealSymmetrization,
    IdenticallyZero,
    ValueError,
)


def _fail(message: str, code: int) -> None:
    click.echo(f"sliceworks: error: {message}", err=True)
    sys.exit(code)


def _guarded(fn: Callable) -> Callable:
    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except ParseError as exc:
            _fail(str(exc), 1)
        except NoConvergence as exc:
            _fail(str(exc), 3)
        except _PRECONDITION_ERRORS as exc:
            _fail(str(exc), 2)

    return wrapper


def _load_json(path: str) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", line=exc.lineno, column=exc.colno) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _dump(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _seed_option(fn: Callable) -> Callable:
    return click.option(
        "--seed",
        type=int,
        default=0,
        show_default=True,
        envvar="SLICEWORKS_SEED",
        help="Deterministic seed; the SLICEWORKS_SEED variable overrides the default.",
    )(fn)


def _out_option(fn: Callable) -> Callable:
    return click.option(
        "--out", type=click.Path(dir_okay=False), default=None,
        help="Write the report here instead of standard output.",
    )(fn)


def emit_plot_data(zeroset: ZeroSet, units: Sequence[ImaginaryUnit]) -> str:
    """CSV stream of plottable zero-set rows: (x, y, unit_w..z, kind).

    Each sphere is traced once per supplied unit; isolated zeros carry their
    solved unit, real zeros leave the unit columns empty.  Rows sort by
    (kind, x, y) so output order is deterministic.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["x", "y", "unit_w", "unit_x", "unit_y", "unit_z", "kind"])
    rows: list[tuple[Any, ...]] = []
    for r in zeroset.real_roots:
        rows.append((r.value, 0.0, "", "", "", "", "real"))
    for z in zeroset.isolated:
        x, y = z.sphere
        p = z.point
        rows.append((x, y, 0.0, p.x / y, p.y / y, p.z / y, "isolated"))
    for s in zeroset.spheres:
        kind = "sphere" if s.kind == SPHERICAL_ZERO else "sym-only"
        for u in units:
            rows.append((s.x, s.y, 0.0, u.x, u.y, u.z, kind))
    rows.sort(key=lambda row: (row[6], row[0], row[1]))
    writer.writerows(rows)
    return buf.getvalue()


def _zeroset_csv(zeroset: ZeroSet) -> str:
    """One RFC-4180 row per zero object."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(
        ["kind", "x", "y", "unit_w", "unit_x", "unit_y", "unit_z", "mult", "fs_mult"]
    )
    for r in zeroset.real_roots:
        writer.writerow(["real", r.value, 0.0, "", "", "", "", r.mult, r.fs_mult])
    for z in zeroset.isolated:
        x, y = z.sphere
        p = z.point
        writer.writerow(
            ["isolated", x, y, 0.0, p.x / y, p.y / y, p.z / y, z.mult, z.fs_mult]
        )
    for s in zeroset.spheres:
        writer.writerow([s.kind, s.x, s.y, "", "", "", "", s.mult, s.fs_mult])
    return buf.getvalue()


def _require_polynomial(f: Any, what: str) -> SlicePolynomial:
    if not isinstance(f, SlicePolynomial):
        raise ValueError(f"{what} requires a polynomial input spec")
    return f


@click.group()
@click.version_option(package_name="sliceworks", prog_name="sliceworks")
def main() -> None:
    """Slice analysis of quaternionic functions: products, conjugation,
    symmetrization, representation extension, domain geometry, and zero sets."""


@main.command()
@click.option("--input", "input_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Function spec (JSON).")
@click.option("--domain", "domain_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Optional domain spec (JSON); zeros outside it are dropped.")
@_seed_option
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
              default="json", show_default=True)
@click.option("--unit-samples", type=int, default=8, show_default=True,
              help="Units per sphere in the verification pass.")
@click.option("--plot", "plot_path", default=None, type=click.Path(dir_okay=False),
              help="Render the zero set to this image file.")
@click.option("--plot-data", "plot_data_path", default=None,
              type=click.Path(dir_okay=False),
              help="Write plot-trace rows (CSV) to this file.")
@_out_option
@_guarded
def roots(input_path: str, domain_path: str | None, seed: int, fmt: str,
          unit_samples: int, plot_path: str | None, plot_data_path: str | None,
          out: str | None) -> None:
    """Find and classify all zeros of a one-variable polynomial."""
    f = _require_polynomial(function_from_json(_load_json(input_path)), "roots")
    domain = domain_from_json(_load_json(domain_path)) if domain_path else None
    zeroset = find_zeros(f, domain, seed)

    units = sphere_sample(unit_samples, seed)
    inclusion = zero_inclusion_check(f, zeroset, domain, unit_count=unit_samples, seed=seed)
    propagation = [
        sphere_propagation_check(f, s, units).to_json()
        for s in zeroset.spheres
        if s.kind == SPHERICAL_ZERO
    ]

    if fmt == "csv":
        _emit(_zeroset_csv(zeroset), out)
    else:
        payload = {
            "schema": SCHEMA,
            "command": "roots",
            "seed": seed,
            "zeroset": zeroset.to_json(),
            "verification": {
                "zero_inclusion": inclusion.to_json(),
                "sphere_propagation": propagation,
            },
        }
        _emit(_dump(payload), out)

    if plot_data_path:
        Path(plot_data_path).write_text(emit_plot_data(zeroset, units))
    if plot_path:
        from .viz import render_zero_plot

        render_zero_plot(zeroset, plot_path)
        click.echo(f"figure written to {plot_path}", err=True)


def _unary_function_command(name: str, operation: Callable, doc: str):
    @main.command(name=name, help=doc)
    @click.option("--input", "input_path", required=True,
                  type=click.Path(exists=True, dir_okay=False),
                  help="Function spec (JSON).")
    @click.option("--domain", "domain_path", default=None,
                  type=click.Path(exists=True, dir_okay=False),
                  help="Domain the operation is taken over (enables the checks).")
    @click.option("--verify/--no-verify", default=False, show_default=True,
                  help="Run the witness checks for the domain preconditions.")
    @_seed_option
    @_out_option
    @_guarded
    def command(input_path: str, domain_path: str | None, verify: bool,
                seed: int, out: str | None) -> None:
        f = function_from_json(_load_json(input_path))
        omega = domain_from_json(_load_json(domain_path)) if domain_path else None
        g = operation(f, omega, verify=verify, seed=seed)
        payload = {
            "schema": SCHEMA,
            "command": name,
            "seed": seed,
            "function": function_to_json(g),
        }
        _emit(_dump(payload), out)

    return command


symmetrize = _unary_function_command(
    "symmetrize", symmetrization,
    "Symmetrize a function: the slice-preserving product of its conjugate with itself.",
)
conjugate = _unary_function_command(
    "conjugate", conjugation,
    "Conjugate a function's stem componentwise.",
)


@main.command()
@click.option("--left", "left_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--right", "right_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@_out_option
@_guarded
def star(left_path: str, right_path: str, out: str | None) -> None:
    """Star-multiply two function specs (order matters)."""
    f = function_from_json(_load_json(left_path))
    g = function_from_json(_load_json(right_path))
    h = star_product(f, g)
    payload = {"schema": SCHEMA, "command": "star", "function": function_to_json(h)}
    _emit(_dump(payload), out)


_EXTEND_KEYS = {"vj", "vk", "j", "k", "i"}


@main.command()
@click.option("--input", "input_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help='JSON object {"vj", "vk", "j", "k", "i"}; "i" may be null '
                   "to request the stem's first component.")
@_out_option
@_guarded
def extend(input_path: str, out: str | None) -> None:
    """Extend values given on two slices to a third slice."""
    data = _load_json(input_path)
    if not isinstance(data, dict):
        raise ParseError("extend spec must be a JSON object")
    unknown = set(data) - _EXTEND_KEYS
    if unknown:
        raise ParseError(f"unknown keys in extend spec: {', '.join(sorted(unknown))}")
    missing = _EXTEND_KEYS - {"i"} - set(data)
    if missing:
        raise ParseError(f"extend spec is missing: {', '.join(sorted(missing))}")
    vj = Quaternion.from_json(data["vj"])
    vk = Quaternion.from_json(data["vk"])
    j = ImaginaryUnit.from_json(data["j"])
    k = ImaginaryUnit.from_json(data["k"])
    i = None if data.get("i") is None else ImaginaryUnit.from_json(data["i"])
    value = representation_extend(vj, vk, j, k, i)
    payload = {"schema": SCHEMA, "command": "extend", "value": value.to_json()}
    _emit(_dump(payload), out)


@main.command(name="domain-info")
@click.option("--domain", "domain_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--path", "path_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Path spec (JSON) whose endpoint anchors the radii.")
@_seed_option
@_out_option
@_guarded
def domain_info(domain_path: str, path_path: str, seed: int, out: str | None) -> None:
    """Report admissible slice units, the three ball radii, and domain checks."""
    domain = domain_from_json(_load_json(domain_path))
    gamma = PathCn.from_json(_load_json(path_path))

    sample = slice_units(domain, gamma, seed)
    radii: dict[str, Any] = {}
    notes: list[str] = []
    try:
        radii["slice_set"] = radius_for_units(domain, gamma, sample)
    except EmptyUnitSet as exc:
        radii["slice_set"] = None
        notes.append(str(exc))
    try:
        radii["two_unit"] = radius_two_units(domain, gamma, seed)
    except (EmptyUnitSet, InsufficientUnits) as exc:
        radii["two_unit"] = None
        notes.append(str(exc))
    try:
        radii["path_ball"] = radius_path_ball(domain, gamma, seed)
    except EmptyUnitSet as exc:
        radii["path_ball"] = None
        notes.append(str(exc))

    payload = {
        "schema": SCHEMA,
        "command": "domain-info",
        "seed": seed,
        "slice_units": sample.to_json(),
        "radii": radii,
        "radii_notes": notes,
        "checks": {
            "real_path_connected": check_real_path_connected(domain, seed=seed).to_json(),
            "self_stem_preserving": check_self_stem_preserving(domain, seed=seed).to_json(),
        },
    }
    _emit(_dump(payload), out)


@main.command()
@_seed_option
@click.option("--trials", type=int, default=1000, show_default=True,
              help="Scales every property's case count (1000 = nominal size).")
@click.option("--degree-cap", type=int, default=8, show_default=True)
@click.option("--coeff-cap", type=float, default=4.0, show_default=True)
@click.option("--unit-samples", type=int, default=64, show_default=True)
@click.option("--fd-step", type=float, default=1e-5, show_default=True)
@_out_option
@_guarded
def check(seed: int, trials: int, degree_cap: int, coeff_cap: float,
          unit_samples: int, fd_step: float, out: str | None) -> None:
    """Run the full property suite and emit its canonical report."""
    config = OracleConfig(
        seed=seed,
        trials=trials,
        degree_cap=degree_cap,
        coeff_norm_cap=coeff_cap,
        unit_samples=unit_samples,
        fd_step=fd_step,
    )
    report = run_property_suite(config)
    width = len(str(len(report.results)))
    for idx, result in enumerate(report.results, start=1):
        status = "pass" if result.passed else "FAIL"
        line = (
            f"[{idx:>{width}}/{len(report.results)}] {result.name}: {status} "
            f"(trials={result.trials}, max_residual={result.max_residual:.3g}, "
            f"tolerance={result.tolerance:.3g})"
        )
        click.echo(line, err=True)
    _emit(serialize_report(report).decode() + "\n", out)
    if not report.all_passed:
        sys.exit(2)


if __name__ == "__main__":
    main()
