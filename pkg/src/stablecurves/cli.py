"""Command-line front end.

Exit codes: 0 on success, 1 for domain failures (no fill, failed
verification, exceeded budget), 2 for usage and input-syntax errors.  All
output is deterministic for a fixed seed; multi-result listings are emitted
in canonical order.
"""

from __future__ import annotations

import functools
import json
import random
import sys
from pathlib import Path

import click

from . import equations as eqs_mod
from . import moduli as moduli_mod
from . import plotting
from . import trees as trees_mod
from .delta import check_identity
from .errors import (
    BudgetExceededError,
    DegenerateInputError,
    InconsistencyError,
    InvalidCoordinateError,
    MultipleFillError,
    NoFillError,
    ParseError,
    UnsupportedOperationError,
    ValidationError,
)
from .moduli import MODULI_FAMILY, StableCurve
from .proj import format_point, parse_point
from .trees import TREE_FAMILY, DEFAULT_BUDGET, MarkedTree

_USAGE_ERRORS = (ParseError, ValidationError, ValueError, OSError)
_DOMAIN_ERRORS = (
    NoFillError,
    MultipleFillError,
    InconsistencyError,
    DegenerateInputError,
    InvalidCoordinateError,
    BudgetExceededError,
    UnsupportedOperationError,
)


def _handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except _DOMAIN_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except _USAGE_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _parse_tree(text: str) -> MarkedTree:
    text = text.strip()
    if text.startswith("{"):
        return MarkedTree.from_json_dict(_load_json(text))
    return MarkedTree.from_newick(text)


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def _emit_tree(t: MarkedTree, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(t.to_json_dict(), indent=2))
    else:
        click.echo(t.to_newick())


def _emit_curve(c: StableCurve) -> None:
    click.echo(json.dumps(c.to_json_dict(), indent=2))


def _parse_points(text: str):
    return tuple(parse_point(part) for part in text.split(","))


def _parse_curve(text: str) -> StableCurve:
    return StableCurve.from_json_dict(_load_json(text))


@click.group()
@click.option("--seed", type=int, default=0, show_default=True, help="Random seed.")
@click.option(
    "--budget",
    type=int,
    default=DEFAULT_BUDGET,
    show_default=True,
    help="Maximum enumeration size before giving up.",
)
@click.pass_context
def cli(ctx, seed, budget):
    """Exact computations with labelled trees and stable rational curves."""
    ctx.ensure_object(dict)
    ctx.obj["seed"] = seed
    ctx.obj["budget"] = budget


main = cli


# -- trees ----------------------------------------------------------------------


@cli.group()
def trees():
    """Enumerate, transform and render labelled trees."""


@trees.command("enumerate")
@click.option("--n", required=True, type=int, help="Highest leaf label.")
@click.option("--count-only", is_flag=True, help="Print only the number of trees.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["newick", "json"]),
    default="newick",
    show_default=True,
)
@click.pass_obj
@_handle_errors
def trees_enumerate(obj, n, count_only, fmt):
    """List all trees with leaves 0..N in canonical order."""
    found = trees_mod.enumerate_trees(n, obj["budget"])
    if count_only:
        click.echo(str(len(found)))
        return
    if fmt == "json":
        doc = {
            "format": "tree_list",
            "version": 1,
            "trees": [t.to_json_dict() for t in found],
        }
        click.echo(json.dumps(doc, indent=2))
    else:
        for t in found:
            click.echo(t.to_newick())


@trees.command("face")
@click.option("--i", "index", required=True, type=int, help="Face index.")
@click.option("--input", "path", default="-", show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["newick", "json"]),
    default="newick",
    show_default=True,
)
@_handle_errors
def trees_face(index, path, fmt):
    """Erase leaf I of a tree read from a file or stdin."""
    t = _parse_tree(_read_text(path))
    _emit_tree(trees_mod.face(t, index), fmt)


@trees.command("fill")
@click.option("--input", "path", required=True, help="Tuple document (JSON).")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["newick", "json"]),
    default="newick",
    show_default=True,
)
@_handle_errors
def trees_fill(path, fmt):
    """Find the unique tree whose faces are the given tuple."""
    doc = _load_json(_read_text(path))
    if not isinstance(doc, dict) or "entries" not in doc:
        raise ParseError("expected a JSON object with an 'entries' list")
    entries = []
    for entry in doc["entries"]:
        if isinstance(entry, str):
            entries.append(MarkedTree.from_newick(entry))
        else:
            entries.append(MarkedTree.from_json_dict(entry))
    _emit_tree(trees_mod.fill(entries), fmt)


@trees.command("check")
@click.option("--n", required=True, type=int, help="Highest leaf label.")
@click.pass_obj
@_handle_errors
def trees_check(obj, n):
    """Exhaustively check the face-map identities over all trees with leaves 0..N."""
    found = trees_mod.enumerate_trees(n, obj["budget"])
    pairs = 0
    for t in found:
        for j in range(1, n + 1):
            for i in range(j):
                if not check_identity(TREE_FAMILY, t, i, j):
                    click.echo(
                        f"FAIL: {t.to_newick()} violates the identity at ({i}, {j})"
                    )
                    sys.exit(1)
                pairs += 1
    click.echo(f"OK: {len(found)} trees, {pairs} identity pairs checked")


@trees.command("render")
@click.option("--input", "path", default="-", show_default=True)
@click.option("--output", "out", default=None, help="Target file; stdout if absent.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["dot", "png"]),
    default=None,
    help="Inferred from the output extension when omitted.",
)
@_handle_errors
def trees_render(path, out, fmt):
    """Render a tree as Graphviz input or as a PNG drawing."""
    t = _parse_tree(_read_text(path))
    if fmt is None:
        fmt = "png" if out and out.lower().endswith(".png") else "dot"
    if fmt == "dot":
        if out:
            Path(out).write_text(t.to_dot())
            click.echo(out)
        else:
            click.echo(t.to_dot(), nl=False)
        return
    if not out:
        raise ValueError("--output is required for png rendering")
    plotting.save_tree_image(t, out)
    click.echo(out)


# -- moduli ---------------------------------------------------------------------


def _curve_from_options(points, path) -> StableCurve:
    if (points is None) == (path is None):
        raise ValueError("provide exactly one of --points and --input")
    if points is not None:
        return moduli_mod.from_points(_parse_points(points))
    return _parse_curve(_read_text(path))


@cli.group()
def moduli():
    """Coordinates, verification and filling of stable curves."""


@moduli.command("coords")
@click.option("--points", default=None, help='Comma list, e.g. "0,1,inf,2,3".')
@click.option("--input", "path", default=None, help="Curve document (JSON).")
@_handle_errors
def moduli_coords(points, path):
    """Print the coordinate vector of a curve."""
    c = _curve_from_options(points, path)
    if c.n_marks == 5:
        click.echo(", ".join(format_point(p) for p in moduli_mod.m05_vector(c)))
        return
    coords = moduli_mod.to_coordinates(c)
    for quad in sorted(coords, key=sorted):
        name = "".join(str(m) for m in sorted(quad))
        click.echo(f"{name}: {format_point(coords[quad])}")


@moduli.command("verify")
@click.option("--coords", "vector", required=True, help="Five comma-separated points.")
@click.option("--n", "n_marks", type=int, default=5, show_default=True)
@_handle_errors
def moduli_verify(vector, n_marks):
    """Check the five-mark coordinate equations on a vector."""
    if n_marks != 5:
        raise UnsupportedOperationError(
            "only the five-mark vector form is supported; evaluate a generated "
            "system for other mark counts"
        )
    points = _parse_points(vector)
    if moduli_mod.verify_m05(points):
        click.echo("OK")
    else:
        click.echo("FAIL: the vector does not satisfy the defining equations")
        sys.exit(1)


@moduli.command("reconstruct")
@click.option("--coords", "vector", required=True, help="Five comma-separated points.")
@_handle_errors
def moduli_reconstruct(vector):
    """Rebuild the unique five-mark curve from its coordinate vector."""
    _emit_curve(moduli_mod.reconstruct_m05(_parse_points(vector)))


@moduli.command("fill")
@click.option("--input", "path", required=True, help="Tuple document (JSON).")
@_handle_errors
def moduli_fill(path):
    """Find the unique curve whose forgetful images are the given tuple."""
    doc = _load_json(_read_text(path))
    if not isinstance(doc, dict) or "entries" not in doc:
        raise ParseError("expected a JSON object with an 'entries' list")
    entries = [StableCurve.from_json_dict(entry) for entry in doc["entries"]]
    _emit_curve(moduli_mod.fill_moduli(entries))


@moduli.command("sample")
@click.option("--n", required=True, type=int, help="Number of marks.")
@click.option("--count", default=1, show_default=True, type=int)
@click.option("--smooth", is_flag=True, help="Sample one-component curves only.")
@click.pass_obj
@_handle_errors
def moduli_sample(obj, n, count, smooth):
    """Emit random stable curves as a JSON document."""
    rng = random.Random(obj["seed"])
    draw = moduli_mod.sample_smooth_curve if smooth else moduli_mod.sample_curve
    doc = {
        "format": "curve_list",
        "version": 1,
        "curves": [draw(rng, n).to_json_dict() for _ in range(count)],
    }
    click.echo(json.dumps(doc, indent=2))


# -- equations --------------------------------------------------------------------


@cli.group()
def eqs():
    """Generate, evaluate and export the defining polynomial systems."""


@eqs.command("generate")
@click.option("--n", required=True, type=int, help="Number of marks.")
@click.option(
    "--form",
    type=click.Choice(["redundant", "reduced"]),
    default="redundant",
    show_default=True,
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(list(eqs_mod.EXPORT_FORMATS)),
    default="plain",
    show_default=True,
)
@_handle_errors
def eqs_generate(n, form, fmt):
    """Print the equation system for N marks."""
    system = (
        eqs_mod.generate_redundant(n)
        if form == "redundant"
        else eqs_mod.generate_reduced(n)
    )
    click.echo(eqs_mod.export(system, fmt), nl=False)


@eqs.command("evaluate")
@click.option("--system", "system_path", required=True, help="System document (JSON).")
@click.option("--point", "points", default=None, help="Comma list of marked points.")
@click.option("--curve", "curve_path", default=None, help="Curve document (JSON).")
@_handle_errors
def eqs_evaluate(system_path, points, curve_path):
    """Evaluate a system at a curve; report whether every residual vanishes."""
    system = eqs_mod.parse_system_json(_read_text(system_path))
    curve = _curve_from_options(points, curve_path)
    if curve.n_marks != system.n:
        raise ValidationError(
            f"the system is for {system.n} marks but the curve has {curve.n_marks}"
        )
    assignment = eqs_mod.assignment_from_quads(
        system, moduli_mod.to_coordinates(curve)
    )
    residuals = eqs_mod.evaluate(system, assignment)
    nonzero = [(t, r) for t, r in enumerate(residuals) if r != 0]
    if not nonzero:
        click.echo("all residuals zero")
        return
    click.echo(f"{len(nonzero)} of {len(residuals)} residuals nonzero")
    for t, r in nonzero[:10]:
        click.echo(f"  equation {t}: {system.equations[t].display} = {r}")
    sys.exit(1)


# -- report ----------------------------------------------------------------------


@cli.command("report")
@click.option("--n", default=5, show_default=True, type=int, help="Largest label.")
@click.option("--samples", default=8, show_default=True, type=int)
@click.option("--output", "out_dir", required=True, help="Directory for the files.")
@click.pass_obj
@_handle_errors
def report(obj, n, samples, out_dir):
    """Write enumeration tables (CSV) and companion figures (PNG)."""
    rng = random.Random(obj["seed"])
    written = plotting.write_report(out_dir, n, samples, rng, obj["budget"])
    for path in written:
        click.echo(str(path))


if __name__ == "__main__":
    main()
