"""Command-line front end.

Exit codes: 0 all checks pass, 1 a verification check failed, 2 usage or
input error. The environment variable BRACELAB_BUDGET overrides the closure
and lattice budgets.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click

from .brace import classify_flags
from .campaigns import DEFAULT_SEED, SUITES, run_suite, write_report_csv
from .enumeration import enumerate_involutive_solutions, enumerate_skew_braces, groups_of_order
from .errors import BraceLabError
from .series import nilpotency_report
from .serialize import (
    read_catalog,
    solution_from_json,
    write_catalog,
)
from .ybe import multipermutation_level, permutation_brace


def _fail_input(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


@click.group()
def main() -> None:
    """Finite skew braces and Yang-Baxter solutions: enumeration, analysis,
    and theorem-verification campaigns."""


@main.command("enumerate")
@click.option("--kind", type=click.Choice(["braces", "solutions", "groups"]), required=True)
@click.option("--order", type=int, required=True)
@click.option("--method", type=click.Choice(["holomorph", "direct"]), default="holomorph")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.option("--checkpoint", type=click.Path(dir_okay=False), default=None,
              help="progress file for long brace enumerations")
def enumerate_catalog(kind: str, order: int, method: str, out_path: str | None, checkpoint: str | None):
    """Enumerate a catalog up to isomorphism and write it as JSON lines."""
    try:
        if kind == "braces":
            cat = enumerate_skew_braces(order, method=method, checkpoint=checkpoint)
        elif kind == "solutions":
            cat = enumerate_involutive_solutions(order)
        else:
            cat = groups_of_order(order)
    except BraceLabError as exc:
        _fail_input(str(exc))
        return
    if out_path:
        write_catalog(cat, out_path)
        click.echo(f"{cat.meta['count']} {kind} of order {order} -> {out_path}")
    else:
        from .serialize import item_to_json

        click.echo(json.dumps({"meta": cat.meta}))
        for item in cat.items:
            click.echo(json.dumps(item_to_json(kind, item)))


@main.command()
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--report", "report_path", type=click.Path(dir_okay=False), required=True)
def classify(in_path: str, report_path: str):
    """Classify every brace in a catalog file into a CSV report."""
    try:
        cat = read_catalog(in_path)
    except (BraceLabError, ValueError, KeyError, json.JSONDecodeError) as exc:
        _fail_input(f"{in_path}: {exc}")
        return
    if cat.kind != "braces":
        _fail_input(f"{in_path}: expected a brace catalog, found {cat.kind}")
    columns = [
        "index", "n", "trivial", "two_sided", "abelian_type", "nilpotent_type",
        "add_class", "mul_nilpotent", "mul_class",
        "left", "left_class", "right", "right_class",
        "strong", "strong_class", "annihilator", "annihilator_class",
    ]
    with Path(report_path).open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        for i, b in enumerate(cat.items):
            flags = classify_flags(b)
            rep = nilpotency_report(b)
            writer.writerow({
                "index": i,
                "n": b.n,
                "trivial": flags.trivial,
                "two_sided": flags.two_sided,
                "abelian_type": flags.abelian_type,
                "nilpotent_type": flags.nilpotent_type,
                "add_class": flags.add_nilpotency_class,
                "mul_nilpotent": flags.mul_nilpotent,
                "mul_class": flags.mul_nilpotency_class,
                "left": rep.left.holds,
                "left_class": rep.left.cls,
                "right": rep.right.holds,
                "right_class": rep.right.cls,
                "strong": rep.strong.holds,
                "strong_class": rep.strong.cls,
                "annihilator": rep.annihilator.holds,
                "annihilator_class": rep.annihilator.cls,
            })
    click.echo(f"classified {len(cat.items)} braces -> {report_path}")


@main.group()
def solution() -> None:
    """Operations on a single solution file."""


@solution.command()
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), required=True)
def analyze(in_path: str):
    """Print multipermutation level, permutation-brace size, and verdicts."""
    try:
        data = json.loads(Path(in_path).read_text())
        sol = solution_from_json(data)
    except (BraceLabError, ValueError, KeyError, json.JSONDecodeError) as exc:
        _fail_input(f"{in_path}: {exc}")
        return
    level = multipermutation_level(sol)
    out = {
        "n": sol.n,
        "involutive": sol.involutive,
        "multipermutation": level is not None,
        "level": level,
    }
    try:
        brace, _ = permutation_brace(sol)
        rep = nilpotency_report(brace)
        flags = classify_flags(brace)
        out["permutation_brace"] = {
            "size": brace.n,
            "abelian_type": flags.abelian_type,
            "nilpotent_type": rep.nilpotent_type,
            "left": {"holds": rep.left.holds, "class": rep.left.cls},
            "right": {"holds": rep.right.holds, "class": rep.right.cls},
            "strong": {"holds": rep.strong.holds, "class": rep.strong.cls},
            "annihilator": {
                "holds": rep.annihilator.holds,
                "class": rep.annihilator.cls,
            },
        }
    except BraceLabError as exc:
        out["permutation_brace"] = {"error": str(exc)}
    click.echo(json.dumps(out, indent=2))


@main.command()
@click.option("--suite", type=click.Choice(SUITES), required=True)
@click.option("--max-order", type=int, default=8, show_default=True)
@click.option("--max-size", type=int, default=4, show_default=True)
@click.option("--samples", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--catalog-dir", type=click.Path(file_okay=False), default=None,
              help="cache enumerated catalogs here")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="write the JSON report here instead of stdout")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="write the CSV summary here")
def verify(suite, max_order, max_size, samples, seed, jobs, catalog_dir, out_path, csv_path):
    """Run a verification campaign; exit 1 if any check fails."""
    report = run_suite(
        suite,
        max_order=max_order,
        max_size=max_size,
        samples=samples,
        seed=seed,
        jobs=jobs,
        catalog_dir=catalog_dir,
    )
    payload = json.dumps(report.to_json(), indent=2)
    if out_path:
        Path(out_path).write_text(payload + "\n")
        click.echo(f"report -> {out_path}")
    else:
        click.echo(payload)
    if csv_path:
        write_report_csv(report, csv_path)
        click.echo(f"csv -> {csv_path}")
    if not report.passed():
        failing = [c.claim_id for c in report.checks if c.failures]
        click.echo(f"FAILED checks: {', '.join(failing)}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
