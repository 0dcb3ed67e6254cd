"""Batch command line surface.

Subcommands: ``enumerate`` (JSON Lines dumps of the non-crossing
families), ``counts`` (CSV of annular counts), ``table`` (symbolic
moment-cumulant tables as LaTeX or JSON), ``verify`` (the exhaustive
check suites; exit code 0 exactly when every check passes), and ``draw``
(SVG annular diagrams).

Every command is deterministic: identical invocations produce byte
identical output.  Sizes are validated against a hard ceiling, 12 by
default, overridable through the NCFREE_MAX_TOTAL environment variable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import click

from .annular import (
    AnnulusShape,
    element_record,
    enumerate_nc,
    enumerate_psnc,
    enumerate_snc,
)
from .cumulants import snc_count, symbolic_kappa_pq, symbolic_phi2_expansion
from .draw import render_svg
from .perm import Permutation, SetPartition
from .verify import run_suite, suite_names

_DEFAULT_CEILING = 12


def _ceiling() -> int:
    raw = os.environ.get("NCFREE_MAX_TOTAL")
    if raw is None:
        return _DEFAULT_CEILING
    try:
        value = int(raw)
    except ValueError:
        raise click.ClickException(f"NCFREE_MAX_TOTAL must be an integer, got {raw!r}")
    if value < 1:
        raise click.ClickException("NCFREE_MAX_TOTAL must be at least 1")
    return value


@dataclass(frozen=True)
class RunConfig:
    """Validated bounds and plumbing shared by the commands."""

    max_total: int
    parallelism: int = 1
    output_format: str = "json"

    def __post_init__(self) -> None:
        if self.parallelism < 1:
            raise click.ClickException("--jobs must be at least 1")
        ceiling = _ceiling()
        if self.max_total > ceiling:
            raise click.ClickException(
                f"requested size {self.max_total} exceeds the ceiling {ceiling} "
                f"(override with NCFREE_MAX_TOTAL)"
            )
        if self.max_total < 1:
            raise click.ClickException("sizes must be at least 1")


@click.group()
def main() -> None:
    """Exact combinatorics of second order freeness.

    Enumeration of non-crossing disc and annular families, symbolic
    moment-cumulant tables, exhaustive verification suites, and SVG
    diagrams.  All arithmetic is exact and all output deterministic.
    """


@main.command("enumerate")
@click.argument("kind", type=click.Choice(["nc", "snc", "psnc"]))
@click.argument("sizes", nargs=-1, type=int)
def enumerate_cmd(kind: str, sizes: tuple[int, ...]) -> None:
    """Dump one family as JSON Lines, one element per line, then the count.

    KIND is nc (one size: the disc), or snc/psnc (two sizes: outer and
    inner circle).
    """
    want = 1 if kind == "nc" else 2
    if len(sizes) != want:
        raise click.ClickException(f"{kind} takes exactly {want} size argument(s)")
    if any(s < 1 for s in sizes):
        raise click.ClickException("sizes must be at least 1")
    cfg = RunConfig(max_total=sum(sizes))
    if kind == "nc":
        records = [{"perm": a.cycle_string()} for a in enumerate_nc(sizes[0], bound=cfg.max_total)]
    elif kind == "snc":
        shape = AnnulusShape(sizes[0], sizes[1])
        records = [{"perm": a.cycle_string()} for a in enumerate_snc(shape, bound=cfg.max_total)]
    else:
        shape = AnnulusShape(sizes[0], sizes[1])
        records = [element_record(vp) for vp in enumerate_psnc(shape, bound=cfg.max_total)]
    for record in records:
        click.echo(json.dumps(record, separators=(", ", ": ")))
    click.echo(json.dumps({"count": len(records)}, separators=(", ", ": ")))


@main.command()
@click.option("--max-total", "max_total", type=int, required=True, help="largest p+q to tabulate")
def counts(max_total: int) -> None:
    """CSV of annular family sizes: header p,q,count then one row per shape."""
    cfg = RunConfig(max_total=max_total)
    click.echo("p,q,count")
    for total in range(2, cfg.max_total + 1):
        for p in range(1, total):
            click.echo(f"{p},{total - p},{snc_count(p, total - p)}")


@main.command()
@click.argument("max_p", type=int)
@click.argument("max_q", type=int)
@click.option(
    "--direction",
    type=click.Choice(["alpha-in-kappa", "kappa-in-alpha"]),
    default="alpha-in-kappa",
    show_default=True,
    help="expand second order moments in cumulants, or the reverse",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["latex", "json"]),
    default="latex",
    show_default=True,
)
def table(max_p: int, max_q: int, direction: str, fmt: str) -> None:
    """Symbolic second order tables for all shapes p <= q within the limits."""
    if max_p < 1 or max_q < 1:
        raise click.ClickException("sizes must be at least 1")
    RunConfig(max_total=max_p + max_q)
    for p in range(1, max_p + 1):
        for q in range(p, max_q + 1):
            poly = (
                symbolic_phi2_expansion(p, q)
                if direction == "alpha-in-kappa"
                else symbolic_kappa_pq(p, q)
            )
            if fmt == "latex":
                lhs = (
                    f"\\alpha_{{{p},{q}}}"
                    if direction == "alpha-in-kappa"
                    else f"\\kappa_{{{p},{q}}}"
                )
                click.echo(f"{lhs} = {poly.to_latex()}")
            else:
                click.echo(
                    json.dumps(
                        {"p": p, "q": q, "direction": direction, "terms": poly.to_json_obj()},
                        separators=(", ", ": "),
                    )
                )


@main.command()
@click.argument("suite", type=click.Choice(suite_names()))
@click.option("--max", "max_total", type=int, default=None, help="sweep bound override")
@click.option("--jobs", type=int, default=1, show_default=True, help="parallel worker count")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
@click.pass_context
def verify(ctx: click.Context, suite: str, max_total: int | None, jobs: int, fmt: str) -> None:
    """Run one verification suite and report per-check pass/fail.

    Exit code is 0 exactly when every check passes; failures carry the
    first counterexample found.
    """
    RunConfig(max_total=max_total if max_total is not None else 1, parallelism=jobs)
    results = run_suite(suite, max_total, jobs)
    if fmt == "text":
        for res in results:
            click.echo(res.line())
        good = sum(1 for r in results if r.passed)
        click.echo(f"{good}/{len(results)} checks passed")
    else:
        click.echo(json.dumps([r.to_json_obj() for r in results], indent=2))
    if not all(r.passed for r in results):
        ctx.exit(1)


@main.command()
@click.argument("perm")
@click.option("--shape", nargs=2, type=int, required=True, metavar="P Q")
@click.option("--partition", "partition_json", default=None, help="JSON list of blocks")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True)
def draw(perm: str, shape: tuple[int, int], partition_json: str | None, out: str) -> None:
    """Render PERM (cycle notation) on the (P, Q)-annulus as an SVG file.

    An empty PERM string is the identity.  With --partition, blocks
    gluing two cycles are drawn with a dotted connector.
    """
    p, q = shape
    if p < 1 or q < 1:
        raise click.ClickException("both circle sizes must be at least 1")
    RunConfig(max_total=p + q)
    try:
        pi = Permutation.parse(perm, size=p + q)
        partition = None
        if partition_json is not None:
            blocks = json.loads(partition_json)
            partition = SetPartition.of_blocks(p + q, blocks)
        svg = render_svg(pi, AnnulusShape(p, q), partition)
    except (ValueError, json.JSONDecodeError) as exc:
        raise click.ClickException(str(exc))
    with open(out, "w", encoding="utf-8") as handle:
        handle.write(svg)
    click.echo(f"wrote {out}")
