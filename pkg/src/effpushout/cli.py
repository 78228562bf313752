"""
Command-line interface for effpushout.

Usage:
    effpushout spaces.json homology s3 0..4
    effpushout spaces.json verify s3
    effpushout spaces.json inspect s3
    effpushout -v --verify-limit 200 spaces.json homology s3 0..4
    effpushout --schema

Options of the group (-v, --verify-limit) go before FILE; the words after
FILE are the subcommand and its arguments.
"""

from __future__ import annotations

import json
import logging
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import NoReturn

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from effpushout import __version__
from effpushout.chains import ChainError
from effpushout.config import ENV_LIMIT, VerificationSettings
from effpushout.description import (
    DescriptionError,
    Document,
    ResolvedSpace,
    Resolver,
    document_schema,
    load_description,
)
from effpushout.homology import AbelianGroup, homology_via_equivalence
from effpushout.morphisms import compose, morphisms_agree, verify_chain_map
from effpushout.pipeline import PushoutEfhm, pushout_efhm
from effpushout.reductions import HomotopyEquivalence, trivial_equivalence
from effpushout.simplicial import SimplicialError, verify_simplicial

console = Console()
err_console = Console(stderr=True)

EXIT_FAILED = 1
EXIT_BAD_INPUT = 2

_RANGE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$")


@dataclass
class CliState:
    document: Document
    settings: VerificationSettings


def _print_schema(ctx: click.Context, _param: click.Parameter, value: bool) -> None:
    if not value or ctx.resilient_parsing:
        return
    click.echo(json.dumps(document_schema(), indent=2))
    ctx.exit()


def _fail(message: str, code: int) -> NoReturn:
    err_console.print(f"[red]Error:[/red] {escape(message)}", highlight=False, soft_wrap=True)
    sys.exit(code)


@click.group()
@click.version_option(__version__)
@click.option("--schema", is_flag=True, expose_value=False, is_eager=True, callback=_print_schema,
              help="Print the JSON schema of description documents and exit")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("-v", "--verbose", is_flag=True, help="Log every construction step")
@click.option("--verify-limit", type=click.IntRange(min=0), envvar=ENV_LIMIT,
              help="Largest complex checked on every generator; larger ones are sampled")
@click.pass_context
def cli(ctx: click.Context, file: Path, verbose: bool, verify_limit: int | None):
    """effpushout - effective homology of pushouts of simplicial sets."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )
    try:
        settings = VerificationSettings.from_env()
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        _fail(f"Bad verification settings in the environment: {field}: {first['msg']}",
              EXIT_BAD_INPUT)
    if verify_limit is not None:
        settings = settings.model_copy(update={"exhaustive_limit": verify_limit})
    try:
        document = load_description(file)
    except DescriptionError as e:
        _fail(f"{file}: {e}", EXIT_BAD_INPUT)
    ctx.obj = CliState(document, settings)


def _resolve(state: CliState, name: str) -> tuple[Resolver, ResolvedSpace]:
    resolver = Resolver(state.document)
    try:
        return resolver, resolver.resolve(name)
    except (DescriptionError, SimplicialError) as e:
        _fail(str(e), EXIT_BAD_INPUT)


def parse_range(text: str) -> range:
    """'a..b' (inclusive) or a single degree."""
    match = _RANGE.match(text)
    if not match:
        raise click.BadParameter(f"expected a..b, got {text!r}")
    lo = int(match.group(1))
    hi = int(match.group(2)) if match.group(2) is not None else lo
    if hi < lo:
        raise click.BadParameter(f"empty range {text!r}")
    return range(lo, hi + 1)


def _equivalence(
    resolved: ResolvedSpace, settings: VerificationSettings
) -> tuple[HomotopyEquivalence, PushoutEfhm | None]:
    if resolved.span is None:
        return trivial_equivalence(resolved.space.chain_complex), None
    result = pushout_efhm(*resolved.span, settings=settings)
    return result.equivalence, result


def format_homology(groups: dict[int, AbelianGroup]) -> str:
    """Per degree a header and one `Component` line per cyclic summand."""
    blocks = [
        "\n".join([f"Homology in dimension {n}:", *(f"Component {c}" for c in group.components())])
        for n, group in groups.items()
    ]
    return "\n\n".join(blocks)


@cli.command()
@click.argument("name")
@click.argument("degrees", metavar="A..B")
@click.pass_obj
def homology(state: CliState, name: str, degrees: str):
    """Print the homology groups of NAME in degrees A..B."""
    window = parse_range(degrees)
    _, resolved = _resolve(state, name)
    try:
        equivalence, _ = _equivalence(resolved, state.settings)
        groups = {n: homology_via_equivalence(equivalence, n) for n in window}
    except (ChainError, SimplicialError) as e:
        _fail(str(e), EXIT_FAILED)
    click.echo(format_homology(groups))


def _status(ok: bool) -> str:
    return "[green]✓ ok[/green]" if ok else "[red]✗ failed[/red]"


@cli.command()
@click.argument("name")
@click.pass_obj
def verify(state: CliState, name: str):
    """Run every structural check on NAME and what it is built from."""
    resolver, resolved = _resolve(state, name)
    table = Table(title=escape(f"Checks for {name}"))
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Details", overflow="fold")
    failed = False

    def row(check: str, ok: bool, details: str) -> None:
        nonlocal failed
        failed = failed or not ok
        table.add_row(escape(check), _status(ok), escape(details))

    for binding, space in resolver.spaces.items():
        report = verify_simplicial(space.space)
        row(f"simplicial identities: {binding}", report.ok, report.summary())
    for binding, morphism in resolver.morphisms.items():
        face_report = morphism.verify()
        row(f"face commutation: {binding}", face_report.ok, face_report.summary())

    if resolved.span is not None:
        try:
            result = pushout_efhm(*resolved.span, settings=state.settings)
        except (ChainError, SimplicialError) as e:
            row("pushout equivalence", False, str(e))
        else:
            ses_report = result.ses.verify(state.settings)
            row("short exact sequence", ses_report.ok, ses_report.summary())
            bad = verify_chain_map(result.chi)
            row("chi is a chain map", not bad, f"{len(bad)} failing generators")
            bad = morphisms_agree(compose(result.fw, result.bw), result.ses.b.identity)
            bad += morphisms_agree(compose(result.bw, result.fw), result.cone.identity)
            row("comparison round trip", not bad,
                f"C(P) and {result.cone.name}: {len(bad)} failing generators")
            for leg in result.equivalence.reports(state.settings):
                row(f"reduction {leg.reduction}", leg.ok, leg.summary())
    else:
        complex_ = resolved.space.chain_complex
        bad = complex_.check_differential()
        row("d∘d = 0", not bad, f"{complex_.name}: {len(bad)} failing generators")

    console.print(table)
    if failed:
        sys.exit(EXIT_FAILED)
    console.print("[green]All checks passed[/green]")


@cli.command()
@click.argument("name")
@click.pass_obj
def inspect(state: CliState, name: str):
    """Show simplex counts, ranks and pipeline intermediates of NAME."""
    _, resolved = _resolve(state, name)
    space = resolved.space
    console.print(f"[bold]{escape(name)}[/bold] ({escape(space.name)})")
    counts = Table(title="Nondegenerate simplices")
    counts.add_column("Dimension", justify="right")
    counts.add_column("Count", justify="right")
    for n, count in space.counts().items():
        counts.add_row(str(n), str(count))
    console.print(counts)
    console.print(f"Euler characteristic: {space.euler_characteristic()}")

    if resolved.span is None:
        return
    try:
        result = pushout_efhm(*resolved.span, settings=state.settings)
    except (ChainError, SimplicialError) as e:
        _fail(str(e), EXIT_FAILED)
    f, g = resolved.span
    console.print(escape(f"Span: {f.target.name} <- {f.source.name} -> {g.target.name}"))
    complexes = result.intermediates()
    degrees = sorted({n for c in complexes.values() for n in c.degrees})
    ranks = Table(title="Pipeline intermediates (rank per degree)")
    ranks.add_column("Complex")
    for n in degrees:
        ranks.add_column(str(n), justify="right")
    for label, complex_ in complexes.items():
        ranks.add_row(escape(label), *(str(complex_.rank(n)) for n in degrees))
    console.print(ranks)


def main():
    """Entry point."""
    cli()


if __name__ == "__main__":
    main()
