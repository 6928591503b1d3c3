"""Command-line front door: load, validate, match, cost, recommend, export, serve.

Exit codes: 0 on success, 1 on domain errors (validation failures,
infeasible scenarios), 2 on usage errors. With ``--output json`` every
read command prints exactly the JSON body the HTTP API would return for
the same catalog version and parameters.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click

from .errors import CloudpickError, RejectedOfferError
from .matching import MatchQuery
from .ontology import export_ontology
from .repository import CatalogStore, load_catalog
from . import wire

_KINDS = ("compute", "storage", "network")


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _load_view(ctx) -> "Catalog":
    path = ctx.obj.get("catalog")
    if not path:
        raise click.UsageError("no catalog given; pass --catalog FILE")
    try:
        return load_catalog(path)
    except CloudpickError as exc:
        _fail(str(exc))


def _render_cell(cell) -> str:
    if isinstance(cell, dict) and set(cell) == {"value", "unit"}:
        return f"{round(cell['value'], 3):g} {cell['unit']}"
    if isinstance(cell, list):
        return ",".join(_render_cell(c) for c in cell)
    if isinstance(cell, dict):
        return json.dumps(cell, sort_keys=True)
    return str(cell)


def _print_table(columns, rows) -> None:
    rendered = [[_render_cell(c) for c in row] for row in rows]
    widths = [len(c) for c in columns]
    for row in rendered:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    click.echo("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
    for row in rendered:
        click.echo("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())


@click.group()
@click.option("--catalog", "catalog", type=click.Path(), default=None,
              help="Catalog JSON document to operate on.")
@click.option("--output", type=click.Choice(["table", "json"]), default="table",
              help="Human table or the HTTP API's JSON body.")
@click.option("--month-length-days", type=int, default=None,
              help="Override the days-per-month used in storage proration.")
@click.pass_context
def cli(ctx, catalog: Optional[str], output: str, month_length_days: Optional[int]):
    """Discover, compare, and rank IaaS offers across cloud providers."""
    ctx.ensure_object(dict)
    ctx.obj["catalog"] = catalog
    ctx.obj["output"] = output
    ctx.obj["month_length_days"] = month_length_days


@cli.command()
@click.argument("file", type=click.Path(exists=True))
@click.pass_context
def load(ctx, file: str):
    """Load and validate a catalog document, then print a summary."""
    try:
        view = load_catalog(file)
    except RejectedOfferError as exc:
        if ctx.obj["output"] == "json":
            click.echo(wire.dumps(wire.violations_payload(exc.reports)))
        else:
            for offer_id, violations in exc.reports:
                for v in violations:
                    click.echo(f"rejected {offer_id}: {v}", err=True)
        sys.exit(1)
    except CloudpickError as exc:
        _fail(str(exc))
    summary = {
        "version": view.version,
        "providers": len(view.providers),
        "compute": len(view.compute),
        "storage": len(view.storage),
        "network": len(view.network),
    }
    if ctx.obj["output"] == "json":
        click.echo(wire.dumps(summary))
    else:
        click.echo(
            f"loaded catalog v{view.version}: {summary['providers']} providers, "
            f"{summary['compute']} compute, {summary['storage']} storage, "
            f"{summary['network']} network offers")


@cli.command()
@click.argument("file", type=click.Path(exists=True))
@click.pass_context
def validate(ctx, file: str):
    """Check a catalog document; exit 1 when any offer is invalid."""
    ctx.invoke(load, file=file)
    if ctx.obj["output"] == "table":
        click.echo("OK")


@cli.command()
@click.argument("kind", type=click.Choice(_KINDS))
@click.option("--min-cores", type=int, default=0)
@click.option("--min-memory-gb", type=float, default=0.0)
@click.option("--min-clock-ghz", type=float, default=None)
@click.option("--size-gb", type=float, default=None)
@click.option("--location", default=None)
@click.option("--name-regex", default=None)
@click.option("--sort", "sort_key", default=None)
@click.option("--order", type=click.Choice(["asc", "desc"]), default="asc")
@click.option("--columns", default=None, help="Comma-separated column list.")
@click.pass_context
def match(ctx, kind, min_cores, min_memory_gb, min_clock_ghz, size_gb, location,
          name_regex, sort_key, order, columns):
    """Filter and sort offers of one kind against the catalog."""
    view = _load_view(ctx)
    try:
        query = MatchQuery(
            kind=kind,
            min_cores=min_cores,
            min_memory_gb=min_memory_gb,
            min_clock_ghz=min_clock_ghz,
            size_gb=size_gb,
            location=wire.parse_location(location) if location else None,
            name_regex=name_regex,
            sort_key=sort_key,
            sort_order=order,
        )
        column_list = None
        if columns is not None:
            column_list = [c for c in columns.split(",") if c]
        payload = wire.offers_payload(view, query, column_list)
    except CloudpickError as exc:
        _fail(str(exc))
    if ctx.obj["output"] == "json":
        click.echo(wire.dumps(payload))
    else:
        _print_table(payload["columns"], payload["rows"])


def _read_scenario(path: str):
    try:
        body = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _fail(f"cannot read scenario {path}: {exc}")
    return wire.parse_scenario(body)


@cli.command()
@click.option("--scenario", "scenario_path", required=True,
              type=click.Path(exists=True))
@click.pass_context
def cost(ctx, scenario_path: str):
    """Print the itemized cost of the cheapest feasible bundle."""
    view = _load_view(ctx)
    try:
        scenario, _ = _read_scenario(scenario_path)
        payload = wire.recommend_payload(view, scenario, 1,
                                         ctx.obj["month_length_days"])
    except CloudpickError as exc:
        _fail(str(exc))
    if not payload["recommendations"]:
        _fail("no feasible offer for this scenario")
    best = payload["recommendations"][0]
    if ctx.obj["output"] == "json":
        click.echo(wire.dumps(best))
    else:
        b = best["breakdown"]
        click.echo(f"provider: {best['provider']}  bundle: {best['bundle']}")
        for item in b["line_items"]:
            click.echo(f"  {item['label']}: {item['quantity']:g} x "
                       f"{item['unit_rate']:g} = {item['amount']:.6f}")
        click.echo(f"total: {b['total']:.6f} {b['currency']}")


@cli.command()
@click.option("--scenario", "scenario_path", required=True,
              type=click.Path(exists=True))
@click.option("--top-k", type=int, default=None,
              help="How many bundles to return (scenario's top_k or 10 by default).")
@click.pass_context
def recommend(ctx, scenario_path: str, top_k: Optional[int]):
    """Rank feasible bundles by total cost."""
    view = _load_view(ctx)
    try:
        scenario, scenario_top_k = _read_scenario(scenario_path)
        k = top_k if top_k is not None else scenario_top_k
        payload = wire.recommend_payload(view, scenario, k,
                                         ctx.obj["month_length_days"])
    except CloudpickError as exc:
        _fail(str(exc))
    if ctx.obj["output"] == "json":
        click.echo(wire.dumps(payload))
        if not payload["recommendations"]:
            sys.exit(1)
        return
    if not payload["recommendations"]:
        _fail("no feasible offer for this scenario")
    for rec in payload["recommendations"]:
        bundle = rec["bundle"]
        parts = [bundle["compute"]]
        if bundle["storage"]:
            parts.append(bundle["storage"])
        if bundle["network"]:
            parts.append(bundle["network"])
        click.echo(f"#{rec['rank']} {rec['provider']}: {' + '.join(parts)} "
                   f"-> {rec['breakdown']['total']:.6f} {rec['breakdown']['currency']}")


@cli.command()
@click.option("--format", "fmt", type=click.Choice(["turtle"]), default="turtle")
@click.pass_context
def export(ctx, fmt: str):
    """Write the catalog as ontology individuals (Turtle) to stdout."""
    view = _load_view(ctx)
    click.echo(export_ontology(view), nl=False)


@cli.command()
@click.option("--catalog", "catalog_path", type=click.Path(exists=True), default=None)
@click.option("--port", type=int, default=8080)
@click.option("--host", default="127.0.0.1")
@click.pass_context
def serve(ctx, catalog_path: Optional[str], port: int, host: str):
    """Serve the HTTP API for the given catalog."""
    from .service import serve as run_service

    path = catalog_path or ctx.obj.get("catalog")
    if not path:
        raise click.UsageError("no catalog given; pass --catalog FILE")
    if not 1 <= port <= 65535:
        raise click.UsageError(f"port must be in [1, 65535], got {port}")
    try:
        store = CatalogStore.open(path)
    except CloudpickError as exc:
        _fail(str(exc))
    run_service(store, port=port, host=host)


def main():
    cli(auto_envvar_prefix="CLOUDPICK")


if __name__ == "__main__":
    main()
