"""Command-line entry point: ``zzreps track|simulate|refine|render|oracle-check``."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import __version__
from .io import (
    FormatError,
    emit_report,
    load_report,
    parse_adjacency_sequence,
    parse_events,
    sha256_file,
    write_adjacency_sequence,
    write_events,
)
from .tracker import TrackerError

log = logging.getLogger("zzreps")


def _dims(value: str):
    try:
        return sorted({int(x) for x in value.split(",") if x.strip()})
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}") from None


@click.group()
@click.version_option(__version__, prog_name="zzreps")
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def main(verbose: bool):
    """Zigzag persistence with tracked representative cycles."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(message)s")


@main.command()
@click.option("--events", "events_path", type=click.Path(exists=True, dir_okay=False), help="Event file.")
@click.option("--adjacency", "adj_path", type=click.Path(exists=True, dir_okay=False), help="Adjacency-sequence JSON.")
@click.option("--dims", default="0,1", show_default=True, help="Homology dimensions to report.")
@click.option("--collapse-zero-length", is_flag=True, help="Hide bars born and killed within one refinement block.")
@click.option("--sizes", is_flag=True, help="Annotate 1-dimensional bars with hop-filtration sizes.")
@click.option("--max-depth", type=int, default=None, help="Cap on hop-filtration depth (default: diameter).")
@click.option("--seed", type=int, default=None, help="Seed to record in the report (simulated input).")
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False), help="Report JSON path.")
@click.option("--svg", type=click.Path(dir_okay=False), default=None, help="Also render the barcode figure.")
@click.option("--text", "text_path", type=click.Path(dir_okay=False), default=None, help="Also write text barcode.")
def track(events_path, adj_path, dims, collapse_zero_length, sizes, max_depth, seed, output, svg, text_path):
    """Track a stream and write a report."""
    from .pipeline import track_adjacency, track_events
    from .render import render_barcode_svg, render_barcode_text

    if (events_path is None) == (adj_path is None):
        raise click.UsageError("give exactly one of --events or --adjacency")
    dims = _dims(dims)
    try:
        if events_path:
            if sizes or collapse_zero_length:
                raise click.UsageError("--sizes and --collapse-zero-length need --adjacency input")
            report = track_events(parse_events(events_path), dims, sha256_file(events_path), seed)
        else:
            mats, masks = parse_adjacency_sequence(adj_path)
            report = track_adjacency(mats, masks, dims, sizes, collapse_zero_length, max_depth,
                                     sha256_file(adj_path), seed)
    except (FormatError, TrackerError) as exc:
        raise click.ClickException(str(exc)) from None
    emit_report(report, output)
    log.info("wrote %s (%d intervals)", output, len(report.barcode.intervals))
    if svg:
        render_barcode_svg(report, svg)
    if text_path:
        Path(text_path).write_text(render_barcode_text(report))


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON network config (n, r, step_scale, T, failure).")
@click.option("--seed", type=int, required=True)
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
def simulate(config_path, seed, output):
    """Simulate a mobile sensor network and write its adjacency sequence."""
    from .netsim import NetworkConfig
    from .pipeline import simulate as run_sim

    cfg_dict = json.loads(Path(config_path).read_text()) if config_path else {}
    cfg_dict["seed"] = seed
    try:
        cfg = NetworkConfig.from_dict(cfg_dict)
    except (TypeError, ValueError) as exc:
        raise click.ClickException(f"bad config: {exc}") from None
    mats, masks = run_sim(cfg)
    write_adjacency_sequence(mats, masks, output)


@main.command()
@click.option("--adjacency", "adj_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
def refine(adj_path, output):
    """Write the single-simplex event stream of an adjacency sequence."""
    from .sequence import build_stream, complexes_from_adjacency_sequence

    try:
        mats, masks = parse_adjacency_sequence(adj_path)
    except FormatError as exc:
        raise click.ClickException(str(exc)) from None
    events, _ = build_stream(complexes_from_adjacency_sequence(mats, masks))
    write_events(events, output)


@main.command()
@click.option("--report", "report_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--svg", type=click.Path(dir_okay=False), default=None)
@click.option("--text", is_flag=True, help="Print the text barcode to stdout.")
def render(report_path, svg, text):
    """Render a report as an SVG barcode and/or text lines."""
    from .render import render_barcode_svg, render_barcode_text

    if not svg and not text:
        raise click.UsageError("give --svg PATH and/or --text")
    report = load_report(report_path)
    if svg:
        render_barcode_svg(report, svg)
    if text:
        click.echo(render_barcode_text(report), nl=False)


@main.command("oracle-check")
@click.option("--report", "report_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--events", "events_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--adjacency", "adj_path", type=click.Path(exists=True, dir_okay=False), default=None)
def oracle_check(report_path, events_path, adj_path):
    """Replay the input and re-verify every invariant with the brute-force oracle."""
    from .sequence import build_stream, complexes_from_adjacency_sequence
    from .verify import compare_report, verify_stream

    if (events_path is None) == (adj_path is None):
        raise click.UsageError("give exactly one of --events or --adjacency")
    report = load_report(report_path)
    try:
        if events_path:
            events = parse_events(events_path)
            digest = sha256_file(events_path)
        else:
            mats, masks = parse_adjacency_sequence(adj_path)
            events, _ = build_stream(complexes_from_adjacency_sequence(mats, masks))
            digest = sha256_file(adj_path)
        if report.input_sha256 and report.input_sha256 != digest:
            click.echo("input digest differs from the one recorded in the report", err=True)
        res = verify_stream(events, report.dims)
    except (FormatError, TrackerError) as exc:
        raise click.ClickException(str(exc)) from None
    res.report_mismatches.extend(compare_report(report, events))
    click.echo(res.summary())
    for name in ("betti_violations", "basis_violations", "canonical_violations", "stale_violations",
                 "report_mismatches"):
        for msg in getattr(res, name)[:20]:
            click.echo(f"{name}: {msg}")
    sys.exit(0 if res.ok else 1)


if __name__ == "__main__":
    main()
