"""Command-line interface: ingest, evaluate, migrate, serve, export."""

from __future__ import annotations

import sys
from datetime import date
from pathlib import Path

import click

from .config import Config
from .errors import FetchFailed, MalformedUrl, NewslensError, ParseFailed
from .models import canonical_json
from .platform import Platform
from .segmentation import RatingClass
from .service import activity_csv, create_app, kde_csv


def _platform(config_path: str | None) -> Platform:
    config = Config.from_file(config_path) if config_path else Config()
    return Platform(config)


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="Path to a JSON config file.")
@click.pass_context
def main(ctx, config_path):
    """News article quality indicators platform."""
    ctx.obj = config_path


@main.command()
@click.argument("file", type=click.Path(exists=True))
@click.pass_obj
def ingest(config_path, file):
    """Ingest a newline-delimited JSON posting log."""
    platform = _platform(config_path)
    outcomes = platform.ingest_lines(Path(file).read_text(encoding="utf-8"))
    counts: dict[str, int] = {}
    for outcome in outcomes:
        counts[outcome.status] = counts.get(outcome.status, 0) + 1
    click.echo(canonical_json({"lines": len(outcomes), "by_status": counts}))


@main.command()
@click.argument("url")
@click.pass_obj
def evaluate(config_path, url):
    """Fetch and evaluate one article URL, printing the indicator report."""
    platform = _platform(config_path)
    try:
        click.echo(platform.evaluate_url(url))
    except (FetchFailed, ParseFailed, MalformedUrl) as exc:
        click.echo(canonical_json({"error": exc.payload()}))
        sys.exit(1)


@main.command()
@click.option("--cutoff-days", type=int, default=None,
              help="Age in days after which records move to the archive.")
@click.pass_obj
def migrate(config_path, cutoff_days):
    """Run the daily hot-store to archive migration."""
    platform = _platform(config_path)
    report = platform.migrate_day(cutoff_days or platform.config.cutoff_days)
    click.echo(canonical_json(report.to_dict()))


@main.command("load-outlets")
@click.argument("file", type=click.Path(exists=True))
@click.pass_obj
def load_outlets(config_path, file):
    """Load an outlet ranking CSV (domain,name,quality_score) and bucket it."""
    platform = _platform(config_path)
    outlets = platform.load_outlets(Path(file).read_bytes())
    click.echo(canonical_json({"outlets": len(outlets)}))


@main.command("process-queue")
@click.pass_obj
def process_queue(config_path):
    """Fetch and parse all enqueued article URLs."""
    platform = _platform(config_path)
    click.echo(canonical_json(platform.process_fetch_queue()))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
@click.pass_obj
def serve(config_path, host, port):
    """Run the HTTP service."""
    import uvicorn

    platform = _platform(config_path)
    uvicorn.run(create_app(platform), host=host, port=port)


@main.group()
def export():
    """Export analytics as CSV."""


@export.command("activity")
@click.option("--topic", required=True)
@click.option("--from", "from_", required=True, help="Window start, YYYY-MM-DD.")
@click.option("--to", required=True, help="Window end, YYYY-MM-DD.")
@click.option("--out", type=click.Path(), default=None, help="Output path (default stdout).")
@click.pass_obj
def export_activity(config_path, topic, from_, to, out):
    platform = _platform(config_path)
    window = (date.fromisoformat(from_), date.fromisoformat(to))
    snapshot = platform.build_snapshot()
    classes = [c for c in RatingClass if c in snapshot.outlets_by_class]
    try:
        series = [platform.activity_series(topic, c, window, snapshot) for c in classes]
    except NewslensError as exc:
        raise click.ClickException(exc.message)
    csv_text = activity_csv(series)
    if out:
        Path(out).write_text(csv_text, encoding="utf-8", newline="")
    else:
        click.echo(csv_text, nl=False)


@export.command("kde")
@click.option("--topic", required=True)
@click.option("--metric", type=click.Choice(["reactions", "sci_ref_ratio"]), required=True)
@click.option("--log/--no-log", "log_scale", default=False,
              help="Use a log10(1+x) axis (reactions only).")
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def export_kde(config_path, topic, metric, log_scale, out):
    platform = _platform(config_path)
    try:
        curve = platform.topic_density(topic, metric, log_scale=log_scale)
    except NewslensError as exc:
        raise click.ClickException(exc.message)
    csv_text = kde_csv(curve)
    if out:
        Path(out).write_text(csv_text, encoding="utf-8", newline="")
    else:
        click.echo(csv_text, nl=False)


if __name__ == "__main__":
    main()
