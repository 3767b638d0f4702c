"""Command-line entry point.

Subcommands: serve, ingest, register, analyze, run-pipeline,
verify-chain. Exit codes: 0 ok, 1 runtime error, 2 usage error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .bootstrap import build_stack
from .config import load_config
from .errors import ProvKitError
from .ingestion import (
    SOURCE_MONITOR,
    SOURCE_TRUSTED_ANALYST,
    MonitorClient,
    MonitorQuery,
    RawFeedItem,
    parse_timestamp,
)
from .pipeline import run_pipeline as run_pipeline_batch


class _Ctx:
    def __init__(self, config_path, data_dir, port):
        self.config_path = config_path
        self.data_dir = data_dir
        self.port = port

    def load(self):
        config = load_config(self.config_path)
        if self.data_dir is not None:
            config._values["data_dir"] = str(self.data_dir)
        if self.port is not None:
            config._values["server.port"] = self.port
        return config


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None, help="TOML configuration file.")
@click.option("--data-dir", type=click.Path(file_okay=False), default=None, help="Data directory (default ./provenance-data).")
@click.option("--port", type=int, default=None, help="HTTP port for serve (default 8420).")
@click.pass_context
def main(ctx: click.Context, config_path, data_dir, port) -> None:
    """Content verification platform: seven-criterion analysis with a
    tamper-evident ledger and knowledge-graph provenance."""
    ctx.obj = _Ctx(config_path, data_dir, port)


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


@main.command()
@click.pass_obj
def serve(ctx: _Ctx) -> None:
    """Start the HTTP server hosting all endpoints."""
    import uvicorn

    from .server import create_app

    try:
        config = ctx.load()
        stack = build_stack(config)
        outcome = stack.ledger.verify_chain()
        if not outcome.ok:
            _fail(f"ledger chain verification failed at block {outcome.first_bad_index}; refusing to start")
        app = create_app(stack)
        scheduler = None
        if config.get("ingestion.fixture_path"):
            from .ingestion import MonitorScheduler

            scheduler = MonitorScheduler(
                MonitorClient(config.get("ingestion.fixture_path")),
                stack.registrar,
                MonitorQuery(limit=1000),
                interval_secs=config.get("ingestion.poll_interval_secs"),
            )
            scheduler.start()
        try:
            uvicorn.run(app, host="127.0.0.1", port=config.get("server.port"), log_level="warning")
        finally:
            if scheduler is not None:
                scheduler.stop()
    except ProvKitError as exc:
        _fail(str(exc))
    except OSError as exc:
        _fail(f"server startup failed: {exc}")


@main.command()
@click.option("--fixture", required=True, type=click.Path(exists=True, dir_okay=False), help="Newline-delimited JSON feed fixture.")
@click.option("--keywords", default="", help="Comma-separated keyword filter (empty matches all).")
@click.option("--limit", default=10, show_default=True, type=int, help="Maximum items to ingest.")
@click.option("--since", default=None, help="Only items published at or after this ISO timestamp.")
@click.pass_obj
def ingest(ctx: _Ctx, fixture, keywords, limit, since) -> None:
    """Poll the monitor fixture and register matching items."""
    try:
        stack = build_stack(ctx.load())
        query = MonitorQuery(
            keywords=[k.strip() for k in keywords.split(",") if k.strip()],
            limit=limit,
        )
        if since:
            query.since = parse_timestamp(since)
        items = MonitorClient(fixture).poll(query)
        created = 0
        for item in items:
            asset, was_new = stack.registrar.register(
                item, SOURCE_MONITOR, media_base_dir=Path(fixture).parent
            )
            created += was_new
            click.echo(f"{'new' if was_new else 'dup'}  {asset.asset_id}  {item.url}")
        click.echo(f"ingested {created} new of {len(items)} matching items")
    except ProvKitError as exc:
        _fail(str(exc))


@main.command()
@click.argument("json_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def register(ctx: _Ctx, json_file) -> None:
    """Register one asset (RawFeedItem JSON file) as a trusted analyst."""
    try:
        stack = build_stack(ctx.load())
        item = RawFeedItem.from_dict(json.loads(Path(json_file).read_text(encoding="utf-8")))
        asset, created = stack.registrar.register(
            item, SOURCE_TRUSTED_ANALYST, media_base_dir=Path(json_file).parent
        )
        click.echo(json.dumps({"created": created, "asset_id": asset.asset_id}, indent=2))
    except (ProvKitError, json.JSONDecodeError) as exc:
        _fail(str(exc))


@main.command()
@click.option("--text", "text_file", required=True, type=click.Path(exists=True, dir_okay=False), help="Article JSON file with {title, body}.")
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False), help="Directory of trusted article JSON files.")
@click.pass_obj
def analyze(ctx: _Ctx, text_file, corpus_dir) -> None:
    """Run fact verification for one article against a trusted corpus."""
    try:
        stack = build_stack(ctx.load())
        stack.index_corpus_dir(corpus_dir)
        doc = json.loads(Path(text_file).read_text(encoding="utf-8"))
        verdict = stack.detector.verify(doc.get("title", ""), doc.get("body", ""))
        click.echo(
            json.dumps(
                {
                    "status": verdict.status,
                    "score": verdict.score,
                    "total_facts": verdict.total_facts,
                    "verified_facts": verdict.verified_facts,
                    "ratio": verdict.ratio,
                    "retrieved": verdict.retrieved,
                    "matches": [
                        {
                            "query_fact": m.query_fact,
                            "best_match": m.best_match,
                            "doc_id": m.best_doc_id,
                            "cosine": m.cosine,
                            "verified": m.verified,
                        }
                        for m in verdict.matches
                    ],
                },
                indent=2,
            )
        )
    except (ProvKitError, json.JSONDecodeError) as exc:
        _fail(str(exc))


@main.command("run-pipeline")
@click.option("--fixture", required=True, type=click.Path(exists=True, dir_okay=False), help="Newline-delimited JSON feed fixture.")
@click.option("--corpus", "corpus_dir", type=click.Path(exists=True, file_okay=False), default=None, help="Trusted corpus directory to index first.")
@click.pass_obj
def run_pipeline(ctx: _Ctx, fixture, corpus_dir) -> None:
    """Ingest and analyze every fixture item, then print the report."""
    try:
        stack = build_stack(ctx.load())
        report = run_pipeline_batch(stack, fixture, corpus_dir)
        if report.rows:
            click.echo(report.render_table())
        else:
            click.echo("no items in fixture")
    except ProvKitError as exc:
        _fail(str(exc))


@main.command("verify-chain")
@click.pass_obj
def verify_chain(ctx: _Ctx) -> None:
    """Verify the hash chain; exit 0 when intact, 1 otherwise."""
    try:
        stack = build_stack(ctx.load())
        outcome = stack.ledger.verify_chain()
    except ProvKitError as exc:
        _fail(str(exc))
        return
    if outcome.ok:
        click.echo(f"chain ok ({len(stack.ledger)} blocks)")
    else:
        click.echo(f"chain INVALID: first bad block index {outcome.first_bad_index}")
        sys.exit(1)


if __name__ == "__main__":
    main()
