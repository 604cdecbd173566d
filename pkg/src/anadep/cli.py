"""Command-line driver: resolve documents, run the golden corpus, validate
input files, serve the HTTP API.

Exit codes for ``resolve``/``validate``: 0 on success, 1 when --strict is set
and anaphors stayed unresolved, 2 on ingestion errors.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional

import click

from .corpus import run_corpus
from .ingest import IngestError, ingest
from .protocol import ResolutionResult, oracle_resolve, run_document


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _ingest_or_exit(document: str, lexicon: str, kb: str):
    try:
        return ingest(_read(document), _read(lexicon), _read(kb),
                      document_source=document, lexicon_source=lexicon,
                      kb_source=kb)
    except IngestError as exc:
        for error in exc.errors:
            click.echo(error, err=True)
        sys.exit(2)


@click.group()
def main() -> None:
    """Anaphora resolution over dependency-parsed German text."""


@main.command()
@click.argument("document", type=click.Path(exists=True, dir_okay=False))
@click.option("--lexicon", "lexicon_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="word-class declaration file")
@click.option("--kb", "kb_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="concept knowledge base file")
@click.option("--oracle", is_flag=True,
              help="use brute-force candidate enumeration instead of the engine")
@click.option("--seed", default=0, show_default=True,
              help="scheduler seed (permutes message interleavings only)")
@click.option("--use-history", is_flag=True,
              help="consult the history list after focus and potential foci")
@click.option("--strict-concepts", is_flag=True,
              help="unannotated tokens fail conceptual tests instead of passing")
@click.option("--strict", is_flag=True,
              help="exit with status 1 when any anaphor stays unresolved")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False),
              help="write the protocol trace to this file")
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              help="write the links to this file instead of stdout")
@click.option("--server", "server_url", default=None, metavar="URL",
              help="POST the inputs to a running anadep service")
def resolve(document: str, lexicon_path: str, kb_path: str, oracle: bool,
            seed: int, use_history: bool, strict_concepts: bool, strict: bool,
            trace_path: Optional[str], out_path: Optional[str],
            server_url: Optional[str]) -> None:
    """Resolve all anaphors of DOCUMENT and print one line per link."""
    if server_url is not None:
        _resolve_remote(document, lexicon_path, kb_path, oracle, seed,
                        use_history, strict_concepts, strict, out_path,
                        server_url)
        return
    doc, _classes, kb = _ingest_or_exit(document, lexicon_path, kb_path)
    if oracle:
        result = oracle_resolve(doc, kb, use_history=use_history,
                                strict_concepts=strict_concepts)
    else:
        result = run_document(doc, kb, seed=seed, use_history=use_history,
                              strict_concepts=strict_concepts)
    _emit_result(result, out_path, trace_path)
    if strict and result.unresolved:
        for token, kind in result.unresolved:
            click.echo(f"unresolved {kind} anaphor {token.ref()}", err=True)
        sys.exit(1)


def _emit_result(result: ResolutionResult, out_path: Optional[str],
                 trace_path: Optional[str]) -> None:
    text = result.links_text()
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)
    if trace_path:
        Path(trace_path).write_text(result.trace_text(), encoding="utf-8")


def _resolve_remote(document: str, lexicon_path: str, kb_path: str,
                    oracle: bool, seed: int, use_history: bool,
                    strict_concepts: bool, strict: bool,
                    out_path: Optional[str], server_url: str) -> None:
    import httpx

    payload = {
        "document": _read(document),
        "lexicon": _read(lexicon_path),
        "kb": _read(kb_path),
        "oracle": oracle,
        "seed": seed,
        "use_history": use_history,
        "strict_concepts": strict_concepts,
    }
    response = httpx.post(server_url.rstrip("/") + "/resolve", json=payload,
                          timeout=60.0)
    if response.status_code != 200:
        detail = response.json().get("detail", response.text)
        if isinstance(detail, list):
            for error in detail:
                click.echo(str(error), err=True)
        else:
            click.echo(str(detail), err=True)
        sys.exit(2)
    body = response.json()
    if out_path:
        Path(out_path).write_text(body["links_file"], encoding="utf-8")
    else:
        click.echo(body["links_file"], nl=False)
    if strict and body["unresolved"]:
        for entry in body["unresolved"]:
            click.echo(f"unresolved {entry['kind']} anaphor "
                       f"{entry['sentence']}.{entry['id']}({entry['surface']})",
                       err=True)
        sys.exit(1)


@main.command()
def corpus() -> None:
    """Check the bundled sentences against their published judgments."""
    rows = run_corpus()
    failures = 0
    for row in rows:
        expected = "coreferent" if row.check.coreferent else "excluded"
        computed = "coreferent" if row.licensed else "excluded"
        status = "PASS" if row.passed else "FAIL"
        if not row.passed:
            failures += 1
        anaphor = f"{row.check.anaphor[0]}.{row.check.anaphor[1]}"
        antecedent = f"{row.check.antecedent[0]}.{row.check.antecedent[1]}"
        linked = row.linked_to if row.linked_to is not None else "-"
        click.echo(f"{row.check.label:6} {row.check.kind:10} "
                   f"{anaphor} ~ {antecedent}  expected={expected:11} "
                   f"computed={computed:11} resolver={linked:22} {status}")
    click.echo(f"{len(rows) - failures}/{len(rows)} checks passed")
    if failures:
        sys.exit(1)


@main.command()
@click.argument("document", type=click.Path(exists=True, dir_okay=False))
@click.option("--lexicon", "lexicon_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--kb", "kb_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
def validate(document: str, lexicon_path: str, kb_path: str) -> None:
    """Parse and validate DOCUMENT together with its lexicon and KB."""
    doc, _classes, _kb = _ingest_or_exit(document, lexicon_path, kb_path)
    tokens = sum(len(sentence.tokens) for sentence in doc.sentences)
    click.echo(f"OK: {len(doc.sentences)} sentence(s), {tokens} token(s)")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the resolution service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
