"""HTTP wrapper around the resolution engine.

Clients post raw document/lexicon/KB file contents and get the resolved
links back, in structured form and as the link-file text the CLI prints.
"""

from __future__ import annotations

from typing import List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .corpus import run_corpus
from .ingest import IngestError, ingest
from .protocol import ResolutionResult, oracle_resolve, run_document

app = FastAPI(title="anadep", version=__version__,
              description="Reflexive, pronominal and nominal anaphora "
                          "resolution over dependency-parsed German text.")


class TokenRef(BaseModel):
    sentence: int = Field(description="1-based sentence number")
    id: int = Field(description="1-based token id within the sentence")
    surface: str


class LinkModel(BaseModel):
    anaphor: TokenRef
    antecedent: TokenRef
    kind: str
    concept: Optional[str] = None


class UnresolvedModel(BaseModel):
    sentence: int
    id: int
    surface: str
    kind: str


class ResolveRequest(BaseModel):
    document: str = Field(description="token lines, blank line between sentences")
    lexicon: str = Field(default="", description="word-class declarations")
    kb: str = Field(default="", description="concept KB directives")
    oracle: bool = False
    seed: int = 0
    use_history: bool = False
    strict_concepts: bool = False
    include_trace: bool = False


class ResolveResponse(BaseModel):
    links: List[LinkModel]
    unresolved: List[UnresolvedModel]
    links_file: str
    trace: Optional[List[str]] = None


class ValidateRequest(BaseModel):
    document: str
    lexicon: str = ""
    kb: str = ""


class ValidateResponse(BaseModel):
    valid: bool
    errors: List[str]
    sentences: int = 0
    tokens: int = 0


class CorpusRowModel(BaseModel):
    label: str
    kind: str
    expected: str
    computed: str
    resolver: Optional[str] = None
    passed: bool


def _token_ref(token) -> TokenRef:
    return TokenRef(sentence=token.sentence_index + 1, id=token.id,
                    surface=token.surface)


def _to_response(result: ResolutionResult, include_trace: bool) -> ResolveResponse:
    links = [LinkModel(anaphor=_token_ref(link.anaphor),
                       antecedent=_token_ref(link.antecedent),
                       kind=link.kind, concept=link.concept)
             for link in sorted(result.links, key=lambda l: l.anaphor.position)]
    unresolved = [UnresolvedModel(sentence=token.sentence_index + 1,
                                  id=token.id, surface=token.surface, kind=kind)
                  for token, kind in result.unresolved]
    trace = [event.line() for event in result.trace] if include_trace else None
    return ResolveResponse(links=links, unresolved=unresolved,
                           links_file=result.links_text(), trace=trace)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/resolve", response_model=ResolveResponse)
def resolve(request: ResolveRequest) -> ResolveResponse:
    try:
        document, _classes, kb = ingest(request.document, request.lexicon,
                                        request.kb)
    except IngestError as exc:
        raise HTTPException(status_code=400, detail=exc.errors)
    if request.oracle:
        result = oracle_resolve(document, kb, use_history=request.use_history,
                                strict_concepts=request.strict_concepts)
    else:
        result = run_document(document, kb, seed=request.seed,
                              use_history=request.use_history,
                              strict_concepts=request.strict_concepts)
    return _to_response(result, request.include_trace)


@app.post("/validate", response_model=ValidateResponse)
def validate(request: ValidateRequest) -> ValidateResponse:
    try:
        document, _classes, _kb = ingest(request.document, request.lexicon,
                                         request.kb)
    except IngestError as exc:
        return ValidateResponse(valid=False, errors=exc.errors)
    tokens = sum(len(sentence.tokens) for sentence in document.sentences)
    return ValidateResponse(valid=True, errors=[],
                            sentences=len(document.sentences), tokens=tokens)


@app.get("/corpus", response_model=List[CorpusRowModel])
def corpus() -> List[CorpusRowModel]:
    rows = run_corpus()
    return [CorpusRowModel(label=row.check.label, kind=row.check.kind,
                           expected="coreferent" if row.check.coreferent else "excluded",
                           computed="coreferent" if row.licensed else "excluded",
                           resolver=row.linked_to, passed=row.passed)
            for row in rows]
