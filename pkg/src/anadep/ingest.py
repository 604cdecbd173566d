"""File ingestion: documents, word-class declarations and the concept KB.

Document files are line oriented, one token per line:

    id  surface  class  gen|num|pers  head-id  dep-label  concept

with "-" for unset feature slots and for a missing concept, a blank line
between sentences and "#" starting a comment line.  Head id 0 marks the
sentence root.  All diagnostics carry the offending line number; ingestion
either returns fully validated structures or raises IngestError.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .concepts import ConceptKB
from .deptree import Document, Sentence, Token, link_sentence
from .lexicon import (
    GENDER_VALUES,
    NOUN,
    NUMBER_VALUES,
    PERSON_VALUES,
    SENTENCE_DELIMITER,
    WordClassHierarchy,
    agreement_term,
    extract,
)


class IngestError(Exception):
    """Collected line-numbered ingestion diagnostics."""

    def __init__(self, errors: List[str]) -> None:
        super().__init__("; ".join(errors))
        self.errors = errors


def parse_lexicon(text: str, source: str = "<lexicon>") -> WordClassHierarchy:
    """Word-class declarations: ``class <Name> isa <Parent>`` per line.

    The built-in classes are always present; files may only add to them.
    """
    classes = WordClassHierarchy()
    errors: List[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 4 or fields[0] != "class" or fields[2] != "isa":
            errors.append(f"{source}:{lineno}: expected 'class <Name> isa <Parent>'")
            continue
        name, parent = fields[1], fields[3]
        try:
            classes.register(name, parent)
        except (LookupError, ValueError) as exc:
            errors.append(f"{source}:{lineno}: {exc}")
    if errors:
        raise IngestError(errors)
    return classes


def parse_kb(text: str, source: str = "<kb>") -> ConceptKB:
    """Concept KB directives: concept, isa, role, permit, rel.

    Names must be declared before use so that every diagnostic points at the
    first offending line.
    """
    kb = ConceptKB()
    errors: List[str] = []
    arity = {"concept": 2, "isa": 3, "role": 2, "permit": 4, "rel": 4}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        directive = fields[0]
        if directive not in arity:
            errors.append(f"{source}:{lineno}: unknown directive '{directive}'")
            continue
        if len(fields) != arity[directive]:
            errors.append(f"{source}:{lineno}: '{directive}' takes "
                          f"{arity[directive] - 1} argument(s)")
            continue
        try:
            if directive == "concept":
                kb.add_concept(fields[1])
            elif directive == "isa":
                kb.add_isa(fields[1], fields[2])
            elif directive == "role":
                kb.add_role(fields[1])
            elif directive == "permit":
                kb.add_permit(fields[1], fields[2], fields[3])
            else:
                kb.add_established(fields[1], fields[2], fields[3])
        except (LookupError, ValueError) as exc:
            errors.append(f"{source}:{lineno}: {exc}")
    if errors:
        raise IngestError(errors)
    return kb


def serialize_kb(kb: ConceptKB) -> str:
    """Canonical text form of a KB; parsing it back gives an equal KB."""
    lines: List[str] = []
    for concept in kb.concepts():
        lines.append(f"concept {concept}")
    for concept in kb.concepts():
        for parent in sorted(kb._parents[concept]):
            lines.append(f"isa {concept} {parent}")
    for role in sorted(kb.role_names):
        lines.append(f"role {role}")
    for head, role, filler in sorted(kb.permit):
        lines.append(f"permit {head} {role} {filler}")
    for head, role, filler in sorted(kb.established):
        lines.append(f"rel {head} {role} {filler}")
    return "\n".join(lines) + "\n"


_FEATURE_SLOTS = (("gen", GENDER_VALUES), ("num", NUMBER_VALUES),
                  ("pers", PERSON_VALUES))


def _parse_features(field: str) -> Tuple[Optional[str], Optional[str], Optional[str]]:
    parts = field.split("|")
    if len(parts) != 3:
        raise ValueError("features must be gen|num|pers with '-' for unset slots")
    values: List[Optional[str]] = []
    for (label, allowed), part in zip(_FEATURE_SLOTS, parts):
        if part == "-":
            values.append(None)
        elif part in allowed:
            values.append(part)
        else:
            raise ValueError(f"invalid {label} value '{part}' "
                             f"(one of {', '.join(allowed)} or '-')")
    return values[0], values[1], values[2]


def parse_document(text: str, classes: WordClassHierarchy, kb: ConceptKB,
                   source: str = "<document>") -> Document:
    """Parse and fully validate a document against hierarchy and KB."""
    errors: List[str] = []
    blocks: List[List[Tuple[int, List[str]]]] = []
    current: List[Tuple[int, List[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        current.append((lineno, line.split()))
    if current:
        blocks.append(current)

    sentences: List[Sentence] = []
    position = 0
    for index, block in enumerate(blocks):
        tokens = _parse_block(block, index, classes, kb, source, errors)
        if tokens is None:
            continue
        for token in tokens:
            position += 1
            token.position = position
        position += 1
        delimiter = Token(id=len(tokens) + 1, surface=".",
                          word_class=SENTENCE_DELIMITER,
                          features=agreement_term(), concept=None,
                          head_id=0, dep_label="delim", position=position,
                          sentence_index=index)
        link_sentence(tokens, delimiter)
        sentences.append(Sentence(tokens, delimiter, index))
    if errors:
        raise IngestError(errors)
    return Document(sentences, classes)


def _parse_block(block: List[Tuple[int, List[str]]], index: int,
                 classes: WordClassHierarchy, kb: ConceptKB, source: str,
                 errors: List[str]) -> Optional[List[Token]]:
    tokens: List[Token] = []
    lines_by_id: Dict[int, int] = {}
    bad = False
    for lineno, fields in block:
        if len(fields) != 7:
            errors.append(f"{source}:{lineno}: expected 7 fields, got {len(fields)}")
            bad = True
            continue
        try:
            token_id = int(fields[0])
            head_id = int(fields[4])
        except ValueError:
            errors.append(f"{source}:{lineno}: id and head-id must be integers")
            bad = True
            continue
        if token_id in lines_by_id:
            errors.append(f"{source}:{lineno}: duplicate id {token_id} "
                          f"(first on line {lines_by_id[token_id]})")
            bad = True
            continue
        lines_by_id[token_id] = lineno
        word_class = fields[2]
        if word_class not in classes:
            errors.append(f"{source}:{lineno}: unknown word class '{word_class}'")
            bad = True
            continue
        try:
            gen, num, pers = _parse_features(fields[3])
        except ValueError as exc:
            errors.append(f"{source}:{lineno}: {exc}")
            bad = True
            continue
        concept: Optional[str] = None
        if fields[6] != "-":
            if fields[6] not in kb:
                errors.append(f"{source}:{lineno}: unknown concept '{fields[6]}'")
                bad = True
                continue
            concept = fields[6]
        if pers is None and classes.isa_star(word_class, NOUN):
            pers = "3"
        tokens.append(Token(id=token_id, surface=fields[1], word_class=word_class,
                            features=agreement_term(gen, num, pers),
                            concept=concept, head_id=head_id,
                            dep_label=fields[5], sentence_index=index))
    if bad:
        return None

    ids = sorted(lines_by_id)
    if ids != list(range(1, len(ids) + 1)):
        errors.append(f"{source}:{block[0][0]}: token ids must be contiguous "
                      f"from 1 (got {', '.join(map(str, ids))})")
        return None
    roots = [t for t in tokens if t.head_id == 0]
    if len(roots) != 1:
        errors.append(f"{source}:{block[0][0]}: sentence needs exactly one "
                      f"root token (head-id 0), found {len(roots)}")
        return None
    for token in tokens:
        if token.head_id != 0 and token.head_id not in lines_by_id:
            errors.append(f"{source}:{lines_by_id[token.id]}: head-id "
                          f"{token.head_id} does not name a token")
            return None
        if token.head_id == token.id:
            errors.append(f"{source}:{lines_by_id[token.id]}: token is its own head")
            return None
    cycle = _find_head_cycle(tokens)
    if cycle:
        where = ", ".join(f"line {lines_by_id[token_id]}" for token_id in cycle)
        errors.append(f"{source}:{block[0][0]}: head links form a cycle ({where})")
        return None
    return tokens


def _find_head_cycle(tokens: List[Token]) -> Optional[List[int]]:
    heads = {t.id: t.head_id for t in tokens}
    state: Dict[int, int] = {}  # 1 = in progress, 2 = done
    for start in heads:
        if state.get(start) == 2:
            continue
        path: List[int] = []
        node = start
        while node != 0 and state.get(node) != 2:
            if state.get(node) == 1:
                return path[path.index(node):]
            state[node] = 1
            path.append(node)
            node = heads[node]
        for visited in path:
            state[visited] = 2
    return None


def serialize_document(document: Document) -> str:
    """Write a document back into the token-line format (delimiters are
    implicit and not serialized)."""
    blocks = []
    for sentence in document.sentences:
        lines = []
        for token in sentence.tokens:
            agr = extract(token.features, ["self", "agr"])
            feats = "|".join(
                agr[label] if isinstance(agr, dict) and label in agr else "-"
                for label in ("gen", "num", "pers"))
            concept = token.concept if token.concept is not None else "-"
            lines.append("\t".join((str(token.id), token.surface,
                                    token.word_class, feats,
                                    str(token.head_id), token.dep_label,
                                    concept)))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def ingest(document_text: str, lexicon_text: str, kb_text: str,
           document_source: str = "<document>",
           lexicon_source: str = "<lexicon>",
           kb_source: str = "<kb>") -> Tuple[Document, WordClassHierarchy, ConceptKB]:
    """Parse the three inputs together; any failure raises IngestError with
    every collected diagnostic."""
    errors: List[str] = []
    classes: Optional[WordClassHierarchy] = None
    kb: Optional[ConceptKB] = None
    try:
        classes = parse_lexicon(lexicon_text, lexicon_source)
    except IngestError as exc:
        errors.extend(exc.errors)
    try:
        kb = parse_kb(kb_text, kb_source)
    except IngestError as exc:
        errors.extend(exc.errors)
    if errors:
        raise IngestError(errors)
    assert classes is not None and kb is not None
    document = parse_document(document_text, classes, kb, document_source)
    return document, classes, kb
