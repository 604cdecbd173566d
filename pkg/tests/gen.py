"""Seeded random generators shared by the property tests.

Documents are emitted in the token-line text format and run through the
regular ingestion path, so generated inputs are always fully validated
structures.  Trees are arbitrary (including non-projective attachments) and
classes, labels, features and concepts are drawn independently, which
produces plenty of degenerate shapes on purpose.
"""

from __future__ import annotations

import random
from typing import List, Optional, Tuple

from anadep.concepts import ConceptKB
from anadep.deptree import Document, Sentence, Token, link_sentence
from anadep.ingest import ingest
from anadep.lexicon import (
    BOTTOM,
    SENTENCE_DELIMITER,
    WordClassHierarchy,
    agreement_term,
)

TERM_ATOMS = ["masc", "fem", "neut", "sg", "pl", "3", "x", "y"]
TERM_LABELS = ["agr", "gen", "num", "pers", "f", "g"]


def random_term(rng: random.Random, depth: int = 3,
                allow_bottom: bool = True):
    roll = rng.random()
    if allow_bottom and roll < 0.05:
        return BOTTOM
    if depth == 0 or roll < 0.45:
        return rng.choice(TERM_ATOMS)
    width = rng.randint(0, 3)
    return {label: random_term(rng, depth - 1, allow_bottom=False)
            for label in rng.sample(TERM_LABELS, width)}


WORD_CLASSES = [
    ("Noun", 22), ("ProperNoun", 8), ("PersonalPronoun", 14),
    ("ReflexivePronoun", 8), ("finiteVerb", 12), ("nonfiniteVerb", 6),
    ("Preposition", 10), ("DetDefinite", 12), ("DetPossessive", 4),
    ("Determiner", 4),
]
DEP_LABELS = [
    ("subject", 15), ("object", 15), ("spec", 15), ("saxGen", 7),
    ("genAtt", 7), ("ppAtt", 8), ("relClause", 8), ("ppObj", 8),
    ("vcomp", 7), ("adv", 10),
]
CONCEPT_NAMES = [f"K{i:02d}" for i in range(1, 21)]
ROLE_NAMES = ["r1", "r2", "r3"]


def _weighted(rng: random.Random, table) -> str:
    total = sum(weight for _, weight in table)
    roll = rng.uniform(0, total)
    for value, weight in table:
        roll -= weight
        if roll <= 0:
            return value
    return table[-1][0]


def random_kb_text(rng: random.Random) -> str:
    lines = [f"concept {name}" for name in CONCEPT_NAMES]
    for i, name in enumerate(CONCEPT_NAMES[1:], start=1):
        if rng.random() < 0.6:
            lines.append(f"isa {name} {rng.choice(CONCEPT_NAMES[:i])}")
    lines.extend(f"role {role}" for role in ROLE_NAMES)
    for _ in range(12):
        lines.append(f"permit {rng.choice(CONCEPT_NAMES)} "
                     f"{rng.choice(ROLE_NAMES)} {rng.choice(CONCEPT_NAMES)}")
    for _ in range(8):
        lines.append(f"rel {rng.choice(CONCEPT_NAMES)} "
                     f"{rng.choice(ROLE_NAMES)} {rng.choice(CONCEPT_NAMES)}")
    return "\n".join(lines) + "\n"


def _random_sentence_lines(rng: random.Random, max_tokens: int) -> List[str]:
    n = rng.randint(1, max_tokens)
    order = rng.sample(range(1, n + 1), n)
    heads = {order[0]: 0}
    for k in range(1, n):
        heads[order[k]] = rng.choice(order[:k])
    lines = []
    for token_id in range(1, n + 1):
        if heads[token_id] == 0:
            word_class = ("finiteVerb" if rng.random() < 0.7
                          else rng.choice(["Noun", "finiteVerb", "nonfiniteVerb"]))
            label = "root"
        else:
            word_class = _weighted(rng, WORD_CLASSES)
            label = _weighted(rng, DEP_LABELS)
        gen = rng.choice([None, None, None, "masc", "fem", "fem", "neut"])
        num = rng.choice([None, None, "sg", "sg", "sg", "pl"])
        pers = rng.choice([None, None, "3", "3", "3", "1", "2"])
        feats = "|".join(value if value else "-" for value in (gen, num, pers))
        concept = "-" if rng.random() < 0.45 else rng.choice(CONCEPT_NAMES)
        lines.append(f"{token_id}\tw{token_id}\t{word_class}\t{feats}\t"
                     f"{heads[token_id]}\t{label}\t{concept}")
    return lines


def random_document_text(rng: random.Random, max_sentences: int = 2,
                         max_tokens: int = 10) -> str:
    blocks = []
    for _ in range(rng.randint(1, max_sentences)):
        blocks.append("\n".join(_random_sentence_lines(rng, max_tokens)))
    return "\n\n".join(blocks) + "\n"


def random_setup(seed: int, max_sentences: int = 2, max_tokens: int = 10
                 ) -> Tuple[Document, WordClassHierarchy, ConceptKB]:
    rng = random.Random(seed)
    kb_text = random_kb_text(rng)
    doc_text = random_document_text(rng, max_sentences, max_tokens)
    return ingest(doc_text, "", kb_text)


def random_tree(rng: random.Random, classes: WordClassHierarchy,
                max_tokens: int = 12) -> Sentence:
    """A bare random sentence (no ingestion round trip) for topology tests."""
    n = rng.randint(1, max_tokens)
    order = rng.sample(range(1, n + 1), n)
    heads = {order[0]: 0}
    for k in range(1, n):
        heads[order[k]] = rng.choice(order[:k])
    tokens = []
    for token_id in range(1, n + 1):
        if heads[token_id] == 0:
            word_class = ("finiteVerb" if rng.random() < 0.7
                          else rng.choice(["Noun", "finiteVerb", "nonfiniteVerb"]))
            label = "root"
        else:
            word_class = _weighted(rng, WORD_CLASSES)
            label = _weighted(rng, DEP_LABELS)
        tokens.append(Token(id=token_id, surface=f"w{token_id}",
                            word_class=word_class, features=agreement_term(),
                            concept=None, head_id=heads[token_id],
                            dep_label=label, position=token_id))
    delimiter = Token(id=n + 1, surface=".", word_class=SENTENCE_DELIMITER,
                      features=agreement_term(), concept=None, head_id=0,
                      dep_label="delim", position=n + 1)
    link_sentence(tokens, delimiter)
    return Sentence(tokens, delimiter, 0)
