"""Dependency-tree data model and the topological relations used for binding.

A token whose governing head is a finite verb or a possessive-bearing noun is
"locally bound" by that head: such heads act as barriers on the head chain.
``d_binds`` is the declarative form of that relation, ``d_binder_of`` the
procedural one (nearest barrier above a token).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional

from .lexicon import (
    DET_POSSESSIVE,
    FINITE_VERB,
    FeatureTerm,
    NOUN,
    WordClassHierarchy,
)

# Dependency labels interpreted by the predicates; all other labels are
# free-form identifiers.
SUBJECT = "subject"
SPEC = "spec"
SAX_GEN = "saxGen"
PP_ATT = "ppAtt"
GEN_ATT = "genAtt"
APPOS = "appos"

POSSESSIVE_NOUN_LABELS = (SAX_GEN, PP_ATT, GEN_ATT)


@dataclass(eq=False)
class Token:
    """One lexical item of a parsed sentence."""

    id: int
    surface: str
    word_class: str
    features: FeatureTerm
    concept: Optional[str]
    head_id: int
    dep_label: str
    position: int = 0
    sentence_index: int = 0
    parent: Optional["Token"] = field(default=None, repr=False)
    children: List["Token"] = field(default_factory=list, repr=False)

    def ref(self) -> str:
        return f"{self.sentence_index + 1}.{self.id}({self.surface})"

    def __repr__(self) -> str:
        return f"<Token {self.ref()} {self.word_class}>"


@dataclass(eq=False)
class Sentence:
    """Ordered tokens plus the delimiter pseudo-token appended after them."""

    tokens: List[Token]
    delimiter: Token
    index: int = 0

    @property
    def root(self) -> Optional[Token]:
        for token in self.tokens:
            if token.parent is None:
                return token
        return None

    def token_by_id(self, token_id: int) -> Token:
        for token in self.tokens:
            if token.id == token_id:
                return token
        if self.delimiter.id == token_id:
            return self.delimiter
        raise LookupError(f"no token {token_id} in sentence {self.index + 1}")


@dataclass(eq=False)
class Document:
    """Sentences in discourse order, tied to the hierarchy they were built with."""

    sentences: List[Sentence]
    classes: WordClassHierarchy

    def token(self, sentence_no: int, token_id: int) -> Token:
        """Look up a token by 1-based sentence number and token id."""
        return self.sentences[sentence_no - 1].token_by_id(token_id)


def link_sentence(tokens: List[Token], delimiter: Token) -> None:
    """Resolve head ids into parent/children links (children by position)."""
    by_id = {token.id: token for token in tokens}
    for token in tokens:
        token.children = []
    for token in tokens:
        if token.head_id == 0:
            token.parent = None
        else:
            token.parent = by_id[token.head_id]
            token.parent.children.append(token)
    for token in tokens:
        token.children.sort(key=lambda child: child.position)
    delimiter.parent = None
    delimiter.children = []


def head_rel(x: Token, y: Token) -> bool:
    """True iff x directly governs y."""
    return y.parent is x


def head_plus(x: Token, y: Token) -> bool:
    """Transitive closure of the head relation."""
    node = y.parent
    while node is not None:
        if node is x:
            return True
        node = node.parent
    return False


def left_plus(x: Token, y: Token) -> bool:
    """Document-wide strict linear precedence."""
    return x.position < y.position


def ancestors(y: Token) -> List[Token]:
    """Head chain of y from its direct head up to the sentence root."""
    chain = []
    node = y.parent
    while node is not None:
        chain.append(node)
        node = node.parent
    return chain


def descendants(x: Token) -> Iterator[Token]:
    """All tokens governed by x, depth first."""
    for child in x.children:
        yield child
        yield from descendants(child)


def possessive_modifiers(z: Token, classes: WordClassHierarchy) -> List[Token]:
    """Modifiers of z that count as possessive: a possessive determiner in
    specifier position, or a noun attached as Saxon genitive, prepositional
    or genitival attribute."""
    found = []
    for child in z.children:
        if child.dep_label == SPEC and classes.isa_star(child.word_class, DET_POSSESSIVE):
            found.append(child)
        elif child.dep_label in POSSESSIVE_NOUN_LABELS and classes.isa_star(child.word_class, NOUN):
            found.append(child)
    return found


def is_barrier(z: Token, classes: WordClassHierarchy) -> bool:
    """Finite verbs and possessive-bearing nouns block local binding."""
    if classes.isa_star(z.word_class, FINITE_VERB):
        return True
    return classes.isa_star(z.word_class, NOUN) and bool(possessive_modifiers(z, classes))


def d_binds(x: Token, y: Token, classes: WordClassHierarchy) -> bool:
    """True iff x governs y with no barrier strictly between them.

    x itself must be a barrier node or the sentence root; any ancestor would
    satisfy the bare closure formula, but only barrier nodes (and the root)
    are binding sites.
    """
    if x is y or x.sentence_index != y.sentence_index:
        return False
    if x.parent is not None and not is_barrier(x, classes):
        return False
    between: List[Token] = []
    node = y.parent
    reached = False
    while node is not None:
        if node is x:
            reached = True
            break
        between.append(node)
        node = node.parent
    if not reached:
        return False
    return not any(is_barrier(z, classes) for z in between)


def d_binder_of(y: Token, classes: WordClassHierarchy) -> Optional[Token]:
    """Nearest barrier node above y, or None if the head chain has none."""
    node = y.parent
    while node is not None:
        if is_barrier(node, classes):
            return node
        node = node.parent
    return None
