"""Declarative antecedence predicates over tokens, features and the KB.

All predicates are pure functions of the tree and the knowledge base.  A
reflexive needs an antecedent bound by the same local head; a pronoun or a
definite NP needs an antecedent that is not bound alongside it and that
either precedes it or sits outside the government domain of its binder.
"""

from __future__ import annotations

from typing import Optional

from .concepts import ConceptKB
from .deptree import Token, ancestors, d_binds, head_plus, left_plus
from .lexicon import (
    AGREEMENT_LABELS,
    BOTTOM,
    NOUN,
    REFLEXIVE_PRONOUN,
    WordClassHierarchy,
    extract,
    restrict,
    unify,
)


def responds(token: Token, classes: WordClassHierarchy) -> bool:
    """Only nouns and personal pronouns answer antecedent searches."""
    return (classes.isa_star(token.word_class, NOUN)
            and not classes.isa_star(token.word_class, REFLEXIVE_PRONOUN))


def agreement_compatible(a: Token, b: Token, labels=AGREEMENT_LABELS) -> bool:
    """Unify the two tokens' agreement values on the given labels.

    An absent label is underspecified and unifies with anything; a clash on
    any tested label makes the whole check fail.
    """
    ua = restrict(extract(a.features, ["self", "agr"]), labels)
    ub = restrict(extract(b.features, ["self", "agr"]), labels)
    return unify(ua, ub) is not BOTTOM


def is_potential_reflexive_antecedent(x: Token, y: Token,
                                      classes: WordClassHierarchy) -> bool:
    """True iff some head locally binds both the reflexive y and x."""
    if x is y or x.sentence_index != y.sentence_index:
        return False
    binders_of_y = [z for z in ancestors(y) if d_binds(z, y, classes)]
    return any(d_binds(z, x, classes) for z in binders_of_y)


def is_potential_anaphoric_antecedent(x: Token, y: Token,
                                      classes: WordClassHierarchy) -> bool:
    """Structural reachability of x as antecedent for the anaphor y.

    Within one sentence: x and y must not share a local binder, and x must
    precede y unless x escapes the government domain of y's binder.  Across
    sentences the trees are unrelated, so the test is vacuously true and only
    the agreement/concept filters decide.
    """
    if x is y:
        return False
    if x.sentence_index != y.sentence_index:
        return True
    binders_of_y = [z for z in ancestors(y) if d_binds(z, y, classes)]
    if any(d_binds(z, x, classes) for z in binders_of_y):
        return False
    if left_plus(x, y):
        return True
    return not any(head_plus(u, x) for u in binders_of_y)


def _concept_clause_pron(pro: Token, ante: Token, kb: ConceptKB,
                         strict: bool) -> bool:
    """Role admissibility of ante in every relation established between the
    pronoun's head and the pronoun.

    Unannotated tokens make the clause pass (open world) unless strict mode
    flips missing annotations to failure.
    """
    head: Optional[Token] = pro.parent
    if head is None:
        return True
    if head.concept is None or pro.concept is None or ante.concept is None:
        return not strict
    roles = kb.established_roles_between(head.concept, pro.concept)
    return all(kb.permits(head.concept, role, ante.concept) for role in roles)


def pron_anaphor_test(pro: Token, ante: Token, classes: WordClassHierarchy,
                      kb: ConceptKB, strict: bool = False) -> bool:
    """Gender/number/person agreement plus conceptual role admissibility."""
    if not classes.isa_star(ante.word_class, NOUN):
        return False
    if not agreement_compatible(pro, ante):
        return False
    return _concept_clause_pron(pro, ante, kb, strict)


def nom_anaphor_test(defnp: Token, ante: Token, classes: WordClassHierarchy,
                     kb: ConceptKB, strict: bool = False) -> bool:
    """Number agreement plus taxonomy subsumption: the definite NP's concept
    must subsume the antecedent's."""
    if not classes.isa_star(ante.word_class, NOUN):
        return False
    if not agreement_compatible(defnp, ante, labels=("num",)):
        return False
    if defnp.concept is None or ante.concept is None:
        return not strict
    return kb.isa_star(ante.concept, defnp.concept)
