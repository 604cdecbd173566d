"""Word-class hierarchy and agreement feature terms.

Feature terms are plain data: an atomic value (a string), a mapping from
feature labels to feature terms (a dict), or the inconsistent element
``BOTTOM``.  A label that is absent from a mapping is unconstrained, so it
unifies with anything; the failure of unification is always represented by
``BOTTOM``, never by an exception.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union


class Bottom:
    """The inconsistent feature value (result of a failed unification)."""

    _instance: Optional["Bottom"] = None

    def __new__(cls) -> "Bottom":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "<bottom>"

    def __deepcopy__(self, memo) -> "Bottom":
        return self


BOTTOM = Bottom()

FeatureTerm = Union[Bottom, str, Dict[str, "FeatureTerm"]]

GENDER_VALUES = ("masc", "fem", "neut")
NUMBER_VALUES = ("sg", "pl")
PERSON_VALUES = ("1", "2", "3")
AGREEMENT_LABELS = ("gen", "num", "pers")


def unify(a: FeatureTerm, b: FeatureTerm) -> FeatureTerm:
    """Greatest lower bound of two feature terms.

    Atom clashes, atom/mapping mixes and BOTTOM operands all give BOTTOM;
    labels present on one side only are carried over unchanged.
    """
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    if isinstance(a, str) or isinstance(b, str):
        return a if a == b else BOTTOM
    merged: Dict[str, FeatureTerm] = {}
    for label in sorted(a.keys() | b.keys()):
        if label in a and label in b:
            value = unify(a[label], b[label])
            if value is BOTTOM:
                return BOTTOM
        else:
            value = a[label] if label in a else b[label]
        merged[label] = value
    return merged


def extract(term: FeatureTerm, path: Sequence[str]) -> FeatureTerm:
    """Follow a label path into a term; any missing label yields BOTTOM."""
    current = term
    for label in path:
        if not isinstance(current, dict) or label not in current:
            return BOTTOM
        current = current[label]
    return current


def restrict(term: FeatureTerm, labels: Iterable[str]) -> FeatureTerm:
    """Keep only the given top-level labels of a mapping term."""
    if not isinstance(term, dict):
        return term
    return {label: term[label] for label in labels if label in term}


def agreement_term(gen: Optional[str] = None,
                   num: Optional[str] = None,
                   pers: Optional[str] = None) -> FeatureTerm:
    """Build the feature term of a token from its agreement values.

    Unset values are simply left out, which makes them unconstrained
    (German pronouns such as "sie" may be unmarked for number).
    """
    agr: Dict[str, FeatureTerm] = {}
    if gen is not None:
        agr["gen"] = gen
    if num is not None:
        agr["num"] = num
    if pers is not None:
        agr["pers"] = pers
    return {"self": {"agr": agr}}


# Built-in word classes.  Files may extend the hierarchy but these names are
# always registered, so the binding predicates' class tests are total.
WORD = "Word"
NOUN = "Noun"
VERB = "Verb"
PREPOSITION = "Preposition"
DETERMINER = "Determiner"
DELIMITER = "Delimiter"
FINITE_VERB = "finiteVerb"
NONFINITE_VERB = "nonfiniteVerb"
PERSONAL_PRONOUN = "PersonalPronoun"
REFLEXIVE_PRONOUN = "ReflexivePronoun"
PROPER_NOUN = "ProperNoun"
DET_DEFINITE = "DetDefinite"
DET_POSSESSIVE = "DetPossessive"
SENTENCE_DELIMITER = "SentenceDelimiter"

_BUILTIN_CLASSES: Tuple[Tuple[str, Optional[str]], ...] = (
    (WORD, None),
    (NOUN, WORD),
    (VERB, WORD),
    (PREPOSITION, WORD),
    (DETERMINER, WORD),
    (DELIMITER, WORD),
    (FINITE_VERB, VERB),
    (NONFINITE_VERB, VERB),
    (PERSONAL_PRONOUN, NOUN),
    (REFLEXIVE_PRONOUN, NOUN),
    (PROPER_NOUN, NOUN),
    (DET_DEFINITE, DETERMINER),
    (DET_POSSESSIVE, DETERMINER),
    (SENTENCE_DELIMITER, DELIMITER),
)


class WordClassHierarchy:
    """Acyclic multiple-inheritance hierarchy of word-class names."""

    def __init__(self) -> None:
        self._parents: Dict[str, List[str]] = {}
        self._reach: Dict[Tuple[str, str], bool] = {}
        for name, parent in _BUILTIN_CLASSES:
            self.register(name, parent)

    def register(self, name: str, parent: Optional[str] = None) -> None:
        """Add a class, optionally under a parent already known.

        Re-registering an existing edge is a no-op; an edge that would
        close a cycle raises ValueError.
        """
        if parent is not None and parent not in self._parents:
            raise LookupError(f"unknown word class: {parent}")
        self._parents.setdefault(name, [])
        if parent is None:
            return
        if parent in self._parents[name]:
            return
        if name == parent or self.isa_star(parent, name):
            raise ValueError(f"class cycle: {name} isa {parent}")
        self._parents[name].append(parent)
        self._reach.clear()

    def __contains__(self, name: str) -> bool:
        return name in self._parents

    def parents(self, name: str) -> List[str]:
        if name not in self._parents:
            raise LookupError(f"unknown word class: {name}")
        return list(self._parents[name])

    def names(self) -> List[str]:
        return list(self._parents)

    def isa_star(self, sub: str, super_: str) -> bool:
        """Reflexive-transitive subclass test over the parent links."""
        if sub not in self._parents:
            raise LookupError(f"unknown word class: {sub}")
        if super_ not in self._parents:
            raise LookupError(f"unknown word class: {super_}")
        key = (sub, super_)
        cached = self._reach.get(key)
        if cached is not None:
            return cached
        seen = set()
        stack = [sub]
        found = False
        while stack:
            current = stack.pop()
            if current == super_:
                found = True
                break
            if current in seen:
                continue
            seen.add(current)
            stack.extend(self._parents[current])
        self._reach[key] = found
        return found
