"""Message-passing anaphora resolution over a whole document.

Word actors communicate through search messages.  A reflexive climbs its
head chain until it hits a finite verb or a possessive-bearing noun and is
then handed to that head's subject or possessive modifier.  Pronouns and
definite NPs run a staged search: up to the local binder (phase 1), fanning
out into the binder's modifier subtrees (1a), onward to the sentence
delimiter with fan-outs at every higher binding site (2/2a), and to the
previous sentence's delimiter where the focus registers are consulted
(3/3a).  Concurrency is simulated by a deterministic event queue whose
delivery order within a batch is permuted by the scheduler seed; resolved
links are independent of the seed because selection ranks the complete
candidate set.

``oracle_resolve`` computes the same links by brute-force candidate
enumeration against the declarative predicates, ignoring routing entirely.
"""

from __future__ import annotations

import copy
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from .binding import (
    agreement_compatible,
    is_potential_anaphoric_antecedent,
    is_potential_reflexive_antecedent,
    nom_anaphor_test,
    pron_anaphor_test,
    responds,
)
from .concepts import ConceptKB
from .deptree import (
    Document,
    SPEC,
    SUBJECT,
    Sentence,
    Token,
    d_binder_of,
    head_plus,
    is_barrier,
    possessive_modifiers,
)
from .lexicon import (
    DET_DEFINITE,
    FINITE_VERB,
    NOUN,
    PERSONAL_PRONOUN,
    PROPER_NOUN,
    REFLEXIVE_PRONOUN,
    WordClassHierarchy,
)

REFLEXIVE = "reflexive"
PRONOMINAL = "pronominal"
NOMINAL = "nominal"

SEARCH_REF = "SearchRefAntecedent"
SEARCH_PRON = "SearchPronAntecedent"
SEARCH_NOM = "SearchNomAntecedent"
ANTECEDENT_FOUND = "AntecedentFound"
REF_ANTECEDENT_FOUND = "RefAntecedentFound"

_PHASE_TIER = {"1": 1, "1a": 1, "2": 2, "2a": 2}


@dataclass
class TraceEvent:
    """One message delivery; result is pass/fail when the receiver tested."""

    seq: int
    kind: str
    phase: str
    src: Token
    dst: Token
    result: str = "-"

    def line(self) -> str:
        return "\t".join((str(self.seq), self.kind, self.phase,
                          self.src.ref(), self.dst.ref(), self.result))


@dataclass
class Link:
    anaphor: Token
    antecedent: Token
    kind: str
    concept: Optional[str]

    def key(self) -> Tuple[int, int, int, int, str, Optional[str]]:
        return (self.anaphor.sentence_index, self.anaphor.id,
                self.antecedent.sentence_index, self.antecedent.id,
                self.kind, self.concept)

    def line(self) -> str:
        concept = self.concept if self.concept is not None else "-"
        return f"{self.anaphor.ref()} -> {self.antecedent.ref()}\t{self.kind}\t{concept}"


@dataclass
class FocusState:
    """Per-sentence discourse registers, attached to the sentence delimiter."""

    focus: Optional[Token] = None
    pot_foci: List[Token] = field(default_factory=list)
    history: List[Token] = field(default_factory=list)


@dataclass
class ResolutionResult:
    links: List[Link]
    trace: List[TraceEvent]
    unresolved: List[Tuple[Token, str]]
    document: Document
    focus_states: Dict[int, FocusState]

    def link_keys(self) -> List[Tuple]:
        return [link.key() for link in self.links]

    def links_text(self) -> str:
        ordered = sorted(self.links, key=lambda l: l.anaphor.position)
        return "".join(link.line() + "\n" for link in ordered)

    def trace_text(self) -> str:
        return "".join(event.line() + "\n" for event in self.trace)


def iter_triggers(sentence: Sentence,
                  classes: WordClassHierarchy) -> List[Tuple[int, str, Token]]:
    """Resolution triggers of a sentence in linear order.

    Reflexives and personal pronouns trigger at their own position; a
    definite NP triggers at its article's position (the head noun is the
    anaphor).  Proper names with articles are not nominal anaphors.
    """
    triggers = []
    for token in sentence.tokens:
        if classes.isa_star(token.word_class, REFLEXIVE_PRONOUN):
            triggers.append((token.position, REFLEXIVE, token))
        elif classes.isa_star(token.word_class, PERSONAL_PRONOUN):
            triggers.append((token.position, PRONOMINAL, token))
        elif (classes.isa_star(token.word_class, NOUN)
              and not classes.isa_star(token.word_class, PROPER_NOUN)):
            articles = [child for child in token.children
                        if child.dep_label == SPEC
                        and classes.isa_star(child.word_class, DET_DEFINITE)]
            if articles:
                triggers.append((articles[0].position, NOMINAL, token))
    triggers.sort(key=lambda entry: entry[0])
    return triggers


def reflexive_target(binder: Token, classes: WordClassHierarchy) -> Optional[Token]:
    """Where the second phase of a reflexive search is delivered: the
    subject of a finite verb, or the possessive modifier of a noun."""
    if classes.isa_star(binder.word_class, FINITE_VERB):
        subjects = [c for c in binder.children if c.dep_label == SUBJECT]
        return subjects[0] if subjects else None
    modifiers = possessive_modifiers(binder, classes)
    return modifiers[0] if modifiers else None


def register_sequence(state: Optional[FocusState], use_history: bool) -> List[Token]:
    """Candidate order for inter-sentential search: focus, then the
    potential foci, then (only when enabled) the history list."""
    if state is None:
        return []
    sequence = []
    if state.focus is not None:
        sequence.append(state.focus)
    sequence.extend(state.pot_foci)
    if use_history:
        sequence.extend(state.history)
    return sequence


def compute_focus_registers(sentence: Sentence, prev: Optional[FocusState],
                            antecedents: Dict[Token, Token],
                            classes: WordClassHierarchy) -> FocusState:
    """Focus, potential foci and history after a sentence is resolved.

    Every non-apposition noun-class token heads a register entry; resolved
    anaphors contribute their antecedent instead of themselves.  The focus
    is the subject of the sentence root, failing that the leftmost entry.
    """

    def rep(token: Token) -> Token:
        seen = set()
        while token in antecedents and token not in seen:
            seen.add(token)
            token = antecedents[token]
        return token

    nps = [t for t in sentence.tokens
           if classes.isa_star(t.word_class, NOUN) and t.dep_label != "appos"]
    ordered: List[Token] = []
    for np in nps:
        entry = rep(np)
        if entry not in ordered:
            ordered.append(entry)

    root = sentence.root
    subject = None
    if root is not None:
        for child in root.children:
            if child.dep_label == SUBJECT and child in nps:
                subject = child
                break

    focus = rep(subject) if subject is not None else (ordered[0] if ordered else None)
    pot_foci = [entry for entry in ordered if entry is not focus]

    history: List[Token] = []
    if prev is not None:
        carried = ([prev.focus] if prev.focus is not None else []) + prev.pot_foci + prev.history
        for token in carried:
            if token is not focus and token not in pot_foci and token not in history:
                history.append(token)
    return FocusState(focus, pot_foci, history)


class _Resolver:
    """Runs all protocols over one (private) document copy."""

    def __init__(self, document: Document, kb: ConceptKB, seed: int,
                 use_history: bool, strict_concepts: bool) -> None:
        self.doc = document
        self.classes = document.classes
        self.kb = kb
        self.rng = random.Random(seed)
        self.use_history = use_history
        self.strict = strict_concepts
        self.trace: List[TraceEvent] = []
        self.links: List[Link] = []
        self.unresolved: List[Tuple[Token, str]] = []
        self.antecedents: Dict[Token, Token] = {}
        self.focus_states: Dict[int, FocusState] = {}

    def run(self) -> ResolutionResult:
        for sentence in self.doc.sentences:
            for _pos, kind, anaphor in iter_triggers(sentence, self.classes):
                if kind == REFLEXIVE:
                    self._run_reflexive(anaphor)
                else:
                    self._run_search(anaphor, kind, sentence)
            prev = self.focus_states.get(sentence.index - 1)
            self.focus_states[sentence.index] = compute_focus_registers(
                sentence, prev, self.antecedents, self.classes)
        return ResolutionResult(self.links, self.trace, self.unresolved,
                                self.doc, self.focus_states)

    # -- plumbing ----------------------------------------------------------

    def _emit(self, kind: str, phase: str, src: Token, dst: Token,
              result: str = "-") -> None:
        self.trace.append(TraceEvent(len(self.trace) + 1, kind, phase, src, dst, result))

    def _deliver(self, first_batch: List[tuple], handler) -> None:
        queue = deque([first_batch])
        while queue:
            batch = queue.popleft()
            if len(batch) > 1:
                self.rng.shuffle(batch)
            for item in batch:
                spawned = handler(item)
                if spawned:
                    queue.append(spawned)

    def _record_link(self, anaphor: Token, antecedent: Token, kind: str) -> None:
        concept = antecedent.concept
        anaphor.concept = concept
        self.antecedents[anaphor] = antecedent
        self.links.append(Link(anaphor, antecedent, kind, concept))

    # -- reflexives ----------------------------------------------------------

    def _run_reflexive(self, anaphor: Token) -> None:
        binder = d_binder_of(anaphor, self.classes)
        node = anaphor
        while node.parent is not None:
            self._emit(SEARCH_REF, "1", node, node.parent)
            node = node.parent
            if node is binder:
                break
        if binder is None:
            self.unresolved.append((anaphor, REFLEXIVE))
            return
        target = reflexive_target(binder, self.classes)
        if target is None:
            self.unresolved.append((anaphor, REFLEXIVE))
            return
        result = self._test_reflexive(anaphor, target)
        self._emit(SEARCH_REF, "2", binder, target, result)
        if result == "pass":
            self._emit(REF_ANTECEDENT_FOUND, "-", target, anaphor)
            self._record_link(anaphor, target, REFLEXIVE)
        else:
            self.unresolved.append((anaphor, REFLEXIVE))

    def _test_reflexive(self, anaphor: Token, target: Token) -> str:
        if not responds(target, self.classes):
            return "-"
        if not is_potential_reflexive_antecedent(target, anaphor, self.classes):
            return "-"
        return "pass" if agreement_compatible(anaphor, target) else "fail"

    # -- pronominal and nominal anaphors ------------------------------------

    def _filter(self, anaphor: Token, kind: str, candidate: Token) -> bool:
        if kind == PRONOMINAL:
            return pron_anaphor_test(anaphor, candidate, self.classes, self.kb,
                                     strict=self.strict)
        return nom_anaphor_test(anaphor, candidate, self.classes, self.kb,
                                strict=self.strict)

    def _run_search(self, anaphor: Token, kind: str, sentence: Sentence) -> None:
        msg = SEARCH_PRON if kind == PRONOMINAL else SEARCH_NOM
        binder = d_binder_of(anaphor, self.classes)
        tested: Set[Token] = set()
        fanned: Set[Token] = {anaphor}
        if binder is not None:
            fanned.add(binder)
        candidates: Dict[Token, Tuple[int, int]] = {}

        def test_intra(candidate: Token, phase: str) -> str:
            if candidate is anaphor or candidate in tested:
                return "-"
            tested.add(candidate)
            if not responds(candidate, self.classes):
                return "-"
            if head_plus(anaphor, candidate):
                return "-"
            if not is_potential_anaphoric_antecedent(candidate, anaphor, self.classes):
                return "-"
            ok = self._filter(anaphor, kind, candidate)
            if ok:
                candidates[candidate] = (_PHASE_TIER[phase], candidate.position)
            return "pass" if ok else "fail"

        def test_inter(candidate: Token, order: int) -> str:
            if candidate in tested:
                return "-"
            tested.add(candidate)
            if not responds(candidate, self.classes):
                return "-"
            ok = self._filter(anaphor, kind, candidate)
            if ok:
                candidates[candidate] = (3, order)
            return "pass" if ok else "fail"

        def fan_out(node: Token, phase: str) -> List[tuple]:
            batch = []
            for child in node.children:
                if child in fanned:
                    continue
                fanned.add(child)
                batch.append((phase, node, child))
            return batch

        def handle(item: tuple) -> Optional[List[tuple]]:
            tag, src, dst = item[0], item[1], item[2]
            if tag == "1":
                if dst is binder:
                    self._emit(msg, "1", src, dst, test_intra(dst, "1"))
                    batch = fan_out(dst, "1a")
                    nxt = dst.parent
                    batch.append(("2", dst, nxt if nxt is not None else sentence.delimiter))
                    return batch
                self._emit(msg, "1", src, dst)
                if dst.parent is not None:
                    return [("1", dst, dst.parent)]
                return None
            if tag in ("1a", "2a"):
                self._emit(msg, tag, src, dst, test_intra(dst, tag))
                return fan_out(dst, tag)
            if tag == "2":
                if dst is sentence.delimiter:
                    self._emit(msg, "2", src, dst)
                    return None
                self._emit(msg, "2", src, dst, test_intra(dst, "2"))
                batch = []
                if is_barrier(dst, self.classes) or dst.parent is None:
                    batch.extend(fan_out(dst, "2a"))
                nxt = dst.parent
                batch.append(("2", dst, nxt if nxt is not None else sentence.delimiter))
                return batch
            if tag == "3":
                self._emit(msg, "3", src, dst)
                prev_state = self.focus_states.get(sentence.index - 1)
                sequence = register_sequence(prev_state, self.use_history)
                return [("3a", dst, candidate, order)
                        for order, candidate in enumerate(sequence)]
            # tag == "3a"
            self._emit(msg, "3a", src, dst, test_inter(dst, item[3]))
            return None

        first: List[tuple] = []
        if anaphor.parent is not None:
            first.append(("1", anaphor, anaphor.parent))
        if sentence.index > 0:
            prev_delimiter = self.doc.sentences[sentence.index - 1].delimiter
            first.append(("3", anaphor, prev_delimiter))
        self._deliver(first, handle)

        chosen = _select(anaphor, candidates)
        if chosen is None:
            self.unresolved.append((anaphor, kind))
            return
        self._emit(ANTECEDENT_FOUND, "-", chosen, anaphor)
        self._record_link(anaphor, chosen, kind)


def _select(anaphor: Token, candidates: Dict[Token, Tuple[int, int]]) -> Optional[Token]:
    """Selection policy over all passing candidates.

    Within the sentence the nearest candidate wins, preceding ones before
    following ones, with earlier search phases breaking (unreachable) ties.
    Inter-sentential candidates count only when no intra-sentential one
    passed, in register order.
    """
    intra = []
    inter = []
    for candidate, (tier, aux) in candidates.items():
        if tier < 3:
            distance = candidate.position - anaphor.position
            intra.append(((0 if distance < 0 else 1, abs(distance), tier,
                           candidate.position), candidate))
        else:
            inter.append((aux, candidate))
    if intra:
        return min(intra, key=lambda entry: entry[0])[1]
    if inter:
        return min(inter, key=lambda entry: entry[0])[1]
    return None


def run_document(document: Document, kb: ConceptKB, seed: int = 0,
                 use_history: bool = False,
                 strict_concepts: bool = False) -> ResolutionResult:
    """Resolve a whole document with the message-passing engine.

    The caller's document is left untouched; the result carries the processed
    copy (with rewritten concept identifiers) for auditing.
    """
    resolver = _Resolver(copy.deepcopy(document), kb, seed, use_history,
                         strict_concepts)
    return resolver.run()


def oracle_resolve(document: Document, kb: ConceptKB,
                   use_history: bool = False,
                   strict_concepts: bool = False) -> ResolutionResult:
    """Routing-free reference resolver.

    Enumerates every candidate of the same sentence (and the previous
    sentence's registers) against the declarative predicates and applies the
    selection policy of the engine; produces no trace.
    """
    doc = copy.deepcopy(document)
    classes = doc.classes
    links: List[Link] = []
    unresolved: List[Tuple[Token, str]] = []
    antecedents: Dict[Token, Token] = {}
    focus_states: Dict[int, FocusState] = {}

    for sentence in doc.sentences:
        for _pos, kind, anaphor in iter_triggers(sentence, classes):
            chosen: Optional[Token] = None
            if kind == REFLEXIVE:
                binder = d_binder_of(anaphor, classes)
                if binder is not None:
                    target = reflexive_target(binder, classes)
                    if (target is not None
                            and responds(target, classes)
                            and is_potential_reflexive_antecedent(target, anaphor, classes)
                            and agreement_compatible(anaphor, target)):
                        chosen = target
            else:
                candidates: Dict[Token, Tuple[int, int]] = {}
                for candidate in sentence.tokens:
                    if candidate is anaphor or head_plus(anaphor, candidate):
                        continue
                    if not responds(candidate, classes):
                        continue
                    if not is_potential_anaphoric_antecedent(candidate, anaphor, classes):
                        continue
                    if _oracle_filter(anaphor, kind, candidate, classes, kb,
                                      strict_concepts):
                        candidates[candidate] = (1, candidate.position)
                if not candidates and sentence.index > 0:
                    prev_state = focus_states.get(sentence.index - 1)
                    for order, candidate in enumerate(register_sequence(prev_state, use_history)):
                        if candidate in candidates:
                            continue
                        if not responds(candidate, classes):
                            continue
                        if _oracle_filter(anaphor, kind, candidate, classes, kb,
                                          strict_concepts):
                            candidates[candidate] = (3, order)
                            break
                chosen = _select(anaphor, candidates)
            if chosen is None:
                unresolved.append((anaphor, kind))
            else:
                concept = chosen.concept
                anaphor.concept = concept
                antecedents[anaphor] = chosen
                links.append(Link(anaphor, chosen, kind, concept))
        prev = focus_states.get(sentence.index - 1)
        focus_states[sentence.index] = compute_focus_registers(
            sentence, prev, antecedents, classes)
    return ResolutionResult(links, [], unresolved, doc, focus_states)


def _oracle_filter(anaphor: Token, kind: str, candidate: Token,
                   classes: WordClassHierarchy, kb: ConceptKB,
                   strict: bool) -> bool:
    if kind == PRONOMINAL:
        return pron_anaphor_test(anaphor, candidate, classes, kb, strict=strict)
    return nom_anaphor_test(anaphor, candidate, classes, kb, strict=strict)


def _find_link(result: ResolutionResult, document: Document,
               anaphor: Token) -> Optional[Token]:
    for link in result.links:
        if (link.anaphor.sentence_index == anaphor.sentence_index
                and link.anaphor.id == anaphor.id):
            return document.sentences[link.antecedent.sentence_index].token_by_id(
                link.antecedent.id)
    return None


def resolve_reflexive(reflexive: Token, document: Document, kb: ConceptKB,
                      **kwargs) -> Optional[Token]:
    """Antecedent of one reflexive, as a token of the caller's document."""
    result = run_document(document, kb, **kwargs)
    return _find_link(result, document, reflexive)


def resolve_anaphor(anaphor: Token, document: Document, kb: ConceptKB,
                    upto: Optional[int] = None, **kwargs) -> Optional[Token]:
    """Antecedent of one pronoun or definite NP, resolved incrementally over
    the sentences up to (and including) index ``upto``."""
    if upto is not None:
        document = Document(document.sentences[:upto + 1], document.classes)
    result = run_document(document, kb, **kwargs)
    return _find_link(result, document, anaphor)
