"""Anaphora resolution for dependency-parsed German text.

Resolves reflexives, personal pronouns and definite noun phrases against
their antecedents using local-binding constraints on the dependency tree,
agreement-feature unification, concept subsumption, and sentence-level
focus registers for cross-sentence search.
"""

__version__ = "0.1.0"

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
    Sentence,
    Token,
    d_binder_of,
    d_binds,
    head_plus,
    head_rel,
    left_plus,
)
from .ingest import (
    IngestError,
    ingest,
    parse_document,
    parse_kb,
    parse_lexicon,
    serialize_document,
    serialize_kb,
)
from .lexicon import (
    BOTTOM,
    FeatureTerm,
    WordClassHierarchy,
    agreement_term,
    extract,
    unify,
)
from .protocol import (
    FocusState,
    Link,
    ResolutionResult,
    TraceEvent,
    compute_focus_registers,
    oracle_resolve,
    resolve_anaphor,
    resolve_reflexive,
    run_document,
)

__all__ = [
    "BOTTOM",
    "ConceptKB",
    "Document",
    "FeatureTerm",
    "FocusState",
    "IngestError",
    "Link",
    "ResolutionResult",
    "Sentence",
    "Token",
    "TraceEvent",
    "WordClassHierarchy",
    "agreement_compatible",
    "agreement_term",
    "compute_focus_registers",
    "d_binder_of",
    "d_binds",
    "extract",
    "head_plus",
    "head_rel",
    "ingest",
    "is_potential_anaphoric_antecedent",
    "is_potential_reflexive_antecedent",
    "left_plus",
    "nom_anaphor_test",
    "oracle_resolve",
    "parse_document",
    "parse_kb",
    "parse_lexicon",
    "pron_anaphor_test",
    "resolve_anaphor",
    "resolve_reflexive",
    "responds",
    "run_document",
    "serialize_document",
    "serialize_kb",
    "unify",
]
