"""Union-closed set family analysis and verification toolkit.

Families live over universes of at most 64 elements, one machine word per
member set.  The package provides the core predicates and transforms
(closure, separation, frequency labeling), the witness constructions used
to certify member-count bounds (chains, minimal transversals, pattern
families, the counting audit), the threshold calculus, and deterministic
corpus generation with a full verification battery.
"""

from .bounds import (
    VERDICT_LEMMA,
    VERDICT_NOT_COVERED,
    VERDICT_SMALL_M,
    VERDICT_THEOREM,
    BoundReport,
    KPrimeCheck,
    MaxMinCheck,
    applicability,
    bound_report,
    closed_form_threshold,
    f_m,
    hu_fraction,
    ieq1_threshold,
    k_prime,
    kprime_check,
    lemma_bound,
    maxmin_check,
    min_f,
    verdict_for,
    within_threshold,
)
from .errors import (
    CapacityError,
    ContradictionError,
    DomainError,
    FamilyParseError,
    PreconditionError,
)
from .family import (
    MAX_UNIVERSE,
    FrequencyProfile,
    SetFamily,
    apply_relabeling,
    column_signatures,
    drop_unused_elements,
    element_frequencies,
    elements_of,
    family_from_masks,
    family_label,
    find_union_gap,
    find_unseparated_pair,
    frankl_witnesses,
    frequency_profile,
    is_separating,
    is_union_closed,
    make_family,
    mask_of,
    relabel_by_frequency,
    separating_quotient,
    union_closure,
)
from .formats import (
    family_from_json_dict,
    family_to_json_dict,
    family_to_text,
    parse_family_json,
    parse_family_text,
    to_json,
)
from .search import (
    CorpusReport,
    canonical_form,
    corpus_verify,
    enumerate_union_closed,
    random_family,
    splitmix64,
)
from .witnesses import (
    ChainWitness,
    CountingAudit,
    TransversalReport,
    a_sets,
    counting_audit,
    falgas_ravry_chain,
    m_sets,
    max_index_elements,
    minimal_transversal,
    verify_chain_witness,
    verify_transversal,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CapacityError",
    "ChainWitness",
    "ContradictionError",
    "CorpusReport",
    "CountingAudit",
    "DomainError",
    "FamilyParseError",
    "FrequencyProfile",
    "KPrimeCheck",
    "MAX_UNIVERSE",
    "MaxMinCheck",
    "PreconditionError",
    "SetFamily",
    "TransversalReport",
    "VERDICT_LEMMA",
    "VERDICT_NOT_COVERED",
    "VERDICT_SMALL_M",
    "VERDICT_THEOREM",
    "a_sets",
    "applicability",
    "apply_relabeling",
    "bound_report",
    "canonical_form",
    "closed_form_threshold",
    "column_signatures",
    "corpus_verify",
    "counting_audit",
    "drop_unused_elements",
    "element_frequencies",
    "elements_of",
    "enumerate_union_closed",
    "f_m",
    "falgas_ravry_chain",
    "family_from_json_dict",
    "family_from_masks",
    "family_label",
    "family_to_json_dict",
    "family_to_text",
    "find_union_gap",
    "find_unseparated_pair",
    "frankl_witnesses",
    "frequency_profile",
    "hu_fraction",
    "ieq1_threshold",
    "is_separating",
    "is_union_closed",
    "k_prime",
    "kprime_check",
    "lemma_bound",
    "m_sets",
    "make_family",
    "mask_of",
    "max_index_elements",
    "maxmin_check",
    "min_f",
    "minimal_transversal",
    "parse_family_json",
    "parse_family_text",
    "random_family",
    "relabel_by_frequency",
    "separating_quotient",
    "splitmix64",
    "to_json",
    "union_closure",
    "verdict_for",
    "verify_chain_witness",
    "verify_transversal",
    "within_threshold",
]
