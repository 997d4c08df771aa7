"""Corpus generation: exhaustive scans, canonical forms, seeded random families.

Exhaustive enumeration walks every subfamily of the power set of an
m-element ambient universe (2^(2^m) candidates, so m <= 4) and keeps the
union-closed ones.  Yielded families are compressed to the elements they
actually cover, which is what the downstream analyses expect.  Everything
is deterministic: streams come in a fixed order and the random generator is
a fixed integer recipe, so corpora are bit-identical across runs and
platforms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .bounds import applicability, lemma_bound
from .errors import CapacityError, DomainError
from .family import (
    SetFamily,
    closure_of_masks,
    element_frequencies,
    elements_of,
    family_label,
    find_union_gap,
    frankl_witnesses,
    is_separating,
    relabel_mask,
    separating_quotient,
)
from .witnesses import (
    counting_audit,
    falgas_ravry_chain,
    minimal_transversal,
    verify_chain_witness,
    verify_transversal,
)

EXHAUSTIVE_LIMIT = 4
GENERATOR_LIMIT = 6
CANONICAL_LIMIT = 8

FILTERS = ("all", "validated", "separating")


def _compress_masks(masks: list[int]) -> SetFamily:
    covered = 0
    for a in masks:
        covered |= a
    pos = [-1] * covered.bit_length()
    new = 0
    rest = covered
    while rest:
        low = rest & -rest
        pos[low.bit_length() - 1] = new
        new += 1
        rest ^= low
    members = tuple(sorted(relabel_mask(a, pos) for a in masks))
    return SetFamily(new, members)


def _passes(fam: SetFamily, covered: int, ambient_full: int, family_filter: str) -> bool:
    if family_filter == "all":
        return True
    if family_filter == "validated":
        return covered == ambient_full
    if family_filter == "separating":
        return is_separating(fam)
    raise DomainError(f"unknown filter {family_filter!r}; expected one of {FILTERS}")


def enumerate_union_closed(m: int, mode: str = "exhaustive", *,
                           family_filter: str = "separating",
                           max_generators: int | None = None,
                           ) -> Iterator[SetFamily]:
    """Stream union-closed families over an m-element ambient universe.

    Exhaustive mode scans all 2^(2^m) subfamilies of the power set (m <= 4),
    including the empty family, and yields the union-closed ones in
    subfamily-code order.  Generator mode (m <= 6) instead closes every
    subset of at most max_generators power-set masks and yields one canonical
    representative per isomorphism class, so at m <= 3 with unbounded
    generators the two modes produce the same canonical forms.

    family_filter: "all" keeps every union-closed subfamily, "validated"
    only those covering the full ambient universe, and "separating" (the
    default, and the corpus of interest) those whose covered elements have
    pairwise distinct membership columns.  Yielded families are compressed
    to their covered elements.
    """
    if family_filter not in FILTERS:
        raise DomainError(f"unknown filter {family_filter!r}; expected one of {FILTERS}")
    if mode == "exhaustive":
        if not 0 <= m <= EXHAUSTIVE_LIMIT:
            raise CapacityError(
                f"exhaustive enumeration supports m <= {EXHAUSTIVE_LIMIT}, got {m}")
        return _enumerate_exhaustive(m, family_filter)
    if mode == "generators":
        if not 0 <= m <= GENERATOR_LIMIT:
            raise CapacityError(
                f"generator enumeration supports m <= {GENERATOR_LIMIT}, got {m}")
        if max_generators is None and m > 3:
            raise CapacityError(
                "generator mode needs max_generators for m > 3; the unbounded "
                "subset walk is only feasible up to m = 3")
        return _enumerate_generators(m, family_filter, max_generators)
    raise DomainError(f"unknown mode {mode!r}; expected exhaustive or generators")


def _enumerate_exhaustive(m: int, family_filter: str) -> Iterator[SetFamily]:
    p = 1 << m
    ambient_full = (1 << m) - 1
    for code in range(1 << p):
        masks = [i for i in range(p) if code >> i & 1]
        ok = True
        for pos_a, a in enumerate(masks):
            for b in masks[pos_a + 1:]:
                if not code >> (a | b) & 1:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        covered = 0
        for a in masks:
            covered |= a
        fam = _compress_masks(masks)
        if _passes(fam, covered, ambient_full, family_filter):
            yield fam


def _enumerate_generators(m: int, family_filter: str,
                          max_generators: int | None) -> Iterator[SetFamily]:
    p = 1 << m
    ambient_full = (1 << m) - 1
    top = p if max_generators is None else min(max_generators, p)
    seen: set[SetFamily] = set()
    for size in range(top + 1):
        for combo in itertools.combinations(range(p), size):
            closure = closure_of_masks(combo)
            covered = 0
            for a in closure:
                covered |= a
            fam = _compress_masks(closure)
            if not _passes(fam, covered, ambient_full, family_filter):
                continue
            canon = canonical_form(fam)
            if canon not in seen:
                seen.add(canon)
                yield canon


def canonical_form(f: SetFamily) -> SetFamily:
    """Lexicographically smallest relabeling of the family (m <= 8).

    Scans all m! element permutations, so two families have equal canonical
    forms exactly when some relabeling carries one onto the other.
    """
    m = f.universe_size
    if m > CANONICAL_LIMIT:
        raise CapacityError(
            f"canonical form scans m! relabelings; m <= {CANONICAL_LIMIT}, got {m}")
    best: tuple[int, ...] | None = None
    for perm in itertools.permutations(range(m)):
        relabeled = tuple(sorted(relabel_mask(mask, perm) for mask in f.members))
        if best is None or relabeled < best:
            best = relabeled
    return SetFamily(m, best if best is not None else ())


MASK64 = (1 << 64) - 1


def splitmix64(seed: int) -> Iterator[int]:
    """Deterministic 64-bit stream (splitmix64, a public-domain mixer).

    state += 0x9E3779B97F4A7C15; then the output is state mixed by two
    xor-shift-multiply rounds (constants 0xBF58476D1CE4E5B9 and
    0x94D049BB133111EB) and a final 31-bit xor-shift.  Pure integer
    arithmetic, hence identical on every platform.
    """
    x = seed & MASK64
    while True:
        x = (x + 0x9E3779B97F4A7C15) & MASK64
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


def random_family(m: int, generators: int, seed: int) -> SetFamily:
    """Seeded random validated separating union-closed family.

    Draws `generators` non-empty subsets of an m-element universe from the
    splitmix64 stream (each draw takes the low m bits of the next output,
    redrawing zero), closes them under union, compresses to the covered
    elements, and collapses duplicate membership columns.  The same
    (m, generators, seed) triple yields a bit-identical family everywhere.
    """
    if not 1 <= m <= 64:
        raise CapacityError(f"m must be in 1..64, got {m}")
    if generators < 0:
        raise DomainError(f"generators must be non-negative, got {generators}")
    stream = splitmix64(seed)
    full = (1 << m) - 1
    drawn: list[int] = []
    while len(drawn) < generators:
        v = next(stream) & full
        if v:
            drawn.append(v)
    closed = closure_of_masks(drawn)
    fam = _compress_masks(closed)
    quotient, _ = separating_quotient(fam)
    return quotient


@dataclass
class CorpusReport:
    """Tallies and failure lists from a verification sweep over families."""

    total_families: int = 0
    union_closed_count: int = 0
    separating_count: int = 0
    frankl_violations: list[str] = field(default_factory=list)
    invariant_failures: list[tuple[str, str]] = field(default_factory=list)
    audit_failures: list[tuple[str, str]] = field(default_factory=list)
    rejections: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.frankl_violations or self.invariant_failures
                    or self.audit_failures or self.rejections)


def corpus_verify(corpus: Iterable[SetFamily]) -> CorpusReport:
    """Run the full verification battery over a corpus of families.

    Families must be validated and union-closed; offenders are rejected
    with a precise reason and skipped.  Union-closed but non-separating
    families are only tallied.  For each separating family the battery
    checks the witness set (skipped for families with an empty universe,
    where there is no element to find), chain and transversal invariants,
    the counting audit bullets and inequality, the n <= 2m mechanism, and
    the coverage cross-check.  Failures are data, not exceptions.
    """
    rep = CorpusReport()
    for f in corpus:
        rep.total_families += 1
        label = family_label(f)
        if not f.covers_universe:
            missing = elements_of(f.universe_mask & ~f.covered_mask)
            rep.rejections.append(
                (label, f"not validated: element ids {missing} occur in no member"))
            continue
        gap = find_union_gap(f)
        if gap is not None:
            a, b = (set(elements_of(g)) or "{}" for g in gap)
            rep.rejections.append(
                (label, f"not union-closed: the union of {a} and {b} is missing"))
            continue
        rep.union_closed_count += 1
        if not is_separating(f):
            continue
        rep.separating_count += 1

        if f.n >= 1 and f.universe_size >= 1 and not frankl_witnesses(f):
            rep.frankl_violations.append(label)

        if f.n >= 1:
            w = falgas_ravry_chain(f)
            for issue in verify_chain_witness(f, w):
                rep.invariant_failures.append((label, "chain: " + issue))

        tr = minimal_transversal(f)
        for issue in verify_transversal(f, tr):
            rep.invariant_failures.append((label, "transversal: " + issue))

        audit = counting_audit(f)
        for name, passed in audit.bullets_ok.items():
            if not passed:
                rep.audit_failures.append((label, name))
        if not audit.inequality_holds:
            rep.audit_failures.append((label, "inequality"))

        if lemma_bound(f) and f.n >= 1 and f.universe_size >= 1:
            top = falgas_ravry_chain(f).order[-1]
            if 2 * element_frequencies(f)[top] < f.n:
                rep.invariant_failures.append(
                    (label, "lemma: top element below half frequency despite n <= 2m"))

        verdict_report = applicability(f)
        if verdict_report.alarm:
            rep.invariant_failures.append((label, "applicability: " + verdict_report.alarm))
    return rep
