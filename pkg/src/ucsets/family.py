"""Bit-mask set families over small universes and their basic operations.

A family is a deduplicated tuple of member sets sorted ascending by mask
value, each member a bit mask over element ids 0..universe_size-1.  The
universe is capped at 64 elements so every member fits in one machine word
and all operations below are plain integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, DomainError

MAX_UNIVERSE = 64


def mask_of(elements: Iterable[int]) -> int:
    """Pack element ids into a bit mask."""
    mask = 0
    for x in elements:
        if x < 0:
            raise DomainError(f"element ids must be non-negative, got {x}")
        if x >= MAX_UNIVERSE:
            raise CapacityError(
                f"element id {x} exceeds the {MAX_UNIVERSE}-element capacity")
        mask |= 1 << x
    return mask


def elements_of(mask: int) -> list[int]:
    """Unpack a bit mask into an ascending list of element ids."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class SetFamily:
    """A family of subsets of {0, ..., universe_size-1}, one mask per member."""

    universe_size: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.universe_size <= MAX_UNIVERSE:
            raise CapacityError(
                f"universe size {self.universe_size} outside 0..{MAX_UNIVERSE}")
        full = (1 << self.universe_size) - 1
        prev = -1
        for mask in self.members:
            if mask <= prev:
                raise ValueError("members must be distinct masks in ascending order")
            if mask & ~full:
                raise ValueError(f"member {mask:#x} is not a subset of the universe")
            prev = mask

    @property
    def n(self) -> int:
        return len(self.members)

    @property
    def universe_mask(self) -> int:
        return (1 << self.universe_size) - 1

    @property
    def covered_mask(self) -> int:
        cov = 0
        for mask in self.members:
            cov |= mask
        return cov

    @property
    def covers_universe(self) -> bool:
        """True when every element id occurs in at least one member."""
        return self.covered_mask == self.universe_mask

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


def make_family(sets: Iterable[Iterable[int]]) -> SetFamily:
    """Build a family from collections of element ids.

    Duplicates collapse, members are stored sorted ascending by mask value,
    and the universe size is one past the largest element id used (zero when
    no elements occur at all).
    """
    masks = sorted({mask_of(s) for s in sets})
    size = masks[-1].bit_length() if masks else 0
    return SetFamily(size, tuple(masks))


def family_from_masks(masks: Iterable[int],
                      universe_size: int | None = None,
                      *, padded: bool = False) -> SetFamily:
    """Build a family from raw masks.

    Without an explicit universe_size the universe is derived from the
    largest element used.  A larger explicit universe introduces element ids
    that occur in no member; that is only accepted with padded=True.
    """
    ms = sorted(set(masks))
    if ms and ms[0] < 0:
        raise DomainError("masks must be non-negative")
    used = ms[-1].bit_length() if ms else 0
    if used > MAX_UNIVERSE:
        raise CapacityError(f"members use more than {MAX_UNIVERSE} elements")
    if universe_size is None:
        universe_size = used
    elif universe_size < used:
        raise ValueError(
            f"universe_size {universe_size} too small for members using {used} elements")
    elif universe_size > used and not padded:
        raise ValueError(
            f"universe_size {universe_size} exceeds the {used} covered elements; "
            "pass padded=True to allow trailing unused ids")
    return SetFamily(universe_size, tuple(ms))


def family_label(f: SetFamily) -> str:
    """Compact one-line rendering, e.g. ``{{2},{1,2},{0,1,2}}``."""
    parts = ("{" + ",".join(map(str, elements_of(mask))) + "}" for mask in f.members)
    return "{" + ",".join(parts) + "}"


def is_union_closed(f: SetFamily) -> bool:
    """True when the union of every two members is again a member."""
    return find_union_gap(f) is None


def find_union_gap(f: SetFamily) -> tuple[int, int] | None:
    """First pair of members (in canonical order) whose union is missing."""
    members = f.members
    present = set(members)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if a | b not in present:
                return a, b
    return None


def closure_of_masks(masks: Iterable[int]) -> list[int]:
    """Union-closure of the given masks, sorted ascending.

    Incremental: if C is already union-closed, then C + g closes as
    C | {g} | {g|c for c in C}, so one pass over the generators suffices.
    """
    closed: set[int] = set()
    for g in masks:
        if g in closed:
            continue
        closed |= {g | c for c in closed}
        closed.add(g)
    return sorted(closed)


def union_closure(f: SetFamily) -> SetFamily:
    """Smallest union-closed family containing f, over the same universe."""
    return SetFamily(f.universe_size, tuple(closure_of_masks(f.members)))


def element_frequencies(f: SetFamily) -> list[int]:
    """Number of members containing each element, indexed by element id."""
    counts = [0] * f.universe_size
    for mask in f.members:
        while mask:
            low = mask & -mask
            counts[low.bit_length() - 1] += 1
            mask ^= low
    return counts


@dataclass(frozen=True)
class FrequencyProfile:
    """Element frequencies plus the increasing-frequency labeling.

    order[r] is the element of rank r: elements sorted by frequency, ties
    broken by lower id first.  The last entry is a most frequent element.
    """

    freq: dict[int, int]
    order: tuple[int, ...]


def frequency_profile(f: SetFamily) -> FrequencyProfile:
    counts = element_frequencies(f)
    order = tuple(sorted(range(f.universe_size), key=lambda x: (counts[x], x)))
    return FrequencyProfile(dict(enumerate(counts)), order)


def frankl_witnesses(f: SetFamily) -> list[int]:
    """Element ids lying in at least half of the members.

    The union-closed conjecture asserts this list is non-empty for every
    union-closed family containing a non-empty set.
    """
    if f.n == 0:
        raise DomainError("empty family has no witnesses")
    counts = element_frequencies(f)
    return [x for x in range(f.universe_size) if 2 * counts[x] >= f.n]


def column_signatures(f: SetFamily) -> list[int]:
    """Per element, the set of member indices containing it, as a bit mask."""
    sigs = [0] * f.universe_size
    for idx, mask in enumerate(f.members):
        bit = 1 << idx
        while mask:
            low = mask & -mask
            sigs[low.bit_length() - 1] |= bit
            mask ^= low
    return sigs


def is_separating(f: SetFamily) -> bool:
    """True when every two distinct elements are split by some member."""
    return find_unseparated_pair(f) is None


def find_unseparated_pair(f: SetFamily) -> tuple[int, int] | None:
    """First pair of elements whose membership columns coincide."""
    seen: dict[int, int] = {}
    for x, sig in enumerate(column_signatures(f)):
        if sig in seen:
            return seen[sig], x
        seen[sig] = x
    return None


def separating_quotient(f: SetFamily) -> tuple[SetFamily, tuple[tuple[int, ...], ...]]:
    """Merge elements with identical membership columns.

    Two elements with the same column are contained in exactly the same
    members, so every member is a union of whole classes and the quotient
    map is injective on members: the member count is preserved, as are
    union-closedness and (trivially) separation.  Classes are renumbered by
    their lowest id, ascending; elements occurring in no member are dropped.

    Returns the quotient family and the class partition, where class j of
    the partition is the preimage of the new element j.
    """
    sigs = column_signatures(f)
    groups: dict[int, list[int]] = {}
    for x in range(f.universe_size):
        if sigs[x]:
            groups.setdefault(sigs[x], []).append(x)
    classes = sorted(groups.values())
    reps = [cls[0] for cls in classes]
    new_members = sorted(
        sum(1 << j for j, rep in enumerate(reps) if mask >> rep & 1)
        for mask in f.members
    )
    fam = SetFamily(len(classes), tuple(new_members))
    return fam, tuple(tuple(cls) for cls in classes)


def relabel_by_frequency(f: SetFamily) -> tuple[SetFamily, tuple[int, ...]]:
    """Renumber elements so ids run in increasing-frequency order.

    After relabeling, element m-1 is a most frequent element.  Returns the
    relabeled family and the permutation as a tuple mapping old id to new.
    Applying the operation twice yields the identity permutation the second
    time, because the first pass already sorted the ids.
    """
    order = frequency_profile(f).order
    perm = [0] * f.universe_size
    for new, old in enumerate(order):
        perm[old] = new
    return apply_relabeling(f, perm), tuple(perm)


def apply_relabeling(f: SetFamily, perm: Sequence[int]) -> SetFamily:
    """Rename element ids through perm (old id -> new id)."""
    members = sorted(relabel_mask(mask, perm) for mask in f.members)
    return SetFamily(f.universe_size, tuple(members))


def relabel_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out


def drop_unused_elements(f: SetFamily) -> tuple[SetFamily, tuple[int, ...]]:
    """Restrict the universe to the elements that occur in some member.

    Returns the compressed family and the kept old ids; new id j corresponds
    to the j-th kept id.  Families that already cover their universe come
    back unchanged.
    """
    covered = f.covered_mask
    if covered == f.universe_mask:
        return f, tuple(range(f.universe_size))
    kept = elements_of(covered)
    pos = [-1] * f.universe_size
    for new, old in enumerate(kept):
        pos[old] = new
    members = tuple(sorted(relabel_mask(mask, pos) for mask in f.members))
    return SetFamily(len(kept), members), tuple(kept)
