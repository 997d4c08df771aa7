"""Member-count thresholds and applicability verdicts.

The integer cost function f(m, k) = 2^(k-1) + m/(k-2) - k - 3 drives the
main member-count threshold 2*(m + min_k f(m, k)).  Its closed-form
relaxation 2*(m + m/(log2 m - log2 log2 m)) is cheaper to state; both are
computed here together with the bookkeeping needed to check one against the
other numerically instead of trusting the derivation.

Float inequalities involving an integer member count use an absolute
tolerance of 1e-9: n is within a threshold t iff n <= floor(t + 1e-9).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ContradictionError, DomainError
from .family import SetFamily, element_frequencies, frankl_witnesses
from .witnesses import falgas_ravry_chain

TOLERANCE = 1e-9

VERDICT_SMALL_M = "covered-by-small-m"
VERDICT_LEMMA = "covered-by-lemma"
VERDICT_THEOREM = "covered-by-theorem"
VERDICT_NOT_COVERED = "not-covered"

SMALL_M_LIMIT = 12


def f_m(m: int, k: int) -> float:
    """Evaluate 2^(k-1) + m/(k-2) - k - 3; defined for k >= 3, m >= 1."""
    if m < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    if k <= 2:
        raise DomainError(f"f(m, k) has a pole at k = 2; got k = {k}")
    return float(1 << (k - 1)) + m / (k - 2) - k - 3


def k_scan_range(m: int) -> range:
    """Integer k values scanned by min_f: 3 .. ceil(log2 m) + 2 inclusive."""
    if m < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    hi = max(3, math.ceil(math.log2(m)) + 2) if m >= 2 else 3
    return range(3, hi + 1)


def min_f(m: int) -> tuple[int, float]:
    """Minimize f(m, k) over the integer scan range; ties pick the smaller k.

    The scan deliberately starts at k = 3 rather than assuming where the
    minimum lands, so the location claim checked by the test suite is
    verified against this result instead of being baked into it.
    """
    best_k = -1
    best = math.inf
    for k in k_scan_range(m):
        v = f_m(m, k)
        if v < best:
            best = v
            best_k = k
    return best_k, best


def ieq1_threshold(m: int) -> float:
    """The member-count threshold 2 * (m + min_k f(m, k))."""
    return 2.0 * (m + min_f(m)[1])


def closed_form_threshold(m: int) -> float:
    """The relaxed threshold 2 * (m + m / (log2 m - log2 log2 m)).

    Undefined for m <= 1 (log2 log2 m degenerates).  m = 2 evaluates to 8
    with denominator 1, below the regime the threshold is meant for.
    """
    if m <= 1:
        raise DomainError(f"threshold undefined for m <= 1, got {m}")
    lg = math.log2(m)
    denom = lg - math.log2(lg)
    return 2.0 * (m + m / denom)


def k_prime(m: int) -> float:
    """The analysis point k' = log2 m - log2 log2 m + 2."""
    if m <= 1:
        raise DomainError(f"k' undefined for m <= 1, got {m}")
    lg = math.log2(m)
    return lg - math.log2(lg) + 2.0


@dataclass(frozen=True)
class KPrimeCheck:
    """Both sides of the substitution step m/(k'-2) <= 2^(k'-1) at k = k'."""

    m: int
    k_prime: float
    lhs: float
    rhs: float
    holds: bool


def kprime_check(m: int) -> KPrimeCheck:
    """Evaluate m/(k'-2) against 2^(k'-1) instead of assuming the step.

    The step is equivalent to 2*log2 log2 m <= log2 m, which fails in a
    narrow band (13..15) and holds with equality at m = 16; the check
    reports whichever way it comes out.
    """
    kp = k_prime(m)
    lhs = m / (kp - 2.0)
    rhs = 2.0 ** (kp - 1.0)
    return KPrimeCheck(m=m, k_prime=kp, lhs=lhs, rhs=rhs,
                       holds=lhs <= rhs + TOLERANCE)


@dataclass(frozen=True)
class MaxMinCheck:
    """Numeric check of min_f against its max-min lower bound."""

    m: int
    min_f: float
    grid_max_min: float
    final_lower: float
    holds_grid: bool
    holds_final: bool


def maxmin_check(m: int, grid_points: int = 201) -> MaxMinCheck:
    """Check min_f(m) >= max over k' of min(2^(k'-1), m/(k'-2)) numerically.

    k' is sampled on a fixed uniform grid over [3, log2 m + 2].  Also checks
    the final lower bound m / (log2 m - log2 log2 m), which is what the
    closed-form threshold in turn relies on.
    """
    if m <= 1:
        raise DomainError(f"check undefined for m <= 1, got {m}")
    _, fmin = min_f(m)
    lo, hi = 3.0, math.log2(m) + 2.0
    if hi < lo:
        hi = lo
    best = -math.inf
    for i in range(grid_points):
        kp = lo + (hi - lo) * i / (grid_points - 1)
        v = min(2.0 ** (kp - 1.0), m / (kp - 2.0))
        if v > best:
            best = v
    lg = math.log2(m)
    final_lower = m / (lg - math.log2(lg))
    return MaxMinCheck(
        m=m,
        min_f=fmin,
        grid_max_min=best,
        final_lower=final_lower,
        holds_grid=fmin >= best - TOLERANCE,
        holds_final=fmin >= final_lower - TOLERANCE,
    )


def hu_fraction(c: float) -> float:
    """The witness-frequency fraction (c-2) / (2*(c-1)) for c > 2.

    Approaches 0 as c -> 2 and 1/2 as c grows; c = 3 gives 1/4.
    """
    if c <= 2:
        raise DomainError(f"fraction defined only for c > 2, got {c}")
    return (c - 2.0) / (2.0 * (c - 1.0))


def within_threshold(n: int, t: float) -> bool:
    """Integer-vs-float comparison used by all verdicts: n <= floor(t + tol)."""
    return n <= math.floor(t + TOLERANCE)


def lemma_bound(f: SetFamily) -> bool:
    """True when n <= 2m, re-deriving the mechanism as a sanity check.

    When the bound holds for a non-degenerate separating union-closed
    family, the chain witness yields m pairwise distinct members all
    containing the top-frequency element, so its frequency is at least
    m >= n/2 and the witness property follows.  A failure of that mechanism
    is a contradiction, not report data.
    """
    m, n = f.universe_size, f.n
    ok = n <= 2 * m
    if ok and n >= 1 and m >= 1:
        w = falgas_ravry_chain(f)
        top = w.order[-1]
        if len(set(w.chain)) != len(w.chain):
            raise ContradictionError("chain entries are not pairwise distinct")
        if any(not entry >> top & 1 for entry in w.chain):
            raise ContradictionError("top element missing from a chain entry")
        if element_frequencies(f)[top] < m:
            raise ContradictionError("top element frequency fell below m")
    return ok


@dataclass(frozen=True)
class BoundReport:
    """Threshold calculus for a given universe size, plus optional verdict."""

    m: int
    n: int | None
    f_values: dict[int, float]
    k_star: int | None
    min_f: float | None
    ieq1_threshold: float | None
    k_prime: float | None
    closed_form_threshold: float | None
    verdict: str | None
    alarm: str | None
    notes: tuple[str, ...]


def verdict_for(m: int, n: int) -> str:
    """Coverage rules, first match wins: small m, the 2m bound, the threshold."""
    if m <= SMALL_M_LIMIT:
        return VERDICT_SMALL_M
    if n <= 2 * m:
        return VERDICT_LEMMA
    if within_threshold(n, closed_form_threshold(m)):
        return VERDICT_THEOREM
    return VERDICT_NOT_COVERED


def bound_report(m: int, n: int | None = None) -> BoundReport:
    """Assemble the full calculus for universe size m.

    Total for every m >= 0: fields whose formulas degenerate (m <= 1) come
    back None with an explanatory note, so callers classifying degenerate
    families still get a report.
    """
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    notes: list[str] = []
    if m >= 1:
        f_values = {k: f_m(m, k) for k in k_scan_range(m)}
        k_star, fmin = min_f(m)
        ieq1 = 2.0 * (m + fmin)
    else:
        f_values, k_star, fmin, ieq1 = {}, None, None, None
        notes.append("universe is empty; threshold calculus skipped")
    if m >= 2:
        kp = k_prime(m)
        closed = closed_form_threshold(m)
        if m <= 3:
            notes.append("closed-form threshold evaluated below its intended regime")
    else:
        kp = closed = None
        if m == 1:
            notes.append("closed-form threshold undefined for m <= 1")
    verdict = verdict_for(m, n) if n is not None else None
    return BoundReport(
        m=m, n=n,
        f_values=f_values,
        k_star=k_star,
        min_f=fmin,
        ieq1_threshold=ieq1,
        k_prime=kp,
        closed_form_threshold=closed,
        verdict=verdict,
        alarm=None,
        notes=tuple(notes),
    )


def applicability(f: SetFamily) -> BoundReport:
    """Classify a family against the coverage rules and cross-check it.

    pre: f union-closed, separating, validated.  Whenever the verdict says
    the family is covered, its witness set must be non-empty; an empty one
    would be a potential counterexample and is flagged as an alarm.
    """
    m, n = f.universe_size, f.n
    rep = bound_report(m, n)
    alarm = None
    if rep.verdict != VERDICT_NOT_COVERED and n >= 1 and m >= 1:
        if not frankl_witnesses(f):
            alarm = "covered family has an empty witness set (potential counterexample)"
    return replace(rep, alarm=alarm)
