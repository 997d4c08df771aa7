"""Parsing and serialization for families and reports.

Two interchange formats for families.  Text: one member per line, element
ids separated by commas or whitespace, a lone "-" for the empty set, "#"
comments, blank lines ignored.  JSON: {"universe_size": m, "members":
[[ids], ...]}.  Serialization always emits members in canonical ascending
mask order with element ids sorted, so output is bit-identical across
platforms.  Reports serialize with their field names intact; masks become
sorted id arrays, map keys become strings, and real values are rounded to
12 significant digits before encoding.
"""

from __future__ import annotations

import json
from typing import Any

from .bounds import BoundReport
from .errors import CapacityError, FamilyParseError
from .family import (
    MAX_UNIVERSE,
    SetFamily,
    elements_of,
    family_from_masks,
    mask_of,
)
from .search import CorpusReport
from .witnesses import ChainWitness, CountingAudit, TransversalReport

M_SETS_DEFINITION = ("m_sets[i] is the union of all members NOT containing "
                     "the rank-i element; m_sets[0] is the universe")


def parse_members_text(text: str) -> list[int]:
    """Parse the text format into raw member masks, one per member line.

    Duplicates are preserved in file order so callers can warn about them;
    build a family with make-family semantics via parse_family_text.
    """
    masks: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "-":
            masks.append(0)
            continue
        mask = 0
        for token in line.replace(",", " ").split():
            try:
                x = int(token)
            except ValueError:
                raise FamilyParseError(
                    f"invalid element id {token!r}", line=lineno) from None
            if x < 0:
                raise FamilyParseError(
                    f"negative element id {x}", line=lineno)
            if x >= MAX_UNIVERSE:
                raise FamilyParseError(
                    f"element id {x} exceeds the {MAX_UNIVERSE}-element capacity",
                    line=lineno)
            mask |= 1 << x
        masks.append(mask)
    return masks


def parse_family_text(text: str) -> SetFamily:
    return family_from_masks(parse_members_text(text))


def family_to_text(f: SetFamily) -> str:
    """Render the text format; padding is not representable and is dropped."""
    lines = []
    for mask in f.members:
        lines.append(",".join(str(x) for x in elements_of(mask)) if mask else "-")
    return "\n".join(lines) + ("\n" if lines else "")


def family_to_json_dict(f: SetFamily) -> dict[str, Any]:
    return {
        "universe_size": f.universe_size,
        "members": [elements_of(mask) for mask in f.members],
    }


def family_from_json_dict(doc: Any) -> SetFamily:
    """Build a family from the JSON object form; padding is respected."""
    if not isinstance(doc, dict):
        raise FamilyParseError("family document must be a JSON object")
    extra = set(doc) - {"universe_size", "members"}
    if extra:
        raise FamilyParseError(f"unknown family fields {sorted(extra)}")
    m = doc.get("universe_size")
    members = doc.get("members")
    if not isinstance(m, int) or isinstance(m, bool):
        raise FamilyParseError("universe_size must be an integer")
    if not isinstance(members, list):
        raise FamilyParseError("members must be an array of arrays")
    masks = []
    for i, ids in enumerate(members):
        if not isinstance(ids, list) or any(
                not isinstance(x, int) or isinstance(x, bool) for x in ids):
            raise FamilyParseError(f"members[{i}] must be an array of integers")
        if any(x < 0 for x in ids):
            raise FamilyParseError(f"members[{i}] contains a negative element id")
        if any(x >= MAX_UNIVERSE for x in ids):
            raise FamilyParseError(
                f"members[{i}] exceeds the {MAX_UNIVERSE}-element capacity")
        masks.append(mask_of(ids))
    masks = sorted(set(masks))
    try:
        return family_from_masks(masks, m, padded=True)
    except (ValueError, CapacityError) as exc:
        raise FamilyParseError(str(exc)) from None


def parse_family_json(text: str) -> SetFamily:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyParseError(f"invalid JSON: {exc}", line=exc.lineno) from None
    return family_from_json_dict(doc)


def round12(x: float) -> float:
    """Round to 12 significant digits; the canonical real-value rendering."""
    return float(f"{x:.12g}")


def _ids(mask: int) -> list[int]:
    return elements_of(mask)


def _id_key_map(d: dict[int, int]) -> dict[str, list[int]]:
    return {str(x): _ids(mask) for x, mask in sorted(d.items())}


def chain_to_json(w: ChainWitness) -> dict[str, Any]:
    return {
        "order": list(w.order),
        "chain": [_ids(entry) for entry in w.chain],
        "pair_witnesses": {
            f"{i},{j}": _ids(mask)
            for (i, j), mask in sorted(w.pair_witnesses.items())
        },
        "m_sets": [_ids(entry) for entry in w.m_sets],
        "m_sets_definition": M_SETS_DEFINITION,
        "empty_set_member": w.empty_set_member,
    }


def transversal_to_json(tr: TransversalReport) -> dict[str, Any]:
    return {
        "order": list(tr.order),
        "tilde_u": _ids(tr.tilde_u),
        "a_sets": _id_key_map(tr.a_sets),
        "u_hat": _ids(tr.u_hat),
        "k": tr.k,
        "singleton_witnesses": _id_key_map(tr.singleton_witnesses),
        "pb_family": {
            ",".join(str(x) for x in _ids(b)): _ids(p)
            for b, p in sorted(tr.pb_family.items())
        },
        "empty_set_member": tr.empty_set_member,
        "full_sets_not_in_p": tr.full_sets_not_in_p,
    }


def audit_to_json(a: CountingAudit) -> dict[str, Any]:
    return {
        "m": a.m,
        "n": a.n,
        "k": a.k,
        "c": a.c,
        "incidence_total": a.incidence_total,
        "incidence_upper": a.incidence_upper,
        "p_incidences": a.p_incidences,
        "p_family_size": a.p_family_size,
        "full_extra": a.full_extra,
        "other_nonempty": a.other_nonempty,
        "rhs": a.rhs,
        "bullets_ok": dict(a.bullets_ok),
        "inequality_holds": a.inequality_holds,
    }


def _opt12(x: float | None) -> float | None:
    return None if x is None else round12(x)


def bounds_to_json(rep: BoundReport) -> dict[str, Any]:
    return {
        "m": rep.m,
        "n": rep.n,
        "f_values": {str(k): round12(v) for k, v in sorted(rep.f_values.items())},
        "k_star": rep.k_star,
        "min_f": _opt12(rep.min_f),
        "ieq1_threshold": _opt12(rep.ieq1_threshold),
        "k_prime": _opt12(rep.k_prime),
        "closed_form_threshold": _opt12(rep.closed_form_threshold),
        "verdict": rep.verdict,
        "alarm": rep.alarm,
        "notes": list(rep.notes),
    }


def corpus_to_json(rep: CorpusReport) -> dict[str, Any]:
    return {
        "total_families": rep.total_families,
        "union_closed_count": rep.union_closed_count,
        "separating_count": rep.separating_count,
        "frankl_violations": list(rep.frankl_violations),
        "invariant_failures": [list(t) for t in rep.invariant_failures],
        "audit_failures": [list(t) for t in rep.audit_failures],
        "rejections": [list(t) for t in rep.rejections],
        "ok": rep.ok,
    }


def to_json(doc: Any, *, compact: bool = False) -> str:
    """Stable JSON encoding: sorted keys, no NaN, compact or 2-space indent."""
    if compact:
        return json.dumps(doc, sort_keys=True, allow_nan=False,
                          separators=(",", ":"))
    return json.dumps(doc, sort_keys=True, allow_nan=False, indent=2)


def load_schema(name: str) -> dict[str, Any]:
    """Load one of the bundled JSON schemas by document kind.

    Kinds: family, analyze, chain, transversal, audit, bounds, corpus,
    quotient.
    """
    from importlib import resources
    path = resources.files(__package__).joinpath("schemas").joinpath(f"{name}.json")
    return json.loads(path.read_text(encoding="utf-8"))
