"""Command-line surface.

One executable, eight subcommands: analyze, closure, quotient, witness,
bounds, enumerate, random, verify.  Families are read from a file path or
"-" for stdin; content starting with "{" is treated as the JSON form,
anything else as the text form.  Exit codes: 0 success, 1 I/O or parse
error, 2 precondition or domain violation, 3 verification failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .bounds import applicability, bound_report
from .errors import (
    CapacityError,
    ContradictionError,
    DomainError,
    FamilyParseError,
    PreconditionError,
)
from .family import (
    SetFamily,
    drop_unused_elements,
    elements_of,
    family_from_masks,
    family_label,
    find_union_gap,
    find_unseparated_pair,
    frankl_witnesses,
    frequency_profile,
    is_separating,
    is_union_closed,
    separating_quotient,
    union_closure,
)
from .formats import (
    audit_to_json,
    bounds_to_json,
    chain_to_json,
    corpus_to_json,
    family_from_json_dict,
    family_to_json_dict,
    family_to_text,
    parse_family_json,
    parse_members_text,
    to_json,
    transversal_to_json,
)
from .search import (
    corpus_verify,
    enumerate_union_closed,
    random_family,
)
from .witnesses import (
    counting_audit,
    falgas_ravry_chain,
    minimal_transversal,
)


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def load_family(path: str) -> SetFamily:
    """Read a family file (text or JSON, sniffed by the leading character).

    Duplicate member lines collapse with a warning.  Element ids that occur
    in no member (JSON padding) are dropped with a warning, so every command
    downstream sees a validated family.
    """
    text = _read_source(path)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        fam = parse_family_json(text)
    else:
        masks = parse_members_text(text)
        dupes = len(masks) - len(set(masks))
        if dupes:
            _warn(f"{dupes} duplicate member line(s) collapsed")
        fam = family_from_masks(set(masks))
    if not fam.covers_universe:
        fam, kept = drop_unused_elements(fam)
        _warn(f"unused element ids dropped; {len(kept)} of the declared "
              "universe remain (ids renumbered)")
    return fam


def _set_str(mask: int) -> str:
    return "{" + ",".join(str(x) for x in elements_of(mask)) + "}"


def _emit_family(f: SetFamily, fmt: str) -> None:
    if fmt == "json":
        print(to_json(family_to_json_dict(f)))
    else:
        sys.stdout.write(family_to_text(f))


def cmd_analyze(args: argparse.Namespace) -> int:
    f = load_family(args.path)
    if f.n == 0:
        raise PreconditionError("empty family")
    uc = is_union_closed(f)
    sep = is_separating(f)
    prof = frequency_profile(f)
    witnesses = frankl_witnesses(f) if f.n >= 1 else []
    doc: dict[str, Any] = {
        "m": f.universe_size,
        "n": f.n,
        "union_closed": uc,
        "separating": sep,
        "frequencies": {str(x): c for x, c in sorted(prof.freq.items())},
        "order": list(prof.order),
        "frankl_witnesses": witnesses,
        "verdict": None,
        "alarm": None,
        "notes": [],
    }
    if uc and sep:
        rep = applicability(f)
        doc["verdict"] = rep.verdict
        doc["alarm"] = rep.alarm
        doc["notes"] = list(rep.notes)
    else:
        doc["notes"] = ["verdict requires a union-closed separating family"]
    if args.format == "json":
        print(to_json(doc))
        return 0
    print(f"m: {doc['m']}")
    print(f"n: {doc['n']}")
    print(f"union_closed: {str(uc).lower()}")
    print(f"separating: {str(sep).lower()}")
    freq_str = " ".join(f"{x}:{c}" for x, c in sorted(prof.freq.items()))
    print(f"frequencies: {freq_str}")
    print("order: " + " ".join(str(x) for x in prof.order))
    print("frankl_witnesses: " + " ".join(str(x) for x in witnesses))
    if doc["verdict"] is not None:
        print(f"verdict: {doc['verdict']}")
    if doc["alarm"]:
        print(f"alarm: {doc['alarm']}")
    for note in doc["notes"]:
        print(f"note: {note}")
    return 0


def cmd_closure(args: argparse.Namespace) -> int:
    f = load_family(args.path)
    _emit_family(union_closure(f), args.format)
    return 0


def _require_union_closed(f: SetFamily) -> None:
    gap = find_union_gap(f)
    if gap is not None:
        raise PreconditionError(
            f"family is not union-closed: {_set_str(gap[0])} ∪ {_set_str(gap[1])} "
            f"= {_set_str(gap[0] | gap[1])} is not a member; "
            "run the closure command first")


def _require_separating(f: SetFamily) -> None:
    pair = find_unseparated_pair(f)
    if pair is not None:
        raise PreconditionError(
            f"family is not separating: elements {pair[0]} and {pair[1]} lie in "
            "exactly the same members; run the quotient command first")


def cmd_quotient(args: argparse.Namespace) -> int:
    f = load_family(args.path)
    _require_union_closed(f)
    q, classes = separating_quotient(f)
    if args.format == "json":
        print(to_json({
            "family": family_to_json_dict(q),
            "classes": [list(cls) for cls in classes],
        }))
        return 0
    sys.stdout.write(family_to_text(q))
    for i, cls in enumerate(classes):
        print(f"# class {i}: " + ",".join(str(x) for x in cls))
    return 0


def cmd_witness(args: argparse.Namespace) -> int:
    f = load_family(args.path)
    _require_union_closed(f)
    _require_separating(f)
    if args.which == "chain":
        w = falgas_ravry_chain(f)
        if args.format == "json":
            print(to_json(chain_to_json(w)))
            return 0
        print("order: " + " ".join(str(x) for x in w.order))
        for i, entry in enumerate(w.chain):
            print(f"X_{i} = {_set_str(entry)}")
        for i, entry in enumerate(w.m_sets):
            print(f"M_{i} = {_set_str(entry)}")
        print(f"empty_set_member: {str(w.empty_set_member).lower()}")
        return 0
    if args.which == "transversal":
        tr = minimal_transversal(f)
        if args.format == "json":
            print(to_json(transversal_to_json(tr)))
            return 0
        print("order: " + " ".join(str(x) for x in tr.order))
        print(f"tilde_u = {_set_str(tr.tilde_u)}")
        print(f"u_hat = {_set_str(tr.u_hat)}")
        print(f"k: {tr.k}")
        for x, a in sorted(tr.a_sets.items()):
            print(f"A[{x}] = {_set_str(a)}")
        for x, wmask in sorted(tr.singleton_witnesses.items()):
            print(f"witness[{x}] = {_set_str(wmask)}")
        for b, p in sorted(tr.pb_family.items()):
            print(f"P[{_set_str(b)}] = {_set_str(p)}")
        print(f"empty_set_member: {str(tr.empty_set_member).lower()}")
        print(f"full_sets_not_in_p: {tr.full_sets_not_in_p}")
        return 0
    audit = counting_audit(f)
    if args.format == "json":
        print(to_json(audit_to_json(audit)))
        return 0
    for name in ("m", "n", "k", "c", "incidence_total", "incidence_upper",
                 "p_incidences", "p_family_size", "full_extra",
                 "other_nonempty", "rhs"):
        print(f"{name}: {getattr(audit, name)}")
    for name, ok in audit.bullets_ok.items():
        print(f"bullet {name}: {'ok' if ok else 'VIOLATED'}")
    print("inequality holds" if audit.inequality_holds else "inequality FAILS")
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    if args.m < 2:
        raise DomainError(
            f"threshold calculus needs m >= 2 (log2 log2 m undefined), got {args.m}")
    rep = bound_report(args.m, args.n)
    doc = bounds_to_json(rep)
    if args.format == "json":
        print(to_json(doc))
        return 0
    for key in ("m", "n", "k_star", "min_f", "ieq1_threshold", "k_prime",
                "closed_form_threshold", "verdict", "alarm"):
        value = doc[key]
        if value is not None:
            print(f"{key}: {value}")
    print("f_values: " + " ".join(
        f"{k}:{v}" for k, v in sorted(doc["f_values"].items(), key=lambda kv: int(kv[0]))))
    for note in doc["notes"]:
        print(f"note: {note}")
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    stream = enumerate_union_closed(
        args.m, args.mode,
        family_filter=args.filter,
        max_generators=args.max_generators,
    )
    for fam in stream:
        if args.format == "json":
            print(to_json(family_to_json_dict(fam), compact=True))
        else:
            print(family_label(fam))
    return 0


def cmd_random(args: argparse.Namespace) -> int:
    for i in range(args.count):
        fam = random_family(args.m, args.generators, args.seed + i)
        if args.format == "json":
            print(to_json(family_to_json_dict(fam), compact=True))
        else:
            sys.stdout.write(family_to_text(fam))
            if args.count > 1 and i + 1 < args.count:
                print()
    return 0


def _verify_corpus_from_args(args: argparse.Namespace):
    if args.input is not None:
        text = _read_source(args.input)
        stripped = text.lstrip()
        if stripped.startswith("{"):
            fams = []
            for lineno, line in enumerate(text.splitlines(), start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    doc = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise FamilyParseError(
                        f"invalid JSON: {exc.msg}", line=lineno) from None
                fams.append(family_from_json_dict(doc))
            return fams
        return [family_from_masks(set(parse_members_text(text)))]
    if args.random:
        return (random_family(args.m, args.generators, args.seed + i)
                for i in range(args.count))
    return enumerate_union_closed(args.m, args.mode,
                                  family_filter=args.filter,
                                  max_generators=args.max_generators)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.input is None and args.m is None:
        raise DomainError("verify needs --input PATH or --m M")
    rep = corpus_verify(_verify_corpus_from_args(args))
    doc = corpus_to_json(rep)
    if args.format == "json":
        print(to_json(doc))
    else:
        print(f"total_families: {rep.total_families}")
        print(f"union_closed_count: {rep.union_closed_count}")
        print(f"separating_count: {rep.separating_count}")
        for label in rep.frankl_violations:
            print(f"FRANKL VIOLATION: {label}")
        for label, name in rep.invariant_failures:
            print(f"INVARIANT FAILURE: {label}: {name}")
        for label, name in rep.audit_failures:
            print(f"AUDIT FAILURE: {label}: {name}")
        for label, reason in rep.rejections:
            print(f"REJECTED: {label}: {reason}")
        print("ok" if rep.ok else "FAILURES FOUND")
    return 0 if rep.ok else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ucsets",
        description="Analyze, transform, and verify union-closed set families.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text",
                       help="output format (default: text)")

    p = sub.add_parser("analyze", help="basic structure, frequencies, verdict")
    p.add_argument("path", help="family file, or - for stdin")
    add_format(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("closure", help="smallest union-closed superfamily")
    p.add_argument("path")
    add_format(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("quotient", help="merge elements with identical columns")
    p.add_argument("path")
    add_format(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("witness", help="chain, transversal, or counting audit")
    p.add_argument("path")
    p.add_argument("--which", choices=("chain", "transversal", "audit"),
                   default="chain")
    add_format(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("bounds", help="threshold calculus for a universe size")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=None,
                   help="member count; adds an applicability verdict")
    add_format(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("enumerate", help="stream union-closed families")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "generators"),
                   default="exhaustive")
    p.add_argument("--filter", choices=("all", "validated", "separating"),
                   default="separating")
    p.add_argument("--max-generators", type=int, default=None)
    add_format(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("random", help="seeded random separating families")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--generators", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1,
                   help="emit this many families, seeds seed..seed+count-1")
    add_format(p)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("verify", help="run the verification battery")
    p.add_argument("--input", default=None,
                   help="family file or NDJSON corpus; - for stdin")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--mode", choices=("exhaustive", "generators"),
                   default="exhaustive")
    p.add_argument("--filter", choices=("all", "validated", "separating"),
                   default="separating")
    p.add_argument("--max-generators", type=int, default=None)
    p.add_argument("--random", action="store_true",
                   help="verify seeded random families instead of enumerating")
    p.add_argument("--generators", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    add_format(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FamilyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ContradictionError as exc:
        print(f"internal contradiction: {exc}", file=sys.stderr)
        return 3
    except (PreconditionError, DomainError, CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
