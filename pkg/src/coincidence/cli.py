"""Command-line entry point: ``coincidence <subcommand> ...``.

Exit status: 0 on success, 1 when the answer is "obstructed" or "not
liftable" (the run itself succeeded), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .config import GROUP_CAP_ENV, limits, set_limits
from .errors import (
    BadModulus,
    CoincidenceError,
    MalformedRecord,
    NotInvertible,
    NotLarge,
    Pole,
    SearchBudgetExceeded,
)
from .io import group_to_json, ingest_group, ingest_image, ingest_record
from .lifting import LiftStatus, element_split_liftable, group_split_liftable, sequence_splits
from .matgroup import abelian_invariants, contains_sl2, derived_subgroup, det_image, sl2
from .modmat import Mat2
from .padic import check_ratio_sequence, detect_vertical_coincidences, index_profile
from .rules import audit, large_image_analysis
from .verify import run_corpus
from .xmodular import cm_j_invariants, j_of_t, parse_rational, search_preimages

EXIT_OK, EXIT_NEGATIVE, EXIT_MALFORMED = 0, 1, 2


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(args, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


# -- group ------------------------------------------------------------------------------------


def cmd_group(args) -> int:
    G = ingest_group(args.input)
    n = G.modulus
    if args.action == "order":
        out = {"modulus": n, "order": G.order, "det_image": sorted(det_image(G)), "exponent": G.exponent()}
        _emit(args, out, f"order {G.order} in GL2({n}), determinant image of size {len(out['det_image'])}")
    elif args.action == "derived":
        D = derived_subgroup(G)
        S = sl2(n)
        out = {
            "modulus": n,
            "order": D.order,
            "index_in_sl2": S.order // D.order,
            "abelian_invariants": abelian_invariants(G, D),
            "generators": group_to_json(D)["generators"],
        }
        _emit(
            args,
            out,
            f"derived subgroup of order {D.order}, index {out['index_in_sl2']} in SL2({n}); "
            f"G/D has invariants {out['abelian_invariants']}",
        )
    elif args.action == "large":
        try:
            info = large_image_analysis(G)
        except NotLarge as exc:
            _emit(args, {"contains_sl2": False}, str(exc))
            return EXIT_OK
        out = {"contains_sl2": True, "derived_is_sl2": info.derived_is_sl2, "abelian_part": info.abelian_part}
        _emit(args, out, f"contains SL2({n}); derived subgroup is SL2: {info.derived_is_sl2}; {info.abelian_part}")
    else:  # contains-sl2
        ok = contains_sl2(G)
        _emit(args, {"contains_sl2": ok}, f"contains SL2({n}): {ok}")
    return EXIT_OK


# -- lift -------------------------------------------------------------------------------------


def cmd_lift(args) -> int:
    if args.action == "element":
        if len(args.matrix) != 4:
            raise MalformedRecord("--matrix: a matrix literal has four entries")
        g = Mat2.from_literal(args.mod, args.matrix)
        if not g.is_invertible():
            raise NotInvertible(f"{args.matrix} is not invertible mod {args.mod}")
        res = element_split_liftable(g, args.to)
        witness = res.witness.to_literal() if res.witness is not None else None
        out = {"status": res.status.value, "witness": witness, "searched": res.search_count}
        _emit(args, out, f"{res.status.value}" + (f", witness {witness}" if witness else ""))
    elif args.action == "split":
        G = ingest_group(args.group)
        within = ingest_group(args.within) if args.within else None
        res = group_split_liftable(G, args.to, within=within, budget=args.budget, seed=args.seed)
        out = {"status": res.status.value, "searched": res.search_count}
        text = res.status.value
        if res.witness is not None:
            out["witness"] = group_to_json(res.witness)
            out["order"] = res.witness.order
            text += f", witness of order {res.witness.order}: {out['witness']['generators']}"
        _emit(args, out, text)
    else:  # complement
        H = ingest_group(args.group)
        C = sequence_splits(H, args.m, budget=args.budget)
        if C is None:
            _emit(args, {"status": LiftStatus.NOT_LIFTABLE.value}, f"H -> H mod {args.m} does not split")
            return EXIT_NEGATIVE
        out = {"status": LiftStatus.LIFTABLE.value, "order": C.order, "complement": group_to_json(C)}
        _emit(args, out, f"splits; complement of order {C.order}: {out['complement']['generators']}")
        return EXIT_OK
    # an exhausted search is not a proof either way; it is reported like a negative answer
    return EXIT_OK if out["status"] == LiftStatus.LIFTABLE.value else EXIT_NEGATIVE


# -- padic ------------------------------------------------------------------------------------


def cmd_padic(args) -> int:
    if args.action == "ratios":
        res = check_ratio_sequence(args.p, args.u)
        _emit(
            args,
            {"passed": res.passed, "first_violation": res.first_violation},
            "divisibility chain holds" if res.passed else f"u_{res.first_violation + 1} does not divide u_{res.first_violation}",
        )
        return EXIT_OK if res.passed else EXIT_NEGATIVE
    X = ingest_image(args.input)
    kmax = args.kmax or max(3, X.depth + 2)
    prof = index_profile(X, kmax)
    hits = detect_vertical_coincidences(X, kmax)
    out = {**prof.to_json(), "coincidences": [[X.p**k, X.p ** (k + 1)] for k in hits]}
    lines = [f"p = {X.p}, levels 1..{kmax}"]
    for key in ("orders", "i", "j", "ell", "u"):
        lines.append(f"  {key:<7}{' '.join(str(v) for v in out[key])}")
    pairs = ", ".join(f"({a},{b})" for a, b in out["coincidences"]) or "none"
    lines.append(f"  vertical coincidences: {pairs}")
    _emit(args, out, "\n".join(lines))
    return EXIT_OK


# -- audit ------------------------------------------------------------------------------------


def cmd_audit(args) -> int:
    rec = ingest_record(args.record)
    rec2 = ingest_record(args.record2) if args.record2 else None
    report = audit(args.m, args.n, rec, rec2)
    _emit(args, report.to_json(), report.render())
    return EXIT_NEGATIVE if report.obstructed else EXIT_OK


# -- xcurve -----------------------------------------------------------------------------------


def cmd_xcurve(args) -> int:
    if args.action == "eval":
        t = parse_rational(args.t)
        try:
            j = j_of_t(t)
        except Pole:
            _emit(args, {"t": str(t), "j": None, "pole": True}, f"j has a pole at t = {t}")
            return EXIT_OK
        _emit(args, {"t": str(t), "j": str(j)}, f"j({t}) = {j}")
        return EXIT_OK
    if args.cm:
        targets = cm_j_invariants()
    elif args.targets:
        targets = [parse_rational(x) for x in args.targets.split(",")]
    else:
        raise MalformedRecord("xcurve search: give --targets or --cm")
    found = search_preimages(targets, args.height)
    out = {str(j): [str(t) for t in ts] for j, ts in found.items()}
    lines = [f"height {args.height}: " + ("no preimages" if not any(out.values()) else "preimages found")]
    lines += [f"  j = {j}: {', '.join(ts) if ts else '-'}" for j, ts in out.items()]
    _emit(args, {"height": args.height, "preimages": out}, "\n".join(lines))
    return EXIT_OK


# -- verify-paper -----------------------------------------------------------------------------


def cmd_verify(args) -> int:
    results = run_corpus(Path(args.external) if args.external else None, workers=args.workers)
    counts = {s: sum(r.status == s for r in results) for s in ("PASSED", "FAILED", "SKIPPED")}
    if args.json:
        print(json.dumps({"results": [r.__dict__ for r in results], "summary": counts}, indent=2))
    else:
        width = max(len(r.id) for r in results)
        for r in results:
            extra = f"  {r.detail}" if r.detail else ""
            print(f"{r.id:<{width}}  {r.status}{extra}")
        print(f"\n{counts['PASSED']} passed, {counts['FAILED']} failed, {counts['SKIPPED']} skipped")
    return EXIT_OK if counts["FAILED"] == 0 else EXIT_NEGATIVE


# -- parser -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default {limits().seed})")
    common.add_argument(
        "--group-cap", type=int, default=None, help=f"largest group enumerated (default {limits().group_cap}, env {GROUP_CAP_ENV})"
    )

    parser = argparse.ArgumentParser(prog="coincidence", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="subgroup computations")
    p.add_argument("action", choices=["order", "derived", "large", "contains-sl2"])
    p.add_argument("--in", dest="input", required=True, help="group JSON file")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("lift", parents=[common], help="split lifting along GL2(M) -> GL2(m)")
    p.add_argument("action", choices=["split", "element", "complement"])
    p.add_argument("--group", help="group JSON file (split, complement)")
    p.add_argument("--within", help="restrict lifts to this group mod M (split)")
    p.add_argument("--matrix", type=_ints, help="a,b,c,d (element)")
    p.add_argument("--mod", type=int, help="modulus of --matrix (element)")
    p.add_argument("--to", type=int, help="target modulus M (split, element)")
    p.add_argument("--m", type=int, help="quotient level (complement)")
    p.add_argument("--budget", type=int, default=None, help="search budget")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("padic", parents=[common], help="index sequences of p-adic images")
    p.add_argument("action", choices=["profile", "ratios"])
    p.add_argument("--in", dest="input", help="image JSON file (profile)")
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--p", type=int, help="prime (ratios)")
    p.add_argument("--u", type=_ints, help="u_1,u_2,... (ratios)")
    p.set_defaults(func=cmd_padic)

    p = sub.add_parser("audit", parents=[common], help="test F(E[m]) = F(E[n]) against every rule")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--record", required=True, help="curve record JSON for E")
    p.add_argument("--record2", help="curve record JSON for E' (two-curve query)")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("xcurve", parents=[common], help="the j-map of X_20b")
    p.add_argument("action", choices=["eval", "search"])
    p.add_argument("--t", help="rational parameter (eval)")
    p.add_argument("--height", type=int, default=30, help="height bound (search)")
    p.add_argument("--targets", help="comma-separated rationals (search)")
    p.add_argument("--cm", action="store_true", help="use the bundled CM j-invariants (search)")
    p.set_defaults(func=cmd_xcurve)

    p = sub.add_parser("verify-paper", parents=[common], help="run the fixture corpus")
    p.add_argument("--external", help="directory with optional image files")
    p.add_argument("--workers", type=int, default=4)
    p.set_defaults(func=cmd_verify)
    return parser


_REQUIRED = {
    ("lift", "split"): ("group", "to"),
    ("lift", "element"): ("matrix", "mod", "to"),
    ("lift", "complement"): ("group", "m"),
    ("padic", "profile"): ("input",),
    ("padic", "ratios"): ("p", "u"),
    ("xcurve", "eval"): ("t",),
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    missing = [f for f in _REQUIRED.get((args.command, getattr(args, "action", None)), ()) if getattr(args, f) is None]
    if missing:
        print(f"error: {args.command} {args.action} needs --{', --'.join(missing)}", file=sys.stderr)
        return EXIT_MALFORMED
    changes: dict[str, Any] = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.group_cap is not None:
        changes["group_cap"] = args.group_cap
    previous = set_limits(**changes) if changes else None
    try:
        return args.func(args)
    except (MalformedRecord, BadModulus, NotInvertible, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except SearchBudgetExceeded as exc:
        print(f"search budget exhausted: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except CoincidenceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    finally:
        if previous is not None:
            set_limits(**previous.__dict__)


if __name__ == "__main__":
    sys.exit(main())
