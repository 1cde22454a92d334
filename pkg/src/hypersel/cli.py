"""Batch command-line front end.

Exit codes: 0 success or property verified, 1 property refuted or
hypothesis violated (report carries a machine-readable witness), 2
resource or precondition failure (diagnostic on stderr).

Reports embed the tool version and the resolved configuration; given
equal inputs and flags the bytes written are identical run to run.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional

from . import __version__
from .chains import (
    build_selection_from_nice,
    chain_classes,
    covers,
    derive_nice_family,
    is_nice,
)
from .documents import (
    dumps,
    jsonable,
    label_str,
    read_model,
    read_partial,
    read_system,
    write_partial,
    write_selection,
    write_system,
)
from .errors import (
    BudgetExceeded,
    DocumentError,
    HyperselError,
    HypothesisViolated,
    NonBijectiveTransfer,
    NotNice,
)
from .extension import extend_selection, least_small_class, partition_types
from .obstruction import obstruction_table, table_tsv
from .structures import DEFAULT_BUDGET, enumerate_selections, subset_ranks
from .vietoris import check_continuity


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _config(args: argparse.Namespace) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    return {k: jsonable(v) for k, v in sorted(cfg.items())}


def _report(args: argparse.Namespace, result: dict) -> str:
    return dumps(
        {"version": __version__, "config": _config(args), "result": result}
    )


def _load(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON: {exc}") from exc


def _require_json(args: argparse.Namespace) -> None:
    if args.format != "json":
        raise DocumentError(
            f"command {args.command!r} only renders json, not {args.format!r}"
        )


def cmd_enumerate(args: argparse.Namespace) -> int:
    _require_json(args)
    records = [
        write_selection(s)
        for s in enumerate_selections(
            args.m, args.n, up_to_iso=args.iso, budget=args.budget
        )
    ]
    result = {"records": records, "count": len(records)}
    _emit(_report(args, result), args.output)
    return 0


def cmd_obstruct(args: argparse.Namespace) -> int:
    rows = obstruction_table(args.max_m, budget=args.budget)
    if args.format == "tsv":
        _emit(table_tsv(rows), args.output)
    else:
        result = {
            "rows": [
                {
                    "m": r.m,
                    "p": r.p,
                    "binom": r.binom,
                    "divisible": r.divisible,
                    "lucas_residue": r.lucas_residue,
                    "search_status": r.search_status,
                }
                for r in rows
            ],
            "count": len(rows),
        }
        _emit(_report(args, result), args.output)
    return 0


def cmd_extend(args: argparse.Namespace) -> int:
    _require_json(args)
    f = read_partial(_load(args.input))
    m, p = args.m, args.p
    try:
        h = extend_selection(f, m, p)
    except HypothesisViolated as exc:
        _emit(_report(args, {"valid": False, "error": str(exc)}), args.output)
        return 1
    parts = partition_types(f, m, p)
    classes = []
    for canon, members in parts.classes.items():
        r0, q = least_small_class(canon, m)
        classes.append(
            {
                "type": write_selection(canon),
                "members": len(members),
                "level": r0,
                "level_class_size": len(q),
            }
        )
    subs, _ = subset_ranks(f.carrier.size, m)
    entries = []
    valid = True
    for s in subs:
        labels = tuple(f.carrier.labels[i] for i in s)
        pick = h.choose(labels)
        valid = valid and pick in labels
        entries.append(
            {
                "subset": [label_str(x) for x in labels],
                "pick": label_str(pick),
            }
        )
    result = {
        "selection": write_partial(h),
        "classes": classes,
        "entries": entries,
        "count": len(entries),
        "valid": valid,
    }
    _emit(_report(args, result), args.output)
    return 0


def _cover_diagnostics(system) -> dict:
    model = system.model
    m = system.arity
    covered = []
    uncovered = []
    if 0 < m <= model.size:
        subs, _ = subset_ranks(model.size, m)
        for s in subs:
            pts = tuple(model.points[i] for i in s)
            target = covered if any(covers(f, pts) for f in system.families) else uncovered
            target.append([label_str(p) for p in pts])
    return {
        "covered": covered,
        "covered_count": len(covered),
        "uncovered_count": len(uncovered),
    }


def cmd_chains(args: argparse.Namespace) -> int:
    _require_json(args)
    if args.action == "derive":
        model = read_model(_load(args.input))
        system = derive_nice_family(model, args.n)
        _emit(dumps(write_system(system)), args.output)
        return 0
    system = read_system(_load(args.input))
    if args.action == "check-nice":
        verdict = is_nice(system)
        result = {
            "nice": verdict.ok,
            "witness": jsonable(verdict.witness),
            "components": chain_classes(system),
            "cover": _cover_diagnostics(system),
        }
        _emit(_report(args, result), args.output)
        return 0 if verdict.ok else 1
    # build
    try:
        built = build_selection_from_nice(system)
    except NotNice as exc:
        verdict = is_nice(system)
        result = {"built": False, "witness": jsonable(verdict.witness), "error": str(exc)}
        _emit(_report(args, result), args.output)
        return 1
    result = {
        "built": True,
        "values": [
            {"subset": [label_str(p) for p in pts], "pick": label_str(v)}
            for pts, v in built.values.items()
        ],
        "uncovered": [[label_str(p) for p in pts] for pts in built.uncovered],
        "bases": [list(b) for b in built.bases],
        "components": [list(c) for c in built.components],
    }
    _emit(_report(args, result), args.output)
    return 0


def cmd_model(args: argparse.Namespace) -> int:
    _require_json(args)
    model = read_model(_load(args.input))
    verdict = check_continuity(model)
    result = {"continuous": verdict.ok, "witness": jsonable(verdict.witness)}
    _emit(_report(args, result), args.output)
    return 0 if verdict.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypersel",
        description="Finite selection structures: enumeration, divisibility "
        "obstructions, arity extension, and interval-model continuity checks.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="work budget for searches and enumeration")
    common.add_argument("--seed", type=int, default=0,
                        help="seed recorded in reports for reproducibility")
    common.add_argument("--format", choices=("json", "tsv"), default=None,
                        help="output rendering; defaults to json, except the "
                        "obstruct table which defaults to tsv")
    common.add_argument("--output", default=None, help="write here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common],
                       help="list selection structures on m elements at arity n")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--iso", action="store_true",
                   help="one canonical representative per isomorphism class")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("obstruct", parents=[common],
                       help="divisibility-obstruction table for prime arities")
    p.add_argument("max_m", type=int)
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("extend", parents=[common],
                       help="extend an up-to-k selection document to arity m")
    p.add_argument("input", help="partial-selection document")
    p.add_argument("m", type=int)
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("chains", parents=[common],
                       help="family-system niceness, building, and derivation")
    p.add_argument("action", choices=("check-nice", "build", "derive"))
    p.add_argument("input", help="system document (model document for derive)")
    p.add_argument("n", type=int, nargs="?", default=2,
                   help="relation arity for derive (even)")
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("model", parents=[common],
                       help="interval-model checks")
    p.add_argument("action", choices=("check-continuity",))
    p.add_argument("input", help="model document")
    p.set_defaults(func=cmd_model)
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "tsv" if args.command == "obstruct" else "json"
    if args.budget <= 0:
        print("hypersel: budget must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"hypersel: budget exceeded: {exc}", file=sys.stderr)
        return 2
    except NonBijectiveTransfer as exc:
        print(f"hypersel: {exc}", file=sys.stderr)
        return 2
    except (DocumentError, HyperselError, ValueError) as exc:
        print(f"hypersel: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
