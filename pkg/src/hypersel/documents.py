"""JSON document readers and writers.

Schemas:
  selection  {"ground": [label], "n": int,
              "choices": [{"subset": [label], "pick": label}]}
  partial    {"carrier": [label], "mode": "upto"|"exact", "bound": int,
              "choices": [{"subset": [label], "pick": label}]}
  family     {"intervals": [{"lo": "p/q", "hi": "p/q"}]}
  model      {"points": ["p/q"], "selection": <partial>}
  system     {"model": <model>, "families": [<family>]}

Labels are strings; rationals are decimal-free "p/q" strings (writers
always emit the slash form, readers also accept a bare integer).
Readers reject unknown fields.  Writers emit subset labels in carrier
order and choices in subset-rank order, so equal objects serialize to
equal documents.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .chains import FamilySystem
from .errors import DocumentError
from .extension import PartialSelection, make_partial
from .structures import (
    GroundSet,
    SelectionStructure,
    make_selection,
    subset_ranks,
)
from .vietoris import IntervalOpen, ModelSpace, OpenFamily, model_space


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s: Any, where: str = "value") -> Fraction:
    """Accept "p/q" or a bare integer string; anything else (decimals
    included) is rejected."""
    if not isinstance(s, str):
        raise DocumentError(f"{where}: expected a fraction string, got {s!r}")
    parts = s.split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            return Fraction(int(parts[0]), int(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: bad fraction {s!r}") from exc
    raise DocumentError(f"{where}: bad fraction {s!r}")


def label_str(x: Any) -> str:
    if isinstance(x, Fraction):
        return fraction_str(x)
    return str(x)


def jsonable(x: Any) -> Any:
    """Recursive conversion of report payloads to JSON-ready values."""
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(v) for v in x)
    if isinstance(x, Mapping):
        return {label_str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def dumps(doc: Any) -> str:
    """Canonical rendering: sorted keys, two-space indent, one trailing
    newline.  Equal documents give byte-equal text."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _check_fields(doc: Any, required: tuple, where: str) -> None:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: expected an object, got {type(doc).__name__}")
    unknown = set(doc) - set(required)
    if unknown:
        raise DocumentError(f"{where}: unknown fields {sorted(unknown)}")
    missing = set(required) - set(doc)
    if missing:
        raise DocumentError(f"{where}: missing fields {sorted(missing)}")


def _string_list(xs: Any, where: str) -> tuple:
    if not isinstance(xs, list) or not all(isinstance(x, str) for x in xs):
        raise DocumentError(f"{where}: expected a list of strings")
    return tuple(xs)


def _int(x: Any, where: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool):
        raise DocumentError(f"{where}: expected an integer, got {x!r}")
    return x


def _read_choices(doc: Any, where: str) -> dict:
    """Choice records to a {frozenset(subset): pick} table."""
    if not isinstance(doc, list):
        raise DocumentError(f"{where}: expected a list of choice records")
    table: dict = {}
    for i, rec in enumerate(doc):
        here = f"{where}[{i}]"
        _check_fields(rec, ("subset", "pick"), here)
        subset = _string_list(rec["subset"], f"{here}.subset")
        if not isinstance(rec["pick"], str):
            raise DocumentError(f"{here}.pick: expected a string")
        key = frozenset(subset)
        if len(key) != len(subset):
            raise DocumentError(f"{here}.subset: repeated labels")
        if key in table:
            raise DocumentError(f"{here}.subset: duplicate subset")
        table[key] = rec["pick"]
    return table


def _write_choices(carrier: GroundSet, sizes, tables) -> list:
    out = []
    for size in sizes:
        subs, _ = subset_ranks(carrier.size, size)
        for s, p in zip(subs, tables[size]):
            out.append(
                {
                    "subset": [label_str(carrier.labels[i]) for i in s],
                    "pick": label_str(carrier.labels[p]),
                }
            )
    return out


# -- selection structures ------------------------------------------------

def write_selection(s: SelectionStructure) -> dict:
    return {
        "ground": [label_str(x) for x in s.ground.labels],
        "n": s.n,
        "choices": _write_choices(s.ground, (s.n,), {s.n: s.picks}),
    }


def read_selection(doc: Any) -> SelectionStructure:
    _check_fields(doc, ("ground", "n", "choices"), "selection")
    ground = _string_list(doc["ground"], "selection.ground")
    n = _int(doc["n"], "selection.n")
    table = _read_choices(doc["choices"], "selection.choices")
    return make_selection(GroundSet(ground), n, table)


# -- partial selections --------------------------------------------------

def write_partial(p: PartialSelection) -> dict:
    return {
        "carrier": [label_str(x) for x in p.carrier.labels],
        "mode": p.mode,
        "bound": p.bound,
        "choices": _write_choices(p.carrier, p.admissible_sizes(), p.tables),
    }


def read_partial(doc: Any, parse_labels: bool = False) -> PartialSelection:
    """parse_labels converts every label through the fraction parser,
    the form used inside model documents."""
    _check_fields(doc, ("carrier", "mode", "bound", "choices"), "partial")
    carrier = _string_list(doc["carrier"], "partial.carrier")
    mode = doc["mode"]
    if mode not in ("upto", "exact"):
        raise DocumentError(f"partial.mode: expected 'upto' or 'exact', got {mode!r}")
    bound = _int(doc["bound"], "partial.bound")
    table = _read_choices(doc["choices"], "partial.choices")
    if parse_labels:
        carrier = tuple(parse_fraction(x, "partial.carrier") for x in carrier)
        table = {
            frozenset(parse_fraction(x, "partial.choices.subset") for x in k):
                parse_fraction(v, "partial.choices.pick")
            for k, v in table.items()
        }
    return make_partial(GroundSet(carrier), mode, bound, table)


# -- interval families ---------------------------------------------------

def write_family(fam: OpenFamily) -> dict:
    return {
        "intervals": [
            {"lo": fraction_str(u.lo), "hi": fraction_str(u.hi)}
            for u in fam.members
        ]
    }


def read_family(doc: Any) -> OpenFamily:
    _check_fields(doc, ("intervals",), "family")
    if not isinstance(doc["intervals"], list):
        raise DocumentError("family.intervals: expected a list")
    members = []
    for i, rec in enumerate(doc["intervals"]):
        here = f"family.intervals[{i}]"
        _check_fields(rec, ("lo", "hi"), here)
        members.append(
            IntervalOpen(
                parse_fraction(rec["lo"], f"{here}.lo"),
                parse_fraction(rec["hi"], f"{here}.hi"),
            )
        )
    return OpenFamily(tuple(members))


# -- model spaces and family systems --------------------------------------

def write_model(model: ModelSpace) -> dict:
    return {
        "points": [fraction_str(p) for p in model.points],
        "selection": write_partial(model.selection),
    }


def read_model(doc: Any) -> ModelSpace:
    _check_fields(doc, ("points", "selection"), "model")
    raw = _string_list(doc["points"], "model.points")
    points = tuple(parse_fraction(p, "model.points") for p in raw)
    selection = read_partial(doc["selection"], parse_labels=True)
    return model_space(points, selection)


def write_system(system: FamilySystem) -> dict:
    return {
        "model": write_model(system.model),
        "families": [write_family(f) for f in system.families],
    }


def read_system(doc: Any) -> FamilySystem:
    _check_fields(doc, ("model", "families"), "system")
    model = read_model(doc["model"])
    if not isinstance(doc["families"], list):
        raise DocumentError("system.families: expected a list")
    fams = tuple(read_family(f) for f in doc["families"])
    return FamilySystem(fams, model)
