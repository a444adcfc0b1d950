"""JSON and CSV serialization for the CLI and fixture files."""

from __future__ import annotations

import json

from .acts import Belief, DiscreteAct
from .engine import BoundResult, PerceivedDistribution


def act_from_record(record: dict) -> tuple:
    """Parse {states, values, masses} into an act and a belief."""
    act = DiscreteAct(record["states"], record["values"])
    belief = Belief(record["masses"])
    if len(act) != len(belief):
        raise ValueError("values and masses must have the same length")
    return act, belief


def act_to_record(act: DiscreteAct, belief: Belief) -> dict:
    return {
        "states": list(act.state_ids),
        "values": list(act.values),
        "masses": list(belief.masses),
    }


def load_act(path: str) -> tuple:
    with open(path, "r", encoding="utf-8") as fh:
        return act_from_record(json.load(fh))


def bound_to_record(result: BoundResult) -> dict:
    return {
        "kind": result.kind,
        "cutoffs": list(result.cutoffs.cuts),
        "bound_values": list(result.bound_values),
        "value": result.value,
        "exact": result.exact,
    }


def perceived_to_record(dist: PerceivedDistribution) -> dict:
    return {"support": list(dist.support), "masses": list(dist.masses)}


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


def format_number(x) -> str:
    """Decimal text with 15 significant digits and a '.' separator."""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int,)):
        return str(x)
    if x is None:
        return ""
    return f"{x:.15g}"


def write_csv(rows, header, path=None) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(
            cell if isinstance(cell, str) else format_number(cell) for cell in row
        ))
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
