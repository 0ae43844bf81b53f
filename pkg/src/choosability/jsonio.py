"""JSON wire formats used by the CLI and the file-based workflows.

Graph:      {"n": int, "edges": [[u, v], ...]}
Lists:      {"lists": {"<vertex>": [colors...], ...}}  (+ optional "n" for paths)
Assignment: {"choice": {"<vertex>": [colors...], ...}}
Verdict:    {"holds": bool, "mode": str, "counterexample": lists|null,
             "witness": choice|null}  (+ trials/seed when sampled)
Trace:      {"x": "5/2", "level": 1, "variant": "ch",
             "steps": [{"kind": "vertex", "v": 7},
                       {"kind": "handle", "handle_kind": "plain",
                        "path": [...], "interior": [...], "extra": {}}, ...],
             "core": [...]}

Vertex ids in traces are original-graph ids throughout.  `--x` style
fraction strings accept only "NUM" or "NUM/DEN"; decimals are rejected to
keep the arithmetic exact.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .core import HandleDescriptor, ReductionStep, ReductionTrace
from .errors import InputError
from .graph import Graph, build_graph
from .listcolor import Verdict

_FRACTION_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_fraction(text: str) -> Fraction:
    """Exact fraction from 'NUM' or 'NUM/DEN'; anything else is rejected."""
    text = text.strip()
    if not _FRACTION_RE.match(text):
        raise InputError(f"not an exact fraction: {text!r} (use NUM or NUM/DEN)")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise InputError("zero denominator")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges]}


def graph_from_json(data) -> Graph:
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph JSON: {exc}") from exc
    return build_graph(n, edges)


def lists_to_json(lists, n: int | None = None) -> dict:
    out = {"lists": {str(v): sorted(cs) for v, cs in sorted(lists.items())}}
    if n is not None:
        out["n"] = n
    return out


def lists_from_json(data) -> dict[int, frozenset[int]]:
    try:
        return {int(v): frozenset(int(c) for c in cs) for v, cs in data["lists"].items()}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed lists JSON: {exc}") from exc


def choice_to_json(choice) -> dict:
    return {"choice": {str(v): sorted(cs) for v, cs in sorted(choice.items())}}


def choice_from_json(data) -> dict[int, frozenset[int]]:
    try:
        return {int(v): frozenset(int(c) for c in cs) for v, cs in data["choice"].items()}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed assignment JSON: {exc}") from exc


def verdict_to_json(v: Verdict) -> dict:
    out = {
        "holds": v.holds,
        "mode": v.mode,
        "counterexample": lists_to_json(v.counterexample) if v.counterexample is not None else None,
        "witness": choice_to_json(v.witness) if v.witness is not None else None,
    }
    if v.mode == "sampled":
        out["trials"] = v.trials
        out["seed"] = v.seed
    return out


def _step_to_json(step: ReductionStep) -> dict:
    if step.kind == "vertex":
        return {"kind": "vertex", "v": step.vertex}
    h = step.handle
    extra = {}
    if h.before is not None:
        extra["before"] = h.before
    if h.after is not None:
        extra["after"] = h.after
    if h.witness is not None:
        extra["witness"] = list(h.witness)
    return {"kind": "handle", "handle_kind": h.kind, "path": list(h.path),
            "interior": list(h.interior), "extra": extra}


def _step_from_json(data) -> ReductionStep:
    kind = data.get("kind")
    if kind == "vertex":
        return ReductionStep("vertex", vertex=int(data["v"]))
    if kind == "handle":
        extra = data.get("extra") or {}
        h = HandleDescriptor(
            kind=data["handle_kind"],
            path=tuple(int(v) for v in data["path"]),
            before=extra.get("before"),
            after=extra.get("after"),
            witness=tuple(extra["witness"]) if "witness" in extra else None,
        )
        declared = [int(v) for v in data.get("interior", [])]
        if declared != list(h.interior):
            raise InputError("trace step interior does not match its path")
        return ReductionStep("handle", handle=h)
    raise InputError(f"unknown trace step kind {kind!r}")


def trace_to_json(trace: ReductionTrace) -> dict:
    return {
        "x": format_fraction(trace.x),
        "level": trace.level,
        "variant": trace.variant,
        "steps": [_step_to_json(s) for s in trace.steps],
        "core": list(trace.core),
    }


def trace_from_json(data) -> ReductionTrace:
    try:
        return ReductionTrace(
            x=parse_fraction(str(data["x"])),
            level=int(data["level"]),
            variant=str(data["variant"]),
            steps=tuple(_step_from_json(s) for s in data["steps"]),
            core=tuple(int(v) for v in data["core"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed trace JSON: {exc}") from exc


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def dump_json(data, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")
