"""Instance files: ``{"type": "cycle", "sizes": [...]}`` or ``{"type": "graph", ...}``."""

from __future__ import annotations

import json
from pathlib import Path

from .model import CycleInstance, GraphInstance, InstanceError, format_rational, parse_rational


def instance_to_json(instance) -> dict:
    if isinstance(instance, CycleInstance):
        return {"type": "cycle", "sizes": [format_rational(s) for s in instance.sizes]}
    return {
        "type": "graph",
        "weights": [format_rational(w) for w in instance.weights],
        "edges": [list(e) for e in instance.edges],
    }


def instance_from_json(data) -> CycleInstance | GraphInstance:
    if not isinstance(data, dict):
        raise InstanceError("instance file must hold a JSON object")
    kind = data.get("type")
    try:
        if kind == "cycle":
            return CycleInstance(tuple(parse_rational(s) for s in data["sizes"]))
        if kind == "graph":
            weights = tuple(parse_rational(w) for w in data["weights"])
            return GraphInstance(weights, tuple(tuple(e) for e in data["edges"]))
    except (KeyError, TypeError) as exc:
        raise InstanceError(f"malformed {kind} instance: {exc}") from exc
    raise InstanceError(f"unknown instance type {kind!r}")


def load_instance(path) -> CycleInstance | GraphInstance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path} is not valid JSON: {exc}") from exc
    return instance_from_json(data)


def save_instance(path, instance) -> None:
    Path(path).write_text(json.dumps(instance_to_json(instance)) + "\n")
