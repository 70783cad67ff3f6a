"""JSON formats for set systems, matrices, and graphs, plus the
obstruction cache.

Set system: {"ground": ["a","b"], "feasible": [[], ["a","b"]]}
Matrix:     {"labels": ["1","2"], "rows": ["01","10"]}
Graph:      {"vertices": ["a","b"], "edges": [["a","b"]], "loops": []}
Graphs also parse from a one-line edge list such as "a-b, b-c, d, c-c"
(lone name: isolated vertex; x-x: loop at x).

Serialization uses canonical storage order so identical values produce
identical bytes.
"""

from __future__ import annotations

import hashlib
import importlib.resources
import json
from pathlib import Path
from typing import Any

from .gf2 import SymmetricBinaryMatrix
from .graphs import LoopedSimpleGraph
from .setsystem import SetSystem


def set_system_to_dict(system: SetSystem) -> dict[str, Any]:
    return {
        "ground": list(system.labels),
        "feasible": [list(fs) for fs in system.feasible_sets()],
    }


def set_system_from_dict(data: dict[str, Any]) -> SetSystem:
    return SetSystem.from_sets(data["ground"], data["feasible"])


def matrix_to_dict(matrix: SymmetricBinaryMatrix) -> dict[str, Any]:
    n = matrix.size
    return {
        "labels": list(matrix.labels),
        "rows": ["".join(str(r >> j & 1) for j in range(n)) for r in matrix.rows],
    }


def matrix_from_dict(data: dict[str, Any]) -> SymmetricBinaryMatrix:
    labels = data["labels"]
    entries = [[int(c) for c in row] for row in data["rows"]]
    return SymmetricBinaryMatrix.from_entries(labels, entries)


def graph_to_dict(graph: LoopedSimpleGraph) -> dict[str, Any]:
    return {
        "vertices": list(graph.labels),
        "edges": [[u, v] for u, v in graph.edges()],
        "loops": [lab for i, lab in enumerate(graph.labels) if graph.loops >> i & 1],
    }


def graph_from_dict(data: dict[str, Any]) -> LoopedSimpleGraph:
    return LoopedSimpleGraph.from_edges(
        data["vertices"],
        [tuple(e) for e in data.get("edges", [])],
        data.get("loops", []),
    )


def graph_from_edge_text(text: str) -> LoopedSimpleGraph:
    """Parse "a-b, b-c, d, c-c": edges, isolated vertices, loops."""
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    loops: list[str] = []

    def note(v: str) -> None:
        if v not in vertices:
            vertices.append(v)

    for token in text.replace(",", " ").split():
        if "-" in token:
            u, v = token.split("-", 1)
            note(u)
            note(v)
            if u == v:
                loops.append(u)
            else:
                edges.append((u, v))
        else:
            note(token)
    return LoopedSimpleGraph.from_edges(vertices, edges, loops)


def dumps(obj: SetSystem | SymmetricBinaryMatrix | LoopedSimpleGraph) -> str:
    if isinstance(obj, SetSystem):
        data = set_system_to_dict(obj)
    elif isinstance(obj, SymmetricBinaryMatrix):
        data = matrix_to_dict(obj)
    elif isinstance(obj, LoopedSimpleGraph):
        data = graph_to_dict(obj)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(data, separators=(", ", ": "))


def loads(text: str):
    """Parse any of the three JSON payloads (or an edge-list line)."""
    text = text.strip()
    if not text.startswith("{"):
        return graph_from_edge_text(text)
    data = json.loads(text)
    if "ground" in data:
        return set_system_from_dict(data)
    if "rows" in data:
        return matrix_from_dict(data)
    if "vertices" in data:
        return graph_from_dict(data)
    raise ValueError("unrecognized payload: expected ground/rows/vertices keys")


# ----------------------------------------------------------------------
# circle-obstruction cache

_CACHE_RESOURCE = "circle_obstructions.json"


def _cache_digest(payload: dict[str, Any]) -> str:
    body = json.dumps({"max_n": payload["max_n"], "graphs": payload["graphs"]},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


def write_obstruction_cache(path: Path, graphs, max_n: int = 8) -> None:
    payload: dict[str, Any] = {
        "max_n": max_n,
        "graphs": [graph_to_dict(g) for g in graphs],
    }
    payload["sha256"] = _cache_digest(payload)
    path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")


def load_obstruction_cache(path: Path | None = None) -> tuple[LoopedSimpleGraph, ...]:
    """Load the derived circle obstructions; the checksum guards against
    hand edits."""
    if path is None:
        ref = importlib.resources.files("deltamatroids") / "_data" / _CACHE_RESOURCE
        text = ref.read_text()
    else:
        text = Path(path).read_text()
    payload = json.loads(text)
    if payload.get("sha256") != _cache_digest(payload):
        raise ValueError("obstruction cache checksum mismatch")
    return tuple(graph_from_dict(d) for d in payload["graphs"])
