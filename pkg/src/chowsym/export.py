"""
Serialize orbit graphs as Graphviz DOT or JSON.

Output is byte-for-byte deterministic.  DOT places orbits of equal
codimension on one rank row, deepest row at the top.  Edge styling is
solid within a stratum and dashed across strata.  This is a computed
convention and does not reproduce hand-drawn figure styling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .orbit_poset import Edge, Orbit, OrbitGraph
from .perm_core import Involution

__all__ = ["GraphDocument", "export_dot", "export_json", "graph_from_json", "JSON_SCHEMA_VERSION"]

JSON_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GraphDocument:
    format: str
    payload: bytes

    def text(self) -> str:
        return self.payload.decode("utf-8")


def export_dot(g: OrbitGraph, *, same_stratum_style: str = "solid",
               cross_stratum_style: str = "dashed", name: str | None = None) -> GraphDocument:
    name = name or f"orbits_gl{2 * g.n}{'_fpf' if g.fpf_only else ''}"
    lines = [f"digraph {name} {{",
             "  rankdir=TB;",
             '  node [shape=plaintext, fontname="Helvetica"];']
    for codim, row in sorted(g.by_codim().items(), reverse=True):
        ids = " ".join(f'"{o.label}";' for o in row)
        lines.append(f"  {{ rank=same; {ids} }}  // codim {codim}")
    for o in g.vertices:
        lines.append(f'  "{o.label}" [tooltip="codim {o.codim}, stratum {o.stratum}"];')
    for e in g.edges:
        style = cross_stratum_style if e.cross_stratum else same_stratum_style
        lines.append(f'  "O_{e.source.cycle_notation()}" -> "O_{e.target.cycle_notation()}" '
                     f"[style={style}];")
    lines.append("}")
    return GraphDocument("dot", ("\n".join(lines) + "\n").encode("utf-8"))


def export_json(g: OrbitGraph) -> GraphDocument:
    vertices = sorted(g.vertices, key=lambda o: (o.codim, o.w.images))
    edges = sorted(g.edges, key=lambda e: (e.source.images, e.target.images))
    doc = {
        "schema_version": JSON_SCHEMA_VERSION,
        "n": g.n,
        "fpf_only": g.fpf_only,
        "vertices": [{"one_line": list(o.w.images), "cycles": o.w.cycle_notation(),
                      "codim": o.codim, "stratum": o.stratum, "fpf": o.fpf}
                     for o in vertices],
        "edges": [{"source": list(e.source.images), "target": list(e.target.images),
                   "cross_stratum": e.cross_stratum} for e in edges],
    }
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return GraphDocument("json", text.encode("utf-8"))


def graph_from_json(data: str | bytes) -> OrbitGraph:
    doc = json.loads(data)
    vertices = tuple(Orbit(Involution(tuple(v["one_line"])), v["codim"], v["fpf"], v["stratum"])
                     for v in doc["vertices"])
    edges = tuple(Edge(Involution(tuple(e["source"])), Involution(tuple(e["target"])),
                       e["cross_stratum"]) for e in doc["edges"])
    return OrbitGraph(doc["n"], doc["fpf_only"], vertices, edges)
