"""Software architectural dependence graph (SADG).

Vertices are the ports and roles of a description. Arcs point from the
dependent interface to the one it depends on, i.e. against the flow of
data: a flow ``s -> t`` becomes the arc ``(t, s)``. Following arcs forward
therefore walks upstream, which is what a backward slice needs.
"""

from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .flow import FlowEdge, build_flow_relation
from .model import ArchDescription, Diagnostic, IfaceKind, InterfaceRef, iface_refs

Vertex = InterfaceRef


class ArcKind(str, enum.Enum):
    COMPONENT_CONNECTOR = "component-connector"
    CONNECTOR_COMPONENT = "connector-component"
    ADDITIONAL = "additional"


@dataclass(frozen=True, order=True)
class DependenceArc:
    source: Vertex  # the dependent
    target: Vertex  # the depended-on
    kind: ArcKind

    def __str__(self) -> str:
        return f"{self.source} -> {self.target} [{self.kind.value}]"


def arc_kind(dependent: Vertex, depended: Vertex) -> ArcKind:
    if dependent.owner == depended.owner:
        return ArcKind.ADDITIONAL
    if dependent.kind is IfaceKind.PORT and depended.kind is IfaceKind.ROLE:
        return ArcKind.COMPONENT_CONNECTOR
    if dependent.kind is IfaceKind.ROLE and depended.kind is IfaceKind.PORT:
        return ArcKind.CONNECTOR_COMPONENT
    raise ValueError(f"no arc kind for {dependent} -> {depended}")


def arc_from_flow(edge: FlowEdge) -> DependenceArc:
    return DependenceArc(edge.sink, edge.source, arc_kind(edge.sink, edge.source))


def check_arc(arc: DependenceArc) -> bool:
    """Endpoint typing required by the arc's kind."""
    s, t = arc.source, arc.target
    if s == t:
        return False
    if arc.kind is ArcKind.COMPONENT_CONNECTOR:
        return s.kind is IfaceKind.PORT and t.kind is IfaceKind.ROLE
    if arc.kind is ArcKind.CONNECTOR_COMPONENT:
        return s.kind is IfaceKind.ROLE and t.kind is IfaceKind.PORT
    return s.owner == t.owner and s.kind is t.kind


@dataclass(frozen=True)
class SADG:
    vertices: frozenset[Vertex]
    arcs: frozenset[DependenceArc]
    description: ArchDescription = field(compare=False, repr=False)
    warnings: tuple[Diagnostic, ...] = field(default=(), compare=False, repr=False)

    @cached_property
    def vertex_order(self) -> tuple[Vertex, ...]:
        """Vertices in declaration order of the description."""
        order = [v for v in iface_refs(self.description) if v in self.vertices]
        extra = sorted(self.vertices.difference(order))
        return tuple(order + extra)

    @cached_property
    def successors(self) -> dict[Vertex, tuple[Vertex, ...]]:
        """Depended-on vertices of each vertex."""
        return _adjacency((a.source, a.target) for a in self.arcs)

    @cached_property
    def predecessors(self) -> dict[Vertex, tuple[Vertex, ...]]:
        """Dependent vertices of each vertex."""
        return _adjacency((a.target, a.source) for a in self.arcs)

    def vertex(self, owner: str, name: str) -> Vertex | None:
        for v in self.vertices:
            if v.owner == owner and v.name == name:
                return v
        return None


def _adjacency(pairs: Iterable[tuple[Vertex, Vertex]]) -> dict[Vertex, tuple[Vertex, ...]]:
    adj: dict[Vertex, list[Vertex]] = defaultdict(list)
    for a, b in pairs:
        adj[a].append(b)
    return {k: tuple(sorted(v)) for k, v in adj.items()}


def build_sadg(desc: ArchDescription) -> SADG:
    """Build the dependence graph of ``desc``.

    Raises ValidationError or FlowError when ``desc`` is not analysable.
    """
    relation = build_flow_relation(desc)
    vertices = frozenset(iface_refs(desc))
    arcs = frozenset(arc_from_flow(e) for e in relation.edges)
    return SADG(vertices, arcs, desc, relation.warnings)


# -- export ------------------------------------------------------------

_ARC_STYLE = {
    ArcKind.COMPONENT_CONNECTOR: "bold",
    ArcKind.CONNECTOR_COMPONENT: '"bold,dashed"',
    ArcKind.ADDITIONAL: "dashed",
}


def _arc_sort_key(arc: DependenceArc) -> tuple[str, str, str]:
    return (arc.source.label, arc.target.label, arc.kind.value)


def emit_dot(g: SADG, highlight: Iterable[Vertex] | None = None) -> str:
    """Render ``g`` as a Graphviz digraph.

    Ports are boxes and roles ellipses, grouped in one cluster per owning
    element. Highlighted vertices are filled.
    """
    marked = frozenset(highlight or ())
    unknown = marked - g.vertices
    if unknown:
        raise ValueError(f"highlighted vertices not in graph: {sorted(v.label for v in unknown)}")

    lines = ["digraph sadg {"]
    by_owner: dict[str, list[Vertex]] = {}
    for v in g.vertex_order:
        by_owner.setdefault(v.owner, []).append(v)
    for owner, verts in by_owner.items():
        lines.append(f'    subgraph "cluster_{owner}" {{')
        lines.append(f'        label="{owner}";')
        for v in verts:
            shape = "box" if v.kind is IfaceKind.PORT else "ellipse"
            attrs = f'shape={shape}, label="{v.name}"'
            if v in marked:
                attrs += ', style=filled, fillcolor="lightblue"'
            lines.append(f'        "{v.label}" [{attrs}];')
        lines.append("    }")
    for arc in sorted(g.arcs, key=_arc_sort_key):
        lines.append(f'    "{arc.source.label}" -> "{arc.target.label}" [style={_ARC_STYLE[arc.kind]}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_dict(g: SADG) -> dict:
    vertices = sorted(g.vertices, key=lambda v: (v.owner, v.name, v.kind.value))
    return {
        "vertices": [
            {"kind": f"{v.kind.value}-vertex", "owner": v.owner, "iface": v.name} for v in vertices
        ],
        "arcs": [
            {"from": a.source.label, "to": a.target.label, "kind": a.kind.value}
            for a in sorted(g.arcs, key=_arc_sort_key)
        ],
    }


def emit_json(g: SADG) -> str:
    """Compact, sorted JSON: ``{"vertices":[...],"arcs":[...]}``."""
    return json.dumps(graph_dict(g), separators=(",", ":"))
