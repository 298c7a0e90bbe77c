"""Architectural slicing in two steps.

1. :func:`slice_graph` collects every SADG vertex reachable from the
   criterion's interfaces.
2. :func:`project_slice` maps that vertex set back onto the description,
   keeping only the elements, interfaces and attachments it touches.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Hashable, Iterable, Literal, Mapping, TypeVar

from .flow import FLOW_RE, NO_FLOW
from .model import (
    AcmeError,
    ArchDescription,
    AttachmentsGroup,
    Element,
    IfaceKind,
    InterfaceRef,
    Property,
    error,
)
from .sadg import SADG, DependenceArc, Vertex, build_sadg

SliceDirection = Literal["backward", "forward"]
DIRECTIONS: tuple[str, ...] = ("backward", "forward")

T = TypeVar("T", bound=Hashable)


class CriterionError(AcmeError):
    pass


@dataclass(frozen=True)
class SliceCriterion:
    element: str
    kind: IfaceKind
    ifaces: tuple[str, ...]

    @property
    def seed(self) -> frozenset[Vertex]:
        return frozenset(InterfaceRef(self.element, i, self.kind) for i in self.ifaces)


@dataclass(frozen=True)
class GraphSlice:
    seed: frozenset[Vertex]
    vertices: frozenset[Vertex]
    arcs: frozenset[DependenceArc]
    direction: SliceDirection = "backward"


def _bad(message: str) -> CriterionError:
    return CriterionError([error("bad-criterion", message)])


def resolve_criterion(
    desc: ArchDescription, element: str, ifaces: Iterable[str]
) -> SliceCriterion:
    """Check ``(element, ifaces)`` against ``desc``.

    Raises CriterionError naming the first identifier that does not resolve.
    Interface names keep their given order with duplicates dropped.
    """
    names = list(dict.fromkeys(ifaces))
    elem = desc.element(element)
    if elem is None:
        raise _bad(f"no component or connector named '{element}'")
    if not names:
        raise _bad(f"criterion on '{element}' names no interfaces")
    for name in names:
        if elem.interface(name) is None:
            raise _bad(f"'{element}' has no {elem.iface_kind.value} named '{name}'")
    return SliceCriterion(element, elem.iface_kind, tuple(names))


def reachable(successors: Mapping[T, Iterable[T]], seed: Iterable[T]) -> set[T]:
    """Reflexive-transitive closure of ``seed`` under ``successors``."""
    seen = set(seed)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in successors.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def slice_graph(
    g: SADG, criterion: SliceCriterion, direction: SliceDirection = "backward"
) -> GraphSlice:
    """Vertices the criterion depends on (backward) or that depend on it (forward)."""
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be 'backward' or 'forward', not {direction!r}")
    seed = criterion.seed
    missing = seed - g.vertices
    if missing:
        raise _bad(f"criterion vertices not in graph: {sorted(v.label for v in missing)}")
    step = g.successors if direction == "backward" else g.predecessors
    vertices = frozenset(reachable(step, seed))
    arcs = frozenset(a for a in g.arcs if a.source in vertices and a.target in vertices)
    return GraphSlice(seed, vertices, arcs, direction)


def _is_flow_decl(prop: Property) -> bool:
    return (
        prop.name.startswith("flow")
        and isinstance(prop.value, str)
        and (FLOW_RE.match(prop.value) is not None or prop.value.strip() == NO_FLOW)
    )


def _project_properties(elem: Element, kept: set[str]) -> tuple[Property, ...]:
    """Element properties minus flow declarations that name dropped interfaces.

    If that strips every flow declaration, a ``"none"`` marker keeps the
    element in explicit-flow mode so no default flows appear.
    """
    props = []
    for prop in elem.properties:
        m = FLOW_RE.match(prop.value) if _is_flow_decl(prop) else None
        if m and not (m.group(1) in kept and m.group(2) in kept):
            continue
        props.append(prop)
    if any(map(_is_flow_decl, elem.properties)) and not any(map(_is_flow_decl, props)):
        taken = {p.name for p in props}
        name, n = "flow", 1
        while name in taken:
            n += 1
            name = f"flow{n}"
        props.append(Property(name, NO_FLOW, "string"))
    return tuple(props)


def _project_element(elem: Element, vertices: frozenset[Vertex]) -> Element | None:
    kept = [i for i in elem.interfaces if InterfaceRef(elem.name, i.name, i.kind) in vertices]
    if not kept:
        return None
    props = _project_properties(elem, {i.name for i in kept})
    if elem.iface_kind is IfaceKind.PORT:
        return replace(elem, ports=tuple(kept), properties=props)
    return replace(elem, roles=tuple(kept), properties=props)


def project_slice(desc: ArchDescription, s: GraphSlice) -> ArchDescription:
    """The sub-description induced by the vertices of ``s``.

    Elements survive with the interfaces in the slice; attachments survive
    when both ends do; attachments groups survive when non-empty.
    Declaration order is kept.
    """
    components = [c for c in (_project_element(c, s.vertices) for c in desc.components) if c]
    connectors = [c for c in (_project_element(c, s.vertices) for c in desc.connectors) if c]
    groups = []
    for group in desc.attachments_groups:
        atts = [
            a
            for a in group.attachments
            if InterfaceRef(a.component, a.port, IfaceKind.PORT) in s.vertices
            and InterfaceRef(a.connector, a.role, IfaceKind.ROLE) in s.vertices
        ]
        if atts:
            groups.append(AttachmentsGroup(group.name, atts, loc=group.loc))
    return replace(
        desc, components=tuple(components), connectors=tuple(connectors), attachments_groups=tuple(groups)
    )


def slice_architecture(
    desc: ArchDescription,
    element: str,
    ifaces: Iterable[str],
    direction: SliceDirection = "backward",
) -> tuple[GraphSlice, ArchDescription]:
    """Resolve the criterion, build the SADG, slice it and project the result."""
    criterion = resolve_criterion(desc, element, ifaces)
    g = build_sadg(desc)
    s = slice_graph(g, criterion, direction)
    return s, project_slice(desc, s)

