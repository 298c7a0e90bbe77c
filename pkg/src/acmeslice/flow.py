"""Information flow between ports and roles.

Flow direction is read from properties:

* ``direction : string = "in" | "out" | "inout"`` on a port or role.
  Missing means ``inout``, which over-approximates flow.
* ``flow... : string = "a -> b"`` on a component or connector (any property
  whose name starts with ``flow``) replaces the default internal flows of
  that element with exactly the listed ones. The value ``"none"`` declares
  explicit mode without adding an edge.

Directions are relative to the element owning the interface: a port marked
``out`` emits data, a role marked ``in`` receives data from the attached port.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from .model import (
    AcmeError,
    ArchDescription,
    Attachment,
    Diagnostic,
    Element,
    IfaceKind,
    Interface,
    InterfaceRef,
    ValidationError,
    error,
    find_property,
    warning,
)
from .validate import errors_only, validate

FLOW_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*->\s*([A-Za-z_][A-Za-z0-9_]*)\s*\Z")
NO_FLOW = "none"


class FlowError(AcmeError):
    pass


class Direction(str, enum.Enum):
    IN = "in"
    OUT = "out"
    INOUT = "inout"

    @property
    def receives(self) -> bool:
        return self is not Direction.OUT

    @property
    def emits(self) -> bool:
        return self is not Direction.IN


@dataclass(frozen=True, order=True)
class FlowEdge:
    source: InterfaceRef
    sink: InterfaceRef

    def __post_init__(self) -> None:
        if self.source == self.sink:
            raise ValueError(f"flow edge from {self.source} to itself")

    def __str__(self) -> str:
        return f"{self.source} -> {self.sink}"


@dataclass(frozen=True)
class FlowRelation:
    edges: frozenset[FlowEdge] = frozenset()
    warnings: tuple[Diagnostic, ...] = field(default=(), compare=False)


def _ref(elem: Element, iface: Interface) -> InterfaceRef:
    return InterfaceRef(elem.name, iface.name, iface.kind)


def _direction_diag(elem: Element, iface: Interface) -> tuple[Direction, Diagnostic | None]:
    prop = find_property(iface.properties, "direction")
    if prop is None:
        return Direction.INOUT, None
    if isinstance(prop.value, str):
        try:
            return Direction(prop.value), None
        except ValueError:
            pass
    diag = error(
        "bad-direction",
        f"{iface.kind.value} {elem.name}.{iface.name}: direction must be "
        f'"in", "out" or "inout", got {prop.value!r}',
        prop.loc or iface.loc,
    )
    return Direction.INOUT, diag


def resolve_direction(elem: Element, iface: Interface) -> Direction:
    """Direction of ``iface`` from its ``direction`` property (default inout)."""
    direction, diag = _direction_diag(elem, iface)
    if diag is not None:
        raise FlowError([diag])
    return direction


def attachment_flows(
    desc: ArchDescription, att: Attachment, warnings: list[Diagnostic] | None = None
) -> set[FlowEdge]:
    """Flow edges across one attachment.

    The port's direction alone decides the edges. The role's direction is
    only checked for agreement; disagreements are appended to ``warnings``.
    """
    comp = desc.component(att.component)
    conn = desc.connector(att.connector)
    port = comp.interface(att.port)
    role = conn.interface(att.role)
    if port is None or role is None:
        raise ValidationError([error("dangling-ref", f"{att}: unresolved reference", att.loc)])
    port_dir = resolve_direction(comp, port)
    role_dir = resolve_direction(conn, role)
    p, r = _ref(comp, port), _ref(conn, role)

    edges = set()
    if port_dir.emits:
        edges.add(FlowEdge(p, r))
    if port_dir.receives:
        edges.add(FlowEdge(r, p))

    if warnings is not None and Direction.INOUT not in (port_dir, role_dir) and port_dir == role_dir:
        warnings.append(
            warning(
                "flow-mismatch",
                f"{att}: port is '{port_dir.value}' and role is '{role_dir.value}'; "
                f"using the port direction",
                att.loc,
            )
        )
    return edges


def flow_properties(elem: Element) -> list[tuple[str, str] | None]:
    """Explicit flow declarations of ``elem``.

    Each entry is a ``(source, sink)`` name pair, or None for a ``"none"``
    marker. An empty list means the element uses default flows.
    """
    found: list[tuple[str, str] | None] = []
    for prop in elem.properties:
        if not prop.name.startswith("flow") or not isinstance(prop.value, str):
            continue
        if prop.value.strip() == NO_FLOW:
            found.append(None)
            continue
        m = FLOW_RE.match(prop.value)
        if m:
            found.append((m.group(1), m.group(2)))
    return found


def _internal_flows(elem: Element, errors: list[Diagnostic]) -> set[FlowEdge]:
    declared = flow_properties(elem)
    if declared:
        edges = set()
        for prop in elem.properties:
            if not prop.name.startswith("flow") or not isinstance(prop.value, str):
                continue
            m = FLOW_RE.match(prop.value)
            if not m:
                continue
            src, dst = elem.interface(m.group(1)), elem.interface(m.group(2))
            missing = [n for n, i in ((m.group(1), src), (m.group(2), dst)) if i is None]
            if missing:
                errors.append(
                    error(
                        "bad-flow",
                        f"{elem.name}: flow '{prop.value}' names unknown "
                        f"{elem.iface_kind.value} '{missing[0]}'",
                        prop.loc,
                    )
                )
            elif src is dst:
                errors.append(
                    error("bad-flow", f"{elem.name}: flow '{prop.value}' is a self-loop", prop.loc)
                )
            else:
                edges.add(FlowEdge(_ref(elem, src), _ref(elem, dst)))
        return edges

    dirs = []
    for iface in elem.interfaces:
        direction, diag = _direction_diag(elem, iface)
        if diag is not None:
            errors.append(diag)
        dirs.append((iface, direction))
    return {
        FlowEdge(_ref(elem, i), _ref(elem, o))
        for i, di in dirs
        if di.receives
        for o, do in dirs
        if do.emits and i is not o
    }


def internal_flows(elem: Element) -> set[FlowEdge]:
    """Flows from input interfaces to output interfaces inside one element.

    Explicit ``flow`` properties win; otherwise every receiving interface
    feeds every emitting one.
    """
    errors: list[Diagnostic] = []
    edges = _internal_flows(elem, errors)
    if errors:
        raise FlowError(errors)
    return edges


def check_flows(desc: ArchDescription) -> list[Diagnostic]:
    """All flow diagnostics for ``desc``, errors and warnings alike."""
    try:
        relation = build_flow_relation(desc)
    except AcmeError as exc:
        return list(exc.diagnostics)
    return list(relation.warnings)


def build_flow_relation(desc: ArchDescription) -> FlowRelation:
    """Union of attachment and internal flows over the whole description.

    Raises ValidationError if ``desc`` has referential errors and FlowError
    if any direction or flow property is malformed.
    """
    invalid = errors_only(validate(desc))
    if invalid:
        raise ValidationError(invalid)

    errors: list[Diagnostic] = []
    warnings: list[Diagnostic] = []
    edges: set[FlowEdge] = set()
    for elem in desc.elements:
        # surfaces bad directions on interfaces that no attachment touches
        for iface in elem.interfaces:
            _, diag = _direction_diag(elem, iface)
            if diag is not None and diag not in errors:
                errors.append(diag)
        internal_errors: list[Diagnostic] = []
        edges |= _internal_flows(elem, internal_errors)
        errors += [d for d in internal_errors if d not in errors]
    if errors:
        raise FlowError(errors)
    for att in desc.attachments:
        edges |= attachment_flows(desc, att, warnings)
    return FlowRelation(frozenset(edges), tuple(warnings))
