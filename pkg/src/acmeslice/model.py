"""AST for the ACME subset: systems, components/ports, connectors/roles,
attachments and properties.

All nodes are frozen dataclasses holding tuples, so they are hashable and
safe to share. Source locations ride along for diagnostics but never take
part in equality, which keeps ``parse(emit_text(d)) == d`` meaningful.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Literal, Union

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

PropertyType = Literal["string", "int", "float", "boolean"]
PROPERTY_TYPES: tuple[str, ...] = ("string", "int", "float", "boolean")
Severity = Literal["error", "warning"]


@dataclass(frozen=True, order=True)
class Location:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    location: Location | None = None

    @property
    def is_error(self) -> bool:
        return self.severity == "error"

    def __str__(self) -> str:
        where = f"{self.location}: " if self.location else ""
        return f"{where}{self.severity}[{self.code}]: {self.message}"


def error(code: str, message: str, location: Location | None = None) -> Diagnostic:
    return Diagnostic("error", code, message, location)


def warning(code: str, message: str, location: Location | None = None) -> Diagnostic:
    return Diagnostic("warning", code, message, location)


class AcmeError(Exception):
    """Raised when an operation cannot produce a result.

    ``diagnostics`` holds every error found (at least one).
    """

    def __init__(self, diagnostics: Iterable[Diagnostic]):
        self.diagnostics: tuple[Diagnostic, ...] = tuple(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


class ParseError(AcmeError):
    pass


class ValidationError(AcmeError):
    pass


def is_identifier(text: object) -> bool:
    return isinstance(text, str) and IDENT_RE.match(text) is not None


def _check_ident(text: object, what: str) -> None:
    if not is_identifier(text):
        raise ValueError(f"invalid {what} identifier: {text!r}")


def _check_unique(names: Iterable[str], what: str) -> None:
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise ValueError(f"duplicate {what} name: {name!r}")
        seen.add(name)


def literal_kind(value: object) -> PropertyType:
    """Return the literal kind of a property value."""
    # bool first: bool is a subclass of int
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, int):
        return "int"
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"property value must be finite, got {value!r}")
        return "float"
    if isinstance(value, str):
        return "string"
    raise TypeError(f"unsupported property value: {value!r}")


Value = Union[str, int, float, bool]


@dataclass(frozen=True)
class Property:
    name: str
    value: Value
    ptype: PropertyType | None = None
    # derived; compared so that 1, 1.0 and True stay distinct
    kind: PropertyType = field(init=False)
    loc: Location | None = field(default=None, compare=False, repr=False, kw_only=True)

    def __post_init__(self) -> None:
        _check_ident(self.name, "property")
        if self.ptype is not None and self.ptype not in PROPERTY_TYPES:
            raise ValueError(f"unknown property type: {self.ptype!r}")
        value = self.value
        if self.ptype == "float" and literal_kind(value) == "int":
            value = float(value)
            object.__setattr__(self, "value", value)
        kind = literal_kind(value)
        if self.ptype is not None and kind != self.ptype:
            raise ValueError(
                f"property {self.name!r} declared {self.ptype} but value is {kind}"
            )
        object.__setattr__(self, "kind", kind)


def _props(items: Iterable[Property], owner: str) -> tuple[Property, ...]:
    items = tuple(items)
    _check_unique((p.name for p in items), f"property in {owner}")
    return items


def find_property(properties: Iterable[Property], name: str) -> Property | None:
    for prop in properties:
        if prop.name == name:
            return prop
    return None


class IfaceKind(str, enum.Enum):
    PORT = "port"
    ROLE = "role"


@dataclass(frozen=True)
class Port:
    name: str
    properties: tuple[Property, ...] = ()
    loc: Location | None = field(default=None, compare=False, repr=False, kw_only=True)

    kind = IfaceKind.PORT

    def __post_init__(self) -> None:
        _check_ident(self.name, "port")
        object.__setattr__(self, "properties", _props(self.properties, f"port {self.name}"))


@dataclass(frozen=True)
class Role:
    name: str
    properties: tuple[Property, ...] = ()
    loc: Location | None = field(default=None, compare=False, repr=False, kw_only=True)

    kind = IfaceKind.ROLE

    def __post_init__(self) -> None:
        _check_ident(self.name, "role")
        object.__setattr__(self, "properties", _props(self.properties, f"role {self.name}"))


@dataclass(frozen=True)
class Component:
    name: str
    ports: tuple[Port, ...] = ()
    properties: tuple[Property, ...] = ()
    loc: Location | None = field(default=None, compare=False, repr=False, kw_only=True)

    iface_kind = IfaceKind.PORT

    def __post_init__(self) -> None:
        _check_ident(self.name, "component")
        object.__setattr__(self, "ports", tuple(self.ports))
        _check_unique((p.name for p in self.ports), f"port in component {self.name}")
        object.__setattr__(self, "properties", _props(self.properties, f"component {self.name}"))

    @property
    def interfaces(self) -> tuple[Port, ...]:
        return self.ports

    def interface(self, name: str) -> Port | None:
        for port in self.ports:
            if port.name == name:
                return port
        return None


@dataclass(frozen=True)
class Connector:
    name: str
    roles: tuple[Role, ...] = ()
    properties: tuple[Property, ...] = ()
    loc: Location | None = field(default=None, compare=False, repr=False, kw_only=True)

    iface_kind = IfaceKind.ROLE

    def __post_init__(self) -> None:
        _check_ident(self.name, "connector")
        object.__setattr__(self, "roles", tuple(self.roles))
        _check_unique((r.name for r in self.roles), f"role in connector {self.name}")
        object.__setattr__(self, "properties", _props(self.properties, f"connector {self.name}"))

    @property
    def interfaces(self) -> tuple[Role, ...]:
        return self.roles

    def interface(self, name: str) -> Role | None:
        for role in self.roles:
            if role.name == name:
                return role
        return None


Element = Union[Component, Connector]
Interface = Union[Port, Role]


@dataclass(frozen=True)
class Attachment:
    component: str
    port: str
    connector: str
    role: str
    loc: Location | None = field(default=None, compare=False, repr=False, kw_only=True)

    def __post_init__(self) -> None:
        for name in (self.component, self.port, self.connector, self.role):
            _check_ident(name, "attachment")

    def __str__(self) -> str:
        return f"{self.component}.{self.port} to {self.connector}.{self.role}"


@dataclass(frozen=True)
class AttachmentsGroup:
    name: str
    attachments: tuple[Attachment, ...] = ()
    loc: Location | None = field(default=None, compare=False, repr=False, kw_only=True)

    def __post_init__(self) -> None:
        _check_ident(self.name, "attachments")
        object.__setattr__(self, "attachments", tuple(self.attachments))


@dataclass(frozen=True)
class ArchDescription:
    name: str
    components: tuple[Component, ...] = ()
    connectors: tuple[Connector, ...] = ()
    attachments_groups: tuple[AttachmentsGroup, ...] = ()
    properties: tuple[Property, ...] = ()
    loc: Location | None = field(default=None, compare=False, repr=False, kw_only=True)

    def __post_init__(self) -> None:
        _check_ident(self.name, "system")
        for attr in ("components", "connectors", "attachments_groups"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        _check_unique((c.name for c in self.components), "component")
        _check_unique((c.name for c in self.connectors), "connector")
        _check_unique((g.name for g in self.attachments_groups), "attachments")
        # components and connectors share one namespace
        _check_unique(
            [c.name for c in self.components] + [c.name for c in self.connectors],
            "element",
        )
        object.__setattr__(self, "properties", _props(self.properties, f"system {self.name}"))

    def component(self, name: str) -> Component | None:
        for comp in self.components:
            if comp.name == name:
                return comp
        return None

    def connector(self, name: str) -> Connector | None:
        for conn in self.connectors:
            if conn.name == name:
                return conn
        return None

    def element(self, name: str) -> Element | None:
        return self.component(name) or self.connector(name)

    @property
    def elements(self) -> tuple[Element, ...]:
        return self.components + self.connectors

    @property
    def attachments(self) -> tuple[Attachment, ...]:
        return tuple(a for g in self.attachments_groups for a in g.attachments)


@dataclass(frozen=True, order=True)
class InterfaceRef:
    """A port or role addressed by its owning element, e.g. ``call_entry.send_call_msg``."""

    owner: str
    name: str
    kind: IfaceKind

    @property
    def label(self) -> str:
        return f"{self.owner}.{self.name}"

    def __str__(self) -> str:
        return self.label


def iface_refs(desc: ArchDescription) -> list[InterfaceRef]:
    """Every port and role of ``desc`` in declaration order."""
    refs = []
    for elem in desc.elements:
        for iface in elem.interfaces:
            refs.append(InterfaceRef(elem.name, iface.name, iface.kind))
    return refs
