"""Canonical ACME text output.

Layout: system properties first, then components, connectors and
attachments groups, each in declaration order. Port and role property
blocks are printed on one line.
"""

from __future__ import annotations

from .model import ArchDescription, Attachment, AttachmentsGroup, Component, Connector, Property

INDENT = "    "

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}


def format_literal(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return '"' + "".join(_ESCAPES.get(c, c) for c in value) + '"'
    if isinstance(value, float):
        # repr round-trips; may yield "1e+16" which the lexer accepts
        return repr(value)
    return str(value)


def format_property(prop: Property) -> str:
    head = prop.name if prop.ptype is None else f"{prop.name} : {prop.ptype}"
    return f"{head} = {format_literal(prop.value)};"


def _propblock(props: tuple[Property, ...], depth: int) -> list[str]:
    pad = INDENT * depth
    lines = [f"{pad}Properties {{"]
    lines += [f"{pad}{INDENT}{format_property(p)}" for p in props]
    lines.append(f"{pad}}}")
    return lines


def _iface(keyword: str, name: str, props: tuple[Property, ...], depth: int) -> str:
    pad = INDENT * depth
    if not props:
        return f"{pad}{keyword} {name};"
    body = " ".join(format_property(p) for p in props)
    return f"{pad}{keyword} {name} = {{ Properties {{ {body} }} }};"


def _element(keyword: str, elem: Component | Connector, depth: int) -> list[str]:
    pad = INDENT * depth
    iface_kw = "Port" if keyword == "Component" else "Role"
    if not elem.interfaces and not elem.properties:
        return [f"{pad}{keyword} {elem.name} = {{ }}"]
    lines = [f"{pad}{keyword} {elem.name} = {{"]
    lines += [_iface(iface_kw, i.name, i.properties, depth + 1) for i in elem.interfaces]
    if elem.properties:
        lines += _propblock(elem.properties, depth + 1)
    lines.append(f"{pad}}}")
    return lines


def format_attachment(att: Attachment) -> str:
    return f"{att.component}.{att.port} to {att.connector}.{att.role};"


def _group(group: AttachmentsGroup, depth: int) -> list[str]:
    pad = INDENT * depth
    if not group.attachments:
        return [f"{pad}Attachments {group.name} = {{ }}"]
    lines = [f"{pad}Attachments {group.name} = {{"]
    lines += [f"{pad}{INDENT}{format_attachment(a)}" for a in group.attachments]
    lines.append(f"{pad}}}")
    return lines


def emit_text(desc: ArchDescription) -> str:
    """Render ``desc`` as ACME text that parses back to an equal AST."""
    blocks: list[list[str]] = []
    if desc.properties:
        blocks.append(_propblock(desc.properties, 1))
    blocks += [_element("Component", c, 1) for c in desc.components]
    blocks += [_element("Connector", c, 1) for c in desc.connectors]
    blocks += [_group(g, 1) for g in desc.attachments_groups]
    if not blocks:
        return f"System {desc.name} = {{ }}\n"
    lines = [f"System {desc.name} = {{"]
    for i, block in enumerate(blocks):
        if i:
            lines.append("")
        lines += block
    lines.append("}")
    return "\n".join(lines) + "\n"
