"""Referential checks over attachments."""

from __future__ import annotations

from .model import ArchDescription, Attachment, Diagnostic, error, warning


def _check_refs(desc: ArchDescription, att: Attachment) -> Diagnostic | None:
    comp = desc.component(att.component)
    if comp is None:
        return error("dangling-ref", f"{att}: no component named '{att.component}'", att.loc)
    if comp.interface(att.port) is None:
        return error(
            "dangling-ref", f"{att}: component '{comp.name}' has no port '{att.port}'", att.loc
        )
    conn = desc.connector(att.connector)
    if conn is None:
        return error("dangling-ref", f"{att}: no connector named '{att.connector}'", att.loc)
    if conn.interface(att.role) is None:
        return error(
            "dangling-ref", f"{att}: connector '{conn.name}' has no role '{att.role}'", att.loc
        )
    return None


def validate(desc: ArchDescription) -> list[Diagnostic]:
    """Check that every attachment resolves and attaches fresh endpoints.

    Errors: ``dangling-ref`` for an unresolved reference, ``multi-attach``
    for a port or role used by a second attachment. Warnings:
    ``unattached`` for every port or role no attachment mentions.
    """
    diags: list[Diagnostic] = []
    attached: dict[tuple[str, str], Attachment] = {}
    for att in desc.attachments:
        bad = _check_refs(desc, att)
        if bad is not None:
            diags.append(bad)
            continue
        for key, what in (
            ((att.component, att.port), "port"),
            ((att.connector, att.role), "role"),
        ):
            prior = attached.get(key)
            if prior is not None:
                diags.append(
                    error(
                        "multi-attach",
                        f"{what} {key[0]}.{key[1]} is already attached by '{prior}'",
                        att.loc,
                    )
                )
            else:
                attached[key] = att
    for elem in desc.elements:
        for iface in elem.interfaces:
            if (elem.name, iface.name) not in attached:
                kind = iface.kind.value
                diags.append(
                    warning("unattached", f"{kind} {elem.name}.{iface.name} is never attached", iface.loc)
                )
    return diags


def errors_only(diags: list[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diags if d.is_error]
