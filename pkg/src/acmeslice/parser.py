"""Lexer and recursive-descent parser for the ACME subset.

Grammar::

    system      := "System" ident "=" "{" item* "}"
    item        := component | connector | attgroup | propblock
    component   := "Component" ident "=" "{" (port | propblock)* "}"
    port        := "Port" ident ("=" "{" propblock? "}")? ";"?
    connector   := "Connector" ident "=" "{" (role | propblock)* "}"
    role        := "Role" ident ("=" "{" propblock? "}")? ";"?
    attgroup    := "Attachments" ident "=" "{" attachment* "}"
    attachment  := ident "." ident "to" ident "." ident ";"
    propblock   := "Properties" "{" prop* "}"
    prop        := ident (":" ptype)? "=" literal ";"
    ptype       := "string" | "int" | "float" | "boolean"
    literal     := quoted-string | integer | float | "true" | "false"

Keywords are contextual: ``to``, ``from`` or even ``Port`` are legal names
wherever the grammar expects an identifier. ``//`` starts a line comment.

Lexical and syntax errors stop the parse at the first offending token.
Duplicate names and property type mismatches are collected so that one
run reports all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    PROPERTY_TYPES,
    ArchDescription,
    Attachment,
    AttachmentsGroup,
    Component,
    Connector,
    Diagnostic,
    Location,
    ParseError,
    Port,
    Property,
    Role,
    error,
    literal_kind,
)

IDENT = "ident"
STRING = "string"
INT = "int"
FLOAT = "float"
PUNCT = "punct"
EOF = "eof"

_PUNCT = frozenset("{}=;:.")
_DIGITS = frozenset("0123456789")
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t", "r": "\r"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    loc: Location
    value: object = None

    def describe(self) -> str:
        if self.kind == EOF:
            return "end of input"
        if self.kind == STRING:
            return "string literal"
        return f"'{self.text}'"


class _Abort(Exception):
    """Unwinds the parser after a fatal diagnostic."""


def tokenize(source: str) -> list[Token]:
    """Split ``source`` into tokens; raises ParseError on a bad character."""
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def fail(message: str, at_line: int, at_col: int) -> None:
        raise ParseError([error("lex-error", message, Location(at_line, at_col))])

    while i < n:
        ch = source[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r\f\ufeff":
            i, col = i + 1, col + 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue

        start = Location(line, col)
        if ch.isascii() and (ch.isalpha() or ch == "_"):
            j = i + 1
            while j < n and source[j].isascii() and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token(IDENT, source[i:j], start))
        elif ch in _DIGITS or (ch == "-" and i + 1 < n and source[i + 1] in _DIGITS):
            j = i + 1
            while j < n and source[j] in _DIGITS:
                j += 1
            is_float = False
            if j + 1 < n and source[j] == "." and source[j + 1] in _DIGITS:
                is_float = True
                j += 1
                while j < n and source[j] in _DIGITS:
                    j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k] in _DIGITS:
                    is_float = True
                    j = k
                    while j < n and source[j] in _DIGITS:
                        j += 1
            text = source[i:j]
            if j < n and (source[j].isalpha() or source[j] == "_"):
                fail(f"malformed number '{text}{source[j]}'", line, col)
            if is_float:
                if not math.isfinite(float(text)):
                    fail(f"float literal out of range '{text}'", line, col)
                tokens.append(Token(FLOAT, text, start, float(text)))
            else:
                tokens.append(Token(INT, text, start, int(text)))
        elif ch == '"':
            j = i + 1
            chars: list[str] = []
            while True:
                if j >= n or source[j] == "\n":
                    fail("unterminated string literal", line, col)
                c = source[j]
                if c == '"':
                    break
                if c == "\\":
                    esc = source[j + 1] if j + 1 < n else ""
                    if esc not in _ESCAPES:
                        fail(f"unknown escape '\\{esc}'", line, col + (j - i))
                    chars.append(_ESCAPES[esc])
                    j += 2
                    continue
                chars.append(c)
                j += 1
            j += 1
            tokens.append(Token(STRING, source[i:j], start, "".join(chars)))
        elif ch in _PUNCT:
            j = i + 1
            tokens.append(Token(PUNCT, ch, start))
        else:
            fail(f"unexpected character {ch!r}", line, col)
        col += j - i
        i = j

    tokens.append(Token(EOF, "", Location(line, col)))
    return tokens


class Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []

    # -- token helpers --------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != EOF:
            self.pos += 1
        return tok

    def at_punct(self, text: str) -> bool:
        return self.tok.kind == PUNCT and self.tok.text == text

    def at_kw(self, word: str) -> bool:
        return self.tok.kind == IDENT and self.tok.text == word

    def syntax_error(self, expected: str) -> _Abort:
        tok = self.tok
        self.diagnostics.append(
            error("syntax-error", f"expected {expected}, found {tok.describe()}", tok.loc)
        )
        return _Abort()

    def expect_punct(self, text: str) -> Token:
        if not self.at_punct(text):
            raise self.syntax_error(f"'{text}'")
        return self.advance()

    def expect_kw(self, word: str) -> Token:
        if not self.at_kw(word):
            raise self.syntax_error(f"'{word}'")
        return self.advance()

    def expect_ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != IDENT:
            raise self.syntax_error(what)
        return self.advance()

    def duplicate(self, what: str, tok: Token, seen: dict[str, Location]) -> bool:
        """Record ``tok`` in ``seen``; report and return True if already there."""
        first = seen.get(tok.text)
        if first is not None:
            self.diagnostics.append(
                error(
                    "duplicate-name",
                    f"duplicate {what} '{tok.text}' (first declared at {first})",
                    tok.loc,
                )
            )
            return True
        seen[tok.text] = tok.loc
        return False

    # -- grammar --------------------------------------------------------

    def parse_system(self) -> ArchDescription | None:
        start = self.expect_kw("System")
        name = self.expect_ident("system name")
        self.expect_punct("=")
        self.expect_punct("{")
        components: list[Component] = []
        connectors: list[Connector] = []
        groups: list[AttachmentsGroup] = []
        properties: list[Property] = []
        elements: dict[str, Location] = {}
        group_names: dict[str, Location] = {}
        prop_names: dict[str, Location] = {}
        while not self.at_punct("}"):
            if self.at_kw("Component"):
                comp, tok = self.parse_component()
                if not self.duplicate("element", tok, elements):
                    components.append(comp)
            elif self.at_kw("Connector"):
                conn, tok = self.parse_connector()
                if not self.duplicate("element", tok, elements):
                    connectors.append(conn)
            elif self.at_kw("Attachments"):
                group, tok = self.parse_attachments()
                if not self.duplicate("attachments", tok, group_names):
                    groups.append(group)
            elif self.at_kw("Properties"):
                properties.extend(self.parse_propblock(prop_names))
            else:
                raise self.syntax_error("'Component', 'Connector', 'Attachments', 'Properties' or '}'")
        self.expect_punct("}")
        if self.tok.kind != EOF:
            raise self.syntax_error("end of input")
        if self.diagnostics:
            return None
        return ArchDescription(
            name.text, components, connectors, groups, properties, loc=start.loc
        )

    def parse_component(self) -> tuple[Component, Token]:
        start = self.expect_kw("Component")
        name = self.expect_ident("component name")
        ports, props = self._element_body("Port", name.text)
        return Component(name.text, ports, props, loc=start.loc), name

    def parse_connector(self) -> tuple[Connector, Token]:
        start = self.expect_kw("Connector")
        name = self.expect_ident("connector name")
        roles, props = self._element_body("Role", name.text)
        return Connector(name.text, roles, props, loc=start.loc), name

    def _element_body(self, iface_kw: str, owner: str) -> tuple[list, list[Property]]:
        self.expect_punct("=")
        self.expect_punct("{")
        ifaces: list[Port | Role] = []
        props: list[Property] = []
        iface_names: dict[str, Location] = {}
        prop_names: dict[str, Location] = {}
        cls = Port if iface_kw == "Port" else Role
        what = iface_kw.lower()
        while not self.at_punct("}"):
            if self.at_kw(iface_kw):
                start = self.advance()
                name = self.expect_ident(f"{what} name")
                iface_props: list[Property] = []
                if self.at_punct("="):
                    self.advance()
                    self.expect_punct("{")
                    if self.at_kw("Properties"):
                        iface_props = self.parse_propblock({})
                    self.expect_punct("}")
                if self.at_punct(";"):
                    self.advance()
                if not self.duplicate(f"{what} in {owner}", name, iface_names):
                    ifaces.append(cls(name.text, iface_props, loc=start.loc))
            elif self.at_kw("Properties"):
                props.extend(self.parse_propblock(prop_names))
            else:
                raise self.syntax_error(f"'{iface_kw}', 'Properties' or '}}'")
        self.expect_punct("}")
        return ifaces, props

    def parse_attachments(self) -> tuple[AttachmentsGroup, Token]:
        start = self.expect_kw("Attachments")
        name = self.expect_ident("attachments name")
        self.expect_punct("=")
        self.expect_punct("{")
        atts: list[Attachment] = []
        while not self.at_punct("}"):
            comp = self.expect_ident("component name or '}'")
            self.expect_punct(".")
            port = self.expect_ident("port name")
            self.expect_kw("to")
            conn = self.expect_ident("connector name")
            self.expect_punct(".")
            role = self.expect_ident("role name")
            self.expect_punct(";")
            atts.append(Attachment(comp.text, port.text, conn.text, role.text, loc=comp.loc))
        self.expect_punct("}")
        return AttachmentsGroup(name.text, atts, loc=start.loc), name

    def parse_propblock(self, seen: dict[str, Location]) -> list[Property]:
        self.expect_kw("Properties")
        self.expect_punct("{")
        props: list[Property] = []
        while not self.at_punct("}"):
            name = self.expect_ident("property name or '}'")
            ptype = None
            if self.at_punct(":"):
                self.advance()
                if self.tok.kind != IDENT or self.tok.text not in PROPERTY_TYPES:
                    raise self.syntax_error("property type (string, int, float or boolean)")
                ptype = self.advance().text
            self.expect_punct("=")
            lit = self.tok
            if lit.kind in (STRING, INT, FLOAT):
                value = lit.value
            elif lit.kind == IDENT and lit.text in ("true", "false"):
                value = lit.text == "true"
            else:
                raise self.syntax_error("literal value")
            self.advance()
            self.expect_punct(";")
            if self.duplicate("property", name, seen):
                continue
            kind = literal_kind(value)
            if ptype is not None and kind != ptype and not (ptype == "float" and kind == "int"):
                self.diagnostics.append(
                    error(
                        "type-mismatch",
                        f"property '{name.text}' declared {ptype} but value is {kind}",
                        lit.loc,
                    )
                )
                continue
            props.append(Property(name.text, value, ptype, loc=name.loc))
        self.expect_punct("}")
        return props


def parse(source: str) -> ArchDescription:
    """Parse ACME text into an :class:`ArchDescription`.

    Raises :class:`ParseError` carrying one or more error diagnostics, each
    with a source location. No partial AST is ever returned.
    """
    parser = Parser(source)
    try:
        desc = parser.parse_system()
    except _Abort:
        desc = None
    if desc is None:
        raise ParseError(parser.diagnostics)
    return desc


def parse_file(path) -> ArchDescription:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
