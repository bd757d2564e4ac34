"""Shared term lexing and rendering for the line-based formats.

Both line formats use the same term tokens: ``<iri>``, ``_:label``, quoted
literals with ``@lang`` or ``^^<datatype>`` suffixes, plus two extensions
gated by flags: ``local:"text"`` for local identifiers and ``urn:og:sid:``
IRIs read back as sid references.
"""

from __future__ import annotations

import re

from ..datatypes import RDF_LANG_STRING, XSD_STRING, Literal
from ..errors import ParseError
from ..statements import Term
from ..terms import (
    SID_IRI_PREFIX,
    BlankNode,
    Iri,
    LocalId,
    SidRef,
    sid_from_iri_text,
    sid_iri,
)

_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
          '"': '"', "'": "'", "\\": "\\"}
_LANG = re.compile(r"[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*")
_LOCAL_MARK = 'local:"'


class Cursor:
    """A position inside one line of input, for error reporting."""

    __slots__ = ("text", "pos", "line")

    def __init__(self, text: str, line: int):
        self.text = text
        self.pos = 0
        self.line = line

    def fail(self, message: str):
        raise ParseError(message, line=self.line, column=self.pos + 1)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def expect(self, token: str) -> None:
        if not self.text.startswith(token, self.pos):
            self.fail(f"expected {token!r}")
        self.pos += len(token)


def _scan_uchar(cur: Cursor) -> str:
    # cur.pos sits on the character after the backslash
    kind = cur.peek()
    width = 4 if kind == "u" else 8
    start = cur.pos + 1
    hexpart = cur.text[start:start + width]
    if len(hexpart) != width or any(c not in "0123456789abcdefABCDEF" for c in hexpart):
        cur.fail(f"bad \\{kind} escape")
    cur.pos = start + width
    return chr(int(hexpart, 16))


def scan_iri_text(cur: Cursor) -> str:
    cur.expect("<")
    out = []
    while True:
        if cur.at_end():
            cur.fail("unterminated IRI")
        c = cur.text[cur.pos]
        if c == ">":
            cur.pos += 1
            return "".join(out)
        if c == "\\":
            cur.pos += 1
            if cur.peek() in ("u", "U"):
                out.append(_scan_uchar(cur))
            else:
                cur.fail("only \\u and \\U escapes are allowed in IRIs")
        elif c <= " " or c in '"{}|^`':
            cur.fail(f"character {c!r} must be escaped inside an IRI")
        else:
            out.append(c)
            cur.pos += 1


def scan_string_body(cur: Cursor) -> str:
    cur.expect('"')
    out = []
    while True:
        if cur.at_end():
            cur.fail("unterminated string")
        c = cur.text[cur.pos]
        if c == '"':
            cur.pos += 1
            return "".join(out)
        if c == "\\":
            cur.pos += 1
            e = cur.peek()
            if e in ("u", "U"):
                out.append(_scan_uchar(cur))
            elif e in _ECHAR:
                out.append(_ECHAR[e])
                cur.pos += 1
            else:
                cur.fail(f"unknown escape \\{e}")
        else:
            out.append(c)
            cur.pos += 1


def scan_blank(cur: Cursor) -> BlankNode:
    cur.expect("_:")
    start = cur.pos
    while not cur.at_end() and (cur.text[cur.pos].isalnum() or cur.text[cur.pos] in "_.-"):
        cur.pos += 1
    while cur.pos > start and cur.text[cur.pos - 1] == ".":
        cur.pos -= 1  # trailing dots belong to the line terminator
    label = cur.text[start:cur.pos]
    try:
        return BlankNode(label)
    except ValueError as e:
        cur.fail(str(e))


def scan_literal(cur: Cursor) -> Literal:
    lexical = scan_string_body(cur)
    if cur.peek() == "@":
        cur.pos += 1
        m = _LANG.match(cur.text, cur.pos)
        if not m:
            cur.fail("bad language tag")
        cur.pos = m.end()
        return Literal(lexical, RDF_LANG_STRING, m.group(0))
    if cur.text.startswith("^^", cur.pos):
        cur.pos += 2
        dt_text = scan_iri_text(cur)
        try:
            return Literal(lexical, Iri(dt_text))
        except ValueError as e:
            cur.fail(str(e))
    return Literal(lexical, XSD_STRING)


def scan_term(cur: Cursor, *, allow_local: bool = False, sid_refs: bool = False) -> Term:
    """One term token at the cursor."""
    c = cur.peek()
    if c == "<":
        start_col = cur.pos + 1
        text = scan_iri_text(cur)
        if text.startswith(SID_IRI_PREFIX):
            if not sid_refs:
                raise ParseError("the urn:og:sid: namespace is reserved",
                                 line=cur.line, column=start_col)
            try:
                return SidRef(sid_from_iri_text(text))
            except ValueError:
                raise ParseError(f"malformed sid IRI: {text!r}",
                                 line=cur.line, column=start_col) from None
        try:
            return Iri(text)
        except ValueError as e:
            raise ParseError(str(e), line=cur.line, column=start_col) from None
    if c == "_":
        return scan_blank(cur)
    if c == '"':
        try:
            return scan_literal(cur)
        except ParseError:
            raise
        except ValueError as e:
            cur.fail(str(e))
    if allow_local and cur.text.startswith(_LOCAL_MARK, cur.pos):
        cur.pos += len(_LOCAL_MARK) - 1
        try:
            return LocalId(scan_string_body(cur))
        except ValueError as e:
            cur.fail(str(e))
    cur.fail("expected a term")


def end_of_statement(cur: Cursor) -> None:
    """Consume the closing ``.`` plus trailing whitespace or comment."""
    cur.skip_ws()
    cur.expect(".")
    cur.skip_ws()
    if not cur.at_end() and cur.peek() != "#":
        cur.fail("unexpected content after '.'")


# --- rendering -----------------------------------------------------------


def escape_string(s: str) -> str:
    out = []
    for c in s:
        if c == "\\":
            out.append("\\\\")
        elif c == '"':
            out.append('\\"')
        elif c == "\n":
            out.append("\\n")
        elif c == "\r":
            out.append("\\r")
        elif c == "\t":
            out.append("\\t")
        elif c < " " or c == "\x7f":
            out.append(f"\\u{ord(c):04X}")
        else:
            out.append(c)
    return "".join(out)


def escape_iri(s: str) -> str:
    out = []
    for c in s:
        if c <= " " or c in '<>"{}|^`\\' or c == "\x7f":
            out.append(f"\\u{ord(c):04X}")
        else:
            out.append(c)
    return "".join(out)


def render_term(t: Term, *, allow_local: bool = False, sid_refs: bool = False) -> str:
    """Canonical token for a term; raises ValueError on unrepresentable ones."""
    if isinstance(t, Iri):
        if sid_refs and t.text.startswith(SID_IRI_PREFIX):
            raise ValueError(f"the {SID_IRI_PREFIX} namespace is reserved for sid references")
        return f"<{escape_iri(t.text)}>"
    if isinstance(t, SidRef):
        if not sid_refs:
            raise ValueError("sid references are not representable in this format")
        return f"<{sid_iri(t.sid).text}>"
    if isinstance(t, BlankNode):
        return f"_:{t.label}"
    if isinstance(t, LocalId):
        if not allow_local:
            raise ValueError("local identifiers are not representable in this format")
        return f'local:"{escape_string(t.text)}"'
    if isinstance(t, Literal):
        body = f'"{escape_string(t.lexical)}"'
        if t.language is not None:
            return f"{body}@{t.language}"
        if t.datatype == XSD_STRING:
            return body
        return f"{body}^^<{escape_iri(t.datatype.text)}>"
    raise ValueError(f"not a term: {t!r}")


def split_lines(text: str) -> list[tuple[int, str]]:
    """(1-based line number, content) pairs, skipping blanks and comments."""
    out = []
    for i, raw in enumerate(text.split("\n"), start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((i, line))
    return out
