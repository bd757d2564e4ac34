"""A Turtle subset with quoted triples.

Supported: ``@prefix``/``PREFIX`` declarations, triples with ``;`` and ``,``
continuation, ``a``, prefixed names, labeled blank nodes, literals (with
bare integer/decimal/double/boolean shorthand), and ``<< s p o >>`` quoted
triples in subject or object position. No collections, no ``[...]`` blank
node syntax, no multi-line strings.

Parsing is content-based: a document denotes a triple set, so repeated
triples collapse, a quoted triple binds to the ground statement with that
content (created on demand, the lexicographically least sid when several
match), and the enclosing triple becomes an assertion about it.
"""

from __future__ import annotations

import re

from ..datatypes import (
    RDF_LANG_STRING,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    Literal,
)
from ..errors import ParseError
from ..statements import Term
from ..store import Store
from ..terms import BlankNode, Iri, LocalId, SidRef
from ..views import RDF_TYPE, QuotedTriple, RdfStarGraph
from .common import escape_iri, escape_string

_PNAME = re.compile(
    r"(?:[A-Za-z_][A-Za-z0-9_.\-]*)?:"
    r"(?:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_])?)?"
)
_NUMBER = re.compile(r"[+-]?(?:\d+\.\d+(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)")
_BLANK = re.compile(r"_:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_])?")
_LANGTAG = re.compile(r"@[A-Za-z]{1,8}(?:-[A-Za-z0-9]{1,8})*")
_WORD = re.compile(r"[A-Za-z]+")
_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
          '"': '"', "'": "'", "\\": "\\"}

_BARE_INTEGER = re.compile(r"^[+-]?\d+$")
_BARE_DECIMAL = re.compile(r"^[+-]?\d*\.\d+$")
_BARE_DOUBLE = re.compile(r"^[+-]?(?:\d+\.\d*|\.\d+|\d+)[eE][+-]?\d+$")
_PN_LOCAL_OK = re.compile(r"^(?:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_])?)?$")


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos, line, line_start = 0, 1, 0
    n = len(text)

    def here() -> tuple[int, int]:
        return line, pos - line_start + 1

    def fail(msg: str):
        l, c = here()
        raise ParseError(msg, line=l, column=c)

    while pos < n:
        c = text[pos]
        if c == "\n":
            line += 1
            pos += 1
            line_start = pos
            continue
        if c in " \t\r":
            pos += 1
            continue
        if c == "#":
            while pos < n and text[pos] != "\n":
                pos += 1
            continue
        l, col = here()
        if text.startswith("<<", pos):
            tokens.append(_Token("<<", None, l, col))
            pos += 2
            continue
        if text.startswith(">>", pos):
            tokens.append(_Token(">>", None, l, col))
            pos += 2
            continue
        if c == "<":
            end = pos + 1
            out = []
            while True:
                if end >= n or text[end] == "\n":
                    raise ParseError("unterminated IRI", line=l, column=col)
                ch = text[end]
                if ch == ">":
                    end += 1
                    break
                if ch == "\\":
                    kind = text[end + 1:end + 2]
                    if kind not in ("u", "U"):
                        raise ParseError("only \\u and \\U escapes are allowed in IRIs", line=l, column=col)
                    width = 4 if kind == "u" else 8
                    hexpart = text[end + 2:end + 2 + width]
                    if len(hexpart) != width or any(x not in "0123456789abcdefABCDEF" for x in hexpart):
                        raise ParseError(f"bad \\{kind} escape", line=l, column=col)
                    out.append(chr(int(hexpart, 16)))
                    end += 2 + width
                elif ch <= " " or ch in '"{}|^`':
                    raise ParseError(f"character {ch!r} must be escaped inside an IRI", line=l, column=col)
                else:
                    out.append(ch)
                    end += 1
            tokens.append(_Token("iri", "".join(out), l, col))
            pos = end
            continue
        if c == '"':
            end = pos + 1
            out = []
            while True:
                if end >= n or text[end] == "\n":
                    raise ParseError("unterminated string", line=l, column=col)
                ch = text[end]
                if ch == '"':
                    end += 1
                    break
                if ch == "\\":
                    e = text[end + 1:end + 2]
                    if e in ("u", "U"):
                        width = 4 if e == "u" else 8
                        hexpart = text[end + 2:end + 2 + width]
                        if len(hexpart) != width or any(x not in "0123456789abcdefABCDEF" for x in hexpart):
                            raise ParseError(f"bad \\{e} escape", line=l, column=col)
                        out.append(chr(int(hexpart, 16)))
                        end += 2 + width
                    elif e in _ECHAR:
                        out.append(_ECHAR[e])
                        end += 2
                    else:
                        raise ParseError(f"unknown escape \\{e}", line=l, column=col)
                else:
                    out.append(ch)
                    end += 1
            tokens.append(_Token("string", "".join(out), l, col))
            pos = end
            continue
        if c == "@":
            if text.startswith("@prefix", pos):
                tokens.append(_Token("@prefix", None, l, col))
                pos += len("@prefix")
                continue
            if text.startswith("@base", pos):
                fail("base declarations are not supported; use absolute IRIs")
            m = _LANGTAG.match(text, pos)
            if not m:
                fail("bad language tag or directive")
            tokens.append(_Token("lang", m.group(0)[1:], l, col))
            pos = m.end()
            continue
        if text.startswith("^^", pos):
            tokens.append(_Token("^^", None, l, col))
            pos += 2
            continue
        if c == "_" and text.startswith("_:", pos):
            m = _BLANK.match(text, pos)
            if not m:
                fail("bad blank node label")
            tokens.append(_Token("blank", m.group(0)[2:], l, col))
            pos = m.end()
            continue
        if c.isdigit() or (c in "+-" and pos + 1 < n and (text[pos + 1].isdigit() or text[pos + 1] == ".")) \
                or (c == "." and pos + 1 < n and text[pos + 1].isdigit()):
            m = _NUMBER.match(text, pos)
            if not m:
                fail("bad number")
            tokens.append(_Token("number", m.group(0), l, col))
            pos = m.end()
            continue
        if c in ".;,":
            tokens.append(_Token(c, None, l, col))
            pos += 1
            continue
        m = _PNAME.match(text, pos)
        if m:
            name = m.group(0)
            prefix, local = name.split(":", 1)
            tokens.append(_Token("pname", (prefix, local), l, col))
            pos = m.end()
            continue
        m = _WORD.match(text, pos)
        if m:
            word = m.group(0)
            if word == "a":
                tokens.append(_Token("a", None, l, col))
            elif word in ("true", "false"):
                tokens.append(_Token("boolean", word, l, col))
            elif word.upper() == "PREFIX":
                tokens.append(_Token("PREFIX", None, l, col))
            elif word.upper() == "BASE":
                fail("BASE is not supported")
            else:
                fail(f"unexpected word {word!r}")
            pos = m.end()
            continue
        fail(f"unexpected character {c!r}")
    tokens.append(_Token("eof", None, line, n - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], store: Store):
        self.tokens = tokens
        self.i = 0
        self.store = store
        self.prefixes: dict[str, str] = {}
        # labels already in the store stay untouchable for this document
        self.reserved_labels = {
            t.label
            for st in store.statements()
            for t in (st.src, st.value)
            if isinstance(t, BlankNode)
        }
        self.blank_map: dict[str, str] = {}

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, tok: _Token, msg: str):
        raise ParseError(msg, line=tok.line, column=tok.col)

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            self.fail(tok, f"expected {kind!r}, found {tok.kind!r}")
        return tok

    # --- grammar ---------------------------------------------------------

    def parse(self) -> None:
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                return
            if tok.kind == "@prefix":
                self.next()
                self.prefix_declaration(terminated=True)
            elif tok.kind == "PREFIX":
                self.next()
                self.prefix_declaration(terminated=False)
            else:
                self.triples()

    def prefix_declaration(self, terminated: bool) -> None:
        name = self.expect("pname")
        if name.value[1] != "":
            self.fail(name, "prefix declarations take a bare 'label:'")
        iri = self.expect("iri")
        self.prefixes[name.value[0]] = iri.value
        if terminated:
            self.expect(".")

    def triples(self) -> None:
        subject = self.node(allow_literal=False)
        while True:
            verb = self.verb()
            while True:
                obj = self.node(allow_literal=True)
                self.stmt(subject, verb, obj)
                if self.peek().kind == ",":
                    self.next()
                    continue
                break
            if self.peek().kind == ";":
                while self.peek().kind == ";":
                    self.next()
                if self.peek().kind in (".", "eof"):
                    break
                continue
            break
        self.expect(".")

    def verb(self) -> Term:
        tok = self.next()
        if tok.kind == "a":
            return RDF_TYPE
        if tok.kind == "iri":
            return self.to_iri(tok)
        if tok.kind == "pname":
            return self.expand(tok)
        self.fail(tok, "expected a predicate")

    def to_iri(self, tok: _Token) -> Iri:
        try:
            return Iri(tok.value)
        except ValueError as e:
            self.fail(tok, str(e))

    def expand(self, tok: _Token) -> Iri:
        prefix, local = tok.value
        if prefix not in self.prefixes:
            self.fail(tok, f"undeclared prefix {prefix!r}:")
        try:
            return Iri(self.prefixes[prefix] + local)
        except ValueError as e:
            self.fail(tok, str(e))

    def blank(self, tok: _Token) -> BlankNode:
        label = tok.value
        if label in self.blank_map:
            return BlankNode(self.blank_map[label])
        if label in self.reserved_labels:
            k = 1
            while f"{label}_{k}" in self.reserved_labels:
                k += 1
            fresh = f"{label}_{k}"
            self.reserved_labels.add(fresh)
            self.blank_map[label] = fresh
            return BlankNode(fresh)
        self.blank_map[label] = label
        self.reserved_labels.add(label)
        return BlankNode(label)

    def literal_suffix(self, lexical: str, tok: _Token) -> Literal:
        try:
            if self.peek().kind == "lang":
                return Literal(lexical, RDF_LANG_STRING, self.next().value)
            if self.peek().kind == "^^":
                self.next()
                dt_tok = self.next()
                if dt_tok.kind == "iri":
                    dt = self.to_iri(dt_tok)
                elif dt_tok.kind == "pname":
                    dt = self.expand(dt_tok)
                else:
                    self.fail(dt_tok, "expected a datatype IRI")
                return Literal(lexical, dt)
            return Literal(lexical, XSD_STRING)
        except ValueError as e:
            self.fail(tok, str(e))

    def node(self, allow_literal: bool) -> Term:
        tok = self.next()
        if tok.kind == "iri":
            return self.to_iri(tok)
        if tok.kind == "pname":
            return self.expand(tok)
        if tok.kind == "blank":
            return self.blank(tok)
        if tok.kind == "<<":
            s = self.node(allow_literal=False)
            p = self.verb()
            o = self.node(allow_literal=True)
            self.expect(">>")
            return SidRef(self.stmt(s, p, o))
        if not allow_literal:
            self.fail(tok, "a literal cannot appear here")
        if tok.kind == "string":
            return self.literal_suffix(tok.value, tok)
        if tok.kind == "number":
            lex = tok.value
            if "e" in lex or "E" in lex:
                return Literal(lex, XSD_DOUBLE)
            if "." in lex:
                return Literal(lex, XSD_DECIMAL)
            return Literal(lex, XSD_INTEGER)
        if tok.kind == "boolean":
            return Literal(tok.value, XSD_BOOLEAN)
        self.fail(tok, "expected a term")

    def stmt(self, s: Term, p: Term, o: Term):
        existing = self.store.sids_by_content(s, p, o)
        if existing:
            return existing[0]
        if isinstance(s, SidRef) or isinstance(o, SidRef):
            return self.store.insert_assertion(s, p, o)
        return self.store.insert_ground(s, p, o)


def parse_turtle_star(text: str, store: Store | None = None) -> Store:
    """Parse the Turtle-star subset; see the module docstring for semantics."""
    store = store if store is not None else Store()
    _Parser(_tokenize(text), store).parse()
    return store


# --- serialization --------------------------------------------------------


def _render_literal(lit: Literal, prefixes: dict[str, str]) -> str:
    if lit.language is not None:
        return f'"{escape_string(lit.lexical)}"@{lit.language}'
    if lit.datatype == XSD_STRING:
        return f'"{escape_string(lit.lexical)}"'
    if lit.datatype == XSD_INTEGER and _BARE_INTEGER.match(lit.lexical):
        return lit.lexical
    if lit.datatype == XSD_DECIMAL and _BARE_DECIMAL.match(lit.lexical):
        return lit.lexical
    if lit.datatype == XSD_DOUBLE and _BARE_DOUBLE.match(lit.lexical):
        return lit.lexical
    if lit.datatype == XSD_BOOLEAN and lit.lexical in ("true", "false"):
        return lit.lexical
    return f'"{escape_string(lit.lexical)}"^^{_render_iri(lit.datatype, prefixes)}'


def _render_iri(iri: Iri, prefixes: dict[str, str]) -> str:
    best = None
    for label, base in prefixes.items():
        if iri.text.startswith(base) and _PN_LOCAL_OK.match(iri.text[len(base):]):
            cand = (len(base), label)
            if best is None or cand[0] > best[0] or (cand[0] == best[0] and label < best[1]):
                best = cand
    if best is not None:
        return f"{best[1]}:{iri.text[best[0]:]}"
    return f"<{escape_iri(iri.text)}>"


def _render_node(t, prefixes: dict[str, str]) -> str:
    if isinstance(t, QuotedTriple):
        s = _render_node(t.s, prefixes)
        p = "a" if t.p == RDF_TYPE else _render_node(t.p, prefixes)
        o = _render_node(t.o, prefixes)
        return f"<< {s} {p} {o} >>"
    if isinstance(t, Iri):
        return _render_iri(t, prefixes)
    if isinstance(t, BlankNode):
        return f"_:{t.label}"
    if isinstance(t, Literal):
        return _render_literal(t, prefixes)
    if isinstance(t, LocalId):
        raise ValueError("local identifiers must be exposed before serialization")
    raise ValueError(f"not serializable here: {t!r}")


def serialize_turtle_star(graph: RdfStarGraph, prefixes: dict[str, str] | None = None) -> str:
    """Sorted, deterministic text for an RDF-star view."""
    prefixes = dict(prefixes or {})
    lines = [f"@prefix {label}: <{escape_iri(iri)}> ." for label, iri in sorted(prefixes.items())]
    if lines:
        lines.append("")
    for s, p, o in graph.sorted():
        ps = "a" if p == RDF_TYPE else _render_node(p, prefixes)
        lines.append(f"{_render_node(s, prefixes)} {ps} {_render_node(o, prefixes)} .")
    return "".join(line + "\n" for line in lines)
