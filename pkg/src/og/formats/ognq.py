"""OG-NQ, the native lossless format.

Looks like N-Quads, but the fourth position is the statement's own sid
rendered as an ``urn:og:sid:`` IRI, so identity survives a round trip
byte-for-byte. Sid IRIs in the first or third position are sid references;
``local:"text"`` tokens carry local identifiers. One statement per line,
terminated by `` .``; ``#`` lines are comments; UTF-8 throughout.

Forward references are fine: lines may mention sids defined further down.
"""

from __future__ import annotations

from ..errors import ParseError
from ..statements import Statement, Term
from ..store import Store
from ..terms import BlankNode, Sid, SidRef, sid_iri
from .common import (
    Cursor,
    end_of_statement,
    render_term,
    scan_term,
    split_lines,
)


def _remap_blanks(parsed: list[tuple[int, Statement]], store: Store) -> list[Statement]:
    """Keep document blank labels apart from labels already in the store."""
    existing = {
        t.label
        for st in store.statements()
        for t in (st.src, st.value)
        if isinstance(t, BlankNode)
    }
    if not existing:
        return [st for _, st in parsed]
    doc_labels = {
        t.label
        for _, st in parsed
        for t in (st.src, st.value)
        if isinstance(t, BlankNode)
    }
    mapping: dict[str, str] = {}
    taken = existing | doc_labels
    for label in sorted(doc_labels & existing):
        k = 1
        while f"{label}_{k}" in taken:
            k += 1
        mapping[label] = f"{label}_{k}"
        taken.add(mapping[label])
    if not mapping:
        return [st for _, st in parsed]

    def mapped(t: Term) -> Term:
        if isinstance(t, BlankNode) and t.label in mapping:
            return BlankNode(mapping[t.label])
        return t

    return [
        Statement(mapped(st.src), st.label, mapped(st.value), st.sid)
        for _, st in parsed
    ]


def parse_ognq(text: str, store: Store | None = None) -> Store:
    """Parse OG-NQ text, preserving sids exactly.

    Appends into ``store`` when given (blank labels are document-scoped and
    renamed apart from the store's). Duplicate sids and malformed lines raise
    ParseError; unresolvable sid references raise DanglingSidError.
    """
    store = store if store is not None else Store()
    parsed: list[tuple[int, Statement]] = []
    seen: set[Sid] = set()
    for lineno, line in split_lines(text):
        cur = Cursor(line, lineno)
        cur.skip_ws()
        src = scan_term(cur, allow_local=True, sid_refs=True)
        cur.skip_ws()
        label = scan_term(cur, allow_local=True, sid_refs=True)
        cur.skip_ws()
        value = scan_term(cur, allow_local=True, sid_refs=True)
        cur.skip_ws()
        fourth = scan_term(cur, allow_local=True, sid_refs=True)
        end_of_statement(cur)
        if not isinstance(fourth, SidRef):
            raise ParseError("the fourth position must be the statement's sid IRI", line=lineno)
        sid = fourth.sid
        if sid in seen or sid in store:
            raise ParseError(f"duplicate sid {sid}", line=lineno)
        seen.add(sid)
        try:
            parsed.append((lineno, Statement(src, label, value, sid)))
        except Exception as e:
            raise ParseError(str(e), line=lineno) from None
    store.add_statements(_remap_blanks(parsed, store))
    return store


def render_statement(st: Statement) -> str:
    parts = [
        render_term(st.src, allow_local=True, sid_refs=True),
        render_term(st.label, allow_local=True, sid_refs=True),
        render_term(st.value, allow_local=True, sid_refs=True),
        f"<{sid_iri(st.sid).text}>",
    ]
    return " ".join(parts) + " ."


def serialize_ognq(store: Store) -> str:
    """One line per statement in sid order; inverse of :func:`parse_ognq`."""
    return "".join(render_statement(st) + "\n" for st in store.statements())


def parse_term_text(token: str) -> Term:
    """A single term in OG-NQ token syntax (used by rules files and the CLI)."""
    cur = Cursor(token.strip(), 1)
    term = scan_term(cur, allow_local=True, sid_refs=True)
    if not cur.at_end():
        raise ParseError(f"trailing content after term: {token!r}")
    return term
