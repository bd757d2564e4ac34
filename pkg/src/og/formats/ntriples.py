"""Plain N-Triples.

The lossy, maximally portable route: parsing mints fresh sids (identity is
not expressible here), serializing writes a triple set in canonical sorted
order. Comments and blank lines are tolerated; errors carry line and column.
"""

from __future__ import annotations

from ..errors import ParseError
from ..statements import Statement, Term
from ..store import Store
from ..terms import BlankNode, Iri
from ..views import RdfGraph
from .common import Cursor, end_of_statement, render_term, scan_term, split_lines


def parse_ntriples(text: str, store: Store | None = None) -> Store:
    """Parse N-Triples into ground statements under fresh sids."""
    store = store if store is not None else Store()
    triples: list[tuple[Term, Term, Term]] = []
    for lineno, line in split_lines(text):
        cur = Cursor(line, lineno)
        cur.skip_ws()
        col = cur.pos + 1
        s = scan_term(cur)
        if not isinstance(s, (Iri, BlankNode)):
            raise ParseError("subject must be an IRI or blank node", line=lineno, column=col)
        cur.skip_ws()
        col = cur.pos + 1
        p = scan_term(cur)
        if not isinstance(p, Iri):
            raise ParseError("predicate must be an IRI", line=lineno, column=col)
        cur.skip_ws()
        o = scan_term(cur)
        end_of_statement(cur)
        triples.append((s, p, o))

    existing = {
        t.label
        for st in store.statements()
        for t in (st.src, st.value)
        if isinstance(t, BlankNode)
    }
    doc_labels = {t.label for tr in triples for t in (tr[0], tr[2]) if isinstance(t, BlankNode)}
    mapping: dict[str, str] = {}
    taken = existing | doc_labels
    for label in sorted(doc_labels & existing):
        k = 1
        while f"{label}_{k}" in taken:
            k += 1
        mapping[label] = f"{label}_{k}"
        taken.add(mapping[label])

    def mapped(t: Term) -> Term:
        if isinstance(t, BlankNode) and t.label in mapping:
            return BlankNode(mapping[t.label])
        return t

    store.add_statements(
        Statement(mapped(s), p, mapped(o), store.fresh_sid()) for s, p, o in triples
    )
    return store


def serialize_ntriples(graph: RdfGraph) -> str:
    """Canonical N-Triples for a plain-RDF view, sorted, one triple per line."""
    lines = []
    for s, p, o in graph.sorted():
        lines.append(f"{render_term(s)} {render_term(p)} {render_term(o)} .")
    return "".join(line + "\n" for line in lines)
