"""Projections of one store into plain RDF, RDF-star, property graphs, and datasets.

Each view is a pure function of the store; none of them mutates it, and two
calls over the same store yield equal results. What a view cannot express it
either omits honestly (RDF hides statement identity, the LPG view tallies a
``dropped`` count) or encodes (reification, quoted triples).

Graph-membership statements (label ``urn:og:inGraph``) are carrier data for
:func:`dataset_view` and are invisible as triples in every view, along with
any assertion whose reference closure touches one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator
from urllib.parse import quote, unquote

from .datatypes import RDF_LANG_STRING, XSD_STRING, CoercionTally, Literal, coerce_to_lpg
from .errors import NestingOverflowError
from .statements import Statement, Term, is_ground, referenced_sids, term_key
from .store import IN_GRAPH, Store
from .terms import BlankNode, Iri, LocalId, Sid, SidRef, sid_iri

#: Namespace under which local identifiers are exposed to the RDF side.
DEFAULT_LOCAL_NS = "urn:og:local:"

#: Label given to vertices that carry no label statement.
DEFAULT_VERTEX_LABEL = "Vertex"

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDF_TYPE = Iri(RDF_NS + "type")
RDF_STATEMENT = Iri(RDF_NS + "Statement")
RDF_SUBJECT = Iri(RDF_NS + "subject")
RDF_PREDICATE = Iri(RDF_NS + "predicate")
RDF_OBJECT = Iri(RDF_NS + "object")


# --- identifier exposure ------------------------------------------------


def expose_local_as_iri(local: LocalId, namespace: str = DEFAULT_LOCAL_NS) -> Iri:
    """Render a local identifier as an IRI (percent-encoded, injective)."""
    return Iri(namespace + quote(local.text, safe=""))


def local_from_iri(iri: Iri, namespace: str = DEFAULT_LOCAL_NS) -> LocalId | None:
    """Inverse of :func:`expose_local_as_iri`; None when it does not apply."""
    if not iri.text.startswith(namespace):
        return None
    try:
        return LocalId(unquote(iri.text[len(namespace):]))
    except ValueError:
        return None


def shorten_iri(iri: Iri, prefixes: dict[str, str]) -> str:
    """Prefixed form under the longest matching prefix, else the full text."""
    best: tuple[int, str, str] | None = None
    for label, base in prefixes.items():
        if iri.text.startswith(base):
            # longest base wins; label breaks ties deterministically
            cand = (len(base), label, base)
            if best is None or cand[0] > best[0] or (cand[0] == best[0] and label < best[1]):
                best = cand
    if best is None:
        return iri.text
    return f"{best[1]}:{iri.text[best[0]:]}"


def _expose(term: Term, namespace: str) -> Term:
    if isinstance(term, LocalId):
        return expose_local_as_iri(term, namespace)
    return term


# --- shared statement analysis -------------------------------------------


def _analyze(store: Store) -> tuple[set[Sid], dict[Sid, int]]:
    """Visibility and quoting depth for every statement.

    A statement is visible unless it is a membership statement or references
    (transitively) one. Depth is 0 for ground statements, else one more than
    the deepest referenced statement. Iterative so reference chains of any
    length cannot overflow the interpreter stack.
    """
    visible: set[Sid] = set()
    depth: dict[Sid, int] = {}
    for origin in store.statements():
        stack = [origin.sid]
        while stack:
            sid = stack[-1]
            if sid in depth:
                stack.pop()
                continue
            st = store.get(sid)
            refs = referenced_sids(st)
            todo = [r for r in refs if r not in depth]
            if todo:
                stack.extend(todo)
                continue
            depth[sid] = 1 + max(depth[r] for r in refs) if refs else 0
            if st.label != IN_GRAPH and all(r in visible for r in refs):
                visible.add(sid)
            stack.pop()
    return visible, depth


# --- plain RDF -----------------------------------------------------------


class RdfMode(Enum):
    HIDE = "hide"
    REIFY = "reify"


@dataclass(frozen=True)
class RdfGraph:
    """A set of plain RDF triples."""

    triples: frozenset[tuple]

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.sorted())

    def sorted(self) -> list[tuple]:
        return sorted(self.triples, key=triple_key)


def rdf_view(store: Store, mode: RdfMode = RdfMode.HIDE, namespace: str = DEFAULT_LOCAL_NS) -> RdfGraph:
    """Project the store to plain RDF.

    HIDE keeps only ground statements as content-deduplicated triples:
    statement identity, multi-edges, and assertions all vanish. REIFY adds,
    for every ground statement some visible assertion references, the four
    classic reification triples under the statement's sid IRI, plus one
    triple per assertion with sid references rendered as sid IRIs.
    """
    visible, _ = _analyze(store)
    triples: set[tuple] = set()
    for st in store.statements():
        if st.sid in visible and is_ground(st):
            triples.add((
                _expose(st.src, namespace),
                _expose(st.label, namespace),
                _expose(st.value, namespace),
            ))
    if mode is RdfMode.HIDE:
        return RdfGraph(frozenset(triples))

    reified: set[Sid] = set()
    for st in store.statements():
        if st.sid not in visible or is_ground(st):
            continue
        for r in referenced_sids(st):
            target = store.get(r)
            if is_ground(target):
                reified.add(r)
    for r in reified:
        node = sid_iri(r)
        target = store.get(r)
        triples.add((node, RDF_TYPE, RDF_STATEMENT))
        triples.add((node, RDF_SUBJECT, _expose(target.src, namespace)))
        triples.add((node, RDF_PREDICATE, _expose(target.label, namespace)))
        triples.add((node, RDF_OBJECT, _expose(target.value, namespace)))
    for st in store.statements():
        if st.sid not in visible or is_ground(st):
            continue
        s = sid_iri(st.src.sid) if isinstance(st.src, SidRef) else _expose(st.src, namespace)
        o = sid_iri(st.value.sid) if isinstance(st.value, SidRef) else _expose(st.value, namespace)
        triples.add((s, _expose(st.label, namespace), o))
    return RdfGraph(frozenset(triples))


# --- RDF-star ------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class QuotedTriple:
    """A triple used as a term, RDF-star style."""

    s: Any
    p: Any
    o: Any


@dataclass(frozen=True)
class RdfStarGraph:
    """A set of asserted triples whose subjects/objects may quote triples."""

    triples: frozenset[tuple]

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.sorted())

    def sorted(self) -> list[tuple]:
        return sorted(self.triples, key=triple_key)


def _part_key(t) -> tuple:
    if isinstance(t, QuotedTriple):
        return (5, _part_key(t.s), _part_key(t.p), _part_key(t.o))
    return term_key(t)


def triple_key(triple: tuple) -> tuple:
    """Deterministic sort key for (possibly quoted) triples."""
    return tuple(_part_key(x) for x in triple)


def rdf_star_view(store: Store, namespace: str = DEFAULT_LOCAL_NS, max_depth: int = 32) -> RdfStarGraph:
    """Project the store to RDF-star.

    Ground statements collapse by content into asserted triples; assertions
    become triples whose sid references are replaced by the quoted triple of
    the referenced statement's content. The dimensional reduction is real:
    multi-edges become one triple and their annotations pool together.
    Raises NestingOverflowError when quoting nests deeper than ``max_depth``.
    """
    visible, depth = _analyze(store)
    too_deep = [s for s in visible if depth[s] > max_depth]
    if too_deep:
        raise NestingOverflowError(
            f"quoted-triple nesting exceeds {max_depth} (e.g. statement {min(too_deep)})"
        )

    rendered: dict[Sid, tuple] = {}

    def render(st: Statement) -> tuple:
        if st.sid in rendered:
            return rendered[st.sid]

        def part(t: Term):
            if isinstance(t, SidRef):
                return QuotedTriple(*render(store.get(t.sid)))
            return _expose(t, namespace)

        triple = (part(st.src), _expose(st.label, namespace), part(st.value))
        rendered[st.sid] = triple
        return triple

    triples = set()
    for st in store.statements():
        if st.sid in visible:
            triples.add(render(st))
    return RdfStarGraph(frozenset(triples))


# --- labeled property graph ----------------------------------------------


@dataclass
class VertexProperty:
    """One property value with its meta-properties (annotations on the value)."""

    value: Any
    meta: dict[str, list[Any]] = field(default_factory=dict)


@dataclass
class Vertex:
    labels: list[str] = field(default_factory=list)
    properties: dict[str, list[VertexProperty]] = field(default_factory=dict)


@dataclass
class Edge:
    source: str
    target: str
    label: str
    properties: dict[str, list[Any]] = field(default_factory=dict)


@dataclass
class LpgGraph:
    """A property graph plus an honest tally of what would not fit.

    ``dropped`` counts statements the mapping cannot express (membership
    statements, assertions over assertions, node-valued annotations, and
    meta-properties when those are disabled). ``coercion`` counts lossy
    literal conversions such as dropped language tags.
    """

    vertices: dict[str, Vertex] = field(default_factory=dict)
    edges: dict[Sid, Edge] = field(default_factory=dict)
    dropped: int = 0
    coercion: CoercionTally = field(default_factory=CoercionTally)


@dataclass
class LpgViewConfig:
    """Tunables for the property-graph projection.

    ``label_predicates`` names the labels whose ground statements read as
    vertex labels rather than edges or properties. ``default_namespace``
    works like the RDF exposure namespace in reverse: IRIs under it display
    as their decoded local text.
    """

    label_predicates: frozenset = frozenset((RDF_TYPE, LocalId("label")))
    expose_meta_properties: bool = True
    default_namespace: str = DEFAULT_LOCAL_NS
    prefixes: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.label_predicates = frozenset(self.label_predicates)
        if not self.label_predicates:
            raise ValueError("label_predicates must not be empty")


def _display(term: Term, cfg: LpgViewConfig) -> str:
    """Vertex id / label / key text for a node or label term."""
    if isinstance(term, LocalId):
        return term.text
    if isinstance(term, BlankNode):
        return "_:" + term.label
    if isinstance(term, Iri):
        if term.text.startswith(cfg.default_namespace):
            return unquote(term.text[len(cfg.default_namespace):])
        return shorten_iri(term, cfg.prefixes)
    raise TypeError(f"no property-graph rendering for {term!r}")


def _is_text(value: Term) -> bool:
    return isinstance(value, Literal) and value.datatype in (XSD_STRING, RDF_LANG_STRING)


def lpg_view(store: Store, config: LpgViewConfig | None = None) -> LpgGraph:
    """Project the store to a labeled property graph.

    Nodes in ground statements become vertices; ground statements with node
    values become edges keyed by sid, with literal values vertex properties,
    and under a label predicate vertex labels. Literal-valued assertions
    over edge sids become edge properties, over vertex-property sids
    meta-properties. Everything else is counted in ``dropped``.
    """
    cfg = config or LpgViewConfig()
    g = LpgGraph()
    prop_site: dict[Sid, VertexProperty] = {}

    def vertex(term: Term) -> Vertex:
        vid = _display(term, cfg)
        if vid not in g.vertices:
            g.vertices[vid] = Vertex()
        return g.vertices[vid]

    assertions: list[Statement] = []
    for st in store.statements():
        if st.label == IN_GRAPH:
            g.dropped += 1
            continue
        if not is_ground(st):
            assertions.append(st)
            continue
        v = vertex(st.src)
        if st.label in cfg.label_predicates and (not isinstance(st.value, Literal) or _is_text(st.value)):
            if isinstance(st.value, Literal):
                label = coerce_to_lpg(st.value, g.coercion)
            else:
                label = _display(st.value, cfg)
                vertex(st.value)
            if label not in v.labels:
                v.labels.append(label)
        elif isinstance(st.value, Literal):
            site = VertexProperty(coerce_to_lpg(st.value, g.coercion))
            v.properties.setdefault(_display(st.label, cfg), []).append(site)
            prop_site[st.sid] = site
        else:
            vertex(st.value)
            g.edges[st.sid] = Edge(
                _display(st.src, cfg), _display(st.value, cfg), _display(st.label, cfg)
            )

    for st in assertions:
        if isinstance(st.src, SidRef) and isinstance(st.value, Literal):
            target = st.src.sid
            if target in g.edges:
                g.edges[target].properties.setdefault(_display(st.label, cfg), []).append(
                    coerce_to_lpg(st.value, g.coercion)
                )
                continue
            if target in prop_site:
                if cfg.expose_meta_properties:
                    prop_site[target].meta.setdefault(_display(st.label, cfg), []).append(
                        coerce_to_lpg(st.value, g.coercion)
                    )
                else:
                    g.dropped += 1
                continue
        g.dropped += 1

    for v in g.vertices.values():
        if not v.labels:
            v.labels.append(DEFAULT_VERTEX_LABEL)
        v.properties = {k: v.properties[k] for k in sorted(v.properties)}
        for values in v.properties.values():
            for site in values:
                site.meta = {k: site.meta[k] for k in sorted(site.meta)}
    for e in g.edges.values():
        e.properties = {k: e.properties[k] for k in sorted(e.properties)}
    g.vertices = {k: g.vertices[k] for k in sorted(g.vertices)}
    g.edges = {k: g.edges[k] for k in sorted(g.edges)}
    return g


# --- datasets ------------------------------------------------------------


@dataclass(frozen=True)
class Dataset:
    """A default graph plus named graphs recovered from membership data."""

    default: RdfGraph
    named: dict[Term, RdfGraph]

    def graph_names(self) -> list[Term]:
        return sorted(self.named, key=term_key)


def dataset_view(store: Store, namespace: str = DEFAULT_LOCAL_NS) -> Dataset:
    """Split the HIDE-mode triples into named graphs by membership.

    A ground statement's triple lands in every graph it has a membership
    assertion for, and in the default graph when it has none. Membership
    statements themselves appear in no graph; memberships of memberships are
    ignored outright.
    """
    memberships: dict[Sid, set[Term]] = {}
    for st in store.statements():
        if st.label != IN_GRAPH or not isinstance(st.src, SidRef):
            continue
        if not isinstance(st.value, (Iri, LocalId)):
            continue
        target = store.get(st.src.sid)
        if target is None or target.label == IN_GRAPH:
            continue
        memberships.setdefault(st.src.sid, set()).add(st.value)

    default: set[tuple] = set()
    named: dict[Term, set[tuple]] = {}
    for st in store.statements():
        if not is_ground(st) or st.label == IN_GRAPH:
            continue
        triple = (
            _expose(st.src, namespace),
            _expose(st.label, namespace),
            _expose(st.value, namespace),
        )
        graphs = memberships.get(st.sid)
        if graphs:
            for gname in graphs:
                named.setdefault(_expose(gname, namespace), set()).add(triple)
        else:
            default.add(triple)
    return Dataset(
        default=RdfGraph(frozenset(default)),
        named={k: RdfGraph(frozenset(v)) for k, v in sorted(named.items(), key=lambda kv: term_key(kv[0]))},
    )
