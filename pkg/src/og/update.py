"""Cross-model updates with explicit ambiguity policies.

The RDF-facing entry points address statements by their view-level triple,
which one store statement or several may stand behind (multi-edges collapse
in every reduced view). Rather than guessing, each operation takes a policy:
apply to every match, or refuse when the view hides more than one. The
LPG-facing entry points choose the conventional property-graph defaults
(edges multiply, properties overwrite).

Inputs are view-level terms: local identifiers may be given either directly
or in their exposed IRI form, interchangeably. Operations that error leave
the store untouched.
"""

from __future__ import annotations

import uuid
from enum import Enum

from .datatypes import Literal, coerce_lpg_value
from .errors import (
    AmbiguousTargetError,
    NotFoundError,
    PositionError,
    ReferencedSidError,
    UnknownEndpointError,
)
from .statements import Statement, Term, is_ground, term_key
from .store import IN_GRAPH, DeletePolicy, Store
from .terms import BlankNode, Iri, LocalId, Sid, SidRef
from .views import DEFAULT_LOCAL_NS, LpgViewConfig, _display, _expose, _is_text, local_from_iri


class AmbiguityPolicy(Enum):
    """What to do when a view-level target names several statements."""

    ALL = "all"
    ERROR_IF_MULTIPLE = "error"


class InsertSemantics(Enum):
    """Whether inserting an already-visible triple is a no-op or a new edge."""

    SET = "set"
    MULTI = "multi"


def _internalize(t: Term, namespace: str) -> Term:
    if isinstance(t, Iri):
        local = local_from_iri(t, namespace)
        if local is not None:
            return local
    return t


def _ground_matches(store: Store, s: Term, p: Term, o: Term, namespace: str) -> list[Statement]:
    """Visible ground statements whose exposed triple is (s, p, o)."""
    want = (_expose(s, namespace), _expose(p, namespace), _expose(o, namespace))
    return [
        st
        for st in store.statements()
        if is_ground(st)
        and st.label != IN_GRAPH
        and (_expose(st.src, namespace), _expose(st.label, namespace), _expose(st.value, namespace)) == want
    ]


def rdf_delete_triple(
    store: Store,
    s: Term,
    p: Term,
    o: Term,
    ambiguity: AmbiguityPolicy = AmbiguityPolicy.ALL,
    delete: DeletePolicy = DeletePolicy.CASCADE,
    namespace: str = DEFAULT_LOCAL_NS,
) -> int:
    """Delete the ground statements behind a view triple; returns statements removed.

    Zero matches is a no-op. Under RESTRICT, references anywhere in the
    match set abort the whole operation before any deletion.
    """
    matches = _ground_matches(store, s, p, o, namespace)
    if not matches:
        return 0
    if ambiguity is AmbiguityPolicy.ERROR_IF_MULTIPLE and len(matches) > 1:
        raise AmbiguousTargetError(
            f"triple addresses {len(matches)} statements: {[str(m.sid) for m in matches]}"
        )
    if delete is DeletePolicy.RESTRICT:
        held = [str(st.sid) for st in matches if store.referrers(st.sid)]
        if held:
            raise ReferencedSidError(f"still referenced: {held}")
    return sum(store.delete_statement(st.sid, delete) for st in matches)


def rdf_insert_triple(
    store: Store,
    s: Term,
    p: Term,
    o: Term,
    semantics: InsertSemantics = InsertSemantics.SET,
    namespace: str = DEFAULT_LOCAL_NS,
) -> Sid | None:
    """Insert a ground statement for a view triple.

    SET returns None without touching the store when the triple is already
    visible; MULTI always adds another statement. Terms are internalized, so
    exposed local-identifier IRIs store as the local identifiers they name.
    """
    if semantics is InsertSemantics.SET and _ground_matches(store, s, p, o, namespace):
        return None
    return store.insert_ground(
        _internalize(s, namespace), _internalize(p, namespace), _internalize(o, namespace)
    )


def star_annotate(
    store: Store,
    s: Term,
    p: Term,
    o: Term,
    key: Term,
    value: Term,
    policy: AmbiguityPolicy = AmbiguityPolicy.ALL,
    namespace: str = DEFAULT_LOCAL_NS,
) -> list[Sid]:
    """Attach (key, value) as an assertion to the statement(s) behind a triple.

    Never creates the ground statement: zero targets raise NotFoundError, so
    annotation cannot smuggle unasserted triples into the store.
    """
    if not isinstance(key, (Iri, LocalId)):
        raise PositionError("annotation keys must be IRIs or local identifiers")
    if isinstance(value, SidRef):
        raise PositionError("annotation values cannot be sid references")
    matches = _ground_matches(store, s, p, o, namespace)
    if not matches:
        raise NotFoundError("no ground statement matches the triple")
    if policy is AmbiguityPolicy.ERROR_IF_MULTIPLE and len(matches) > 1:
        raise AmbiguousTargetError(
            f"triple addresses {len(matches)} statements: {[str(m.sid) for m in matches]}"
        )
    key = _internalize(key, namespace)
    value = _internalize(value, namespace)
    return [store.insert_assertion(SidRef(st.sid), key, value) for st in matches]


# --- property-graph entry points ------------------------------------------


def _as_literal(value) -> Literal:
    return value if isinstance(value, Literal) else coerce_lpg_value(value)


def _vertex_candidates(store: Store, cfg: LpgViewConfig) -> dict[str, list[Term]]:
    """Store terms behind each vertex id, least term first."""
    found: dict[str, set[Term]] = {}
    for st in store.statements():
        if not is_ground(st) or st.label == IN_GRAPH:
            continue
        nodes = [st.src]
        if not isinstance(st.value, Literal):
            nodes.append(st.value)
        for t in nodes:
            found.setdefault(_display(t, cfg), set()).add(t)
    return {vid: sorted(terms, key=term_key) for vid, terms in found.items()}


def _vertex_term_for_new(vertex_id: str) -> Term:
    if vertex_id.startswith("_:"):
        return BlankNode(vertex_id[2:])
    return LocalId(vertex_id)


def _is_edge(store: Store, sid: Sid, cfg: LpgViewConfig) -> bool:
    st = store.get(sid)
    return (
        st is not None
        and is_ground(st)
        and st.label != IN_GRAPH
        and st.label not in cfg.label_predicates
        and not isinstance(st.value, Literal)
    )


def lpg_add_edge(
    store: Store,
    source: str,
    target: str,
    label: str,
    properties: dict | None = None,
    auto_create: bool = False,
    config: LpgViewConfig | None = None,
) -> Sid:
    """Add an edge between two vertex ids; always a fresh edge statement.

    Endpoints must already be vertices of the property-graph view unless
    ``auto_create`` is set, in which case missing ones come into existence
    with the edge itself (and pick up the default label in views).
    """
    cfg = config or LpgViewConfig()
    candidates = _vertex_candidates(store, cfg)
    ends = []
    for vid in (source, target):
        if vid in candidates:
            ends.append(candidates[vid][0])
        elif auto_create:
            ends.append(_vertex_term_for_new(vid))
        else:
            raise UnknownEndpointError(f"no vertex with id {vid!r}")
    sid = store.insert_ground(ends[0], LocalId(label), ends[1])
    for key, value in (properties or {}).items():
        store.insert_assertion(SidRef(sid), LocalId(key), _as_literal(value))
    return sid


def lpg_set_property(
    store: Store,
    element: str | Sid,
    key: str,
    value,
    config: LpgViewConfig | None = None,
) -> Sid:
    """Set a single-valued property on a vertex or edge (last write wins).

    Every existing statement that shows as this property is deleted (with
    cascade, taking its meta along) before the one new statement goes in.
    Vertices are addressed by vertex id, edges by sid or sid text.
    """
    cfg = config or LpgViewConfig()

    if isinstance(element, str):
        candidates = _vertex_candidates(store, cfg)
        if element in candidates:
            terms = set(candidates[element])
            old = [
                st
                for st in store.statements()
                if is_ground(st)
                and st.src in terms
                and isinstance(st.value, Literal)
                and not (st.label in cfg.label_predicates and _is_text(st.value))
                and _display(st.label, cfg) == key
            ]
            pred = old[0].label if old else LocalId(key)
            for st in old:
                store.delete_statement(st.sid, DeletePolicy.CASCADE)
            return store.insert_ground(candidates[element][0], pred, _as_literal(value))
        try:
            element = uuid.UUID(element)
        except ValueError:
            raise NotFoundError(f"no vertex or edge with id {element!r}") from None

    if not _is_edge(store, element, cfg):
        raise NotFoundError(f"no edge with sid {element}")
    ref = SidRef(element)
    old = [
        st
        for st in store.statements()
        if st.src == ref and isinstance(st.value, Literal) and _display(st.label, cfg) == key
    ]
    pred = old[0].label if old else LocalId(key)
    for st in old:
        store.delete_statement(st.sid, DeletePolicy.CASCADE)
    return store.insert_assertion(ref, pred, _as_literal(value))
