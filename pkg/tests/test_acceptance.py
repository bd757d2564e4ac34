"""Acceptance suite.

One test per shipping criterion. Each prints a single
`criterion N (<label>): PASS|FAIL` line; run with `pytest -s` to see them
on success (failures surface through pytest regardless).
"""

import functools
import random
from decimal import Decimal

import pytest

from og import (
    AmbiguityPolicy,
    AmbiguousTargetError,
    BlankNode,
    DeletePolicy,
    EdgeIdentity,
    IN_GRAPH,
    InsertSemantics,
    Iri,
    Literal,
    LocalId,
    MergeRules,
    OG_LIST,
    OgError,
    QuotedTriple,
    SidRef,
    Statement,
    Store,
    UnsupportedValueError,
    XSD_BOOLEAN,
    XSD_INTEGER,
    coerce_to_lpg,
    dataset_view,
    list_fold,
    list_unfold,
    lpg_add_edge,
    lpg_set_property,
    lpg_view,
    merge,
    parse_lpg_jsonl,
    parse_ognq,
    parse_ntriples,
    parse_turtle_star,
    rdf_delete_triple,
    rdf_insert_triple,
    rdf_star_view,
    rdf_view,
    serialize_lpg_jsonl,
    serialize_ognq,
    serialize_turtle_star,
    star_annotate,
)

import oracles
import randgen

MASTER_SEED = 0xACCE
NS = "urn:og:local:"


def criterion(number, label):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {number} ({label}): FAIL")
                raise
            print(f"criterion {number} ({label}): PASS")

        return wrapper

    return decorate


def iri(name):
    return Iri(NS + name)


def four_statement_fixture():
    store = Store(seed=0)
    alice, bob = LocalId("Alice"), LocalId("Bob")
    knows = store.insert_ground(alice, LocalId("knows"), bob)
    store.insert_ground(alice, LocalId("name"), Literal("Alice"))
    store.insert_ground(bob, LocalId("name"), Literal("Bob"))
    store.insert_assertion(
        SidRef(knows), LocalId("since"), Literal("2020", XSD_INTEGER)
    )
    return store


def multi_edge_fixture():
    store = Store(seed=0)
    alice, bob, knows = LocalId("Alice"), LocalId("Bob"), LocalId("knows")
    e1 = store.insert_ground(alice, knows, bob)
    e2 = store.insert_ground(alice, knows, bob)
    store.insert_assertion(SidRef(e1), LocalId("statedBy"), Literal("NYTimes"))
    store.insert_assertion(SidRef(e1), LocalId("since"), Literal("2020", XSD_INTEGER))
    store.insert_assertion(SidRef(e2), LocalId("statedBy"), Literal("TheGuardian"))
    store.insert_assertion(SidRef(e2), LocalId("since"), Literal("2021", XSD_INTEGER))
    return store


@criterion(1, "tri-view of the four-statement fixture")
def test_criterion_1_tri_view():
    store = four_statement_fixture()

    assert set(rdf_view(store)) == {
        (iri("Alice"), iri("knows"), iri("Bob")),
        (iri("Alice"), iri("name"), Literal("Alice")),
        (iri("Bob"), iri("name"), Literal("Bob")),
    }

    quoted = QuotedTriple(iri("Alice"), iri("knows"), iri("Bob"))
    assert set(rdf_star_view(store)) == {
        (iri("Alice"), iri("knows"), iri("Bob")),
        (iri("Alice"), iri("name"), Literal("Alice")),
        (iri("Bob"), iri("name"), Literal("Bob")),
        (quoted, iri("since"), Literal("2020", XSD_INTEGER)),
    }

    graph = lpg_view(store)
    assert set(graph.vertices) == {"Alice", "Bob"}
    assert len(graph.edges) == 1
    (edge,) = graph.edges.values()
    assert (edge.source, edge.target, edge.label) == ("Alice", "Bob", "knows")
    assert edge.properties == {"since": [2020]}
    assert [p.value for p in graph.vertices["Alice"].properties["name"]] == ["Alice"]
    assert [p.value for p in graph.vertices["Bob"].properties["name"]] == ["Bob"]


@criterion(2, "multi-edge fixture folds into each lossy view")
def test_criterion_2_dimensional_reduction():
    store = multi_edge_fixture()

    graph = lpg_view(store)
    assert set(graph.vertices) == {"Alice", "Bob"}
    assert len(graph.edges) == 2
    property_sets = sorted(
        tuple(sorted((k, tuple(v)) for k, v in e.properties.items()))
        for e in graph.edges.values()
    )
    assert property_sets == [
        (("since", (2020,)), ("statedBy", ("NYTimes",))),
        (("since", (2021,)), ("statedBy", ("TheGuardian",))),
    ]
    assert all(
        (e.source, e.target, e.label) == ("Alice", "Bob", "knows")
        for e in graph.edges.values()
    )

    star = set(rdf_star_view(store))
    plain = [t for t in star if not isinstance(t[0], QuotedTriple)]
    assert plain == [(iri("Alice"), iri("knows"), iri("Bob"))]
    quoted = QuotedTriple(iri("Alice"), iri("knows"), iri("Bob"))
    assert star - set(plain) == {
        (quoted, iri("statedBy"), Literal("NYTimes")),
        (quoted, iri("since"), Literal("2020", XSD_INTEGER)),
        (quoted, iri("statedBy"), Literal("TheGuardian")),
        (quoted, iri("since"), Literal("2021", XSD_INTEGER)),
    }


@criterion(3, "named-graph placement matches the brute-force oracle, 1000 stores")
def test_criterion_3_named_graph_recovery():
    rng = random.Random(MASTER_SEED + 3)
    for _ in range(1000):
        store = randgen.random_store(rng, max_statements=50, membership_rate=0.35)
        statements = store.statements()
        dataset = dataset_view(store)

        expected_default, expected_named = oracles.dataset_placement(statements, NS)
        assert frozenset(dataset.default) == expected_default
        assert {g: frozenset(t) for g, t in dataset.named.items()} == expected_named

        union = set(dataset.default)
        for graph in dataset.named.values():
            union |= set(graph)
        assert union == oracles.hide_triples(statements, NS)
        assert all(t[1] != IN_GRAPH for t in union)


@criterion(4, "merge identity, blank renaming, and collapse vs oracle")
def test_criterion_4_merge_properties():
    rng = random.Random(MASTER_SEED + 4)

    # merge(A, A, Distinct) keeps A exactly
    for _ in range(200):
        store = randgen.random_store(rng, max_statements=20)
        merged, report = merge(store, store)
        assert set(merged.statements()) == set(store.statements())
        assert report.statements_out == len(store.statements())

    # RenameApart: blank populations add up and co-reference survives
    for _ in range(200):
        a = randgen.random_store(rng, max_statements=15)
        b = randgen.random_store(rng, max_statements=15)
        merged, report = merge(a, b)

        def blanks(statements):
            found = set()
            for st in statements:
                for term in (st.src, st.value):
                    if isinstance(term, BlankNode):
                        found.add(term.label)
            return found

        a_blanks = blanks(a.statements())
        b_blanks = blanks(b.statements())
        out_blanks = blanks(merged.statements())
        assert len(out_blanks) == len(a_blanks) + len(b_blanks)
        assert a_blanks <= out_blanks

        # b's statements keep their sids; blank labels map by a bijection
        mapping = {}
        for st in b.statements():
            out = merged.get(st.sid)
            for mine, theirs in ((st.src, out.src), (st.value, out.value)):
                if isinstance(mine, BlankNode):
                    assert isinstance(theirs, BlankNode)
                    assert mapping.setdefault(mine.label, theirs.label) == theirs.label
                else:
                    assert mine == theirs
        assert len(set(mapping.values())) == len(mapping)
        assert report.blank_nodes_renamed == len(mapping)

    # CollapseIdenticalContent against the grouping oracle, stores <= 12
    empty_rules = MergeRules(edge_identity=EdgeIdentity.COLLAPSE_IDENTICAL_CONTENT)
    for _ in range(1000):
        store = duplicate_heavy_store(rng)
        expected, losers = oracles.collapse_content(store.statements())
        merged, report = merge(store, Store(seed=1), rules=empty_rules)
        assert set(merged.statements()) == expected
        assert report.edges_collapsed == losers


def duplicate_heavy_store(rng):
    """Random store capped at 12 statements, biased toward repeated ground
    content so collapse has something to do."""
    store = randgen.random_store(rng, max_statements=8)
    grounds = [
        st
        for st in store.statements()
        if not isinstance(st.src, SidRef) and not isinstance(st.value, SidRef)
    ]
    budget = 12 - len(store.statements())
    for _ in range(min(budget, rng.randrange(0, 5))):
        if grounds and rng.random() < 0.7:
            origin = rng.choice(grounds)
            store.insert_ground(origin.src, origin.label, origin.value)
        else:
            sids = [st.sid for st in store.statements()]
            if sids and rng.random() < 0.5:
                store.insert_assertion(
                    SidRef(rng.choice(sids)), randgen.label(rng), randgen.value(rng)
                )
    return store


@criterion(5, "ambiguity matrix on the multi-edge fixture")
def test_criterion_5_update_matrix():
    alice, bob, knows = LocalId("Alice"), LocalId("Bob"), LocalId("knows")

    store = multi_edge_fixture()
    assert rdf_delete_triple(store, alice, knows, bob) == 6
    assert store.statements() == []

    store = multi_edge_fixture()
    before = set(store.statements())
    with pytest.raises(AmbiguousTargetError):
        rdf_delete_triple(
            store, alice, knows, bob, ambiguity=AmbiguityPolicy.ERROR_IF_MULTIPLE
        )
    assert set(store.statements()) == before

    store = multi_edge_fixture()
    star_before = set(rdf_star_view(store))
    added = star_annotate(
        store, alice, knows, bob, LocalId("verified"), Literal("true", XSD_BOOLEAN)
    )
    assert len(added) == 2
    assert len(store.statements()) == 8
    quoted = QuotedTriple(iri("Alice"), iri("knows"), iri("Bob"))
    assert set(rdf_star_view(store)) - star_before == {
        (quoted, iri("verified"), Literal("true", XSD_BOOLEAN))
    }
    graph = lpg_view(store)
    assert len(graph.edges) == 2
    assert all(e.properties["verified"] == [True] for e in graph.edges.values())

    store = multi_edge_fixture()
    size = len(store.statements())
    assert rdf_insert_triple(store, alice, knows, bob) is None
    assert rdf_insert_triple(store, alice, knows, bob) is None
    assert len(store.statements()) == size
    first = rdf_insert_triple(store, alice, knows, bob, semantics=InsertSemantics.MULTI)
    assert first is not None and len(store.statements()) == size + 1
    second = rdf_insert_triple(store, alice, knows, bob, semantics=InsertSemantics.MULTI)
    assert second is not None and second != first
    assert len(store.statements()) == size + 2


@criterion(6, "round trips: OG-NQ, Turtle-star, LPG JSONL, list literals")
def test_criterion_6_round_trips():
    rng = random.Random(MASTER_SEED + 6)

    # OG-NQ identity, sid-preserving
    for _ in range(1000):
        store = randgen.random_store(rng, max_statements=30, membership_rate=0.1)
        text = serialize_ognq(store)
        back = parse_ognq(text)
        assert set(back.statements()) == set(store.statements())
        assert serialize_ognq(back) == text

    # Turtle-star subset: the star view survives the trip
    for _ in range(300):
        store = randgen.random_store(rng, max_statements=25)
        view = rdf_star_view(store)
        back = parse_turtle_star(serialize_turtle_star(view))
        assert set(rdf_star_view(back)) == set(view)

    # LPG JSONL: the property-graph shape survives the trip
    ran = 0
    for _ in range(300):
        store = randgen.random_store(rng, max_statements=25)
        graph = lpg_view(store)
        try:
            text = serialize_lpg_jsonl(graph)
        except UnsupportedValueError:
            # non-finite numbers have no strict-JSON spelling; refusal is the contract
            continue
        ran += 1
        back = parse_lpg_jsonl(text)
        assert oracles.lpg_shape(lpg_view(back)) == oracles.lpg_shape(graph)
    assert ran >= 200

    # list literals: fold/unfold inverse on 1000 random scalar lists
    for _ in range(1000):
        items = randgen.scalar_list(rng)
        lit = list_fold(items)
        assert lit.datatype == OG_LIST
        back = list_unfold(lit)
        assert len(back) == len(items)
        for x, y in zip(items, back):
            if isinstance(x, float):
                assert y == Decimal(repr(x))
            elif isinstance(x, Decimal):
                assert isinstance(y, Decimal) and y == x
            else:
                assert type(y) is type(x) and y == x
        assert list_fold(back).lexical == lit.lexical

    assert list_fold([1, 2, 3]).lexical == "[1, 2, 3]"
    assert list_fold([1, 2, 3]).datatype == OG_LIST


@criterion(7, "integrity under fuzzing; parsers never crash")
def test_criterion_7_fuzzing():
    rng = random.Random(MASTER_SEED + 7)
    total_ops = 0
    for _ in range(100):
        store = randgen.random_store(rng, max_statements=20, membership_rate=0.1)
        for _ in range(120):
            total_ops += 1
            apply_random_op(rng, store)
            check_integrity(store)
    assert total_ops >= 10_000

    parsers = [parse_ognq, parse_ntriples, parse_turtle_star, parse_lpg_jsonl]
    seeds = fuzz_seed_documents()
    for parser in parsers:
        for _ in range(400):
            text = mutate_text(rng, rng.choice(seeds))
            expect_parse_or_diagnostic(parser, text)
        for _ in range(200):
            text = char_soup(rng)
            expect_parse_or_diagnostic(parser, text)


def apply_random_op(rng, store):
    roll = rng.random()
    try:
        if roll < 0.22:
            store.insert_ground(randgen.node(rng), randgen.label(rng), randgen.value(rng))
        elif roll < 0.34:
            sids = [st.sid for st in store.statements()]
            if sids:
                store.insert_assertion(
                    SidRef(rng.choice(sids)), randgen.label(rng), randgen.value(rng)
                )
        elif roll < 0.48:
            sids = [st.sid for st in store.statements()]
            if sids:
                store.delete_statement(
                    rng.choice(sids),
                    policy=rng.choice([DeletePolicy.CASCADE, DeletePolicy.RESTRICT]),
                )
        elif roll < 0.58:
            rdf_insert_triple(
                store,
                randgen.node(rng),
                randgen.label(rng),
                randgen.value(rng),
                semantics=rng.choice(list(InsertSemantics)),
            )
        elif roll < 0.68:
            rdf_delete_triple(
                store,
                randgen.node(rng),
                randgen.label(rng),
                randgen.value(rng),
                ambiguity=rng.choice(list(AmbiguityPolicy)),
                delete=rng.choice(list(DeletePolicy)),
            )
        elif roll < 0.76:
            star_annotate(
                store,
                randgen.node(rng),
                randgen.label(rng),
                randgen.value(rng),
                randgen.label(rng),
                randgen.literal(rng),
                policy=rng.choice(list(AmbiguityPolicy)),
            )
        elif roll < 0.84:
            graph = lpg_view(store)
            names = sorted(graph.vertices)
            source = rng.choice(names) if names and rng.random() < 0.8 else "ghost"
            target = rng.choice(names) if names and rng.random() < 0.8 else "ghost"
            lpg_add_edge(
                store,
                source,
                target,
                "fuzz",
                properties={"n": rng.randrange(10)},
                auto_create=rng.random() < 0.5,
            )
        elif roll < 0.92:
            graph = lpg_view(store)
            pool = sorted(graph.vertices) + [str(s) for s in sorted(graph.edges)]
            element = rng.choice(pool) if pool and rng.random() < 0.8 else "ghost"
            lpg_set_property(store, element, "fuzz", rng.randrange(10))
        else:
            sids = [st.sid for st in store.statements()]
            if sids:
                store.set_graph_membership(rng.choice(sids), randgen.graph_id(rng))
    except OgError as err:
        assert str(err)


def check_integrity(store):
    statements = store.statements()
    sids = [st.sid for st in statements]
    assert len(sids) == len(set(sids))
    known = set(sids)
    for st in statements:
        for term in (st.src, st.value):
            if isinstance(term, SidRef):
                assert term.sid in known
    # reference graph must stay acyclic
    colors = {}

    def visit(sid):
        state = colors.get(sid)
        if state == "done":
            return
        assert state != "busy"
        colors[sid] = "busy"
        st = store.get(sid)
        for term in (st.src, st.value):
            if isinstance(term, SidRef):
                visit(term.sid)
        colors[sid] = "done"

    for sid in known:
        visit(sid)


def fuzz_seed_documents():
    ognq = serialize_ognq(multi_edge_fixture())
    ttls = serialize_turtle_star(rdf_star_view(four_statement_fixture()))
    nt = "".join(
        f"{s} {p} {o} .\n"
        for s, p, o in (
            ("<urn:x:a>", "<urn:x:p>", "<urn:x:b>"),
            ("_:n", "<urn:x:p>", '"lit"@en'),
            ("<urn:x:a>", "<urn:x:q>", '"5"^^<http://www.w3.org/2001/XMLSchema#integer>'),
        )
    )
    jsonl = serialize_lpg_jsonl(lpg_view(multi_edge_fixture()))
    return [ognq, ttls, nt, jsonl]


MUTATION_ALPHABET = '<>"{}[]()^@.;,:\\\n\t 0123456789abcxyz_%é€'


def mutate_text(rng, text):
    chars = list(text)
    for _ in range(rng.randrange(1, 6)):
        kind = rng.randrange(4)
        if not chars:
            break
        pos = rng.randrange(len(chars))
        if kind == 0:
            chars[pos] = rng.choice(MUTATION_ALPHABET)
        elif kind == 1:
            del chars[pos]
        elif kind == 2:
            chars.insert(pos, rng.choice(MUTATION_ALPHABET))
        else:
            del chars[pos:]
    return "".join(chars)


def char_soup(rng):
    return "".join(
        rng.choice(MUTATION_ALPHABET) for _ in range(rng.randrange(0, 200))
    )


def expect_parse_or_diagnostic(parser, text):
    try:
        parser(text)
    except OgError as err:
        assert str(err)
    except Exception as err:  # noqa: BLE001
        raise AssertionError(
            f"{parser.__name__} crashed with {type(err).__name__} on {text[:80]!r}"
        ) from err
