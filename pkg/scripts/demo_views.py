"""Walkthrough: one store, three projections.

Builds the four-statement example (an edge, two names, one annotation on the
edge) and prints how each view renders it.

Run: python3 scripts/demo_views.py
"""

from og import (
    Literal,
    LocalId,
    RdfMode,
    SidRef,
    Store,
    XSD_INTEGER,
    lpg_view,
    rdf_star_view,
    rdf_view,
    serialize_lpg_jsonl,
    serialize_ntriples,
    serialize_ognq,
    serialize_turtle_star,
)


def main():
    store = Store(seed=0)
    alice, bob = LocalId("Alice"), LocalId("Bob")

    knows = store.insert_ground(alice, LocalId("knows"), bob)
    store.insert_ground(alice, LocalId("name"), Literal("Alice"))
    store.insert_ground(bob, LocalId("name"), Literal("Bob"))
    store.insert_assertion(
        SidRef(knows), LocalId("since"), Literal("2020", XSD_INTEGER)
    )

    print("native statements (OG-NQ):")
    print(serialize_ognq(store))

    print("plain RDF, hide mode (the annotation disappears):")
    print(serialize_ntriples(rdf_view(store)))

    print("plain RDF, reify mode (the annotation survives, losslessly):")
    print(serialize_ntriples(rdf_view(store, mode=RdfMode.REIFY)))

    print("RDF-star (the annotation rides a quoted triple):")
    print(serialize_turtle_star(rdf_star_view(store), prefixes={"": "urn:og:local:"}))

    print("property graph (the annotation becomes an edge property):")
    print(serialize_lpg_jsonl(lpg_view(store)))


if __name__ == "__main__":
    main()
