"""Walkthrough: merging two stores whose identifiers disagree.

Store a holds countries under full IRIs; store b arrived from a CSV-ish
source and uses bare local codes. A one-slot template aligns b onto a's
identifiers during the merge, and an edge-identity policy folds the
duplicate edges the alignment creates.

Run: python3 scripts/demo_merge.py
"""

from og import (
    EdgeIdentity,
    Iri,
    Literal,
    LocalId,
    MergeRules,
    Store,
    Template,
    XSD_INTEGER,
    merge,
    serialize_ognq,
)


def main():
    a = Store(seed=1)
    de = Iri("urn:geo:DE")
    fr = Iri("urn:geo:FR")
    a.insert_ground(de, LocalId("name"), Literal("Germany"))
    a.insert_ground(fr, LocalId("name"), Literal("France"))
    a.insert_ground(de, LocalId("borders"), fr)

    b = Store(seed=100)
    b.insert_ground(LocalId("country-DE"), LocalId("pop"),
                    Literal("83000000", XSD_INTEGER))
    b.insert_ground(LocalId("country-FR"), LocalId("pop"),
                    Literal("68000000", XSD_INTEGER))
    b.insert_ground(LocalId("country-DE"), LocalId("borders"),
                    LocalId("country-FR"))

    rules = MergeRules(
        id_mappings=[Template("country-{code}", "urn:geo:{code}")],
        edge_identity=EdgeIdentity.COLLAPSE_IDENTICAL_CONTENT,
    )
    merged, report = merge(a, b, rules)

    print("merged store:")
    print(serialize_ognq(merged))
    print("report:")
    for key in ("statements_in_a", "statements_in_b", "statements_out",
                "identifiers_aligned", "blank_nodes_renamed", "edges_collapsed"):
        print(f"  {key}={getattr(report, key)}")


if __name__ == "__main__":
    main()
