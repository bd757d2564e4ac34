"""Merging two stores under configurable identifier alignment.

The merge is asymmetric: statements of ``a`` are kept verbatim, statements of
``b`` are rewritten (identifier alignment, blank-node policy) and then added,
keeping their sids. A sid present in both stores is a copy when its content
matches and an error when it does not. Afterwards an edge-identity policy may
collapse content-identical ground statements.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .errors import BadTemplateError, ParseError, SidCollisionError
from .statements import Statement, Term, is_ground, term_key
from .store import Store
from .terms import BlankNode, Iri, LocalId, Sid, SidRef


class BlankNodePolicy(Enum):
    RENAME_APART = "rename_apart"
    IDENTIFY_BY_LABEL = "identify_by_label"


class EdgeIdentity(Enum):
    DISTINCT = "distinct"
    COLLAPSE_IDENTICAL_CONTENT = "collapse_identical_content"
    COLLAPSE_IDENTICAL_CONTENT_AND_PROPERTIES = "collapse_identical_content_and_properties"


@dataclass(frozen=True)
class ExplicitPair:
    """Rewrite every occurrence of one term into another."""

    old: Term
    new: Term

    def __post_init__(self):
        if isinstance(self.old, SidRef) or isinstance(self.new, SidRef):
            raise ValueError("sid references cannot be aligned")


_SLOT = re.compile(r"\{([^{}]*)\}")


def _single_slot(pattern: str, role: str) -> tuple[str, str, str]:
    slots = _SLOT.findall(pattern)
    if len(slots) != 1 or pattern.count("{") != 1 or pattern.count("}") != 1:
        raise BadTemplateError(f"{role} pattern must contain exactly one {{slot}}: {pattern!r}")
    prefix, rest = pattern.split("{", 1)
    _, suffix = rest.split("}", 1)
    return prefix, slots[0], suffix


@dataclass(frozen=True)
class Template:
    """Produce an IRI from a matching LocalId via a one-slot pattern.

    ``match`` is matched against the LocalId text (``{slot}`` captures), the
    capture is substituted into ``produce``. Example: match ``{code}``,
    produce ``http://sws.geonames.org/country/{code}``.
    """

    match: str
    produce: str

    def __post_init__(self):
        m = _single_slot(self.match, "match")
        p = _single_slot(self.produce, "produce")
        if m[1] != p[1]:
            raise BadTemplateError(f"match and produce must share the slot name: {self.match!r} vs {self.produce!r}")

    def apply(self, local: LocalId) -> Iri | None:
        prefix, slot, suffix = _single_slot(self.match, "match")
        text = local.text
        if not (text.startswith(prefix) and text.endswith(suffix)
                and len(text) >= len(prefix) + len(suffix)):
            return None
        captured = text[len(prefix):len(text) - len(suffix)]
        produced = self.produce.replace("{" + slot + "}", captured)
        try:
            return Iri(produced)
        except ValueError as e:
            raise BadTemplateError(f"template produced an invalid IRI: {produced!r}") from e


IdMapping = Union[ExplicitPair, Template]


@dataclass
class MergeRules:
    id_mappings: list[IdMapping] = field(default_factory=list)
    blank_node_policy: BlankNodePolicy = BlankNodePolicy.RENAME_APART
    edge_identity: EdgeIdentity = EdgeIdentity.DISTINCT


@dataclass
class MergeReport:
    statements_in_a: int = 0
    statements_in_b: int = 0
    statements_out: int = 0
    identifiers_aligned: int = 0
    blank_nodes_renamed: int = 0
    edges_collapsed: int = 0


def apply_alignment(term: Term, rules: MergeRules) -> Term:
    """Rewrite one term; the first matching rule wins, sid references never match."""
    if isinstance(term, SidRef):
        return term
    for rule in rules.id_mappings:
        if isinstance(rule, ExplicitPair):
            if term == rule.old:
                return rule.new
        else:
            if isinstance(term, LocalId):
                produced = rule.apply(term)
                if produced is not None:
                    return produced
    return term


def _blank_labels(statements) -> set[str]:
    out = set()
    for st in statements:
        for t in (st.src, st.value):
            if isinstance(t, BlankNode):
                out.add(t.label)
    return out


def merge(a: Store, b: Store, rules: MergeRules | None = None) -> tuple[Store, MergeReport]:
    """Merge ``b`` into a copy of ``a`` and report what happened.

    Copy detection runs before any rewriting, so merging a store with itself
    is the identity for every rules value. Blank labels that occur in copied
    statements keep their names (renaming their other occurrences would break
    co-reference with the copy); all other labels of ``b`` are renamed apart
    under RenameApart.
    """
    rules = rules or MergeRules()
    report = MergeReport(statements_in_a=len(a), statements_in_b=len(b))
    result = a.copy()

    b_statements = b.statements()
    copies: set[Sid] = set()
    for st in b_statements:
        existing = result.get(st.sid)
        if existing is not None and existing == st:
            copies.add(st.sid)

    blank_map: dict[str, str] = {}
    if rules.blank_node_policy is BlankNodePolicy.RENAME_APART:
        preserved = _blank_labels(st for st in b_statements if st.sid in copies)
        used = _blank_labels(a.statements()) | _blank_labels(b_statements)
        for label in sorted(_blank_labels(b_statements) - preserved):
            k = 1
            while f"{label}_{k}" in used:
                k += 1
            fresh = f"{label}_{k}"
            used.add(fresh)
            blank_map[label] = fresh

    aligned: set[Term] = set()

    def rewrite(t: Term) -> Term:
        r = apply_alignment(t, rules)
        if r != t:
            aligned.add(t)
            return r
        if isinstance(t, BlankNode) and t.label in blank_map:
            return BlankNode(blank_map[t.label])
        return t

    to_add: list[Statement] = []
    for st in b_statements:
        if st.sid in copies:
            continue
        rewritten = Statement(rewrite(st.src), rewrite(st.label), rewrite(st.value), st.sid)
        existing = result.get(st.sid)
        if existing is not None:
            if existing == rewritten:
                continue
            raise SidCollisionError(
                f"sid {st.sid} arrived with different content than the store holds"
            )
        to_add.append(rewritten)
    result.add_statements(to_add)

    report.identifiers_aligned = len(aligned)
    report.blank_nodes_renamed = len(blank_map)

    if rules.edge_identity is EdgeIdentity.COLLAPSE_IDENTICAL_CONTENT:
        result, n = _collapse_identical_content(result)
        report.edges_collapsed = n
    elif rules.edge_identity is EdgeIdentity.COLLAPSE_IDENTICAL_CONTENT_AND_PROPERTIES:
        n = _collapse_with_properties(result)
        report.edges_collapsed = n

    report.statements_out = len(result)
    return result, report


def _content_groups(store: Store) -> list[list[Sid]]:
    groups: dict[tuple, list[Sid]] = {}
    for st in store.statements():
        if is_ground(st):
            groups.setdefault(st.content, []).append(st.sid)
    return [sorted(g) for g in groups.values() if len(g) > 1]


def _collapse_identical_content(store: Store) -> tuple[Store, int]:
    """Unify content-identical ground statements onto the least sid."""
    sid_map: dict[Sid, Sid] = {}
    for group in _content_groups(store):
        survivor = group[0]
        for loser in group[1:]:
            sid_map[loser] = survivor
    if not sid_map:
        return store, 0

    def redirect(t: Term) -> Term:
        if isinstance(t, SidRef) and t.sid in sid_map:
            return SidRef(sid_map[t.sid])
        return t

    rebuilt = Store()
    rebuilt.add_statements(
        Statement(redirect(st.src), st.label, redirect(st.value), st.sid)
        for st in store.statements()
        if st.sid not in sid_map
    )
    return rebuilt, len(sid_map)


def _annotation_signature(store: Store, sid: Sid, _memo: dict | None = None) -> tuple:
    """Sid-abstracted canonical form of everything asserted about a statement.

    Two ground statements get equal signatures exactly when their annotation
    trees are isomorphic up to sid renaming (order-insensitive at each level).
    """
    memo = _memo if _memo is not None else {}

    def content_sig(s: Sid) -> tuple:
        st = store.get(s)
        return (tsig(st.src, s), ("t",) + term_key(st.label), tsig(st.value, s))

    def tsig(t: Term, here: Sid) -> tuple:
        if isinstance(t, SidRef):
            return ("ref", content_sig(t.sid))
        return ("t",) + term_key(t)

    def node_sig(s: Sid) -> tuple:
        if s in memo:
            return memo[s]
        entries = []
        for r in sorted(store.referrers(s)):
            st = store.get(r)
            src_part = ("@",) if st.src == SidRef(s) else tsig(st.src, s)
            val_part = ("@",) if st.value == SidRef(s) else tsig(st.value, s)
            entries.append((src_part, ("t",) + term_key(st.label), val_part, node_sig(r)))
        sig = tuple(sorted(entries))
        memo[s] = sig
        return sig

    return node_sig(sid)


def _collapse_with_properties(store: Store) -> int:
    """Unify groups only when every member carries the same annotation tree.

    Losers are removed together with their (duplicate) trees via cascade; a
    shared assertion annotating both a loser and a survivor goes with the
    loser.
    """
    collapsed = 0
    memo: dict = {}
    for group in _content_groups(store):
        sigs = {_annotation_signature(store, s, memo) for s in group}
        if len(sigs) != 1:
            continue
        for loser in group[1:]:
            store.delete_statement(loser)
            memo.clear()
        collapsed += len(group) - 1
    return collapsed


# --- rules files ----------------------------------------------------------


def load_rules(text: str) -> MergeRules:
    """Parse a JSON rules document.

    Shape: ``{"id_mappings": [{"pair": [old, new]} | {"template": {"match":
    ..., "produce": ...}}], "blank_node_policy": ..., "edge_identity": ...}``
    with pair terms written in OG-NQ term syntax.
    """
    from .formats.ognq import parse_term_text

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"rules file is not valid JSON: {e.msg}", line=e.lineno) from e
    if not isinstance(doc, dict):
        raise ParseError("rules file must hold a JSON object")
    unknown = set(doc) - {"id_mappings", "blank_node_policy", "edge_identity"}
    if unknown:
        raise ParseError(f"unknown rules keys: {sorted(unknown)}")

    mappings: list[IdMapping] = []
    for i, entry in enumerate(doc.get("id_mappings", [])):
        if not isinstance(entry, dict) or len(entry) != 1:
            raise ParseError(f"id_mappings[{i}] must be a one-key object")
        if "pair" in entry:
            pair = entry["pair"]
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ParseError(f"id_mappings[{i}].pair must be a two-element array")
            old, new = (parse_term_text(p) for p in pair)
            try:
                mappings.append(ExplicitPair(old, new))
            except ValueError as e:
                raise ParseError(f"id_mappings[{i}]: {e}") from e
        elif "template" in entry:
            t = entry["template"]
            if not (isinstance(t, dict) and set(t) == {"match", "produce"}):
                raise ParseError(f"id_mappings[{i}].template needs match and produce")
            mappings.append(Template(t["match"], t["produce"]))
        else:
            raise ParseError(f"id_mappings[{i}] must hold 'pair' or 'template'")

    def enum_of(cls, key, default):
        raw = doc.get(key)
        if raw is None:
            return default
        try:
            return cls(raw)
        except ValueError:
            raise ParseError(f"{key}: unknown value {raw!r}") from None

    return MergeRules(
        id_mappings=mappings,
        blank_node_policy=enum_of(BlankNodePolicy, "blank_node_policy", BlankNodePolicy.RENAME_APART),
        edge_identity=enum_of(EdgeIdentity, "edge_identity", EdgeIdentity.DISTINCT),
    )
