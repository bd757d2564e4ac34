"""Term taxonomy and statement identifiers.

Every datum in a store is a statement ``src -label-> value`` carrying a
globally unique identifier (sid). Terms come in five variants: IRIs, local
identifiers (the property-graph style of naming), blank nodes, references to
other statements by sid, and literals (defined in :mod:`og.datatypes`).
"""

from __future__ import annotations

import re
import uuid
from dataclasses import dataclass

Sid = uuid.UUID

#: Reserved namespace for rendering sids as IRIs on RDF-only surfaces.
SID_IRI_PREFIX = "urn:og:sid:"

_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_BLANK_LABEL = re.compile(r"^[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_])?$")
_SID_TEXT = re.compile(r"^[0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12}$")


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI."""

    text: str

    def __post_init__(self):
        if not _SCHEME.match(self.text):
            raise ValueError(f"not an absolute IRI: {self.text!r}")


@dataclass(frozen=True, slots=True)
class LocalId:
    """A store-local identifier, the way property-graph sources name things.

    Verbatim text, not subject to IRI syntax; views may expose it as an IRI
    under a configured namespace.
    """

    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("local identifier must be non-empty")
        if any(c in "<>" or c.isspace() for c in self.text):
            raise ValueError(f"local identifier contains '<', '>' or whitespace: {self.text!r}")


@dataclass(frozen=True, slots=True)
class BlankNode:
    """A document-scoped anonymous node."""

    label: str

    def __post_init__(self):
        if not _BLANK_LABEL.match(self.label):
            raise ValueError(f"bad blank node label: {self.label!r}")


@dataclass(frozen=True, slots=True)
class SidRef:
    """A reference to another statement by its sid."""

    sid: Sid


def sid_text(sid: Sid) -> str:
    """Canonical text form: lowercase hyphenated hex."""
    return str(sid)


def parse_sid_text(text: str) -> Sid:
    """Strict inverse of :func:`sid_text` (rejects uppercase and variants)."""
    if not _SID_TEXT.match(text):
        raise ValueError(f"not a canonical sid: {text!r}")
    return uuid.UUID(text)


def sid_iri(sid: Sid) -> Iri:
    return Iri(SID_IRI_PREFIX + str(sid))


def sid_from_iri_text(text: str) -> Sid | None:
    """The sid encoded in an ``urn:og:sid:`` IRI, or None for other IRIs."""
    if not text.startswith(SID_IRI_PREFIX):
        return None
    return parse_sid_text(text[len(SID_IRI_PREFIX):])


class SidFactory:
    """Issues sids that stay unique for the lifetime of one store.

    Random (uuid4) by default. With a seed, sids are sequential starting at
    seed+1 so runs are reproducible; seed 0 issues
    00000000-0000-0000-0000-000000000001 first. Identifiers loaded from files
    are reserved so a seeded counter can never re-issue them, and sids are
    never reused after deletion.
    """

    def __init__(self, seed: int | None = None):
        self._counter = seed
        self._seen: set[Sid] = set()

    @property
    def seeded(self) -> bool:
        return self._counter is not None

    def reserve(self, sid: Sid) -> None:
        self._seen.add(sid)

    def fresh(self) -> Sid:
        while True:
            if self._counter is None:
                sid = uuid.uuid4()
            else:
                self._counter += 1
                sid = uuid.UUID(int=self._counter)
            if sid not in self._seen:
                self._seen.add(sid)
                return sid
