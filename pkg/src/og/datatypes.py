"""Literals, datatype validation, and the flat list literal.

The literal space is unified across the RDF and property-graph sides:

* RDF-style typed literals, including language-tagged strings. Ill-typed
  literals (lexical form outside the datatype's space) are storable; they
  carry ``well_typed = False`` instead of being rejected.
* A flat list datatype ``urn:og:List`` whose canonical lexical form is
  ``[e1, e2, ...]``. Lists hold scalars only (text, integer, decimal,
  boolean); nesting is not representable.

:func:`coerce_lpg_value` and :func:`coerce_to_lpg` translate between Python
values as a property graph sees them and literals as RDF sees them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

from .errors import ParseError, UnsupportedValueError, WrongDatatypeError
from .terms import Iri

XSD = "http://www.w3.org/2001/XMLSchema#"
XSD_STRING = Iri(XSD + "string")
XSD_INTEGER = Iri(XSD + "integer")
XSD_DECIMAL = Iri(XSD + "decimal")
XSD_DOUBLE = Iri(XSD + "double")
XSD_BOOLEAN = Iri(XSD + "boolean")
XSD_DATE = Iri(XSD + "date")
XSD_DATETIME = Iri(XSD + "dateTime")
RDF_LANG_STRING = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#langString")

#: Reserved datatype IRI of the flat list literal.
OG_LIST = Iri("urn:og:List")

_LANG_TAG = re.compile(r"^[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*$")
_INTEGER = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL = re.compile(r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$")
_DOUBLE = re.compile(r"^([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?|[+-]?INF|NaN)$")
_DATE = re.compile(r"^(-?[0-9]{4,})-([0-9]{2})-([0-9]{2})(Z|[+-][0-9]{2}:[0-9]{2})?$")
_DATETIME = re.compile(
    r"^(-?[0-9]{4,})-([0-9]{2})-([0-9]{2})"
    r"T([0-9]{2}):([0-9]{2}):([0-9]{2})(\.[0-9]+)?"
    r"(Z|[+-][0-9]{2}:[0-9]{2})?$"
)


@dataclass(frozen=True, slots=True)
class Literal:
    """A typed literal value.

    ``language`` is present exactly when the datatype is rdf:langString.
    ``well_typed`` is derived at construction and never rejects: storing an
    ill-typed literal is allowed, views and coercions treat it as text.
    """

    lexical: str
    datatype: Iri = XSD_STRING
    language: str | None = None
    well_typed: bool = field(init=False)

    def __post_init__(self):
        if self.language is not None:
            if self.datatype != RDF_LANG_STRING:
                raise ValueError("language tag requires the rdf:langString datatype")
            if not _LANG_TAG.match(self.language):
                raise ValueError(f"bad language tag: {self.language!r}")
        elif self.datatype == RDF_LANG_STRING:
            raise ValueError("rdf:langString requires a language tag")
        object.__setattr__(self, "well_typed", validate(self.lexical, self.datatype))


def _days_in_month(year: int, month: int) -> int:
    if month in (1, 3, 5, 7, 8, 10, 12):
        return 31
    if month in (4, 6, 9, 11):
        return 30
    leap = year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)
    return 29 if leap else 28


def _valid_year(text: str) -> bool:
    digits = text.lstrip("-")
    return len(digits) == 4 or not digits.startswith("0")


def _valid_zone(zone: str | None) -> bool:
    if zone is None or zone == "Z":
        return True
    hh, mm = int(zone[1:3]), int(zone[4:6])
    return (hh < 14 and mm <= 59) or (hh == 14 and mm == 0)


def _valid_date_parts(year: str, month: str, day: str) -> bool:
    if not _valid_year(year):
        return False
    m, d = int(month), int(day)
    return 1 <= m <= 12 and 1 <= d <= _days_in_month(int(year), m)


def validate(lexical: str, datatype: Iri) -> bool:
    """Whether the lexical form belongs to the datatype's lexical space.

    Unknown datatypes validate as True (no basis to reject).
    """
    if datatype in (XSD_STRING, RDF_LANG_STRING):
        return True
    if datatype == XSD_INTEGER:
        return bool(_INTEGER.match(lexical))
    if datatype == XSD_DECIMAL:
        return bool(_DECIMAL.match(lexical))
    if datatype == XSD_DOUBLE:
        return bool(_DOUBLE.match(lexical))
    if datatype == XSD_BOOLEAN:
        return lexical in ("true", "false", "1", "0")
    if datatype == XSD_DATE:
        m = _DATE.match(lexical)
        return bool(m) and _valid_date_parts(m[1], m[2], m[3]) and _valid_zone(m[4])
    if datatype == XSD_DATETIME:
        m = _DATETIME.match(lexical)
        if not m or not _valid_date_parts(m[1], m[2], m[3]) or not _valid_zone(m[8]):
            return False
        hh, mi, ss = int(m[4]), int(m[5]), int(m[6])
        if hh == 24:
            # midnight-at-end-of-day form: 24:00:00 with zero fraction only
            frac = m[7] or ".0"
            return mi == 0 and ss == 0 and set(frac[1:]) == {"0"}
        return hh <= 23 and mi <= 59 and ss <= 59
    if datatype == OG_LIST:
        try:
            _parse_list(lexical)
            return True
        except ParseError:
            return False
    return True


# --- the flat list literal ---------------------------------------------

Scalar = str | int | bool | Decimal

_LIST_WS = " \t\r\n"
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "r": "\r", "t": "\t"}
_NUMBER = re.compile(r"[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)")


def _parse_list(text: str) -> list[Scalar]:
    i, n = 0, len(text)

    def skip_ws(i: int) -> int:
        while i < n and text[i] in _LIST_WS:
            i += 1
        return i

    def fail(msg: str, at: int):
        raise ParseError(f"{msg} at offset {at} in list literal {text!r}")

    i = skip_ws(i)
    if i >= n or text[i] != "[":
        fail("expected '['", i)
    i = skip_ws(i + 1)
    elements: list[Scalar] = []
    if i < n and text[i] == "]":
        i += 1
    else:
        while True:
            if i >= n:
                fail("unterminated list", i)
            c = text[i]
            if c == '"':
                chars = []
                i += 1
                while True:
                    if i >= n:
                        fail("unterminated string", i)
                    c = text[i]
                    if c == '"':
                        i += 1
                        break
                    if c == "\\":
                        if i + 1 >= n or text[i + 1] not in _ESCAPES:
                            fail("bad escape", i)
                        chars.append(_ESCAPES[text[i + 1]])
                        i += 2
                    else:
                        chars.append(c)
                        i += 1
                elements.append("".join(chars))
            elif text.startswith("true", i):
                elements.append(True)
                i += 4
            elif text.startswith("false", i):
                elements.append(False)
                i += 5
            else:
                m = _NUMBER.match(text, i)
                if not m:
                    fail("expected list element", i)
                token = m.group(0)
                i = m.end()
                if "." in token:
                    try:
                        elements.append(Decimal(token))
                    except InvalidOperation:
                        fail("bad decimal", m.start())
                else:
                    elements.append(int(token))
            i = skip_ws(i)
            if i < n and text[i] == ",":
                i = skip_ws(i + 1)
                continue
            if i < n and text[i] == "]":
                i += 1
                break
            fail("expected ',' or ']'", i)
    i = skip_ws(i)
    if i != n:
        fail("trailing content after list", i)
    return elements


def _canon_decimal(d: Decimal) -> str:
    if not d.is_finite():
        raise UnsupportedValueError("list decimals must be finite")
    if d == 0:
        return "0.0"
    s = format(d.normalize(), "f")
    if "." not in s:
        s += ".0"
    return s


def _canon_text(s: str) -> str:
    out = ['"']
    for c in s:
        if c == "\\":
            out.append("\\\\")
        elif c == '"':
            out.append('\\"')
        elif c == "\n":
            out.append("\\n")
        elif c == "\r":
            out.append("\\r")
        elif c == "\t":
            out.append("\\t")
        else:
            out.append(c)
    out.append('"')
    return "".join(out)


def _canon_element(e: Scalar) -> str:
    # bool first: it is an int subclass
    if isinstance(e, bool):
        return "true" if e else "false"
    if isinstance(e, int):
        return str(e)
    if isinstance(e, Decimal):
        return _canon_decimal(e)
    if isinstance(e, float):
        return _canon_decimal(Decimal(repr(e)))
    if isinstance(e, str):
        return _canon_text(e)
    raise UnsupportedValueError(f"list elements must be scalars, got {type(e).__name__}")


def list_fold(elements) -> Literal:
    """Fold scalars into a list literal in canonical lexical form.

    Canonical form: ``[e1, e2]`` with ", " separators, quoted and escaped
    text, canonical integers, decimals with at least one fraction digit, and
    ``true``/``false``. Floats are accepted and become decimal elements.
    """
    body = ", ".join(_canon_element(e) for e in elements)
    return Literal(f"[{body}]", OG_LIST)


def list_unfold(literal: Literal) -> list[Scalar]:
    """Parse a list literal back into its elements.

    Tolerates arbitrary whitespace between tokens; raises WrongDatatypeError
    for non-list literals and ParseError for lexical forms outside the
    grammar.
    """
    if literal.datatype != OG_LIST:
        raise WrongDatatypeError(f"expected {OG_LIST.text}, got {literal.datatype.text}")
    return _parse_list(literal.lexical)


# --- property-graph value coercion --------------------------------------


@dataclass
class CoercionTally:
    """Counts lossy steps taken while moving literals to the LPG side."""

    language_tags_dropped: int = 0
    ill_typed_as_text: int = 0
    other_as_text: int = 0


def coerce_lpg_value(value) -> Literal:
    """The literal a property-graph value denotes.

    Strings, booleans, integers, floats, and flat lists of those are
    supported; anything else (None, maps, nested lists, non-finite floats)
    raises UnsupportedValueError.
    """
    if isinstance(value, bool):
        return Literal("true" if value else "false", XSD_BOOLEAN)
    if isinstance(value, int):
        return Literal(str(value), XSD_INTEGER)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise UnsupportedValueError("non-finite numbers are not representable")
        return Literal(repr(value), XSD_DOUBLE)
    if isinstance(value, str):
        return Literal(value, XSD_STRING)
    if isinstance(value, Decimal):
        return Literal(_canon_decimal(value), XSD_DECIMAL)
    if isinstance(value, (list, tuple)):
        for e in value:
            if isinstance(e, (list, tuple, dict)):
                raise UnsupportedValueError("lists hold scalars only, no nesting")
        return list_fold(value)
    raise UnsupportedValueError(f"no property-graph reading for {type(value).__name__}")


def coerce_to_lpg(literal: Literal, tally: CoercionTally | None = None):
    """The Python value a literal shows on the property-graph side.

    Lossy cases are counted on ``tally`` when one is supplied: language tags
    are dropped, ill-typed literals and literals with no property-graph
    primitive (unknown datatypes, dates) flow through as their lexical text.
    """
    tally = tally if tally is not None else CoercionTally()
    if not literal.well_typed:
        tally.ill_typed_as_text += 1
        return literal.lexical
    if literal.language is not None:
        tally.language_tags_dropped += 1
        return literal.lexical
    dt = literal.datatype
    if dt == XSD_STRING:
        return literal.lexical
    if dt == XSD_INTEGER:
        return int(literal.lexical)
    if dt == XSD_BOOLEAN:
        return literal.lexical in ("true", "1")
    if dt in (XSD_DOUBLE, XSD_DECIMAL):
        # float() accepts every xsd:double form, INF and NaN included
        return float(literal.lexical)
    if dt == OG_LIST:
        return [float(e) if isinstance(e, Decimal) else e for e in _parse_list(literal.lexical)]
    tally.other_as_text += 1
    return literal.lexical
