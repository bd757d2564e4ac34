"""Parsers and serializers for the supported wire formats."""

from .lpgjsonl import parse_lpg_jsonl, serialize_lpg_jsonl
from .ntriples import parse_ntriples, serialize_ntriples
from .ognq import parse_ognq, parse_term_text, serialize_ognq
from .turtlestar import parse_turtle_star, serialize_turtle_star

__all__ = [
    "parse_lpg_jsonl",
    "serialize_lpg_jsonl",
    "parse_ntriples",
    "serialize_ntriples",
    "parse_ognq",
    "parse_term_text",
    "serialize_ognq",
    "parse_turtle_star",
    "serialize_turtle_star",
]
