"""JSON schemas for the file formats read by the command line."""

import jsonschema

_RATIONAL = {"type": ["string", "integer"]}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _RATIONAL}}
_FORMAT = {"const": 1}

CATEGORY = {
    "type": "object",
    "required": ["objects", "morphisms", "composition", "identities"],
    "properties": {
        "format": _FORMAT,
        "objects": {"type": "array", "items": {"type": ["string", "integer"]}},
        "morphisms": {"type": "array", "items": {
            "type": "object", "required": ["id", "src", "dst"],
            "properties": {"id": {"type": "string"}}}},
        "composition": {"type": "array", "items": {
            "type": "array", "minItems": 3, "maxItems": 3, "items": {"type": "string"}}},
        "identities": {"type": "object", "additionalProperties": {"type": "string"}},
    },
}

GROUP = {
    "type": "object",
    "required": ["table"],
    "properties": {
        "format": _FORMAT,
        "order": {"type": "integer", "minimum": 1},
        "table": {"type": "array", "minItems": 1,
                  "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    },
}

FAMILY = {"type": "array", "minItems": 1,
          "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}}

MODULE = {
    "type": "object",
    "required": ["dims"],
    "properties": {
        "format": _FORMAT,
        "variance": {"enum": ["co", "contra", "covariant", "contravariant"]},
        "dims": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
        "action": {"type": "object", "additionalProperties": _MATRIX},
    },
}

FREE_COMPLEX = {
    "type": "object",
    "required": ["degrees"],
    "properties": {
        "format": _FORMAT,
        "degrees": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["cells"],
            "properties": {"cells": {"type": "array", "items": {
                "type": "object", "required": ["id", "object"]}}}}},
        "boundary": {"type": "object", "additionalProperties": {
            "type": "array", "items": {"type": "array", "items": {
                "type": "object", "additionalProperties": _RATIONAL}}}},
    },
}

MODULE_COMPLEX = {
    "type": "object",
    "required": ["degrees"],
    "properties": {
        "format": _FORMAT,
        "variance": {"enum": ["co", "contra", "covariant", "contravariant"]},
        "degrees": {"type": "object", "additionalProperties": MODULE},
        "differentials": {"type": "object", "additionalProperties": {
            "type": "object", "additionalProperties": _MATRIX}},
    },
}

SCHEMAS = {
    "category": CATEGORY,
    "group": GROUP,
    "family": FAMILY,
    "module": MODULE,
    "free-complex": FREE_COMPLEX,
    "module-complex": MODULE_COMPLEX,
}


class SchemaViolation(ValueError):
    def __init__(self, kind: str, location: str, message: str):
        ValueError.__init__(self, "%s: %s at %s" % (kind, message, location))
        self.kind = kind
        self.location = location


def validate(data, kind: str):
    """Raise :class:`SchemaViolation` naming the first offending JSON path."""
    validator = jsonschema.Draft7Validator(SCHEMAS[kind])
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        loc = "$" + "".join("[%r]" % p if isinstance(p, int) else ".%s" % p for p in e.absolute_path)
        raise SchemaViolation(kind, loc, e.message)
