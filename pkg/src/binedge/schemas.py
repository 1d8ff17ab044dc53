"""JSON schemas for everything the command line prints with --format json."""

_int_or_null = {"type": ["integer", "null"]}
_verdict = {"enum": ["match", "mismatch", "not-computable"]}

GRAPH = {
    "type": "object",
    "required": ["n", "edges"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "edges": {"type": "array",
                  "items": {"type": "array", "items": {"type": "integer", "minimum": 1},
                            "minItems": 2, "maxItems": 2}},
        "expr": {"type": "string"},
        "provenance": {"type": "object"},
    },
}

INVARIANT_REPORT = {
    "type": "object",
    "required": ["expr", "n", "reg", "projdim", "extremal_betti", "cm_type", "notes"],
    "properties": {
        "expr": {"type": "string"},
        "n": {"type": "integer"},
        "reg": _int_or_null,
        "projdim": _int_or_null,
        "extremal_betti": _int_or_null,
        "cm_type": _int_or_null,
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

ORACLE = {
    "type": "object",
    "required": ["n", "nvars", "mode", "reg", "projdim", "extremal_betti", "cm_type", "corners"],
    "properties": {
        "n": {"type": "integer"},
        "nvars": {"type": "integer"},
        "mode": {"enum": ["full", "corner"]},
        "reg": _int_or_null,
        "projdim": _int_or_null,
        "extremal_betti": _int_or_null,
        "cm_type": _int_or_null,
        "corners": {"type": "array",
                    "items": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3}},
        "notes": {"type": "array", "items": {"type": "string"}},
        "timings": {"type": "object", "additionalProperties": {"type": "number"}},
    },
}

CHECK = {
    "type": "object",
    "required": ["name", "verdict"],
    "properties": {"name": {"type": "string"}, "verdict": _verdict, "detail": {"type": "string"}},
}

VERIFICATION = {
    "type": "object",
    "required": ["expr", "mode", "closed", "oracle", "verdicts", "checks", "discrepancies", "timings",
                 "exit_code"],
    "properties": {
        "expr": {"type": "string"},
        "mode": {"enum": ["closed", "oracle", "both"]},
        "closed": {"anyOf": [INVARIANT_REPORT, {"type": "null"}]},
        "oracle": {"anyOf": [ORACLE, {"type": "null"}]},
        "verdicts": {"type": "object", "additionalProperties": _verdict},
        "checks": {"type": "array", "items": CHECK},
        "discrepancies": {"type": "array", "items": {"type": "object"}},
        "missing": {"type": "array", "items": {"enum": ["reg", "projdim", "extremal_betti", "cm_type"]}},
        "notes": {"type": "array", "items": {"type": "string"}},
        "timings": {"type": "object", "additionalProperties": {"type": "number"}},
        "exit_code": {"enum": [0, 2, 3]},
    },
}

BETTI = {
    "type": "object",
    "required": ["subject", "nvars", "char", "complete", "entries"],
    "properties": {
        "subject": {"enum": ["J", "inJ"]},
        "nvars": {"type": "integer"},
        "char": {"type": "integer"},
        "complete": {"type": "boolean"},
        "entries": {"type": "object", "patternProperties": {r"^\d+,\d+$": {"type": "integer", "minimum": 1}},
                    "additionalProperties": False},
    },
}

HILBERT = {
    "type": "object",
    "required": ["p", "h", "d", "a"],
    "properties": {
        "p": {"type": "array", "items": {"type": "integer"}},
        "h": {"type": "array", "items": {"type": "integer"}},
        "d": {"type": "integer"},
        "a": {"type": "integer"},
    },
}

HILBERT_REPORT = {
    "type": "object",
    "required": ["expr", "hilbert"],
    "properties": {
        "expr": {"type": "string"},
        "hilbert": HILBERT,
        "closed_form": {"anyOf": [HILBERT, {"type": "null"}]},
        "lemmas": {"type": ["object", "null"]},
        "hilbert_function": {"type": "array", "items": {"type": "integer"}},
    },
}

SCAN = {
    "type": "object",
    "required": ["template", "rows"],
    "properties": {
        "template": {"type": "string"},
        "rows": {"type": "array", "items": {
            "type": "object",
            "required": ["params", "expr", "closed", "oracle", "verdicts", "conjecture"],
            "properties": {
                "params": {"type": "object"},
                "expr": {"type": "string"},
                "closed": {"type": ["object", "null"]},
                "oracle": {"type": ["object", "null"]},
                "verdicts": {"type": "object", "additionalProperties": _verdict},
                "conjecture": {"enum": ["holds", "fails", "untested", None]},
                "error": {"type": "string"},
            },
        }},
    },
}
