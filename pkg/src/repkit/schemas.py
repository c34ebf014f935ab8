"""JSON schemas for every CLI output, keyed by verb."""

_INT = {"type": "integer"}
_NUM = {"type": "number"}
_STR = {"type": "string"}
_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": _INT}}


def _obj(props: dict, required=None) -> dict:
    return {"type": "object", "properties": props,
            "required": list(props) if required is None else required,
            "additionalProperties": False}


_CLASS = _obj({"representative": _INT, "size": _INT, "angle": _NUM})
_IRREP = _obj({"name": _STR, "dim": _INT})
_ENTRY = {"type": "array", "items": _INT, "minItems": 5, "maxItems": 5}

SCHEMAS = {
    "group": _obj({
        "group": _STR, "short": _STR, "order": _INT, "is_binary": {"type": "boolean"},
        "generators": {"type": "array", "items": _INT},
        "classes": {"type": "array", "items": _CLASS},
    }),
    "chartable": _obj({
        "group": _STR, "order": _INT,
        "classes": {"type": "array", "items": _obj({"size": _INT, "angle": _NUM})},
        "irreps": {"type": "array", "items": _IRREP},
        "chi": {"type": "array", "items": {"type": "array", "items": {
            "type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}}},
    }),
    "fusion": _obj({
        "group": _STR, "irreps": {"type": "array", "items": _STR},
        "n": {"type": "array", "items": _INT_MATRIX},
    }),
    "mckay": _obj({
        "group": _STR, "nodes": {"type": "array", "items": _IRREP},
        "adjacency": _INT_MATRIX, "ade_type": _STR,
    }),
    "restrict": _obj({
        "group": _STR, "twice_j": _INT, "irreps": {"type": "array", "items": _STR},
        "multiplicities": {"type": "array", "items": _INT},
    }),
    "action": _obj({
        "group": _STR, "irreps": {"type": "array", "items": _STR},
        "matrices": {"type": "object", "additionalProperties": _INT_MATRIX,
                     "propertyNames": {"pattern": "^[0-9]+$"}},
    }),
    "module-axiom": _obj({
        "group": _STR, "twice_j_max": _INT, "checked": _INT,
        "violations": {"type": "array", "items": {"type": "array", "items": _INT}},
        "ok": {"type": "boolean"},
    }),
    "induce": _obj({
        "group": _STR, "irrep": _STR, "twice_j_max": _INT,
        "row": {"type": "object", "additionalProperties": _INT,
                "propertyNames": {"pattern": "^[0-9]+$"}},
    }),
    "timefunctor": {"oneOf": [
        _obj({"signature": {"const": "euclidean"},
              "label": _obj({"twice_jL": _INT, "twice_jR": _INT})}),
        _obj({"signature": {"const": "lorentzian"}, "gamma": _NUM,
              "label": _obj({"twice_k": _INT, "k": _NUM, "rho": _NUM})}),
    ]},
    "colax": _obj({"n": _INT, "image": _INT, "injective": {"type": "boolean"}}),
    "product-module": _obj({
        "group": _STR, "twice_j_max": _INT, "entries": _INT,
        "counterexamples": {"type": "array", "items": _ENTRY},
        "strict": {"type": "array", "items": _ENTRY},
        "ok": {"type": "boolean"},
    }),
    "homs": _obj({"count": _INT,
                  "witnesses": {"type": "array", "items": {"type": "array", "items": _INT}}}),
    "ample": _obj({"vertices": _INT, "edges": _INT, "ample": {"type": "boolean"}}),
    "search-generations": {"type": "array", "items": _STR},
}

DIAGRAM_INPUT = _obj({
    "vertices": {"type": "integer", "minimum": 1},
    "edges": {"type": "array", "items": {
        "type": "array", "items": {"type": "integer", "minimum": 0},
        "minItems": 2, "maxItems": 2}},
}, required=["vertices"])
