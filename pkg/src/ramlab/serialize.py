"""JSON encodings of data and reports, with the published schemas."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from .algebra import FieldParams, gf
from .conductors import GroupRepresentation
from .covers import EffectiveDivisor, parse_place
from .errors import DomainError
from .groups import FiniteGroup
from .local import GaloisDatum, GroupElement, LaurentSeries, build_from_family, unif_exponents
from .ramification import (HerbrandFunction, RamificationFiltration, UpperFiltration,
                           discriminant_valuation, different_valuation)

SCHEMA_VERSION = "1.0"

_INT = {"type": "integer"}
_FRAC = {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2}
_NULLABLE_INT = {"type": ["integer", "null"]}

FIELD_SCHEMA = {
    "type": "object",
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "n": {"type": "integer", "minimum": 1},
        "q": {"type": "integer", "minimum": 2},
        "modulus": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
    "anyOf": [{"required": ["p"]}, {"required": ["q"]}],
}

SERIES_SCHEMA = {
    "type": "object",
    "properties": {
        "lead": _NULLABLE_INT,
        "prec": _NULLABLE_INT,
        "coeffs": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    },
    "required": ["lead", "coeffs"],
}

DATUM_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "GaloisDatum",
    "type": "object",
    "properties": {
        "field": FIELD_SCHEMA,
        "e": {"type": "integer", "minimum": 1},
        "w": _INT,
        "minpoly": {"type": "array", "items": SERIES_SCHEMA, "minItems": 2},
        "group": {"type": "array", "minItems": 1, "items": {
            "type": "object",
            "properties": {"id": _INT, "action": {"type": "array", "items": SERIES_SCHEMA}},
            "required": ["id", "action"]}},
        "unif": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2},
        "label": {"type": "string"},
    },
    "required": ["field", "e", "w", "minpoly", "group"],
}

FAMILY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "FamilyShorthand",
    "type": "object",
    "properties": {
        "family": {"enum": ["artin_schreier", "tame_kummer", "trivial"]},
        "p": {"type": "integer", "minimum": 2},
        "q": {"type": "integer", "minimum": 2},
        "field": FIELD_SCHEMA,
        "m": {"type": "integer", "minimum": 1},
        "e": {"type": "integer", "minimum": 1},
        "c": {"anyOf": [{"type": "integer", "minimum": 1},
                        {"type": "array", "items": {"type": "integer", "minimum": 0}}]},
    },
    "required": ["family"],
}

INPUT_SCHEMA = {"$schema": "https://json-schema.org/draft/2020-12/schema", "title": "DatumInput",
                "anyOf": [FAMILY_SCHEMA, DATUM_SCHEMA]}

REPRESENTATION_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "GroupRepresentation",
    "$defs": {"rep": {
        "type": "object",
        "properties": {
            "kind": {"enum": ["character", "permutation", "regular", "trivial", "direct_sum"]},
            "values": {"type": "array", "items": _INT},
            "perms": {"type": "array", "items": {"type": "array", "items": _INT}},
            "parts": {"type": "array", "items": {"$ref": "#/$defs/rep"}},
        },
        "required": ["kind"]}},
    "$ref": "#/$defs/rep",
}

DIVISOR_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "EffectiveDivisor",
    "type": "object",
    "properties": {"entries": {"type": "array", "items": {
        "type": "object",
        "properties": {"place": {"anyOf": [{"const": "inf"}, {"type": "array", "items": _INT}]},
                       "mult": {"type": "integer", "minimum": 0}},
        "required": ["place", "mult"]}}},
    "required": ["entries"],
}

_REPORT = {"schema_version": {"const": SCHEMA_VERSION}}

FILTRATION_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "FiltrationReport",
    "type": "object",
    "properties": {
        **_REPORT,
        "breaks_lower": {"type": "array", "items": _INT},
        "breaks_upper": {"type": "array", "items": _FRAC},
        "d_values": {"type": "object", "additionalProperties": _INT},
        "different": _INT,
        "discriminant": _INT,
        "phi": {"type": "object", "properties": {"breakpoints": {"type": "array", "items": _FRAC},
                                                 "slopes": {"type": "array", "items": _FRAC}},
                "required": ["breakpoints", "slopes"]},
    },
    "required": ["schema_version", "breaks_lower", "breaks_upper", "d_values", "different",
                 "discriminant", "phi"],
}

HERBRAND_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "HerbrandReport",
    "type": "object",
    "properties": {
        **_REPORT,
        "phi": FILTRATION_REPORT_SCHEMA["properties"]["phi"],
        "psi": FILTRATION_REPORT_SCHEMA["properties"]["phi"],
        "samples": {"type": "array", "items": {"type": "array", "items": _FRAC, "minItems": 2, "maxItems": 2}},
    },
    "required": ["schema_version", "phi", "psi"],
}

CONDUCTOR_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ConductorReport",
    "type": "object",
    "properties": {**_REPORT, "swan": {"type": "integer", "minimum": 0},
                   "epsilon": {"type": "integer", "minimum": 0}, "artin": {"type": "integer", "minimum": 0}},
    "required": ["schema_version", "swan"],
}

CENSUS_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "CensusReport",
    "type": "object",
    "properties": {
        **_REPORT,
        "count_classes": {"type": "integer", "minimum": 0},
        "count_fields": {"type": "integer", "minimum": 0},
        "count_constant": {"type": "integer", "minimum": 0},
        "classes": {"type": "array", "items": {"anyOf": [
            {"$ref": "#/$defs/function"},
            {"type": "object", "required": ["exponents", "unit", "function"], "properties": {
                "exponents": {"type": "array", "items": {"type": "object", "required": ["place", "n"], "properties": {
                    "place": {"anyOf": [{"const": "inf"}, {"type": "array", "items": _INT}]}, "n": _INT}}},
                "unit": _INT,
                "function": {"$ref": "#/$defs/function"}}},
        ]}},
    },
    "$defs": {"function": {"type": "object", "required": ["num", "den"], "properties": {
        "num": {"type": "array", "items": _INT}, "den": {"type": "array", "items": _INT}}}},
    "required": ["schema_version", "count_classes", "count_fields", "count_constant", "classes"],
}

ERROR_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ErrorReport",
    "type": "object",
    "properties": {**_REPORT, "error": {"type": "object", "properties": {
        "kind": {"type": "string"}, "message": {"type": "string"}, "exit_code": _INT},
        "required": ["kind", "message", "exit_code"]}},
    "required": ["schema_version", "error"],
}

SCHEMAS = {
    "datum": DATUM_SCHEMA,
    "family": FAMILY_SCHEMA,
    "input": INPUT_SCHEMA,
    "representation": REPRESENTATION_SCHEMA,
    "divisor": DIVISOR_SCHEMA,
    "filtration_report": FILTRATION_REPORT_SCHEMA,
    "herbrand_report": HERBRAND_REPORT_SCHEMA,
    "conductor_report": CONDUCTOR_REPORT_SCHEMA,
    "census_report": CENSUS_REPORT_SCHEMA,
    "error": ERROR_SCHEMA,
}


def validate(obj: Any, name: str) -> None:
    try:
        jsonschema.validate(obj, SCHEMAS[name])
    except jsonschema.ValidationError as exc:
        raise DomainError(f"{name} does not match its schema: {exc.message}") from None


def write_schemas(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, schema in SCHEMAS.items():
        path = directory / f"{name}.schema.json"
        path.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n")
        out.append(path)
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def frac(x) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


# -- fields and series --------------------------------------------------------


def field_from_json(obj: dict) -> FieldParams:
    return FieldParams.from_json(obj)


def _element(F, v) -> int:
    if isinstance(v, list):
        return F.from_coords(v)
    v = int(v)
    if not 0 <= v < F.q:
        raise DomainError(f"{v} is not an element code of F_{F.q}")
    return v


def series_to_json(s: LaurentSeries) -> dict:
    F = s.field
    return {"lead": s.lead, "prec": s.prec, "coeffs": [list(F.coords(c)) for c in s.coeffs]}


def series_from_json(obj: dict, params: FieldParams) -> LaurentSeries:
    F = gf(params)
    coeffs = [_element(F, c) for c in obj["coeffs"]]
    lead = obj["lead"]
    if lead is None and coeffs:
        raise DomainError("a series with coefficients needs a lead exponent")
    return LaurentSeries(F, lead, coeffs, obj.get("prec"))


# -- data ---------------------------------------------------------------------


def datum_to_json(d: GaloisDatum) -> dict:
    return {
        "field": d.params.to_json(),
        "e": d.e,
        "w": d.w,
        "minpoly": [series_to_json(c) for c in d.minpoly],
        "group": [{"id": g.id, "action": [series_to_json(c) for c in g.action]} for g in d.group],
        "unif": list(d.unif),
        "label": d.label,
    }


def _family_field(obj: dict) -> FieldParams:
    if "field" in obj:
        return FieldParams.from_json(obj["field"])
    if "q" in obj:
        params = FieldParams.from_q(int(obj["q"]))
        if "p" in obj and int(obj["p"]) != params.p:
            raise DomainError(f"q={obj['q']} is not a power of p={obj['p']}")
        return params
    if "p" in obj:
        return FieldParams.standard(int(obj["p"]))
    raise DomainError("family shorthand needs a field, q or p")


def datum_from_json(obj: dict) -> GaloisDatum:
    """Either a full datum or a family shorthand such as {"family": "artin_schreier", "p": 2, "m": 1}."""
    validate(obj, "input")
    if "family" in obj:
        params = _family_field(obj)
        kw = {k: obj[k] for k in ("m", "e") if k in obj}
        if "c" in obj:
            kw["c"] = _element(gf(params), obj["c"])
        return build_from_family(params, obj["family"], **kw)
    params = FieldParams.from_json(obj["field"])
    minpoly = tuple(series_from_json(s, params) for s in obj["minpoly"])
    e, w = int(obj["e"]), int(obj["w"])
    group = []
    for g in obj["group"]:
        group.append(GroupElement(int(g["id"]), tuple(series_from_json(s, params) for s in g["action"])))
    unif = tuple(obj["unif"]) if "unif" in obj else unif_exponents(e, w)
    d = GaloisDatum(params, e, w, minpoly, tuple(group), unif, obj.get("label", "custom"))
    G = d.group_table
    group = tuple(GroupElement(g.id, g.action, G.element_order(g.id)) for g in d.group)
    return GaloisDatum(params, e, w, minpoly, group, unif, d.label)


def representation_from_json(obj: dict, group: FiniteGroup) -> GroupRepresentation:
    validate(obj, "representation")
    kind = obj["kind"]
    if kind == "character":
        return GroupRepresentation.character(group, obj.get("values", []))
    if kind == "trivial":
        return GroupRepresentation.trivial(group)
    if kind == "regular":
        return GroupRepresentation.regular(group)
    if kind == "permutation":
        return GroupRepresentation.permutation(group, obj.get("perms", []))
    return GroupRepresentation.direct_sum(*(representation_from_json(p, group) for p in obj.get("parts", [])))


def divisor_from_json(obj: dict, params: FieldParams) -> EffectiveDivisor:
    validate(obj, "divisor")
    entries = []
    for item in obj["entries"]:
        place = item["place"]
        text = "inf" if place == "inf" else "[" + ",".join(str(c) for c in place) + "]"
        entries.append((parse_place(text, params), int(item["mult"])))
    return EffectiveDivisor(tuple(entries))


# -- reports ------------------------------------------------------------------


def herbrand_to_json(h: HerbrandFunction) -> dict:
    return {"breakpoints": [frac(b) for b in h.breakpoints], "slopes": [frac(s) for s in h.slopes]}


def filtration_report(f: RamificationFiltration, u: UpperFiltration) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "breaks_lower": list(f.breaks),
        "breaks_upper": [frac(b) for b in u.breaks],
        "d_values": {str(k): v for k, v in sorted(f.d_values.items())},
        "different": different_valuation(f),
        "discriminant": discriminant_valuation(f),
        "phi": herbrand_to_json(u.phi),
    }
