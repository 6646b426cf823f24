"""JSON encodings of field specs, elements and polynomials."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .errors import ParseError
from .exact_arith import rational_str
from .finite_field import FiniteField, FqPoly
from .local_field import LFElement, LocalField


def element_json(x: LFElement) -> dict:
    return {"layers": [list(layer) for layer in x.layers()], "prec_pi": x.prec}


def field_from_dict(spec: dict, default_prec: Optional[int] = None) -> LocalField:
    try:
        p = int(spec["p"])
        f = int(spec.get("f", 1))
        eis = spec["eisenstein"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"field spec needs integer p, optional f and eisenstein: {exc}") from None
    if not isinstance(eis, list) or not eis:
        raise ParseError("eisenstein must be a non-empty list of coefficient lists")
    prec = spec.get("prec_pi", default_prec)
    modulus = spec.get("unram_modulus")
    return LocalField(p, f, eis, prec, unram_modulus=modulus, name=spec.get("name"))


def parse_field_spec(text: str, default_prec: Optional[int] = None) -> LocalField:
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(spec, dict):
        raise ParseError("field spec must be a JSON object")
    return field_from_dict(spec, default_prec)


def parse_element(K: LocalField, value: Any) -> LFElement:
    """An integer, the string "pi", or nested layers [[...], ...]."""
    if isinstance(value, str):
        text = value.strip()
        if text == "pi":
            return K.pi.with_prec(K.prec)
        try:
            value = json.loads(text)
        except json.JSONDecodeError:
            raise ParseError(f"cannot read element {value!r}") from None
    if isinstance(value, bool):
        raise ParseError("booleans are not field elements")
    if isinstance(value, int):
        return K(value)
    if isinstance(value, dict) and "layers" in value:
        value = value["layers"]
    if isinstance(value, list) and all(isinstance(v, list) for v in value):
        try:
            return K(value)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"cannot read element {value!r}")


def parse_ff_poly(F: FiniteField, value: Any) -> FqPoly:
    """Little-endian coefficients, each an int or a list of F_p coordinates."""
    if isinstance(value, str):
        try:
            value = json.loads(value)
        except json.JSONDecodeError:
            raise ParseError(f"cannot read polynomial {value!r}") from None
    if not isinstance(value, list):
        raise ParseError("polynomial must be a list of coefficients")
    coeffs = []
    for c in value:
        if isinstance(c, int):
            coeffs.append(F(c))
        elif isinstance(c, list):
            coeffs.append(F(tuple(c) + (0,) * (F.f - len(c))))
        else:
            raise ParseError(f"bad coefficient {c!r}")
    return FqPoly(F, coeffs)


def jsonable(x: Any) -> Any:
    """Recursively convert results into JSON-ready values."""
    if isinstance(x, Fraction):
        return rational_str(x)
    if isinstance(x, LFElement):
        return element_json(x)
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x
