"""JSON encodings shared by the CLI and the catalog.

All exact numbers are strings: rationals as "p/q" (or "p" when q = 1),
FieldElements as {"re", "im", "ext", "d"} with the optional extension pair,
polynomials as ascending coefficient arrays, rational functions as
{"num", "den"}, operators as {"coeffs"} indexed by derivative order.
Numeric (inexact) values are tagged {"approx": true, ...}.
"""

from __future__ import annotations

from .field import FieldElement, Q
from .poly import Polynomial
from .ratfunc import RationalFunction
from .diffop import DiffOp


def encode_rational(q) -> str:
    return str(q.numerator) if q.denominator == 1 else \
        f"{q.numerator}/{q.denominator}"


def decode_rational(text: str):
    return Q(text)


def encode_field_element(el: FieldElement) -> dict:
    out = {"re": encode_rational(el.ar), "im": encode_rational(el.ai)}
    if el.d is not None:
        out["ext"] = [encode_rational(el.br), encode_rational(el.bi)]
        out["d"] = {"re": encode_rational(el.d[0]),
                    "im": encode_rational(el.d[1])}
    return out


def decode_field_element(data) -> FieldElement:
    if isinstance(data, str):
        return FieldElement.from_rational(decode_rational(data))
    re = decode_rational(data.get("re", "0"))
    im = decode_rational(data.get("im", "0"))
    if "ext" in data:
        br = decode_rational(data["ext"][0])
        bi = decode_rational(data["ext"][1])
        d = data["d"]
        return FieldElement.make(re, im, br, bi,
                                 (decode_rational(d["re"]),
                                  decode_rational(d["im"])))
    return FieldElement.make(re, im)


def encode_polynomial(p: Polynomial) -> list:
    return [encode_field_element(c) for c in p.coeffs]


def decode_polynomial(data) -> Polynomial:
    return Polynomial([decode_field_element(c) for c in data])


def encode_rational_function(f: RationalFunction) -> dict:
    return {"num": encode_polynomial(f.num), "den": encode_polynomial(f.den)}


def decode_rational_function(data) -> RationalFunction:
    return RationalFunction(decode_polynomial(data["num"]),
                            decode_polynomial(data["den"]))


def encode_diffop(op: DiffOp) -> dict:
    return {"coeffs": [encode_rational_function(c) for c in op.coeffs]}


def decode_diffop(data) -> DiffOp:
    return DiffOp([decode_rational_function(c) for c in data["coeffs"]])


def encode_local_point(point) -> dict:
    if isinstance(point, FieldElement):
        return encode_field_element(point)
    return {"approx": True, "re": point.real, "im": point.imag}


def encode_residual_report(report) -> dict:
    return {
        "residual": encode_rational_function(report.residual),
        "commutes": report.commutes,
        "local_points": [encode_local_point(p) for p in report.local_points],
    }
