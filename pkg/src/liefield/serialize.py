"""JSON forms of fields, subalgebras and root data.

Rationals travel as strings (``"p/q"``) so nothing is lost to floats.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffring import ExpMonomial, ExpPoly, GaussianRational
from .vfield import VectorField


def q(x) -> str:
    return str(Fraction(x))


def field_to_json(X: VectorField) -> dict:
    coeffs = []
    for c in X.coeffs:
        terms = []
        for mono, v in c.items():
            g = GaussianRational.coerce(v)
            terms.append({"re": q(g.re), "im": q(g.im), "pow": list(mono.pow),
                          "freq": [q(f) for f in mono.freq]})
        coeffs.append({"terms": terms})
    return {"dim": X.dim, "coeffs": coeffs}


def field_from_json(obj: dict) -> VectorField:
    try:
        dim = int(obj["dim"])
        coeffs = obj["coeffs"]
        if len(coeffs) != dim:
            raise ValueError(f"{len(coeffs)} coefficient slots for dimension {dim}")
        out = []
        for slot in coeffs:
            terms = []
            for t in slot["terms"]:
                mono = ExpMonomial(tuple(Fraction(f) for f in t["freq"]), tuple(int(p) for p in t["pow"]))
                terms.append((mono, GaussianRational(Fraction(t["re"]), Fraction(t.get("im", "0")))))
            out.append(ExpPoly(dim, terms))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed field JSON: {exc}") from exc
    return VectorField(out)


def subalgebra_to_json(A, killing_det=None, types=None) -> dict:
    triplets = []
    for (a, b), coords in sorted(A.structure.items()):
        if a < b:
            for c, v in sorted(coords.items()):
                triplets.append([a, b, c, str(v)])
    out = {
        "ambient_dim": A.ambient_dim,
        "dim": A.dim,
        "basis": [{"text": str(X), "field": field_to_json(X)} for X in A.basis],
        "structure_constants": triplets,
    }
    if killing_det is not None:
        out["killing_det"] = str(killing_det)
    if types is not None:
        out["type"] = types
    return out
