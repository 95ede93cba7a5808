"""Exact JSON encoding of the package's value types.

Rationals travel as strings ``"p/q"`` (``"p"`` when the denominator is 1);
plain JSON integers are accepted on input, floats are rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .certify import Certificate, Domain
from .linalg import Matrix, Witness, to_matrix
from .matpoly import MatPoly
from .moment import AtomicMeasure, CheckReport, MomentSeq


class ParseError(ValueError):
    pass


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(v: Any) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ParseError(f"expected a rational string or integer, got {v!r}")
    try:
        return Fraction(v.strip() if isinstance(v, str) else v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {v!r}") from exc


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m]


def matrix_from_json(v: Any) -> Matrix:
    if not isinstance(v, list) or not all(isinstance(row, list) for row in v):
        raise ParseError("matrix must be a list of rows")
    try:
        return to_matrix([[parse_rational(x) for x in row] for row in v])
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _index(v: Any, name: str = "alpha") -> tuple[int, ...]:
    if not isinstance(v, list) or not all(isinstance(a, int) and not isinstance(a, bool) and a >= 0 for a in v):
        raise ParseError(f"{name} must be a list of nonnegative integers")
    return tuple(v)


def _int(obj: dict, key: str, minimum: int = 0) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise ParseError(f"field {key!r} must be an integer >= {minimum}")
    return v


def _obj(v: Any, what: str) -> dict:
    if not isinstance(v, dict):
        raise ParseError(f"{what} must be a JSON object")
    return v


# polynomials


def poly_to_json(f: MatPoly) -> dict:
    return {
        "n": f.nvars,
        "t": f.size,
        "terms": [{"alpha": list(a), "matrix": matrix_to_json(m)} for a, m in f.items()],
    }


def poly_from_json(v: Any) -> MatPoly:
    """Accepts ``{"n", "t", "terms"}`` or a bare term list (shape inferred)."""
    if isinstance(v, list):
        if not v:
            raise ParseError("a bare term list must be nonempty; use {'n','t','terms'} for zero")
        terms = v
        first = _obj(terms[0], "term")
        n = len(_index(first.get("alpha")))
        t = len(matrix_from_json(first.get("matrix")))
    else:
        v = _obj(v, "polynomial")
        n, t = _int(v, "n"), _int(v, "t", 1)
        terms = v.get("terms", [])
        if not isinstance(terms, list):
            raise ParseError("'terms' must be a list")
    parsed = {}
    for term in terms:
        term = _obj(term, "term")
        alpha = _index(term.get("alpha"))
        if alpha in parsed:
            raise ParseError(f"duplicate monomial {list(alpha)}")
        parsed[alpha] = matrix_from_json(term.get("matrix"))
    try:
        return MatPoly(n, t, parsed)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# certificates


def domain_to_json(d: Domain) -> dict:
    return {"kind": d.kind, "n": d.nvars}


def domain_from_json(v: Any) -> Domain:
    v = _obj(v, "domain")
    try:
        return Domain(v.get("kind"), _int(v, "n", 1))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def certificate_to_json(c: Certificate) -> dict:
    return {
        "domain": domain_to_json(c.domain),
        "t": c.size,
        "terms": [{"alpha": list(a), "G": matrix_to_json(g)} for a, g in c.terms],
    }


def certificate_from_json(v: Any) -> Certificate:
    v = _obj(v, "certificate")
    domain = domain_from_json(v.get("domain"))
    t = _int(v, "t", 1)
    terms = v.get("terms")
    if not isinstance(terms, list):
        raise ParseError("'terms' must be a list")
    out = []
    for term in terms:
        term = _obj(term, "term")
        alpha = _index(term.get("alpha"))
        if len(alpha) != 2 * domain.nvars:
            raise ParseError(f"alpha {list(alpha)} must have length {2 * domain.nvars}")
        g = matrix_from_json(term.get("G"))
        if len(g) != t:
            raise ParseError(f"term {list(alpha)} has a {len(g)}x{len(g)} matrix, expected {t}x{t}")
        out.append((alpha, g))
    return Certificate(domain, t, tuple(out))


# measures and sequences


def measure_to_json(e: AtomicMeasure) -> dict:
    return {
        "n": e.nvars,
        "t": e.size,
        "atoms": [{"point": [format_rational(x) for x in p], "weight": matrix_to_json(w)} for p, w in e.atoms],
    }


def measure_from_json(v: Any) -> AtomicMeasure:
    v = _obj(v, "measure")
    n, t = _int(v, "n"), _int(v, "t", 1)
    atoms = v.get("atoms")
    if not isinstance(atoms, list):
        raise ParseError("'atoms' must be a list")
    parsed = []
    for atom in atoms:
        atom = _obj(atom, "atom")
        point = atom.get("point")
        if not isinstance(point, list):
            raise ParseError("atom point must be a list")
        parsed.append((tuple(parse_rational(x) for x in point), matrix_from_json(atom.get("weight"))))
    try:
        return AtomicMeasure(n, t, tuple(parsed))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def sequence_to_json(s: MomentSeq) -> dict:
    return {
        "n": s.nvars,
        "t": s.size,
        "level": s.level,
        "S": [{"alpha": list(a), "matrix": matrix_to_json(m)} for a, m in s.S.items()],
    }


def sequence_from_json(v: Any) -> MomentSeq:
    v = _obj(v, "sequence")
    n, t, level = _int(v, "n"), _int(v, "t", 1), _int(v, "level")
    entries = v.get("S")
    if not isinstance(entries, list):
        raise ParseError("'S' must be a list")
    parsed = {}
    for entry in entries:
        entry = _obj(entry, "sequence entry")
        alpha = _index(entry.get("alpha"))
        if alpha in parsed:
            raise ParseError(f"duplicate index {list(alpha)}")
        parsed[alpha] = matrix_from_json(entry.get("matrix"))
    try:
        return MomentSeq(n, t, level, parsed)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def witness_to_json(w: Witness) -> dict:
    return {"vector": [format_rational(x) for x in w.vector], "value": format_rational(w.value)}


def report_to_json(r: CheckReport) -> dict:
    out: dict[str, Any] = {"passed": r.passed, "level_checked": r.level_checked, "first_failure": None}
    if r.first_failure is not None:
        f = r.first_failure
        out["first_failure"] = {
            "index": list(f.index),
            "matrix": matrix_to_json(f.matrix),
            "witness": witness_to_json(f.witness),
        }
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
