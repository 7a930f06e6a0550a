"""JSON interchange for polytopes, group rings and chain complexes.

All schemas carry a "format": 1 version field on output. Integers whose
magnitude does not fit in a signed 64-bit word are serialized as decimal
strings; both forms are accepted on input. Rational coefficients are
always strings "p/q" (or "p").

Schemas:
  polytope         {"rank": n, "vertices": [[int, ...], ...]}
  virtual polytope {"pos": <polytope>, "neg": <polytope>}
  group            {"k": int, "twist": [[int, ...], ...]}
  ring element     [{"coeff": "p/q", "v": [int x k], "m": int}, ...]
  matrix           2D array of ring elements
  chain complex    {"group": <group>, "ranks": [int, ...],
                    "boundaries": [<matrix>, ...]}   (top degree first)
"""

from __future__ import annotations

import json
from fractions import Fraction

from .grouprings import GroupRingElement, TwistedGroup
from .lattice import IntegralPolytope, hull
from .torsion import BasedChainComplex, ChainComplexError
from .vpolytope import VirtualPolytope

FORMAT_VERSION = 1
_INT64_MAX = 2**63 - 1


class JsonInputError(ValueError):
    """Malformed or schema-violating input (CLI exit status 2)."""


class DomainError(ValueError):
    """Well-formed input outside an operation's domain (CLI exit status 1)."""


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def encode_int(x: int):
    return x if -_INT64_MAX <= x <= _INT64_MAX else str(x)


def decode_int(obj) -> int:
    if isinstance(obj, bool):
        raise JsonInputError("expected an integer, got a boolean")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        try:
            return int(obj, 10)
        except ValueError:
            raise JsonInputError(f"not an integer: {obj!r}") from None
    raise JsonInputError(f"expected an integer, got {type(obj).__name__}")


def encode_fraction(c: Fraction) -> str:
    return str(c)


def decode_fraction(obj) -> Fraction:
    if isinstance(obj, bool) or isinstance(obj, float):
        raise JsonInputError("coefficients must be exact rationals as strings")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError):
            raise JsonInputError(f"not a rational number: {obj!r}") from None
    raise JsonInputError(f"expected a rational, got {type(obj).__name__}")


def _int_list(obj, what: str) -> list[int]:
    if not isinstance(obj, list):
        raise JsonInputError(f"{what} must be an array")
    return [decode_int(x) for x in obj]


# ---------------------------------------------------------------------------
# polytopes
# ---------------------------------------------------------------------------

def encode_polytope(p: IntegralPolytope) -> dict:
    return {"rank": p.rank,
            "vertices": [[encode_int(c) for c in v] for v in p.vertices]}


def decode_polytope(obj) -> IntegralPolytope:
    if not isinstance(obj, dict):
        raise JsonInputError("polytope must be an object")
    rank = decode_int(obj.get("rank"))
    verts = obj.get("vertices")
    if not isinstance(verts, list) or not verts:
        raise JsonInputError("polytope needs a nonempty vertices array")
    pts = []
    for v in verts:
        pt = _int_list(v, "vertex")
        if len(pt) != rank:
            raise JsonInputError("vertex length does not match rank")
        pts.append(tuple(pt))
    return hull(pts)


def encode_virtual(x: VirtualPolytope) -> dict:
    return {"pos": encode_polytope(x.pos), "neg": encode_polytope(x.neg)}


def decode_virtual(obj) -> VirtualPolytope:
    if not isinstance(obj, dict):
        raise JsonInputError("virtual polytope must be an object")
    if "pos" not in obj or "neg" not in obj:
        raise JsonInputError("virtual polytope needs pos and neg parts")
    pos = decode_polytope(obj["pos"])
    neg = decode_polytope(obj["neg"])
    if pos.rank != neg.rank:
        raise JsonInputError("pos and neg parts have different ranks")
    return VirtualPolytope(pos, neg)


# ---------------------------------------------------------------------------
# groups, ring elements, matrices
# ---------------------------------------------------------------------------

def encode_group(g: TwistedGroup) -> dict:
    return {"k": g.k, "twist": [[encode_int(x) for x in row] for row in g.twist]}


def decode_group(obj) -> TwistedGroup:
    if not isinstance(obj, dict):
        raise JsonInputError("group must be an object")
    k = decode_int(obj.get("k"))
    twist = obj.get("twist")
    if not isinstance(twist, list):
        raise JsonInputError("group twist must be an array of rows")
    rows = [_int_list(r, "twist row") for r in twist]
    try:
        return TwistedGroup.make(k, rows)
    except ValueError as e:
        raise JsonInputError(str(e)) from None


def encode_element(a: GroupRingElement) -> list:
    return [{"coeff": encode_fraction(c),
             "v": [encode_int(x) for x in v],
             "m": encode_int(m)}
            for (v, m), c in a.terms]


def decode_element(obj, k: int) -> GroupRingElement:
    if not isinstance(obj, list):
        raise JsonInputError("ring element must be an array of terms")
    d = {}
    for term in obj:
        if not isinstance(term, dict):
            raise JsonInputError("ring element term must be an object")
        v = tuple(_int_list(term.get("v"), "fiber exponent"))
        if len(v) != k:
            raise JsonInputError("fiber exponent length does not match k")
        m = decode_int(term.get("m"))
        c = decode_fraction(term.get("coeff"))
        d[(v, m)] = d.get((v, m), Fraction(0)) + c
    return GroupRingElement.from_dict(k, d)


def encode_matrix(m) -> list:
    return [[encode_element(e) for e in row] for row in m]


def decode_matrix(obj, k: int):
    if not isinstance(obj, list):
        raise JsonInputError("matrix must be an array of rows")
    rows = []
    for r in obj:
        if not isinstance(r, list):
            raise JsonInputError("matrix row must be an array")
        rows.append([decode_element(e, k) for e in r])
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise JsonInputError("matrix rows have unequal lengths")
    return rows


# ---------------------------------------------------------------------------
# chain complexes (boundaries listed top degree first)
# ---------------------------------------------------------------------------

def encode_complex(c: BasedChainComplex) -> dict:
    return {"group": encode_group(c.group),
            "ranks": [encode_int(r) for r in c.ranks],
            "boundaries": [encode_matrix(c.boundary(n))
                           for n in range(len(c.ranks) - 1, 0, -1)]}


def decode_complex(obj) -> BasedChainComplex:
    if not isinstance(obj, dict):
        raise JsonInputError("chain complex must be an object")
    g = decode_group(obj.get("group"))
    ranks = _int_list(obj.get("ranks"), "ranks")
    bnds = obj.get("boundaries")
    if not isinstance(bnds, list):
        raise JsonInputError("boundaries must be an array of matrices")
    mats = [decode_matrix(m, g.k) for m in bnds]
    mats.reverse()  # stored internally with d_1 first
    try:
        return BasedChainComplex.make(g, ranks, mats)
    except ChainComplexError as e:
        raise JsonInputError(str(e)) from None


# ---------------------------------------------------------------------------
# documents
# ---------------------------------------------------------------------------

def loads(text: str):
    """Parse a JSON document; errors carry the byte offset."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        offset = len(text[:e.pos].encode("utf-8"))
        raise JsonInputError(
            f"malformed JSON at byte offset {offset}: {e.msg}") from None


def dumps(payload: dict) -> str:
    """Serialize a result document with the format version stamped in."""
    doc = {"format": FORMAT_VERSION}
    doc.update(payload)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
