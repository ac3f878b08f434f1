"""Lossless JSON encoding for every domain object.

All numbers are string-encoded (integers as "5", rationals as "3/2") so no
precision is lost and output bytes are reproducible: canonical_dumps fixes
key order and separators, and reports embed the SHA-256 of their exact
input bytes.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import ParseError
from .exact_lattice import ExactMatrix
from .monomial_extension import BlockStructure, MonomialExtension
from .monomialization import TransformStep
from .ordered_groups import Block, GroupStructure


def enc_int(n):
    return str(int(n))


def dec_int(s):
    try:
        return int(s)
    except (TypeError, ValueError):
        raise ParseError(f"not an integer: {s!r}")


def enc_frac(x):
    return str(Fraction(x))


def dec_frac(s):
    try:
        return Fraction(s)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational: {s!r}")


def enc_matrix(m: ExactMatrix):
    return [[enc_int(x) for x in row] for row in m.entries]


def dec_matrix(data):
    try:
        return ExactMatrix.from_rows([[dec_int(x) for x in row]
                                      for row in data])
    except TypeError:
        raise ParseError("matrix must be a list of rows")


def enc_structure(s: GroupStructure):
    return {"blocks": [{"quad": b.quad} for b in s.blocks]}


def dec_structure(data):
    try:
        blocks = tuple(Block(quad=b.get("quad")) for b in data["blocks"])
    except (TypeError, KeyError, AttributeError):
        raise ParseError("malformed group structure")
    return GroupStructure(blocks)


def enc_element(el):
    return [[enc_frac(c) for c in comp] for comp in el.coords]


def dec_element(structure, data):
    try:
        coords = tuple(tuple(dec_frac(c) for c in comp) for comp in data)
    except TypeError:
        raise ParseError("malformed group element")
    return structure.element(coords)


def enc_extension(me: MonomialExtension):
    return {
        "blocks": {
            "r": enc_int(me.blocks.r),
            "t": [enc_int(x) for x in me.blocks.t],
            "s": [enc_int(x) for x in me.blocks.s],
        },
        "structure": enc_structure(me.structure),
        "A": enc_matrix(me.A),
        "unit_markers": list(me.unit_markers),
        "y_values": [enc_element(v) for v in me.y_values],
    }


def dec_extension(data):
    try:
        bs = BlockStructure(
            r=dec_int(data["blocks"]["r"]),
            t=tuple(dec_int(x) for x in data["blocks"]["t"]),
            s=tuple(dec_int(x) for x in data["blocks"]["s"]),
        )
        structure = dec_structure(data["structure"])
        A = dec_matrix(data["A"])
        markers = tuple(str(m) for m in data["unit_markers"])
        values = tuple(dec_element(structure, v) for v in data["y_values"])
    except (TypeError, KeyError):
        raise ParseError("malformed monomial extension")
    return MonomialExtension(blocks=bs, A=A, unit_markers=markers,
                             y_values=values)


def enc_step(step: TransformStep):
    out = {"kind": step.kind, "row": enc_int(step.row)}
    if step.target is not None:
        out["target"] = enc_int(step.target)
    if step.blocks is not None:
        out["blocks"] = [enc_int(x) for x in step.blocks]
    if step.exponents:
        out["exponents"] = [[enc_int(r), enc_int(e)]
                            for r, e in step.exponents]
    return out


def dec_step(data):
    try:
        return TransformStep(
            kind=str(data["kind"]),
            row=dec_int(data["row"]),
            target=dec_int(data["target"]) if "target" in data else None,
            blocks=(tuple(dec_int(x) for x in data["blocks"])
                    if "blocks" in data else None),
            exponents=tuple((dec_int(r), dec_int(e))
                            for r, e in data.get("exponents", [])),
        )
    except (TypeError, KeyError):
        raise ParseError("malformed transform step")


def enc_trace(trace):
    return {
        "initial": enc_extension(trace.initial),
        "steps": [enc_step(s) for s in trace.steps],
        "final": enc_extension(trace.final.extension),
    }


def canonical_dumps(obj):
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def sha256_hex(data: bytes):
    return hashlib.sha256(data).hexdigest()


def load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}")
