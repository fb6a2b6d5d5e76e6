"""JSON documents for instances, dispersals, certificates and generated instances.

Numbers are read exactly: JSON decimals become the rational they spell and
strings such as ``"3/4"`` are accepted anywhere a number is. Non-integer
rationals are written as ``"p/q"`` strings so a round trip is lossless.
"""

from __future__ import annotations

import hashlib
import json
import math
from decimal import Decimal
from fractions import Fraction
from typing import Any

from ._exact import fraction_str, to_fraction
from .geometry import Arc, Ball, Box, Interval, WeightedInstance
from .oracle import Certificate


class ParseError(ValueError):
    """Malformed input document."""


def _num(value, what="value") -> Fraction:
    if isinstance(value, bool) or value is None:
        raise ParseError(f"{what}: expected a number, got {value!r}")
    try:
        return to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{what}: cannot read {value!r} as a rational") from exc


def _vec(value, what):
    if not isinstance(value, (list, tuple)) or not value:
        raise ParseError(f"{what}: expected a coordinate list")
    return tuple(_num(x, what) for x in value)


def emit_number(value):
    """Integers stay JSON integers; other rationals become ``"p/q"`` strings."""
    value = to_fraction(value)
    return value.numerator if value.denominator == 1 else fraction_str(value)


def loads(text: str) -> Any:
    """``json.loads`` with exact decimals and rejection of NaN/Infinity."""

    def bad_constant(name):
        raise ParseError(f"non-finite number {name} not allowed")

    try:
        return json.loads(text, parse_float=Decimal, parse_constant=bad_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def _parse_object(kind, raw, circumference, index):
    what = f"objects[{index}]"
    if not isinstance(raw, dict):
        raise ParseError(f"{what}: expected an object")
    try:
        if kind in ("unit_interval", "interval"):
            length = _num(raw.get("length", 1), what + ".length")
            return Interval(_num(raw.get("centre"), what + ".centre"), length)
        if kind == "unit_arc":
            if circumference is None:
                raise ParseError("arc instances need a circumference")
            if "start" in raw:
                start = _num(raw["start"], what + ".start")
            elif "angle" in raw:
                start = _num(raw["angle"], what + ".angle") * circumference / Fraction(2 * math.pi)
            else:
                raise ParseError(f"{what}: arcs need a start")
            return Arc(start, circumference, _num(raw.get("length", 1), what + ".length"))
        if kind == "box2d":
            return Box(_vec(raw.get("centre"), what + ".centre"), _num(raw.get("side"), what + ".side"))
        if kind == "ball2d":
            return Ball(_vec(raw.get("centre"), what + ".centre"), _num(raw.get("radius"), what + ".radius"))
    except ParseError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what}: {exc}") from exc
    raise ParseError(f"unknown kind {kind!r}")


def instance_from_doc(doc: Any) -> WeightedInstance:
    """Build an instance from a parsed JSON document.

    Besides the ``objects`` list, two shorthands are accepted: ``centres``
    for unit intervals and ``starts`` for unit arcs, with an optional
    parallel ``weights`` list.
    """
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    kind = doc.get("kind", "unit_interval")
    circumference = _num(doc["circumference"], "circumference") if "circumference" in doc else None
    if "objects" in doc:
        raws = doc["objects"]
    elif "centres" in doc:
        raws = [{"centre": c} for c in doc["centres"]]
    elif "starts" in doc:
        raws = [{"start": s} for s in doc["starts"]]
    else:
        raise ParseError("instance has no objects")
    if not isinstance(raws, list) or not raws:
        raise ParseError("objects must be a nonempty list")
    objects = tuple(_parse_object(kind, raw, circumference, i) for i, raw in enumerate(raws))
    if "weights" in doc:
        weights = [_num(w, "weights") for w in doc["weights"]]
    elif any("weight" in raw for raw in raws):
        weights = [_num(raw.get("weight", 1), f"objects[{i}].weight") for i, raw in enumerate(raws)]
    else:
        weights = None
    try:
        return WeightedInstance(objects, weights, kind, doc.get("metric", "L1"))
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def _object_doc(obj) -> dict:
    if isinstance(obj, Interval):
        return {"centre": emit_number(obj.centre), "length": emit_number(obj.length)}
    if isinstance(obj, Arc):
        return {"start": emit_number(obj.start), "length": emit_number(obj.length)}
    if isinstance(obj, Box):
        return {"centre": [emit_number(x) for x in obj.centre], "side": emit_number(obj.side)}
    return {"centre": [emit_number(x) for x in obj.centre], "radius": emit_number(obj.radius)}


def instance_to_doc(instance: WeightedInstance, provenance=None) -> dict:
    doc: dict = {"kind": instance.kind}
    if instance.kind == "unit_arc":
        doc["circumference"] = emit_number(instance.circumference)
    objects = []
    for i, (obj, w) in enumerate(zip(instance.objects, instance.weights)):
        entry = _object_doc(obj)
        if not instance.is_unweighted:
            entry["weight"] = emit_number(w)
        if provenance is not None:
            entry["provenance"] = provenance[i]
        objects.append(entry)
    doc["objects"] = objects
    doc["metric"] = instance.metric
    return doc


def load_instance(path) -> WeightedInstance:
    with open(path, encoding="utf-8") as fh:
        return instance_from_doc(loads(fh.read()))


def dispersal_from_doc(doc: Any) -> tuple:
    """A dispersal is a list of numbers (coordinate lists in 2-D), bare or under ``"dispersal"``."""
    if isinstance(doc, dict):
        doc = doc.get("dispersal")
    if not isinstance(doc, list):
        raise ParseError("dispersal must be a list")
    return tuple(_vec(d, "dispersal") if isinstance(d, list) else _num(d, "dispersal") for d in doc)


def dispersal_to_doc(dispersal) -> list:
    return [[emit_number(x) for x in d] if isinstance(d, tuple) else emit_number(d) for d in dispersal]


def certificate_from_doc(doc: Any) -> Certificate:
    """Certificate document: ``instance``, ``threshold``, ``slots`` and 1-based ``assignment``."""
    if not isinstance(doc, dict):
        raise ParseError("certificate must be a JSON object")
    for key in ("instance", "threshold", "slots", "assignment"):
        if key not in doc:
            raise ParseError(f"certificate lacks {key!r}")
    inst = instance_from_doc(doc["instance"])
    if inst.kind not in ("unit_interval", "interval") or any(o.length != 1 for o in inst.objects):
        raise ParseError("certificates cover unit intervals only")
    assignment = doc["assignment"]
    if not isinstance(assignment, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in assignment):
        raise ParseError("assignment must be a list of integers")
    try:
        return Certificate(
            inst.centres, inst.weights, _num(doc["threshold"], "threshold"),
            tuple(_num(s, "slots") for s in doc["slots"]), tuple(assignment),
        )
    except ParseError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def certificate_to_doc(cert: Certificate) -> dict:
    inst = WeightedInstance.unit_intervals(cert.centres, cert.weights)
    return {
        "instance": instance_to_doc(inst),
        "threshold": emit_number(cert.threshold),
        "slots": [emit_number(s) for s in cert.slots],
        "assignment": list(cert.assignment),
    }


def digest(doc: Any) -> str:
    """SHA-256 of the canonical (sorted, compact) JSON rendering."""
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canon.encode()).hexdigest()


def write_hard_instance(inst, fh) -> int:
    """Stream a generated instance as an instance document with provenance; returns the object count.

    Objects are written one by one so full-resolution barrier lattices never
    sit in memory.
    """
    kind = {"interval": "interval", "square": "box2d", "disk": "ball2d"}[inst.shape]
    header = {
        "kind": kind,
        "metric": "L1",
        "threshold": emit_number(inst.threshold),
        "parameters": {k: emit_number(v) if isinstance(v, Fraction) else v for k, v in inst.params.items()},
        "values": list(inst.problem.values),
    }
    fh.write("{\n")
    for key, value in header.items():
        fh.write(f"  {json.dumps(key)}: {json.dumps(value)},\n")
    fh.write('  "objects": [')
    count = 0
    for obj, prov in inst.iter_objects():
        entry = _object_doc(obj)
        entry["provenance"] = prov
        fh.write(("\n    " if count == 0 else ",\n    ") + json.dumps(entry, separators=(", ", ": ")))
        count += 1
    fh.write("\n  ]\n}\n")
    return count
