"""Strict JSON reading and writing for regions, lattices and reports.

Numbers are exact rationals written as strings ("3", "-1/2").  Plain JSON
integers are accepted on input; floats, exponents and anything else are
rejected with the path of the offending field.  Unknown keys are errors.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .criterion import PairJustification, Rule, TilingVerdict
from .errors import InvariantViolation, ParseError
from .geometry import EdgePair, PolygonalRegion, Rational2, SimplePolygon
from .lattice import Lattice, QuasiPeriodicSet, TranslatedLattice
from .oracle import CoverageReport, CoverageWitness
from .spectral import ConvexClassification, Orientation, QuasiPeriodicityCertificate

LatticeDoc = Union[Lattice, TranslatedLattice, QuasiPeriodicSet]

_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")


class _Float(str):
    """Marker for a JSON float literal, kept as text so the error can name it."""


def _reject_constant(name: str):
    return _Float(name)


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_Float, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None


def load_file(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}", file=str(path)) from None
    try:
        return loads(text)
    except ParseError as exc:
        exc.details["file"] = str(path)
        raise


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# --- scalars -----------------------------------------------------------------


def parse_rational(value: Any, path: str) -> Fraction:
    if isinstance(value, _Float):
        raise ParseError(f"non-rational numeral {value}; write rationals as strings like \"1/2\"", field=path)
    if isinstance(value, bool):
        raise ParseError("expected a rational, got a boolean", field=path)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL.fullmatch(value):
            raise ParseError(f"not a rational numeral: {value!r}", field=path)
        num, _, den = value.partition("/")
        if den and int(den) == 0:
            raise ParseError(f"zero denominator in {value!r}", field=path)
        return Fraction(int(num), int(den) if den else 1)
    raise ParseError(f"expected a rational, got {type(value).__name__}", field=path)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def parse_point(value: Any, path: str) -> Rational2:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError("expected a point [x, y]", field=path)
    return Rational2(parse_rational(value[0], f"{path}[0]"), parse_rational(value[1], f"{path}[1]"))


def format_point(p: Rational2) -> list[str]:
    return [format_rational(p.x), format_rational(p.y)]


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError("expected an integer", field=path)
    return value


def _object(value: Any, path: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(value, dict):
        raise ParseError("expected a JSON object", field=path or "$")
    for key in value:
        if key not in required and key not in optional:
            raise ParseError(f"unknown field {key!r}", field=_join(path, key))
    for key in sorted(required):
        if key not in value:
            raise ParseError(f"missing field {key!r}", field=_join(path, key))
    return value


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise ParseError("expected a JSON array", field=path)
    return value


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


# --- regions -----------------------------------------------------------------


def region_from_json(doc: Any) -> PolygonalRegion:
    _object(doc, "", {"polygons"})
    rings = _list(doc["polygons"], "polygons")
    comps = []
    for i, ring in enumerate(rings):
        where = f"polygons[{i}]"
        pts = [parse_point(p, f"{where}[{j}]") for j, p in enumerate(_list(ring, where))]
        comps.append(SimplePolygon.at(pts, where))
    return PolygonalRegion(tuple(comps))


def region_to_json(region: PolygonalRegion) -> dict:
    return {"polygons": [[format_point(p) for p in c.vertices] for c in region.components]}


# --- lattices ----------------------------------------------------------------


def _basis(value: Any, path: str) -> Lattice:
    cols = _list(value, path)
    if len(cols) != 2:
        raise ParseError("basis needs exactly two column vectors", field=path)
    v1, v2 = (parse_point(c, f"{path}[{k}]") for k, c in enumerate(cols))
    try:
        return Lattice(v1, v2)
    except InvariantViolation as exc:
        exc.field = path
        raise


def _translated(doc: dict, path: str) -> Lattice | TranslatedLattice:
    lat = _basis(doc["basis"], _join(path, "basis"))
    if "offset" not in doc:
        return lat
    return TranslatedLattice(lat, parse_point(doc["offset"], _join(path, "offset")))


def lattice_from_json(doc: Any) -> LatticeDoc:
    """A lattice, a translated lattice (``offset`` given) or a quasi-periodic set."""
    if isinstance(doc, dict) and "parts" in doc:
        _object(doc, "", {"parts"})
        parts = []
        for i, part in enumerate(_list(doc["parts"], "parts")):
            where = f"parts[{i}]"
            _object(part, where, {"basis"}, {"offset", "multiplicity"})
            lat = _translated(part, where)
            mult = _int(part.get("multiplicity", 1), f"{where}.multiplicity")
            parts.append((lat, mult))
        return QuasiPeriodicSet(tuple(parts))
    _object(doc, "", {"basis"}, {"offset"})
    return _translated(doc, "")


def lattice_to_json(lat: LatticeDoc) -> dict:
    if isinstance(lat, QuasiPeriodicSet):
        return {"parts": [dict(lattice_to_json(p), multiplicity=m) for p, m in lat.parts]}
    if isinstance(lat, TranslatedLattice):
        return {"basis": [format_point(v) for v in lat.lattice.basis], "offset": format_point(lat.offset)}
    return {"basis": [format_point(v) for v in lat.basis]}


# --- edge pairs and verdicts -------------------------------------------------


def pair_to_json(pair: EdgePair) -> dict:
    return {
        "e": format_point(pair.e),
        "tau": format_point(pair.tau),
        "midpoints": [format_point(m) for m in pair.midpoints],
    }


def pair_from_json(doc: Any, path: str) -> EdgePair:
    _object(doc, path, {"e", "tau", "midpoints"})
    e = parse_point(doc["e"], _join(path, "e"))
    tau = parse_point(doc["tau"], _join(path, "tau"))
    mids = _list(doc["midpoints"], _join(path, "midpoints"))
    if len(mids) != 2:
        raise ParseError("expected two midpoints", field=_join(path, "midpoints"))
    m = tuple(parse_point(p, f"{path}.midpoints[{k}]") for k, p in enumerate(mids))
    return EdgePair(e, tau, m, e.norm_sq())


def justification_to_json(j: PairJustification) -> dict:
    out = {"rule": j.rule.value, "pair": pair_to_json(j.pair)}
    if j.theta is not None:
        out["theta"] = format_rational(j.theta)
    return out


def justification_from_json(doc: Any, path: str) -> PairJustification:
    _object(doc, path, {"rule", "pair"}, {"theta"})
    try:
        rule = Rule(doc["rule"])
    except ValueError:
        raise ParseError(f"unknown rule {doc['rule']!r}", field=_join(path, "rule")) from None
    theta = parse_rational(doc["theta"], _join(path, "theta")) if "theta" in doc else None
    return PairJustification(pair_from_json(doc["pair"], _join(path, "pair")), rule, theta)


def verdict_to_json(v: TilingVerdict) -> dict:
    return {
        "tiles": v.tiles,
        "weight": v.weight,
        "criterion": v.criterion,
        "witness_pair": v.witness_pair,
        "justifications": [justification_to_json(j) for j in v.justifications],
    }


def verdict_from_json(doc: Any) -> TilingVerdict:
    _object(doc, "", {"tiles", "weight", "criterion", "witness_pair", "justifications"})
    if not isinstance(doc["tiles"], bool):
        raise ParseError("expected a boolean", field="tiles")
    weight = None if doc["weight"] is None else _int(doc["weight"], "weight")
    witness = None if doc["witness_pair"] is None else _int(doc["witness_pair"], "witness_pair")
    js = tuple(
        justification_from_json(j, f"justifications[{i}]")
        for i, j in enumerate(_list(doc["justifications"], "justifications"))
    )
    return TilingVerdict(doc["tiles"], weight, js, witness, doc["criterion"])


def report_to_json(r: CoverageReport) -> dict:
    witness = None
    if r.witness is not None:
        w = r.witness
        witness = {
            "point": format_point(w.point),
            "count_low": w.count_low,
            "count_high": w.count_high,
            "high_point": None if w.high_point is None else format_point(w.high_point),
        }
    return {
        "constant": r.constant,
        "weight": r.weight,
        "witness": witness,
        "exact": r.exact,
        "samples": r.samples,
        "cells": r.cells,
    }


def report_from_json(doc: Any) -> CoverageReport:
    _object(doc, "", {"constant", "weight", "witness", "exact", "samples", "cells"})
    witness = None
    if doc["witness"] is not None:
        w = _object(doc["witness"], "witness", {"point", "count_low", "count_high", "high_point"})
        witness = CoverageWitness(
            parse_point(w["point"], "witness.point"),
            _int(w["count_low"], "witness.count_low"),
            _int(w["count_high"], "witness.count_high"),
            None if w["high_point"] is None else parse_point(w["high_point"], "witness.high_point"),
        )

    def opt_int(key):
        return None if doc[key] is None else _int(doc[key], key)

    return CoverageReport(
        bool(doc["constant"]), opt_int("weight"), witness, bool(doc["exact"]), opt_int("samples"), opt_int("cells")
    )


def _orientation(o: Orientation) -> list[int]:
    return list(o.dir)


def certificate_to_json(cert: QuasiPeriodicityCertificate) -> dict:
    return {
        "guaranteed_quasiperiodic": cert.guaranteed,
        "common_orientations": [_orientation(o) for o in sorted(cert.common_orientations)],
        "orientation_sets": [sorted(_orientation(o) for o in s) for s in cert.orientation_sets],
    }


def classification_to_json(c: ConvexClassification) -> dict:
    return {"guaranteed_quasiperiodic": c.guaranteed, "parallelogram": c.parallelogram}
