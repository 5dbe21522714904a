"""JSON file formats for fans, polytopes and decomposition reports.

Fan file::

    {"ambient_dim": 2,
     "rays": [[1, 0], [0, 1], [-1, -1]],
     "max_cones": [[0, 1], [1, 2], [0, 2]]}

Polytope file::

    {"vertices": [["-1", "-1"], [1, -1], ["1/1", 1], [-1, 1]]}

Integers may be JSON numbers or decimal strings; rationals are ``"p/q"``
strings. Report coefficients are lists of decimal strings, lowest degree
first.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .cone import Cone, cone_from_generators
from .decomposition import ConeRecord, DecompositionReport
from .errors import ParseError
from .fan import Fan, fan_from_max_cones
from .polynomial import IntPolynomial

REPORT_FORMAT = "gorenstein-fans-report/1"


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _int(x, where: str) -> int:
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise ParseError(f"{where}: expected an integer, got {x!r}")


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError(f"{where}: expected a rational 'p/q', got {x!r}")


def _list(x, where: str) -> list:
    if not isinstance(x, list):
        raise ParseError(f"{where}: expected a list")
    return x


def parse_fan(text: str, *, validate: bool = True) -> Fan:
    doc = _load(text)
    if not isinstance(doc, dict):
        raise ParseError("fan file must be a JSON object")
    for key in ("ambient_dim", "rays", "max_cones"):
        if key not in doc:
            raise ParseError(f"fan file is missing field {key!r}")
    n = _int(doc["ambient_dim"], "ambient_dim")
    rays = []
    for i, r in enumerate(_list(doc["rays"], "rays")):
        v = tuple(_int(x, f"rays[{i}]") for x in _list(r, f"rays[{i}]"))
        if len(v) != n:
            raise ParseError(f"rays[{i}] has length {len(v)}, expected {n}")
        rays.append(v)
    cones = []
    for i, c in enumerate(_list(doc["max_cones"], "max_cones")):
        idx = [_int(x, f"max_cones[{i}]") for x in _list(c, f"max_cones[{i}]")]
        if any(not 0 <= k < len(rays) for k in idx):
            raise ParseError(f"max_cones[{i}] refers to a ray index out of range")
        cones.append([rays[k] for k in idx])
    return fan_from_max_cones(n, cones, validate=validate)


def dump_fan(fan: Fan) -> str:
    rays = fan.rays
    index = {r: i for i, r in enumerate(rays)}
    cones = [sorted(index[r] for r in fan.cones[i].rays) for i in fan.max_cone_ids]
    doc = {"ambient_dim": fan.ambient_dim, "rays": [list(r) for r in rays], "max_cones": cones}
    return _dumps(doc)


def parse_polytope(text: str) -> Cone:
    """Cone over the polytope placed at height 1, one dimension up."""
    doc = _load(text)
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ParseError("polytope file must be a JSON object with field 'vertices'")
    verts = [
        tuple(_rational(x, f"vertices[{i}]") for x in _list(v, f"vertices[{i}]"))
        for i, v in enumerate(_list(doc["vertices"], "vertices"))
    ]
    if not verts or len({len(v) for v in verts}) != 1:
        raise ParseError("vertices must be a nonempty list of equal-length vectors")
    gens = []
    for v in verts:
        den = math.lcm(*(x.denominator for x in v)) if v else 1
        gens.append(tuple(int(x * den) for x in v) + (den,))
    return cone_from_generators(gens)


def dump_polytope(vertices) -> str:
    return _dumps({"vertices": [[str(Fraction(x)) for x in v] for v in vertices]})


def _poly(p: IntPolynomial) -> list[str]:
    return [str(c) for c in p.coeffs]


def _unpoly(x, where) -> IntPolynomial:
    return IntPolynomial(_int(c, where) for c in _list(x, where))


def report_to_dict(report: DecompositionReport) -> dict:
    return {
        "format": REPORT_FORMAT,
        "kind": report.kind,
        "fan_hash": report.fan_hash,
        "ambient_dim": report.ambient_dim,
        "delta": _poly(report.delta),
        "denominator_power": report.denominator_power,
        "cones": [
            {
                "id": r.id,
                "dim": r.dim,
                "rays": [list(v) for v in r.rays],
                "delta": _poly(r.delta),
                "c": _poly(r.c),
                "h": _poly(r.h),
                "c_palindromic": r.c_palindromic,
            }
            for r in sorted(report.records, key=lambda r: r.id)
        ],
        "identity": {"lhs": _poly(report.lhs), "rhs": _poly(report.rhs), "holds": report.identity_holds},
        "nonnegativity": {"holds": report.nonnegative, "witnesses": report.negative_witnesses},
    }


def dump_report(report: DecompositionReport) -> str:
    return _dumps(report_to_dict(report))


def parse_report(text: str) -> DecompositionReport:
    """Inverse of :func:`dump_report`; stored verdicts must match the polynomials."""
    doc = _load(text)
    if not isinstance(doc, dict) or doc.get("format") != REPORT_FORMAT:
        raise ParseError(f"not a {REPORT_FORMAT} document")
    try:
        report = _report_from_doc(doc)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed report: {exc!r}") from None
    if report.identity_holds != doc["identity"]["holds"] or report.nonnegative != doc["nonnegativity"]["holds"]:
        raise ParseError("stored verdicts disagree with the stored polynomials")
    if report.recompute_rhs() != report.rhs:
        raise ParseError("stored right-hand side disagrees with the per-cone polynomials")
    return report


def _report_from_doc(doc) -> DecompositionReport:
    records = [
        ConeRecord(
            _int(c["id"], "cones.id"),
            _int(c["dim"], "cones.dim"),
            [[_int(x, "cones.rays") for x in v] for v in c["rays"]],
            _unpoly(c["delta"], "cones.delta"),
            _unpoly(c["c"], "cones.c"),
            _unpoly(c["h"], "cones.h"),
        )
        for c in _list(doc["cones"], "cones")
    ]
    return DecompositionReport(
        doc["kind"],
        _int(doc["ambient_dim"], "ambient_dim"),
        doc["fan_hash"],
        _unpoly(doc["delta"], "delta"),
        _int(doc["denominator_power"], "denominator_power"),
        records,
        _unpoly(doc["identity"]["lhs"], "identity.lhs"),
        _unpoly(doc["identity"]["rhs"], "identity.rhs"),
    )


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
