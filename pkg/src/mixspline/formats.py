"""Text file formats (JSON, versioned) for meshes, distributions, certificates and bases.

Rationals are written as integers or ``"p/q"`` strings.  Mesh files carry
the face rectangles, which is all a loader needs; vertices and edges are
written with their canonical ids so that smoothness overrides can be
authored by hand.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from fractions import Fraction

from .certify import Certificate, FailureReport, Justification, Provenance, ReductionStep
from .errors import MeshMismatch, ParseError
from .mesh import TMesh, build_from_faces, make_segment
from .smoothness import SmoothnessDistribution

FORMAT_VERSION = 1
MESH_FORMAT = "mixspline-mesh"
SMOOTHNESS_FORMAT = "mixspline-smoothness"
CERTIFICATE_FORMAT = "mixspline-certificate"
BASIS_FORMAT = "mixspline-basis"

_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def format_rational(q) -> str | int:
    q = Fraction(q)
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _position(text: str, needle: str):
    idx = text.find(needle)
    if idx < 0:
        return None, None
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col


def parse_rational(value, text: str = "") -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        line, col = _position(text, json.dumps(value)) if text else (None, None)
        raise ParseError(f"not a rational: {value!r}", line, col)
    if isinstance(value, int):
        return Fraction(value)
    match = _RATIONAL.match(value)
    if not match or (match.group(2) is not None and int(match.group(2)) == 0):
        line, col = _position(text, json.dumps(value)) if text else (None, None)
        raise ParseError(f"malformed rational {value!r}", line, col)
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    return Fraction(num, den)


def _load_json(text: str, kind: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, 1)
    if doc.get("format") != kind:
        raise ParseError(f"expected format {kind!r}, got {doc.get('format')!r}", *_position(text, '"format"'))
    if doc.get("version") != FORMAT_VERSION:
        raise ParseError(f"unsupported version {doc.get('version')!r}", *_position(text, '"version"'))
    return doc


# -- meshes -----------------------------------------------------------------


def mesh_to_dict(mesh: TMesh) -> dict:
    return {
        "format": MESH_FORMAT,
        "version": FORMAT_VERSION,
        "faces": [[format_rational(c) for c in f.rect] for f in mesh.faces],
        "vertices": [[v.id, format_rational(v.x), format_rational(v.y)] for v in mesh.vertices],
        "edges": [
            [e.id, e.orientation.value[0], e.start, e.end,
             "interior" if mesh.is_interior_edge(e.id) else "boundary"]
            for e in mesh.edges
        ],
    }


def dumps_mesh(mesh: TMesh) -> str:
    d = mesh_to_dict(mesh)
    lines = ["{", f'  "format": "{d["format"]}",', f'  "version": {d["version"]},']
    for key in ("faces", "vertices", "edges"):
        rows = ",\n".join("    " + json.dumps(r) for r in d[key])
        lines.append(f'  "{key}": [\n{rows}\n  ]' + ("," if key != "edges" else ""))
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_mesh(text: str) -> TMesh:
    doc = _load_json(text, MESH_FORMAT)
    faces = doc.get("faces")
    if not isinstance(faces, list) or not faces:
        raise ParseError('"faces" must be a nonempty array', *_position(text, '"faces"'))
    rects = []
    for f in faces:
        if not isinstance(f, list) or len(f) != 4:
            raise ParseError(f"face must be [xmin, ymin, xmax, ymax], got {f!r}", *_position(text, '"faces"'))
        rects.append(tuple(parse_rational(c, text) for c in f))
    return build_from_faces(rects)


# -- smoothness distributions -----------------------------------------------


def smoothness_to_dict(dist: SmoothnessDistribution) -> dict:
    mesh = dist.mesh
    defaults = {}
    for name, horiz in (("horizontal", True), ("vertical", False)):
        orders = [dist[e] for e in mesh.interior_edges if mesh.edges[e].is_horizontal == horiz]
        defaults[name] = Counter(orders).most_common(1)[0][0] if orders else -1
    overrides = []
    for e in mesh.interior_edges:
        want = defaults["horizontal" if mesh.edges[e].is_horizontal else "vertical"]
        if dist[e] != want:
            overrides.append([e, dist[e]])
    return {
        "format": SMOOTHNESS_FORMAT,
        "version": FORMAT_VERSION,
        "mesh": {"n0": mesh.n0, "n1": mesh.n1, "n2": mesh.n2},
        "default": defaults,
        "overrides": overrides,
    }


def dumps_smoothness(dist: SmoothnessDistribution) -> str:
    return json.dumps(smoothness_to_dict(dist), indent=2) + "\n"


def _int(value, text, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}", *_position(text, json.dumps(value)))
    return value


def loads_smoothness(text: str, mesh: TMesh) -> SmoothnessDistribution:
    doc = _load_json(text, SMOOTHNESS_FORMAT)
    counts = doc.get("mesh")
    if counts is not None:
        have = {"n0": mesh.n0, "n1": mesh.n1, "n2": mesh.n2}
        if any(counts.get(k) != v for k, v in have.items()):
            raise MeshMismatch(f"smoothness file was written for a mesh with {counts}, got {have}")
    default = doc.get("default", {})
    if isinstance(default, int):
        default = {"horizontal": default, "vertical": default}
    dh = _int(default.get("horizontal", -1), text, "default order")
    dv = _int(default.get("vertical", -1), text, "default order")
    dist = SmoothnessDistribution.uniform(mesh, dh, dv)
    changes = {}
    for item in doc.get("overrides", []):
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError(f"override must be [edge id, order], got {item!r}", *_position(text, '"overrides"'))
        eid = _int(item[0], text, "edge id")
        order = _int(item[1], text, "order")
        if not (0 <= eid < mesh.n1):
            raise MeshMismatch(f"edge {eid} does not exist (mesh has {mesh.n1} edges)")
        changes[eid] = order
    return dist.with_orders(changes)


# -- certificates -----------------------------------------------------------


def certificate_to_dict(cert: Certificate, m: int, mp: int) -> dict:
    steps = []
    for st in cert.steps:
        j = st.justification
        just = {"kind": j.kind}
        if j.kind == "container":
            just["container"] = list(j.container)
        else:
            just["weight"] = j.weight
            just["threshold"] = j.threshold
        steps.append({"segment": list(st.segment.edge_ids), "order": st.order, "justification": just})
    return {
        "format": CERTIFICATE_FORMAT,
        "version": FORMAT_VERSION,
        "degree": [m, mp],
        "provenance": cert.provenance.value,
        "base": list(cert.base.orders),
        "final": list(cert.final.orders),
        "steps": steps,
    }


def dumps_certificate(cert: Certificate, m: int, mp: int) -> str:
    return json.dumps(certificate_to_dict(cert, m, mp), indent=2) + "\n"


def loads_certificate(text: str, mesh: TMesh) -> tuple[Certificate, int, int]:
    doc = _load_json(text, CERTIFICATE_FORMAT)
    try:
        m, mp = doc["degree"]
        base = SmoothnessDistribution(mesh, doc["base"])
        final = SmoothnessDistribution(mesh, doc["final"])
        steps = []
        for st in doc["steps"]:
            j = st["justification"]
            if j["kind"] == "container":
                just = Justification("container", container=tuple(j["container"]))
            else:
                just = Justification(j["kind"], weight=j.get("weight"), threshold=j.get("threshold"))
            steps.append(ReductionStep(make_segment(mesh, st["segment"]), int(st["order"]), just))
        cert = Certificate(base, Provenance(doc["provenance"]), tuple(steps), final)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad certificate: {exc}") from exc
    return cert, m, mp


def failure_to_dict(report: FailureReport) -> dict:
    return {
        "residual_edges": list(report.residual_edges),
        "blocked": [
            {"segment": list(seg.edge_ids), "order": r, "weight": res.weight, "threshold": res.threshold}
            for seg, r, res in report.blocked
        ],
        "applied_steps": len(report.applied),
    }


# -- bases ------------------------------------------------------------------


def dumps_basis(basis, m: int, mp: int) -> str:
    doc = {
        "format": BASIS_FORMAT,
        "version": FORMAT_VERSION,
        "degree": [m, mp],
        "monomial_order": "s^i t^j, i major",
        "functions": [
            {"faces": {str(fid): [format_rational(c) for c in coeffs]
                       for fid, coeffs in enumerate(f.coefficients)}}
            for f in basis
        ],
    }
    return json.dumps(doc, indent=1) + "\n"
