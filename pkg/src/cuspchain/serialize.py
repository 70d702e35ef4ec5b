"""Canonical JSON input/output for every public data type.

Rationals serialize as reduced strings "p/q" (or "p" when q = 1); elements
of Q(sqrt(-D)) as {"a": "p/q", "b": "p/q", "D": n}.  Emission sorts keys and
uses a fixed layout, so equal values produce byte-identical documents.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .chains import (
    BoundaryDescent,
    ChainCertificate,
    Failure,
    Link,
    ManinDrinfeldLeaf,
    OrthBoundaryPlane,
    OrthInteriorCurve,
    OrthSegre,
    ProductSplit,
    VerificationReport,
)
from .errors import InputFormatError
from .exact import Matrix, QuadFieldElement
from .forms import HERMITIAN, KINDS, FormSpace, Subspace

CERTIFICATE_FORMAT = 1


def fraction_to_json(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def scalar_to_json(x) -> Any:
    if isinstance(x, QuadFieldElement):
        return {
            "a": fraction_to_json(x.a),
            "b": fraction_to_json(x.b),
            "D": x.d,
        }
    return fraction_to_json(x)


def scalar_from_json(obj) -> Fraction | QuadFieldElement:
    if isinstance(obj, dict):
        try:
            return QuadFieldElement(
                _fraction_from_json(obj["a"]),
                _fraction_from_json(obj["b"]),
                int(obj["D"]),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise InputFormatError(f"bad field element {obj!r}: {exc}") from exc
    return _fraction_from_json(obj)


def _fraction_from_json(obj) -> Fraction:
    if isinstance(obj, bool):
        raise InputFormatError(f"bad rational {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFormatError(f"bad rational {obj!r}") from exc
    raise InputFormatError(f"bad rational {obj!r}")


def matrix_to_json(m: Matrix) -> list:
    return [[scalar_to_json(x) for x in row] for row in m.rows]


def matrix_from_json(obj, ncols: int | None = None) -> Matrix:
    if not isinstance(obj, list) or any(not isinstance(r, list) for r in obj):
        raise InputFormatError("a matrix must be a list of rows")
    rows = [[scalar_from_json(x) for x in r] for r in obj]
    try:
        return Matrix(rows, ncols=ncols if not rows else None)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc


def vector_to_json(v) -> list:
    return [scalar_to_json(x) for x in v]


def vector_from_json(obj) -> tuple:
    if not isinstance(obj, list):
        raise InputFormatError("a vector must be a list of entries")
    return tuple(scalar_from_json(x) for x in obj)


def form_space_to_json(space: FormSpace) -> dict:
    out = {"kind": space.kind, "gram": matrix_to_json(space.gram)}
    if space.kind == HERMITIAN:
        out["D"] = space.d
    return out


def form_space_from_json(obj) -> FormSpace:
    if not isinstance(obj, dict):
        raise InputFormatError("a form space must be an object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise InputFormatError(f"unknown form kind {kind!r}")
    gram = matrix_from_json(obj.get("gram"))
    d = obj.get("D")
    try:
        return FormSpace(kind, gram, int(d) if d is not None else None)
    except (ValueError, TypeError) as exc:
        raise InputFormatError(str(exc)) from exc


def subspace_to_json(s: Subspace) -> dict:
    return {"basis": matrix_to_json(s.basis)}


def subspace_from_json(obj, space: FormSpace) -> Subspace:
    if not isinstance(obj, dict) or "basis" not in obj:
        raise InputFormatError("a subspace must be an object with a basis")
    basis = matrix_from_json(obj["basis"], ncols=space.dim)
    try:
        return Subspace(space, basis)
    except Exception as exc:
        raise InputFormatError(str(exc)) from exc


def _leaf_to_json(leaf: ManinDrinfeldLeaf) -> dict:
    return {"note": leaf.note}


def _leaf_from_json(obj) -> ManinDrinfeldLeaf:
    if not isinstance(obj, dict) or not isinstance(obj.get("note"), str):
        raise InputFormatError("a base leaf must be an object with a note")
    return ManinDrinfeldLeaf(note=obj["note"])


def link_to_json(link: Link) -> dict:
    if isinstance(link, BoundaryDescent):
        return {
            "type": "boundary_descent",
            "intersection": subspace_to_json(link.intersection),
            "lift": matrix_to_json(link.lift),
            "project": matrix_to_json(link.project),
            "sub": certificate_to_json(link.sub),
        }
    if isinstance(link, ProductSplit):
        return {
            "type": "product_split",
            "span": subspace_to_json(link.span),
            "complement": subspace_to_json(link.complement),
            "base": _leaf_to_json(link.base),
        }
    if isinstance(link, OrthBoundaryPlane):
        return {
            "type": "orth_boundary_plane",
            "plane": subspace_to_json(link.plane),
            "base": _leaf_to_json(link.base),
        }
    if isinstance(link, OrthInteriorCurve):
        return {
            "type": "orth_interior_curve",
            "vector": vector_to_json(link.vector),
            "base": _leaf_to_json(link.base),
        }
    if isinstance(link, OrthSegre):
        return {
            "type": "orth_segre",
            "witness": matrix_to_json(link.witness),
            "base": _leaf_to_json(link.base),
        }
    raise InputFormatError(f"unknown link type {type(link).__name__}")


def link_from_json(obj, space: FormSpace) -> Link:
    if not isinstance(obj, dict):
        raise InputFormatError("a link must be an object")
    kind = obj.get("type")
    if kind == "boundary_descent":
        sub = certificate_from_json(obj.get("sub"))
        return BoundaryDescent(
            intersection=subspace_from_json(obj.get("intersection"), space),
            sub=sub,
            lift=matrix_from_json(obj.get("lift"), ncols=space.dim),
            project=matrix_from_json(obj.get("project"), ncols=sub.ambient.dim),
        )
    if kind == "product_split":
        return ProductSplit(
            span=subspace_from_json(obj.get("span"), space),
            complement=subspace_from_json(obj.get("complement"), space),
            base=_leaf_from_json(obj.get("base")),
        )
    if kind == "orth_boundary_plane":
        return OrthBoundaryPlane(
            plane=subspace_from_json(obj.get("plane"), space),
            base=_leaf_from_json(obj.get("base")),
        )
    if kind == "orth_interior_curve":
        return OrthInteriorCurve(
            vector=vector_from_json(obj.get("vector")),
            base=_leaf_from_json(obj.get("base")),
        )
    if kind == "orth_segre":
        return OrthSegre(
            witness=matrix_from_json(obj.get("witness"), ncols=space.dim),
            base=_leaf_from_json(obj.get("base")),
        )
    raise InputFormatError(f"unknown link type {kind!r}")


def certificate_to_json(cert: ChainCertificate) -> dict:
    return {
        "format": CERTIFICATE_FORMAT,
        "kind": cert.kind,
        "ambient": form_space_to_json(cert.ambient),
        "nodes": [subspace_to_json(n) for n in cert.nodes],
        "links": [link_to_json(l) for l in cert.links],
    }


def certificate_from_json(obj) -> ChainCertificate:
    if not isinstance(obj, dict):
        raise InputFormatError("a certificate must be an object")
    if obj.get("format") != CERTIFICATE_FORMAT:
        raise InputFormatError(
            f"unsupported certificate format {obj.get('format')!r}"
        )
    kind = obj.get("kind")
    if not isinstance(kind, str):
        raise InputFormatError("certificate kind must be a string")
    space = form_space_from_json(obj.get("ambient"))
    nodes = obj.get("nodes")
    links = obj.get("links")
    if not isinstance(nodes, list) or not isinstance(links, list):
        raise InputFormatError("certificate nodes and links must be lists")
    return ChainCertificate(
        ambient=space,
        kind=kind,
        nodes=tuple(subspace_from_json(n, space) for n in nodes),
        links=tuple(link_from_json(l, space) for l in links),
    )


def report_to_json(report: VerificationReport) -> dict:
    return {
        "ok": report.ok,
        "failures": [
            {"link": f.link, "condition": f.condition, "detail": f.detail}
            for f in report.failures
        ],
    }


def report_from_json(obj) -> VerificationReport:
    if not isinstance(obj, dict) or not isinstance(obj.get("failures"), list):
        raise InputFormatError("a report must be an object with failures")
    failures = tuple(
        Failure(int(f["link"]), str(f["condition"]), str(f["detail"]))
        for f in obj["failures"]
    )
    return VerificationReport(ok=bool(obj.get("ok")), failures=failures)


def dumps_canonical(obj) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, one newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
