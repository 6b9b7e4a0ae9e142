"""JSON report payloads shared by the command line and the test suite.

All numbers that are not counts are emitted as strings so rationals stay
exact.  Each payload carries a ``schema`` tag naming a file under
``hodgehh/schemas``.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from importlib import resources

SCHEMA_VERSION = 1


def schema(name: str) -> dict:
    text = resources.files("hodgehh").joinpath("schemas", f"{name}.v{SCHEMA_VERSION}.json").read_text()
    return json.loads(text)


def tag(payload: dict, name: str) -> dict:
    return {"schema": f"{name}.v{SCHEMA_VERSION}", **payload}


def exact(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def matrix_json(M) -> list:
    return [[exact(x) for x in row] for row in M]


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def homology_report(L, algebra_name: str, space_name: str, ring_name: str) -> dict:
    """HH / Loday report: per-weight and total homology through L.max_degree."""
    C = L.complex
    per_weight = []
    totals = [0] * (L.max_degree + 1)
    torsion: dict = {}
    for w in L.weights:
        block = C.weight_block(w)
        for n in range(L.max_degree + 1):
            r = block.homology(n)
            totals[n] += r.betti
            torsion.setdefault(n, []).extend(r.torsion)
            if r.betti or r.torsion:
                per_weight.append({"degree": n, "weight": w, "betti": r.betti,
                                   "torsion": [exact(t) for t in r.torsion]})
    return tag({
        "algebra": algebra_name,
        "space": space_name,
        "ring": ring_name,
        "max_degree": L.max_degree,
        "weight_bound": L.weight_bound,
        "betti": totals,
        "torsion": {str(n): sorted(exact(t) for t in ts) for n, ts in sorted(torsion.items()) if ts},
        "records": per_weight,
    }, "homology")


def filtration_report(L, algebra_name: str, levels) -> dict:
    from .loday.filtration import weight_layer

    layers = []
    for n in levels:
        gr = weight_layer(L, n)
        recs = []
        for w in L.weights:
            keep = {q: [k for k, x in enumerate(gr.weights[q]) if x == w] for q in gr.weights} \
                if gr.weights is not None else None
            block = gr.restrict(keep, weight=w) if keep is not None else gr
            for q in range(L.max_degree + 1):
                r = block.homology(q)
                if r.betti or r.torsion:
                    recs.append({"degree": q, "weight": w, "betti": r.betti,
                                 "torsion": [exact(t) for t in r.torsion]})
        betti = [sum(r["betti"] for r in recs if r["degree"] == q) for q in range(L.max_degree + 1)]
        layers.append({"level": n, "betti": betti, "records": recs})
    return tag({"algebra": algebra_name, "max_degree": L.max_degree, "weight_bound": L.weight_bound,
                "layers": layers}, "filtration")


def hodge_report(L, algebra_name: str, r: int | None) -> dict:
    from .eulerian import adams_matrix, eigen_multiplicities, hodge_components

    comps = hodge_components(L)
    mats = adams_matrix(L, r) if r is not None else {}
    entries = []
    for w in L.weights:
        for n in range(L.max_degree + 1):
            cs = [c for c in comps if c.weight == w and c.degree == n]
            if not any(c.dim for c in cs):
                continue
            item = {"degree": n, "weight": w, "components": [{"i": c.index, "dim": c.dim} for c in cs]}
            if r is not None:
                M = mats[(n, w)]
                idx = [0] if n == 0 else range(1, n + 1)
                eig = eigen_multiplicities(M, sorted({Fraction(r) ** i for i in idx}))
                item["adams"] = {"r": r, "matrix": matrix_json(M),
                                 "eigenvalues": [{"value": exact(k), "multiplicity": v}
                                                 for k, v in sorted(eig.items())]}
            entries.append(item)
    return tag({"algebra": algebra_name, "max_degree": L.max_degree, "weight_bound": L.weight_bound,
                "entries": entries}, "hodge")


def layer_report(X, space: str, m: int, n: int, adams_r=()) -> dict:
    from .hodge_geom import layer_report as build

    return tag(build(X, space, m, n, adams_r), "layer")


def check_report(name: str, payload: dict, passed: bool) -> dict:
    return tag({"check": name, "passed": passed, "result": _stringify(payload)}, "check")


def _stringify(obj):
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return exact(obj)
    if hasattr(obj, "to_json"):
        return _stringify(obj.to_json())
    return str(obj)


def to_csv(payload: dict) -> str:
    """Flat CSV of the ``records`` (or ``entries``) list of a payload."""
    rows = payload.get("records") or payload.get("entries") or payload.get("homology") or []
    buf = io.StringIO()
    if not rows:
        return ""
    keys = sorted({k for r in rows for k in r})
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()
