"""Space-description documents: JSON trees mapping onto ``build_space`` inputs.

Schema (see docs/schemas.md)::

    {
      "name": "...",
      "algebra": {"dim": n, "labels": [...], "structure": [[i, j, k, value], ...]},
      "isotropy": [[...n numbers...] | "label", ...],
      "metric": {"mode": "normal", "form": n x n | "identity"}
              | {"mode": "explicit", "m_basis": [[...n numbers...], ...], "form": d x d},
      "assumptions": {"irreducible": bool, "non_sphere": bool}
    }

Structure triples are 0-based; ``[i, j, k, v]`` sets ``[e_i, e_j] = ... + v e_k``
and the antisymmetric partner is filled in.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .errors import ParseError
from .homogeneous import Assumptions, Explicit, Normal, build_space
from .lie import LieAlgebra
from .linalg import DEFAULT_TOL


def _line_of(text, key):
    """First line (1-based) mentioning the quoted key, if any."""
    if text is None:
        return None
    needle = f'"{key}"'
    for no, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return no
    return None


class _Ctx:
    def __init__(self, text):
        self.text = text

    def fail(self, message, fld, key=None):
        raise ParseError(message, field=fld, line=_line_of(self.text, key or fld.split(".")[-1].split("[")[0]))


def _number(ctx, v, fld):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        ctx.fail(f"{fld}: expected a finite number, got {v!r}", fld)
    return float(v)


def _matrix(ctx, v, rows, cols, fld):
    if not isinstance(v, list) or len(v) != rows:
        ctx.fail(f"{fld}: expected {rows} rows", fld)
    out = np.zeros((rows, cols))
    for r, row in enumerate(v):
        if not isinstance(row, list) or len(row) != cols:
            ctx.fail(f"{fld}[{r}]: expected {cols} entries", fld)
        out[r] = [_number(ctx, x, f"{fld}[{r}]") for x in row]
    return out


def parse_algebra(block, ctx=None):
    ctx = ctx or _Ctx(None)
    if not isinstance(block, dict):
        ctx.fail("algebra: expected an object", "algebra")
    dim = block.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        ctx.fail(f"algebra.dim: expected a positive integer, got {dim!r}", "algebra.dim", "dim")
    labels = block.get("labels", [])
    if not isinstance(labels, list) or (labels and len(labels) != dim) or not all(isinstance(x, str) for x in labels):
        ctx.fail(f"algebra.labels: expected {dim} strings", "algebra.labels", "labels")
    if len(set(labels)) != len(labels):
        ctx.fail("algebra.labels: labels must be distinct", "algebra.labels", "labels")
    entries = block.get("structure")
    if not isinstance(entries, list):
        ctx.fail("algebra.structure: expected a list of [i, j, k, value] triples", "algebra.structure", "structure")
    c = np.zeros((dim, dim, dim))
    seen = np.zeros((dim, dim, dim), dtype=bool)
    for t, entry in enumerate(entries):
        fld = f"algebra.structure[{t}]"
        if not isinstance(entry, list) or len(entry) != 4:
            ctx.fail(f"{fld}: expected [i, j, k, value]", fld, "structure")
        i, j, k = entry[:3]
        for idx in (i, j, k):
            if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < dim:
                ctx.fail(f"{fld}: index {idx!r} out of range 0..{dim - 1}", fld, "structure")
        v = _number(ctx, entry[3], fld)
        if i == j and v != 0:
            ctx.fail(f"{fld}: [e_{i}, e_{i}] must vanish", fld, "structure")
        for a, b, val in ((i, j, v), (j, i, -v)):
            if seen[a, b, k] and abs(c[a, b, k] - val) > 1e-12:
                ctx.fail(f"{fld}: conflicts with an earlier entry for ({a}, {b}, {k}); "
                         "structure constants must be antisymmetric", fld, "structure")
            c[a, b, k] = val
            seen[a, b, k] = True
    return LieAlgebra(c, tuple(labels))


def _vectors(ctx, items, dim, labels, fld):
    if not isinstance(items, list):
        ctx.fail(f"{fld}: expected a list of vectors or labels", fld)
    out = np.zeros((dim, len(items)))
    for col, item in enumerate(items):
        if isinstance(item, str):
            if item not in labels:
                ctx.fail(f"{fld}[{col}]: unknown basis label {item!r}", fld)
            out[labels.index(item), col] = 1.0
        elif isinstance(item, list) and len(item) == dim:
            out[:, col] = [_number(ctx, x, f"{fld}[{col}]") for x in item]
        else:
            ctx.fail(f"{fld}[{col}]: expected a label or a vector of length {dim}", fld)
    return out


def description_inputs(doc, text=None):
    """Validate the document shape and return ``(g, h, metric_spec, assumptions, name)``."""
    ctx = _Ctx(text)
    if not isinstance(doc, dict):
        ctx.fail("top level: expected an object", "<root>")
    for key in ("algebra", "isotropy", "metric"):
        if key not in doc:
            raise ParseError(f"missing required field {key!r}", field=key, line=None)
    name = doc.get("name", "")
    if not isinstance(name, str):
        ctx.fail("name: expected a string", "name")
    g = parse_algebra(doc["algebra"], ctx)
    n = g.dim
    h = _vectors(ctx, doc["isotropy"], n, list(g.labels), "isotropy")

    metric = doc["metric"]
    if not isinstance(metric, dict) or metric.get("mode") not in ("normal", "explicit"):
        ctx.fail("metric.mode: expected 'normal' or 'explicit'", "metric.mode", "mode")
    if metric["mode"] == "normal":
        form = metric.get("form", "identity")
        q = np.eye(n) if form == "identity" else _matrix(ctx, form, n, n, "metric.form")
        spec = Normal(q)
    else:
        if "m_basis" not in metric:
            ctx.fail("metric.m_basis: required for explicit mode", "metric.m_basis", "metric")
        m = _vectors(ctx, metric["m_basis"], n, list(g.labels), "metric.m_basis")
        if "form" not in metric:
            ctx.fail("metric.form: required for explicit mode", "metric.form", "metric")
        spec = Explicit(m, _matrix(ctx, metric["form"], m.shape[1], m.shape[1], "metric.form"))

    a = doc.get("assumptions", {})
    if not isinstance(a, dict):
        ctx.fail("assumptions: expected an object", "assumptions")
    for key in ("irreducible", "non_sphere"):
        if key in a and not isinstance(a[key], bool):
            ctx.fail(f"assumptions.{key}: expected true or false", f"assumptions.{key}", key)
    assumptions = Assumptions(irreducible=a.get("irreducible", False), non_sphere=a.get("non_sphere", False))
    return g, h, spec, assumptions, name


def loads(text, tol=DEFAULT_TOL):
    """Parse and validate a space description into a :class:`HomogeneousSpace`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc.msg}", field="<document>", line=exc.lineno) from None
    g, h, spec, assumptions, name = description_inputs(doc, text)
    return build_space(g, h, spec, assumptions=assumptions, name=name, tol=tol)


def load(path, tol=DEFAULT_TOL):
    with open(path) as fh:
        return loads(fh.read(), tol=tol)


def _rows(a):
    return [[float(x) for x in row] for row in np.asarray(a)]


def to_description(space):
    """Description document reproducing ``space`` exactly (floats kept at full precision)."""
    g = space.g
    spec = space.metric_spec
    if isinstance(spec, Normal):
        metric = {"mode": "normal", "form": _rows(spec.form)}
    else:
        metric = {"mode": "explicit", "m_basis": _rows(np.asarray(spec.m_basis).T), "form": _rows(spec.form)}
    iso = space.isotropy_input if space.isotropy_input is not None else space.h.basis
    return {
        "name": space.name,
        "algebra": {"dim": g.dim, "labels": list(g.labels),
                    "structure": [[i, j, k, v] for i, j, k, v in g.triples()]},
        "isotropy": _rows(np.asarray(iso).T),
        "metric": metric,
        "assumptions": {"irreducible": space.assumptions.irreducible,
                        "non_sphere": space.assumptions.non_sphere},
    }


def dumps(space):
    return json.dumps(to_description(space), indent=1)
