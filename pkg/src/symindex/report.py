"""Full analysis pipeline and its deterministic serialisation."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import NotApplicable, TransvectionMismatch
from .killing import cartan_subspace
from .kostant import kostant_form
from .leaf import bracket_formula_check, leaf_decomposition, theorem1_status
from .linalg import DEFAULT_TOL, canonical_basis

SCHEMA_VERSION = 1


def fmt(x):
    """Round to 10 significant digits; ``-0`` becomes ``0``."""
    v = float(format(float(x), ".10g"))
    return 0.0 if v == 0 else v


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if np.isfinite(obj) else None
    return obj


@dataclass(frozen=True, eq=False)
class SymmetryReport:
    name: str
    dim_m: int
    dim_g: int
    dim_h: int
    flags: dict
    index: int
    status: str
    heuristic: bool
    fix_dim: int
    symmetry_basis: list          # canonical rows in g-coordinates
    leaf: dict
    checks: dict
    settings: dict
    expected: dict = field(default_factory=dict)
    diff: list = field(default_factory=list)

    def to_dict(self):
        out = {
            "schema": SCHEMA_VERSION,
            "name": self.name,
            "dim_m": self.dim_m,
            "dim_g": self.dim_g,
            "dim_h": self.dim_h,
            "flags": self.flags,
            "index": {"value": self.index, "status": self.status, "heuristic": self.heuristic},
            "fix_dim": self.fix_dim,
            "symmetry_subspace": self.symmetry_basis,
            "leaf": self.leaf,
            "checks": self.checks,
            "settings": self.settings,
        }
        if self.expected:
            out["expected"] = self.expected
            out["diff"] = self.diff
        return _clean(out)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self):
        d = self.to_dict()
        lines = [
            f"space            {d['name'] or '<unnamed>'}",
            f"dimensions       g {d['dim_g']}, h {d['dim_h']}, M {d['dim_m']}",
            f"metric           normal={d['flags']['normal']} naturally_reductive={d['flags']['naturally_reductive']}",
            f"index            {d['index']['value']} ({d['index']['status']}{', heuristic' if d['index']['heuristic'] else ''})",
            f"symmetric        {d['index']['value'] == d['dim_m']}",
            f"fixed vectors    {d['fix_dim']}",
        ]
        leaf = d["leaf"]
        lines.append(f"leaf             dim {leaf['dim']}, flat {leaf['flat_dim']}, k^q dim {leaf['k_dim']}")
        for i, f in enumerate(leaf["factors"], 1):
            lines.append(f"  factor {i}       p dim {f['p_dim']}, g dim {f['g_dim']}, ideals {f['simple_ideal_dims']}, "
                         f"group_type={f['group_type']}")
        ch = d["checks"]
        lines.append(f"theorem1         {ch['theorem1']}")
        lines.append(f"flat_in_fixed    {ch['flat_in_fixed']}")
        bf = ch["bracket_formula"]
        lines.append(f"bracket formula  {bf['status']}" + (f", max residual {bf['max_residual']} over {bf['trials']} trials"
                                                          if bf["status"] == "OK" else ""))
        ko = ch["kostant"]
        if ko["status"] == "OK":
            sig = ko["signature_on_h"]
            lines.append(f"kostant          max residual {max(ko['residuals'].values())}, signature on h "
                         f"{sig['positive']} positive, {sig['negative']} negative, {sig['zero']} zero"
                         + (", restricted to transvections" if ko["restricted"] else ""))
        else:
            lines.append(f"kostant          {ko['status']}")
        lines.append(f"cross-factor     {ch['cross_factor']}")
        if "expected" in d:
            lines.append("expected")
            for key, e in d["expected"].items():
                lines.append(f"  {key:<14} {e['value']!s:<16} [{e['provenance']}]")
            if d["diff"]:
                lines.append("diff")
                for item in d["diff"]:
                    lines.append(f"  {item['key']}: expected {item['expected']} [{item['provenance']}], "
                                 f"computed {item['computed']}")
            else:
                lines.append("diff             none")
        return "\n".join(lines)


def _kostant_summary(space):
    if not space.flags.naturally_reductive:
        return {"status": "NOT_APPLICABLE"}
    try:
        kf = kostant_form(space)
    except TransvectionMismatch:
        kf = kostant_form(space, restrict_to_transvections=True)
    pos, neg, zero = kf.signature_on_h
    return {"status": "OK", "restricted": kf.restricted, "solution_dim": kf.solution_dim,
            "residuals": dict(sorted(kf.residuals.items())),
            "signature_on_h": {"positive": pos, "negative": neg, "zero": zero}}


def analyze(space, invariant_fields="auto", seed=42, tol=None, convention=-1, bracket_trials=100):
    """Run build-time checks through leaf analysis and gather a report."""
    tol = space.tol if tol is None else tol
    cs = cartan_subspace(space, invariant_fields=invariant_fields, convention=convention, seed=seed, tol=tol)
    leaf = leaf_decomposition(space, cs, seed=seed)
    sym_g = space.frame @ cs.symmetry_subspace.basis
    basis_rows = [list(map(float, row)) for row in canonical_basis(sym_g)] if cs.index else []
    try:
        bracket = {"status": "OK", "trials": bracket_trials,
                   "max_residual": bracket_formula_check(space, cs, bracket_trials, seed)}
    except NotApplicable:
        bracket = {"status": "NOT_APPLICABLE"}
    factors = [{"p_dim": f.p.dim, "k_dim": f.k_dim, "g_dim": f.g_dim,
                "simple_ideal_dims": list(f.simple_ideal_dims), "group_type": f.group_type}
               for f in leaf.factors]
    return SymmetryReport(
        name=space.name,
        dim_m=space.dim_m,
        dim_g=space.dim_g,
        dim_h=space.dim_h,
        flags={"normal": space.flags.normal, "naturally_reductive": space.flags.naturally_reductive},
        index=cs.index,
        status=cs.status,
        heuristic=cs.heuristic,
        fix_dim=space.fix.dim,
        symmetry_basis=basis_rows,
        leaf={"dim": leaf.leaf_dim, "flat_dim": leaf.flat_dim, "k_dim": leaf.k_dim,
              "sigma_dim": leaf.sigma_dim, "factors": factors},
        checks={
            "theorem1": theorem1_status(space, cs),
            "flat_in_fixed": leaf.flat_in_fixed,
            "flat_fixed_residual": leaf.flat_fixed_residual,
            "cross_factor": leaf.cross_factor_residual,
            "closure": leaf.closure_residual,
            "bracket_formula": bracket,
            "kostant": _kostant_summary(space),
        },
        settings={"tolerance": tol, "invariant_fields": invariant_fields, "fix_included": cs.fix_included,
                  "seed": seed, "convention": convention, "operator_floor": cs.operator_floor},
    )


def computed_values(report):
    """Values comparable with catalog expectations."""
    return {
        "index": report.index,
        "symmetric": report.index == report.dim_m,
        "leaf_dim": report.leaf["dim"],
        "flat_dim": report.leaf["flat_dim"],
        "group_type": [f["group_type"] for f in report.leaf["factors"]],
        "theorem1": report.checks["theorem1"],
    }


def with_expected(report, expected):
    """Attach expected values (with provenance) and the computed-vs-expected diff."""
    got = computed_values(report)
    exp = {k: {"value": e.value, "provenance": e.provenance} for k, e in sorted(expected.items())}
    diff = [{"key": k, "expected": e["value"], "computed": got.get(k), "provenance": e["provenance"]}
            for k, e in exp.items() if got.get(k) != e["value"]]
    return replace(report, expected=exp, diff=diff)
