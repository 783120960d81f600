"""Acceptance gate: one PASS/FAIL line per criterion, at the stated tolerances.

Lines are printed as the tests run (visible with ``-s``) and repeated in the
terminal summary under "acceptance criteria".
"""
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, CORE_NAMES, cartan_of, leaf_of, space_of
from symindex.catalog import SU3_SO2, SU3_SO3, so_block, su3_matrices, triple_split
from symindex.killing import (
    EXACT,
    cartan_subspace,
    is_symmetric,
    killing_operator_g,
    koszul_discrepancy,
    make_candidate,
)
from symindex.kostant import kostant_form
from symindex.leaf import bracket_formula_check, theorem1_check
from symindex.lie import jacobi_residual
from symindex.linalg import outside_residual


def record(number, title, checks):
    ok = all(v for _, v in checks)
    failed = [k for k, v in checks if not v]
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
    if failed:
        line += " | failed: " + "; ".join(failed)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def p_prime_of(name):
    s = space_of(name)
    n = s.dim_g
    if name == "aloff-wallach":
        eye = np.eye(8)
        chain = (eye[:, list(SU3_SO3)], eye[:, list(SU3_SO2)])
    else:
        dim = {"t1s3": 4, "t1s4": 5}[name]
        chain = (so_block(dim, range(1, dim)), so_block(dim, range(2, dim)))
    return triple_split(s.g, np.eye(n), *chain).p_prime


def test_criterion_1_stiefel_index():
    checks = []
    for name, k in (("stiefel-4-2", 2), ("stiefel-5-3", 2), ("stiefel-5-2", 3)):
        s, cs = space_of(name), cartan_of(name)
        checks.append((f"{name} index {cs.index} vs {k * (k - 1) // 2}", cs.index == k * (k - 1) // 2))
        checks.append((f"{name} status {cs.status}", cs.status == EXACT))
        r = theorem1_check(s, cs)
        checks.append((f"{name} symmetry vs fixed residual {r.residual:.2e}", r.status == "PASS" and r.residual < 1e-8))
    record(1, "Stiefel index k(k-1)/2, EXACT, symmetry subspace = fixed vectors", checks)


def test_criterion_2_group_type_leaf():
    leaf = leaf_of("stiefel-5-2")
    checks = [("k=3: exactly one factor", len(leaf.factors) == 1 and leaf.flat_dim == 0)]
    if leaf.factors:
        f = leaf.factors[0]
        checks.append(("k=3: group type", f.group_type))
        checks.append(("k=3: two 3-dim simple ideals", f.simple_ideal_dims == (3, 3)))
    for name in ("stiefel-4-2", "stiefel-5-3"):
        lf = leaf_of(name)
        checks.append((f"{name}: flat 1-dim leaf", lf.flat_dim == 1 and lf.factors == ()))
        checks.append((f"{name}: flat part in fixed vectors ({lf.flat_fixed_residual:.2e})", lf.flat_in_fixed))
    record(2, "group-type leaf for Stiefel k=3; flat leaf inside Fix for k=2", checks)


def _unit_tangent_checks(name, expected):
    s = space_of(name)
    cs = cartan_subspace(s, invariant_fields="off")
    p_prime = p_prime_of(name)
    worst = max(np.linalg.norm(killing_operator_g(s, x).operator) for x in p_prime.T)
    values = s.coords_m(p_prime)
    contained = outside_residual(cs.symmetry_subspace.basis, values)
    leaf = leaf_of(name)
    return s, cs, leaf, [
        (f"{name}: g-only index {cs.index} >= {expected}", cs.index >= expected),
        (f"{name}: p' operators parallel ({worst:.2e})", worst < 1e-8),
        (f"{name}: p' inside symmetry subspace ({contained:.2e})", contained < 1e-8),
        (f"{name}: index pinned to {expected}", cs.index == expected),
        (f"{name}: leaf dim {leaf.leaf_dim}", leaf.leaf_dim == expected),
    ]


def test_criterion_3_unit_tangent():
    _, _, leaf3, checks = _unit_tangent_checks("t1s3", 2)
    f = leaf3.factors[0] if leaf3.factors else None
    checks.append(("t1s3: g_1 simple of dim 3", f is not None and f.g_dim == 3 and f.simple_ideal_dims == (3,)))
    checks.append(("t1s3: not group type", f is not None and not f.group_type))
    _, _, leaf4, more = _unit_tangent_checks("t1s4", 3)
    checks += more
    # g_1 for T^1 S^4 is so(4) = so(3) + so(3) with the two ideals swapped: recorded in the ledger
    f4 = leaf4.factors[0] if leaf4.factors else None
    checks.append(("t1s4: g_1 = so(4) split 3+3, swapped (derived)",
                   f4 is not None and f4.simple_ideal_dims == (3, 3) and f4.group_type))
    record(3, "unit tangent bundles: index 2 / 3 from g, p' parallel, leaf dims 2 / 3", checks)


@pytest.mark.xfail(strict=True, reason="so(4) is not simple: the T^1 S^4 leaf algebra splits into two swapped ideals")
def test_criterion_3_t1s4_simple_factor_literal():
    f = leaf_of("t1s4").factors[0]
    assert f.simple_ideal_dims == (3,) and not f.group_type


def test_criterion_4_aloff_wallach():
    s = space_of("aloff-wallach")
    cs, leaf = cartan_of("aloff-wallach"), leaf_of("aloff-wallach")
    f = leaf.factors[0] if leaf.factors else None
    # independent check of the marked so(3): real antisymmetric Gell-Mann directions
    mats = su3_matrices()
    real = all(np.allclose(mats[a].imag, 0) for a in SU3_SO3)
    record(4, "Aloff-Wallach index 2, leaf dim 2, not group type", [
        (f"index {cs.index}", cs.index == 2),
        (f"leaf dim {leaf.leaf_dim}", leaf.leaf_dim == 2),
        ("not group type", f is not None and not f.group_type),
        ("so(3) marker is real antisymmetric", real),
        ("space not naturally reductive", not s.flags.naturally_reductive),
    ])


def test_criterion_5_symmetric_sanity():
    checks = []
    for name in ("sphere-3", "group-so3"):
        s, cs = space_of(name), cartan_of(name)
        checks.append((f"{name}: index {cs.index} = dim {s.dim_m}", cs.index == s.dim_m == 3))
        checks.append((f"{name}: is_symmetric", is_symmetric(s)))
    record(5, "S^3 and bi-invariant SO(3) have full index", checks)


def test_criterion_6_kostant():
    checks = []
    for name in CORE_NAMES:
        s = space_of(name)
        if not s.flags.naturally_reductive:
            continue
        kf = kostant_form(s)
        checks.append((f"{name}: residuals {kf.max_residual:.2e}", kf.max_residual < 1e-8))
        checks.append((f"{name}: signature on h {kf.signature_on_h}", kf.signature_on_h[2] == 0))
    record(6, "Kostant form residuals < 1e-8, nondegenerate on h", checks)


def test_criterion_7_bracket_formula():
    checks = []
    for name in ("stiefel-5-2", "stiefel-5-3"):
        r = bracket_formula_check(space_of(name), cartan_of(name), trials=100, seed=42)
        checks.append((f"{name}: residual {r:.2e}", r < 1e-8))
    record(7, "bracket formula over 100 seeded pairs < 1e-8", checks)


def test_criterion_8_property_suites():
    skew, koszul, jacobi, flip, cross = 0.0, 0.0, 0.0, True, 0.0
    for name in CORE_NAMES:
        s = space_of(name)
        eye = np.eye(s.dim_g)
        for x in eye:
            a = killing_operator_g(s, x).operator
            skew = max(skew, float(np.max(np.abs(a + a.T))))
        for v in s.fix.basis.T:
            a = make_candidate(s, np.zeros(s.dim_g), v).operator
            skew = max(skew, float(np.max(np.abs(a + a.T))))
        koszul = max(koszul, koszul_discrepancy(s, np.random.default_rng(11), trials=10))
        jacobi = max(jacobi, jacobi_residual(s.g))
        flip &= cartan_subspace(s, convention=1).index == cartan_of(name).index
        cross = max(cross, leaf_of(name).cross_factor_residual)
    record(8, "properties: skew, Koszul oracle, Jacobi, convention flip, cross-factor", [
        (f"(a) operator skew residual {skew:.2e}", skew < 1e-9),
        (f"(b) Koszul discrepancy {koszul:.2e}", koszul < 1e-8),
        (f"(c) Jacobi residual {jacobi:.2e}", jacobi < 1e-9),
        ("(d) index unchanged under convention flip", flip),
        (f"(e) cross-factor brackets {cross:.2e}", cross < 1e-8),
    ])
