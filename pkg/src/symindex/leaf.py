"""Leaf of symmetry: symmetric isotropy algebra, involutive algebra and factors.

Killing fields are determined by their 1-jet at ``p``, so elements of the
involutive algebra ``g^q = p^q + k^q`` are identified by jets. Its abstract
structure constants come from fitting candidate brackets back onto those
jets; the factor and group-type analysis works on that abstract algebra.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ClosureFailure, DecompositionUnstable, NotApplicable
from .killing import candidate_bracket, combine, killing_operator_g
from .lie import LieAlgebra, Subspace, ideal_decomposition
from .linalg import column_space, null_space, numerical_rank, outside_residual

PASS = "PASS"
FAIL = "FAIL"
NOT_APPLICABLE = "NOT_APPLICABLE"


def _bracket(space, cs, a, b):
    return candidate_bracket(space, a, b, convention=cs.convention,
                             allow_non_naturally_reductive=cs.heuristic)


def symmetric_isotropy(space, cs):
    """Basis of ``k^q``: the span of brackets of Cartan basis elements.

    Every returned candidate has zero value at ``p``.
    """
    basis = cs.basis
    brackets = [_bracket(space, cs, basis[i], basis[j])
                for i in range(len(basis)) for j in range(i + 1, len(basis))]
    if not brackets:
        return ()
    jets = np.array([c.jet for c in brackets]).T
    u, s, wt = np.linalg.svd(jets, full_matrices=False)
    rank = numerical_rank(s, space.tol, relative=True) if s[0] > space.tol else 0
    out = tuple(combine(brackets, wt[i] / s[i]) for i in range(rank))
    worst = max((float(np.max(np.abs(c.value), initial=0.0)) for c in out), default=0.0)
    if worst > 1e-8:
        raise ClosureFailure(f"symmetric isotropy element has nonzero value at p ({worst:.3g})")
    return out


@dataclass(frozen=True, eq=False)
class InvolutiveAlgebra:
    """``g^q`` on the basis (Cartan basis, then ``k^q`` basis), with its jets."""

    algebra: LieAlgebra
    members: tuple
    p_dim: int
    closure_residual: float

    @property
    def involution(self):
        n = self.algebra.dim
        return np.diag([-1.0] * self.p_dim + [1.0] * (n - self.p_dim))

    @property
    def jets(self):
        return np.array([c.jet for c in self.members]).T


def involutive_algebra(space, cs, k_basis=None):
    """Structure constants of ``g^q`` fitted from candidate-bracket jets."""
    k_basis = symmetric_isotropy(space, cs) if k_basis is None else k_basis
    members = tuple(cs.basis) + tuple(k_basis)
    n = len(members)
    if n == 0:
        return InvolutiveAlgebra(LieAlgebra(np.zeros((0, 0, 0))), (), 0, 0.0)
    jets = np.array([c.jet for c in members]).T
    c = np.zeros((n, n, n))
    worst = 0.0
    for a in range(n):
        for b in range(a + 1, n):
            target = _bracket(space, cs, members[a], members[b]).jet
            coef, *_ = np.linalg.lstsq(jets, target, rcond=None)
            worst = max(worst, float(np.max(np.abs(jets @ coef - target), initial=0.0)))
            c[a, b] = coef
            c[b, a] = -coef
    if worst > 1e-8:
        raise ClosureFailure(f"p^q + k^q is not closed under brackets (residual {worst:.3g})")
    return InvolutiveAlgebra(LieAlgebra(c), members, len(cs.basis), worst)


@dataclass(frozen=True, eq=False)
class LeafFactor:
    p: Subspace              # frame coordinates in m
    k_dim: int
    g_dim: int
    group_type: bool
    simple_ideal_dims: tuple
    g_coords: np.ndarray     # basis of the factor inside g^q coordinates


@dataclass(frozen=True, eq=False)
class LeafDecomposition:
    p0: Subspace
    factors: tuple
    sigma_dim: int
    k_dim: int
    flat_in_fixed: bool
    flat_fixed_residual: float
    cross_factor_residual: float
    closure_residual: float

    @property
    def flat_dim(self):
        return self.p0.dim

    @property
    def leaf_dim(self):
        return self.p0.dim + sum(f.p.dim for f in self.factors)


def _sigma_orbits(ideals, sigma, tol):
    """Group simple ideals into orbits of the involution (size 1 or 2)."""
    left = list(range(len(ideals)))
    orbits = []
    while left:
        i = left.pop(0)
        image = sigma @ ideals[i].basis
        if outside_residual(ideals[i].basis, image) < tol:
            orbits.append((i,))
            continue
        partner = None
        for j in left:
            if ideals[j].dim == ideals[i].dim and outside_residual(ideals[j].basis, image) < tol:
                partner = j
                break
        if partner is None:
            raise DecompositionUnstable("involution does not permute the simple ideals of g^q")
        left.remove(partner)
        orbits.append((i, partner))
    return orbits


def group_type_check(algebra, involution, seed=42, tol=1e-8):
    """True iff ``algebra`` is two simple ideals swapped by ``involution``."""
    if algebra.dim == 0:
        return False
    ideals = ideal_decomposition(algebra, tol=tol, seed=seed)
    if ideals.center.dim or len(ideals.simple) != 2:
        return False
    image = np.asarray(involution) @ ideals.simple[0].basis
    return outside_residual(ideals.simple[1].basis, image) < max(tol, 1e-7)


def leaf_decomposition(space, cs, seed=42):
    """Flat part ``p0`` plus factors ``g_i = k_i + p_i`` of the leaf of symmetry."""
    inv = involutive_algebra(space, cs)
    alg = inv.algebra
    r = inv.p_dim
    n = alg.dim
    sigma = inv.involution
    fix = space.fix
    empty = Subspace.zero(space.dim_m)
    if r == 0:
        return LeafDecomposition(empty, (), fix.dim, 0, True, 0.0, 0.0, 0.0)

    values = cs.values
    # p0: directions of p^q commuting with all of p^q
    ad_p = np.vstack([alg.ad(np.eye(n)[a])[:, :r] for a in range(r)])
    flat_coef = null_space(ad_p, space.tol)
    p0 = Subspace(column_space(values @ flat_coef, space.tol), space.dim_m) if flat_coef.shape[1] else empty
    flat_res = outside_residual(fix.basis, p0.basis) if p0.dim else 0.0

    ideals = ideal_decomposition(alg, tol=max(space.tol, 1e-8), seed=seed)
    orbits = _sigma_orbits(ideals.simple, sigma, 1e-7)
    minus = (np.eye(n) - sigma) / 2
    plus = (np.eye(n) + sigma) / 2
    factors = []
    for orbit in orbits:
        g_i = column_space(np.hstack([ideals.simple[i].basis for i in orbit]), space.tol)
        p_coef = column_space(minus @ g_i, space.tol)
        k_coef = column_space(plus @ g_i, space.tol)
        if p_coef.shape[1] == 0:
            continue
        p_i = Subspace(column_space(values @ p_coef[:r], space.tol), space.dim_m)
        factors.append(LeafFactor(p_i, k_coef.shape[1], g_i.shape[1], len(orbit) == 2,
                                  tuple(sorted(ideals.simple[i].dim for i in orbit)), g_i))

    total = p0.dim + sum(f.p.dim for f in factors)
    if total != cs.index:
        raise DecompositionUnstable(f"leaf pieces have total dimension {total}, expected {cs.index}")

    jets = inv.jets
    cross = 0.0
    for a, b in ((a, b) for a in range(len(factors)) for b in range(a + 1, len(factors))):
        for x in factors[a].g_coords.T:
            for y in factors[b].g_coords.T:
                cross = max(cross, float(np.linalg.norm(jets @ alg.bracket(x, y))))
    factors.sort(key=lambda f: (-f.g_dim, -f.p.dim, f.simple_ideal_dims))
    k_dim = n - r
    return LeafDecomposition(p0, tuple(factors), fix.dim, k_dim, flat_res < 1e-8, flat_res, cross,
                             inv.closure_residual)


@dataclass(frozen=True)
class Theorem1Result:
    status: str
    residual: float
    symmetry_dim: int
    fix_dim: int


def theorem1_check(space, cs):
    """Symmetry subspace versus fixed vectors on a normal, non-symmetric, irreducible space."""
    reasons = []
    if not space.flags.normal:
        reasons.append("metric is not normal homogeneous")
    if cs.index == space.dim_m:
        reasons.append("space is symmetric")
    if not space.assumptions.irreducible:
        reasons.append("irreducibility not asserted")
    if reasons:
        raise NotApplicable("fixed-vector characterisation needs: " + "; ".join(reasons))
    sym = cs.symmetry_subspace
    fix = space.fix
    res = max(outside_residual(fix.basis, sym.basis) if sym.dim else 0.0,
              outside_residual(sym.basis, fix.basis) if fix.dim else 0.0)
    ok = sym.dim == fix.dim and res < 1e-8
    return Theorem1Result(PASS if ok else FAIL, res, sym.dim, fix.dim)


def theorem1_status(space, cs):
    try:
        return theorem1_check(space, cs).status
    except NotApplicable:
        return NOT_APPLICABLE


def bracket_formula_check(space, cs, trials=100, seed=42):
    """Max of ``|<[xi~, X~]_p, eta> + 1/2 <X_p, [xi~, eta~]_p>|``.

    ``X`` runs over the Cartan basis and ``xi, eta`` are random vectors
    orthogonal to the symmetry subspace; trial ``t`` draws from a generator
    seeded with ``(seed, t)``.
    """
    if not space.flags.naturally_reductive:
        raise NotApplicable("bracket formula check needs a naturally reductive metric")
    if trials <= 0 or not cs.basis:
        return 0.0
    perp = cs.symmetry_subspace.complement().basis
    if perp.shape[1] == 0:
        return 0.0
    worst = 0.0
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        xi = perp @ rng.standard_normal(perp.shape[1])
        eta = perp @ rng.standard_normal(perp.shape[1])
        xi_c = killing_operator_g(space, space.to_g(xi), cs.convention)
        eta_c = killing_operator_g(space, space.to_g(eta), cs.convention)
        xe = _bracket(space, cs, xi_c, eta_c).value
        for x in cs.basis:
            lhs = _bracket(space, cs, xi_c, x).value @ eta
            worst = max(worst, abs(lhs + 0.5 * (x.value @ xe)))
    return worst
