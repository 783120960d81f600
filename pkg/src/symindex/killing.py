"""Killing fields at the base point and the Cartan subspace of transvections.

The candidate Killing algebra is ``g + f``: fields induced by ``g`` plus
``G``-invariant fields, one for each fixed vector of the isotropy. A
candidate is recorded by its parameters and its 1-jet at ``p = eH``: the
value in ``m`` and the skew operator ``u -> (nabla_u X)_p`` (both in frame
coordinates).

Fields induced by ``g`` bracket as ``[X~, Y~] = convention * [X, Y]~``; the
default ``convention = -1`` is the usual anti-homomorphism. Flipping it
negates every operator and bracket without changing the kernel.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ClosureFailure, InvariantFieldNotKilling, KoszulMismatch
from .lie import Subspace
from .linalg import null_space, numerical_rank, outside_residual

EXACT = "EXACT"
LOWER_BOUND = "LOWER_BOUND"


@dataclass(frozen=True, eq=False)
class KillingCandidate:
    g_part: np.ndarray
    f_part: np.ndarray
    value: np.ndarray
    operator: np.ndarray

    @property
    def jet(self):
        return np.concatenate([self.value, self.operator.ravel()])

    def skew_residual(self):
        a = self.operator
        return float(np.max(np.abs(a + a.T), initial=0.0))


def _operator_g(space, x, convention):
    eta = space.coords_h(x)
    mu = space.coords_m(x)
    r = space.isotropy_action
    a = np.einsum("i,icb->cb", eta, r) if len(eta) else np.zeros((space.dim_m,) * 2)
    a = a + 0.5 * np.einsum("a,abc->cb", mu, space.bracket_m)
    a = a + np.einsum("a,bac->cb", mu, space.u.coef)
    return -convention * a


def _operator_f(space, v, convention):
    # 2 <A(u), w> = -<[u, w]_m, v>
    return convention * 0.5 * np.einsum("bca,a->cb", space.bracket_m, v)


def killing_operator_g(space, x, convention=-1):
    """Candidate induced by ``x in g``: value ``x_m`` and its Killing operator."""
    x = np.asarray(x, dtype=float)
    return KillingCandidate(x, np.zeros(space.dim_m), space.coords_m(x), _operator_g(space, x, convention))


def killing_operator_f(space, v, convention=-1, allow_non_naturally_reductive=False):
    """Candidate for the ``G``-invariant field with value ``v`` (frame coords, in Fix)."""
    if not (space.flags.naturally_reductive or allow_non_naturally_reductive):
        raise InvariantFieldNotKilling(
            "G-invariant fields are Killing only for naturally reductive metrics; pass the override to experiment")
    v = np.asarray(v, dtype=float)
    return KillingCandidate(np.zeros(space.dim_g), v, v.copy(), _operator_f(space, v, convention))


def make_candidate(space, g_part, f_part, convention=-1):
    g_part = np.asarray(g_part, dtype=float)
    f_part = np.asarray(f_part, dtype=float)
    value = space.coords_m(g_part) + f_part
    op = _operator_g(space, g_part, convention) + _operator_f(space, f_part, convention)
    return KillingCandidate(g_part, f_part, value, op)


def combine(cands, coeffs):
    """Linear combination of candidates (all fields are linear in the parameters)."""
    coeffs = np.asarray(coeffs, dtype=float)
    return KillingCandidate(
        sum(c * k.g_part for c, k in zip(coeffs, cands)),
        sum(c * k.f_part for c, k in zip(coeffs, cands)),
        sum(c * k.value for c, k in zip(coeffs, cands)),
        sum(c * k.operator for c, k in zip(coeffs, cands)),
    )


def koszul_pairing(space, x, u, w, convention=-1):
    """``<(nabla_u X~)_p, w>`` from the Koszul formula for Killing fields.

    Evaluates ``2<nabla_U X, W> = <[U,X],W> + <[U,W],X> + <[X,W],U>`` at ``p``
    using only brackets in ``g`` and the projection to ``m``. ``u`` and ``w``
    are frame coordinates; the fields ``U~, W~`` are those induced by
    ``to_g(u)``, ``to_g(w)``.
    """
    to_g, coords, br = space.to_g, space.coords_m, space.g.bracket
    ug, wg = to_g(u), to_g(w)
    xm = coords(x)
    # value at p of the field bracket [A~, B~] is convention * [A, B]_m
    t1 = convention * coords(br(ug, x)) @ w
    t2 = convention * coords(br(ug, wg)) @ xm
    t3 = convention * coords(br(x, wg)) @ u
    return 0.5 * (t1 + t2 + t3)


def koszul_operator(space, x, convention=-1):
    """Full operator assembled entry by entry from :func:`koszul_pairing`."""
    d = space.dim_m
    eye = np.eye(d)
    a = np.empty((d, d))
    for b in range(d):
        for c in range(d):
            a[c, b] = koszul_pairing(space, x, eye[b], eye[c], convention)
    return a


def koszul_discrepancy(space, rng, trials=1, convention=-1):
    """Max ``|<A_x u, w> - koszul_pairing(x, u, w)|`` over random triples."""
    worst = 0.0
    for _ in range(trials):
        x = rng.standard_normal(space.dim_g)
        u = rng.standard_normal(space.dim_m)
        w = rng.standard_normal(space.dim_m)
        closed = w @ _operator_g(space, x, convention) @ u
        worst = max(worst, abs(closed - koszul_pairing(space, x, u, w, convention)))
    return worst


@dataclass(frozen=True, eq=False)
class CartanSubspace:
    """Transvections at ``p``, with values orthonormal in the metric."""

    basis: tuple
    symmetry_subspace: Subspace
    index: int
    status: str
    fix_included: bool
    heuristic: bool
    fix: Subspace
    convention: int
    operator_floor: float

    @property
    def values(self):
        """Frame coordinates of the basis values, as columns."""
        if not self.basis:
            return np.zeros((self.symmetry_subspace.ambient_dim, 0))
        return np.array([c.value for c in self.basis]).T


def _include_fix(space, invariant_fields):
    if invariant_fields == "auto":
        return space.flags.naturally_reductive
    if invariant_fields == "on":
        return True
    if invariant_fields == "off":
        return False
    raise ValueError(f"invariant_fields must be auto, on or off, got {invariant_fields!r}")


def parameter_candidates(space, include_fix, convention=-1):
    """Candidates for the basis of ``g`` followed by the basis of Fix."""
    eye = np.eye(space.dim_g)
    cands = [killing_operator_g(space, eye[i], convention) for i in range(space.dim_g)]
    if include_fix:
        fix = space.fix
        cands += [make_candidate(space, np.zeros(space.dim_g), fix.basis[:, j], convention) for j in range(fix.dim)]
    return cands


def cartan_subspace(space, invariant_fields="auto", convention=-1, seed=42, tol=None):
    """Kernel of ``(x, v) -> A_total`` and the symmetry subspace it spans."""
    tol = space.tol if tol is None else tol
    rng = np.random.default_rng(seed)
    gap = koszul_discrepancy(space, rng, trials=1, convention=convention)
    if gap > 1e-8:
        raise KoszulMismatch(f"closed-form Killing operator disagrees with the Koszul sum by {gap:.3g}")

    include = _include_fix(space, invariant_fields)
    heuristic = include and not space.flags.naturally_reductive
    cands = parameter_candidates(space, include, convention)
    d = space.dim_m
    ops = np.array([c.operator.ravel() for c in cands])
    vals = np.array([c.value for c in cands])

    _, s, _ = np.linalg.svd(ops, full_matrices=False)
    rel = s[0] if s.size and s[0] > 0 else 1.0
    kernel = null_space(ops.T, tol, relative=True) if s.size and s[0] > 0 else np.eye(len(cands))
    kept = s[s > tol * rel]
    floor = float(kept.min()) if kept.size else np.inf

    kvals = kernel.T @ vals
    if kernel.shape[1]:
        u, sv, wt = np.linalg.svd(kvals.T, full_matrices=False)
        rank = numerical_rank(sv, tol)
        coeffs = wt[:rank].T / sv[:rank]
        basis = tuple(combine(cands, kernel @ coeffs[:, i]) for i in range(rank))
        sym = Subspace(u[:, :rank], d)
    else:
        basis = ()
        sym = Subspace.zero(d)

    index = sym.dim
    if index == d:
        status = EXACT
    elif (include and not heuristic and space.assumptions.irreducible and space.assumptions.non_sphere):
        status = EXACT
    else:
        status = LOWER_BOUND
    fix = space.fix if include else Subspace.zero(d)
    return CartanSubspace(basis, sym, index, status, include, heuristic, fix, convention, floor)


def index_of_symmetry(space, **kwargs):
    return cartan_subspace(space, **kwargs).index


def is_symmetric(space, **kwargs):
    return cartan_subspace(space, **kwargs).index == space.dim_m


def candidate_bracket(space, c1, c2, convention=-1, allow_non_naturally_reductive=False, tol=None):
    """Bracket of two candidate Killing fields.

    ``g``-parts bracket through ``convention * [x1, x2]``; invariant-field
    parts bracket to the invariant field with value ``A2(v1) - A1(v2)``;
    mixed terms vanish.
    """
    tol = space.tol if tol is None else tol
    g_part = convention * space.g.bracket(c1.g_part, c2.g_part)
    f_part = np.zeros(space.dim_m)
    if np.any(c1.f_part) or np.any(c2.f_part):
        if not (space.flags.naturally_reductive or allow_non_naturally_reductive):
            raise InvariantFieldNotKilling("invariant-field brackets need a naturally reductive metric")
        a1 = _operator_f(space, c1.f_part, convention)
        a2 = _operator_f(space, c2.f_part, convention)
        w = a2 @ c1.f_part - a1 @ c2.f_part
        fix = space.fix.basis
        if outside_residual(fix, w[:, None]) > tol * max(1.0, float(np.linalg.norm(w))):
            raise ClosureFailure("bracket of invariant fields leaves the fixed-vector subspace")
        f_part = fix @ (fix.T @ w)
    return make_candidate(space, g_part, f_part, convention)
