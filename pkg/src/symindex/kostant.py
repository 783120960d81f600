"""Metric classification, transvection algebra and the Kostant form."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .errors import NotApplicable, SolveFailure, TransvectionMismatch
from .lie import BilinearForm, Subspace, _symmetric_basis, invariance_operator, restrict
from .linalg import column_space, null_space


def naturally_reductive_residual(space):
    """Max of ``|<[x,u]_m, v> + <u, [x,v]_m>|`` over frame basis triples."""
    dd = space.bracket_m
    if dd.size == 0:
        return 0.0
    return float(np.max(np.abs(dd + dd.transpose(0, 2, 1))))


@dataclass(frozen=True, eq=False)
class _AffineSolution:
    particular: np.ndarray
    homogeneous: list
    residual: float


def _solve_extension(algebra, h_basis, frame, tol):
    """Invariant symmetric forms ``Q`` with ``Q(h,m) = 0`` and ``Q|_m = I`` (frame)."""
    n = algebra.dim
    sym = _symmetric_basis(n)
    blocks = [invariance_operator(algebra, sym)]
    rhs = [np.zeros(blocks[0].shape[0])]
    if h_basis.shape[1]:
        hm = np.einsum("ra,prs,sb->pab", h_basis, sym, frame).reshape(len(sym), -1).T
        blocks.append(hm)
        rhs.append(np.zeros(hm.shape[0]))
    mm = np.einsum("ra,prs,sb->pab", frame, sym, frame).reshape(len(sym), -1).T
    blocks.append(mm)
    rhs.append(np.eye(frame.shape[1]).ravel())
    a = np.vstack(blocks)
    b = np.concatenate(rhs)
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.max(np.abs(a @ x - b), initial=0.0))
    kernel = null_space(a, tol)
    to_form = lambda v: np.einsum("p,prs->rs", v, sym)
    return _AffineSolution(to_form(x), [to_form(v) for v in kernel.T], residual)


def _best_on_h(sol, h_basis):
    """Member of the affine family maximising the smallest eigenvalue on ``h``."""
    q0 = sol.particular

    def low(t):
        q = q0 + sum(ti * n_i for ti, n_i in zip(t, sol.homogeneous))
        return float(np.min(np.linalg.eigvalsh(h_basis.T @ q @ h_basis)))

    if h_basis.shape[1] == 0:
        return q0, np.inf
    if not sol.homogeneous:
        return q0, low([])
    res = scipy.optimize.minimize(lambda t: -low(t), np.zeros(len(sol.homogeneous)), method="Nelder-Mead")
    best = res.x if -res.fun > low(np.zeros(len(sol.homogeneous))) else np.zeros(len(sol.homogeneous))
    q = q0 + sum(ti * n_i for ti, n_i in zip(best, sol.homogeneous))
    return q, low(best)


def classify_metric(space):
    """Flags ``normal`` and ``naturally_reductive`` for the declared decomposition."""
    from .homogeneous import MetricFlags

    tol = space.tol
    nr = naturally_reductive_residual(space) < tol
    normal = False
    if nr:
        sol = _solve_extension(space.g, space.h.basis, space.frame, tol)
        if sol.residual < tol:
            _, low = _best_on_h(sol, space.h.basis)
            normal = low > tol
    return MetricFlags(normal=normal, naturally_reductive=nr)


def transvection_algebra(space):
    """Smallest subspace containing ``m`` stable under ``ad(m)``: ``m + [m,m] + ...``."""
    if not space.flags.naturally_reductive:
        raise NotApplicable("transvection algebra of the canonical connection needs a naturally reductive metric")
    g = space.g
    n = g.dim
    frame = space.frame
    current = column_space(frame, space.tol)
    while True:
        images = [g.ad(frame[:, a]) @ current for a in range(frame.shape[1])]
        grown = column_space(np.hstack([current] + images), space.tol)
        if grown.shape[1] == current.shape[1]:
            return Subspace(current, n)
        current = grown


@dataclass(frozen=True, eq=False)
class KostantForm:
    """``Q`` on the transvection algebra, in the coordinates of ``basis``."""

    q: BilinearForm
    basis: np.ndarray
    residuals: dict
    signature_on_h: tuple
    solution_dim: int
    restricted: bool

    @property
    def max_residual(self):
        return max(self.residuals.values())


def kostant_form(space, restrict_to_transvections=False):
    """Ad-invariant ``Q`` with ``Q(h,m) = 0`` and ``Q|_m = <,>``.

    When the presented algebra is strictly larger than the transvection
    algebra, this raises :class:`TransvectionMismatch` unless
    ``restrict_to_transvections`` is set, in which case ``Q`` lives on the
    transvection algebra (coordinates given by ``KostantForm.basis``).
    """
    tol = space.tol
    tr = transvection_algebra(space)
    n = space.dim_g
    restricted = tr.dim < n
    if restricted and not restrict_to_transvections:
        raise TransvectionMismatch(f"g has dim {n} but its transvection algebra has dim {tr.dim}")
    if restricted:
        basis = tr.basis
        algebra = restrict(space.g, basis, tol=max(tol, 1e-7))
        coords = lambda v: basis.T @ v
        h_in_tr = column_space(np.hstack([space.part_h(basis[:, i])[:, None] for i in range(tr.dim)]), tol)
        h_basis = coords(h_in_tr)
        frame = coords(space.frame)
    else:
        basis = np.eye(n)
        algebra = space.g
        h_basis = space.h.basis
        frame = space.frame

    sol = _solve_extension(algebra, h_basis, frame, tol)
    if sol.residual > 1e-6:
        raise SolveFailure(f"no invariant extension of the metric found (residual {sol.residual:.3g})")
    q = sol.particular
    q = (q + q.T) / 2
    ad = algebra.ad_basis
    residuals = {
        "invariance": float(np.max(np.abs(q @ ad + ad.transpose(0, 2, 1) @ q), initial=0.0)),
        "h_m_orthogonality": float(np.max(np.abs(h_basis.T @ q @ frame), initial=0.0)),
        "metric_match": float(np.max(np.abs(frame.T @ q @ frame - np.eye(frame.shape[1])), initial=0.0)),
    }
    ortho_h = column_space(h_basis, tol)
    vals = np.linalg.eigvalsh(ortho_h.T @ q @ ortho_h) if ortho_h.shape[1] else np.zeros(0)
    scale = max(1.0, float(np.max(np.abs(vals), initial=0.0)))
    sig = (int(np.sum(vals > tol * scale)), int(np.sum(vals < -tol * scale)), int(np.sum(np.abs(vals) <= tol * scale)))
    return KostantForm(BilinearForm(q), basis, residuals, sig, len(sol.homogeneous), restricted)

