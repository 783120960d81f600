"""Reductive homogeneous spaces ``G/H`` with ``g = h + m`` and a metric on ``m``.

Tangent vectors at the base point are handled in *frame coordinates*: the
coordinates with respect to a basis of ``m`` that is orthonormal for the
metric. In these coordinates metric-skew operators are antisymmetric
matrices, and every m-valued quantity below (``D``, U tensor, fixed
vectors, Killing operators) uses them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from .errors import (
    NonReductive,
    NotALieAlgebra,
    NotComplement,
    NotInvariant,
    NotPositiveDefinite,
    NotSubalgebra,
)
from .lie import BilinearForm, LieAlgebra, Subspace, jacobi_residual, jacobi_worst_triple
from .linalg import DEFAULT_TOL, null_space, outside_residual


@dataclass(frozen=True)
class Normal:
    """Metric induced by an ad-invariant inner product on ``g``; ``m = h^perp``."""

    form: np.ndarray


@dataclass(frozen=True)
class Explicit:
    """Caller-supplied complement ``m`` (columns) and a Gram matrix on it."""

    m_basis: np.ndarray
    form: np.ndarray


@dataclass(frozen=True)
class MetricFlags:
    normal: bool = False
    naturally_reductive: bool = False


@dataclass(frozen=True)
class Assumptions:
    """Facts the tool cannot decide and takes on the caller's word."""

    irreducible: bool = False
    non_sphere: bool = False


@dataclass(frozen=True, eq=False)
class HomogeneousSpace:
    g: LieAlgebra
    h: Subspace
    m: Subspace
    frame: np.ndarray
    metric_spec: object
    flags: MetricFlags = MetricFlags()
    assumptions: Assumptions = Assumptions()
    name: str = ""
    tol: float = DEFAULT_TOL
    isotropy_input: np.ndarray = field(default=None, repr=False)

    @property
    def dim_g(self):
        return self.g.dim

    @property
    def dim_h(self):
        return self.h.dim

    @property
    def dim_m(self):
        return self.frame.shape[1]

    @cached_property
    def _split(self):
        return np.linalg.inv(np.hstack([self.h.basis, self.frame]))

    def coords_m(self, x):
        """Frame coordinates of the m-component of ``x`` (along ``h + m``)."""
        return self._split[self.dim_h:] @ x

    def coords_h(self, x):
        """Coordinates of the h-component of ``x`` in the basis ``h.basis``."""
        return self._split[: self.dim_h] @ x

    def part_h(self, x):
        return self.h.basis @ self.coords_h(x)

    def to_g(self, coords):
        """Element of ``g`` with the given frame coordinates."""
        return self.frame @ coords

    @cached_property
    def metric(self):
        """The metric as a form on the orthonormal basis ``m.basis``."""
        c = self.coords_m(self.m.basis)
        return BilinearForm(c.T @ c)

    @cached_property
    def bracket_m(self):
        """``D[a, b, c]``: frame coordinate ``c`` of ``[e_a, e_b]_m``."""
        e = self.frame
        br = np.einsum("ia,jb,ijk->abk", e, e, self.g.structure)
        return np.einsum("ck,abk->abc", self._split[self.dim_h:], br)

    @cached_property
    def isotropy_action(self):
        """``R[i]``: frame matrix of ``ad(h_i)`` acting on ``m``."""
        e = self.frame
        out = np.einsum("ia,jb,ijk->abk", self.h.basis, e, self.g.structure)
        return np.einsum("ck,abk->acb", self._split[self.dim_h:], out)

    @cached_property
    def fix(self):
        return fixed_vectors(self)

    @cached_property
    def u(self):
        return u_tensor(self)


def _check_lie(g, tol):
    res = jacobi_residual(g)
    if res > tol:
        triple, _ = jacobi_worst_triple(g)
        labels = tuple(g.labels[i] for i in triple)
        raise NotALieAlgebra(f"Jacobi identity fails (residual {res:.3g}) at basis triple {labels}", triple)


def _check_subalgebra(g, h, tol):
    for a, b in itertools.combinations(range(h.dim), 2):
        v = g.bracket(h.basis[:, a], h.basis[:, b])
        if outside_residual(h.basis, v[:, None]) > tol:
            raise NotSubalgebra(f"isotropy is not a subalgebra: [h_{a}, h_{b}] leaves h")


def _orthonormal_frame(basis, gram, tol):
    gram = np.asarray(gram, dtype=float)
    if gram.shape != (basis.shape[1], basis.shape[1]):
        raise NotPositiveDefinite(f"metric matrix has shape {gram.shape}, expected {(basis.shape[1],) * 2}")
    if np.max(np.abs(gram - gram.T), initial=0.0) > tol:
        raise NotPositiveDefinite("metric matrix is not symmetric")
    gram = (gram + gram.T) / 2
    low = float(np.min(np.linalg.eigvalsh(gram))) if gram.size else 1.0
    if low <= tol:
        raise NotPositiveDefinite(f"metric is not positive definite (min eigenvalue {low:.3g})")
    chol = np.linalg.cholesky(gram)
    return basis @ np.linalg.inv(chol).T


def build_space(g, h, metric_spec, *, assumptions=Assumptions(), name="", tol=DEFAULT_TOL):
    """Validate a reductive presentation and classify its metric.

    ``h`` is a :class:`Subspace` of ``g`` (or an array of column vectors);
    ``metric_spec`` is :class:`Normal` or :class:`Explicit`.
    """
    from .kostant import classify_metric

    n = g.dim
    _check_lie(g, max(tol, 1e-9))
    if not isinstance(h, Subspace):
        h_input = np.asarray(h, dtype=float).reshape(n, -1)
        h = Subspace.span(h_input, n, tol)
    else:
        h_input = h.basis
    _check_subalgebra(g, h, tol)

    if isinstance(metric_spec, Normal):
        q = np.asarray(metric_spec.form, dtype=float)
        if q.shape != (n, n):
            raise NotPositiveDefinite(f"normal form has shape {q.shape}, expected {(n, n)}")
        if np.max(np.abs(q - q.T)) > tol:
            raise NotPositiveDefinite("normal form is not symmetric")
        low = float(np.min(np.linalg.eigvalsh(q)))
        if low <= tol:
            raise NotPositiveDefinite(f"normal form is not positive definite (min eigenvalue {low:.3g})")
        ad = g.ad_basis
        inv = np.max(np.abs(q @ ad + ad.transpose(0, 2, 1) @ q), initial=0.0)
        if inv > tol * max(1.0, float(np.max(np.abs(q)))):
            raise NotInvariant(f"normal form is not ad-invariant (residual {inv:.3g})")
        m_raw = null_space(h.basis.T @ q, tol)
        frame = _orthonormal_frame(m_raw, m_raw.T @ q @ m_raw, tol)
    elif isinstance(metric_spec, Explicit):
        m_raw = np.asarray(metric_spec.m_basis, dtype=float).reshape(n, -1)
        frame = _orthonormal_frame(m_raw, metric_spec.form, tol)
    else:
        raise TypeError(f"unknown metric specification {metric_spec!r}")

    m = Subspace.span(frame, n, tol)
    if m.dim != frame.shape[1]:
        raise NotComplement("m basis vectors are linearly dependent")
    if h.dim + m.dim != n or np.linalg.matrix_rank(np.hstack([h.basis, frame]), tol) != n:
        raise NotComplement(f"h (dim {h.dim}) and m (dim {m.dim}) are not complementary in g (dim {n})")

    for i in range(h.dim):
        images = g.ad(h.basis[:, i]) @ m.basis
        if outside_residual(m.basis, images) > tol:
            raise NonReductive(f"[h, m] is not contained in m (isotropy vector {i})")

    space = HomogeneousSpace(g, h, m, frame, metric_spec, assumptions=assumptions, name=name, tol=tol,
                             isotropy_input=h_input)
    r = space.isotropy_action
    skew = float(np.max(np.abs(r + r.transpose(0, 2, 1)), initial=0.0))
    if skew > tol:
        raise NotInvariant(f"metric is not Ad(H)-invariant (residual {skew:.3g})")
    return replace(space, flags=classify_metric(space))


def fixed_vectors(space):
    """Vectors of ``m`` annihilated by ``ad(h)``, in frame coordinates."""
    d = space.dim_m
    r = space.isotropy_action
    if r.shape[0] == 0:
        return Subspace.whole(d)
    return Subspace(null_space(r.reshape(-1, d), space.tol), d)


@dataclass(frozen=True, eq=False)
class UTensor:
    """Symmetric ``U: m x m -> m`` with coefficients ``coef[a, b, c]`` in frame coordinates."""

    coef: np.ndarray

    def __call__(self, x, y):
        return np.einsum("a,b,abc->c", x, y, self.coef)

    def symmetry_residual(self):
        return float(np.max(np.abs(self.coef - self.coef.transpose(1, 0, 2)), initial=0.0))

    def max_coefficient(self):
        return float(np.max(np.abs(self.coef), initial=0.0))


def u_tensor(space):
    """Solve ``2<U(x,y),z> = <[z,x]_m, y> + <x, [z,y]_m>``."""
    dd = space.bracket_m
    return UTensor((dd.transpose(1, 2, 0) + dd.transpose(2, 1, 0)) / 2)


def u_identity_residual(space, u=None):
    """Check the defining identity of ``U`` by direct evaluation on basis triples."""
    u = u_tensor(space) if u is None else u
    d = space.dim_m
    worst = 0.0
    eye = np.eye(d)
    for a, b, c in itertools.product(range(d), repeat=3):
        lhs = 2 * u(eye[a], eye[b])[c]
        zx = space.coords_m(space.g.bracket(space.to_g(eye[c]), space.to_g(eye[a])))
        zy = space.coords_m(space.g.bracket(space.to_g(eye[c]), space.to_g(eye[b])))
        worst = max(worst, abs(lhs - zx[b] - zy[a]))
    return worst


def project_m(space, x):
    """Component of ``x`` in ``m`` along ``h + m``, as an element of ``g``."""
    return space.to_g(space.coords_m(np.asarray(x, dtype=float)))
