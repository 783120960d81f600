"""Real Lie algebras given by structure constants on a fixed basis.

Vectors are plain numpy arrays of coordinates. Subspaces are stored as
matrices whose columns are an orthonormal basis for the Euclidean inner
product on coordinates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DecompositionUnstable, NotALieAlgebra, NotCompactType, NotSubalgebra
from .linalg import DEFAULT_TOL, column_space, null_space, outside_residual


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Finite-dimensional real Lie algebra.

    ``structure[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
    """

    structure: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        c = _frozen(self.structure)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise NotALieAlgebra(f"structure tensor must be n x n x n, got {c.shape}")
        asym = np.max(np.abs(c + c.transpose(1, 0, 2))) if c.size else 0.0
        if asym > 1e-12:
            raise NotALieAlgebra(f"structure constants not antisymmetric (residual {asym:.3g})")
        object.__setattr__(self, "structure", c)
        labels = tuple(self.labels) or tuple(f"e{i + 1}" for i in range(c.shape[0]))
        if len(labels) != c.shape[0]:
            raise NotALieAlgebra("number of labels does not match dimension")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_triples(cls, dim, triples, labels=()):
        """Build from sparse ``(i, j, k, value)`` entries with ``i < j`` implied."""
        c = np.zeros((dim, dim, dim))
        for i, j, k, v in triples:
            c[i, j, k] = v
            c[j, i, k] = -v
        return cls(c, tuple(labels))

    @classmethod
    def abelian(cls, dim):
        return cls(np.zeros((dim, dim, dim)))

    @property
    def dim(self):
        return self.structure.shape[0]

    def ad(self, x):
        """Matrix of ``y -> [x, y]``."""
        return np.einsum("i,ijk->kj", x, self.structure)

    @property
    def ad_basis(self):
        """Stack of ``ad(e_i)`` matrices, shape ``(n, n, n)``."""
        return self.structure.transpose(0, 2, 1)

    def bracket(self, x, y):
        return np.einsum("i,j,ijk->k", x, y, self.structure)

    def opposite(self):
        """Same vector space with the bracket negated."""
        return LieAlgebra(-self.structure, self.labels)

    def triples(self, tol=0.0):
        """Sparse ``(i, j, k, value)`` entries with ``i < j`` and ``|value| > tol``."""
        out = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    v = float(self.structure[i, j, k])
                    if abs(v) > tol:
                        out.append((i, j, k, v))
        return out


@dataclass(frozen=True, eq=False)
class BilinearForm:
    matrix: np.ndarray

    def __post_init__(self):
        q = _frozen(self.matrix)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ValueError("bilinear form must be a square matrix")
        if np.max(np.abs(q - q.T), initial=0.0) > 1e-10 * max(1.0, np.max(np.abs(q), initial=0.0)):
            raise ValueError("bilinear form is not symmetric")
        object.__setattr__(self, "matrix", _frozen((q + q.T) / 2))

    def __call__(self, x, y):
        return float(x @ self.matrix @ y)

    def rank(self, tol=DEFAULT_TOL):
        return int(np.sum(np.abs(np.linalg.eigvalsh(self.matrix)) > tol))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of coordinate space, basis kept orthonormal as columns."""

    basis: np.ndarray
    ambient_dim: int = field(default=-1)

    def __post_init__(self):
        b = np.array(self.basis, dtype=float)
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        n = b.shape[0] if self.ambient_dim < 0 else self.ambient_dim
        if b.size == 0:
            b = np.zeros((n, 0))
        if b.shape[0] != n:
            raise ValueError("basis vectors do not match the ambient dimension")
        if b.shape[1]:
            q, _ = np.linalg.qr(b)
            b = q
        object.__setattr__(self, "basis", _frozen(b))
        object.__setattr__(self, "ambient_dim", n)

    @classmethod
    def span(cls, vectors, ambient_dim, tol=DEFAULT_TOL):
        """Span of the given column vectors; dependent vectors are dropped."""
        vectors = np.asarray(vectors, dtype=float).reshape(ambient_dim, -1)
        return cls(column_space(vectors, tol), ambient_dim)

    @classmethod
    def zero(cls, ambient_dim):
        return cls(np.zeros((ambient_dim, 0)), ambient_dim)

    @classmethod
    def whole(cls, ambient_dim):
        return cls(np.eye(ambient_dim), ambient_dim)

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def projector(self):
        return self.basis @ self.basis.T

    def orthonormality_residual(self):
        if self.dim == 0:
            return 0.0
        return float(np.max(np.abs(self.basis.T @ self.basis - np.eye(self.dim))))

    def contains(self, vectors, tol=DEFAULT_TOL):
        return outside_residual(self.basis, vectors) < tol

    def complement(self):
        return Subspace(null_space(self.basis.T), self.ambient_dim)

    def same_as(self, other, tol=DEFAULT_TOL):
        return self.dim == other.dim and self.contains(other.basis, tol) and other.contains(self.basis, tol)


def bracket(a, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (a.dim,) or y.shape != (a.dim,):
        raise ValueError(f"vectors must have length {a.dim}, got {x.shape} and {y.shape}")
    return a.bracket(x, y)


def jacobi_tensor(a):
    """Cyclic sums ``[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]``."""
    c = a.structure
    # t[i,j,k,:] = [e_i, [e_j, e_k]]
    t = np.einsum("jkl,ilm->ijkm", c, c)
    return t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)


def jacobi_residual(a):
    """Max-norm of the Jacobi cyclic sum over all basis triples."""
    if a.dim == 0:
        return 0.0
    return float(np.max(np.linalg.norm(jacobi_tensor(a), axis=-1)))


def jacobi_worst_triple(a):
    """Basis triple with the largest Jacobi defect, and that defect."""
    norms = np.linalg.norm(jacobi_tensor(a), axis=-1)
    i, j, k = np.unravel_index(int(np.argmax(norms)), norms.shape)
    return (int(i), int(j), int(k)), float(norms[i, j, k])


def killing_form(a):
    """``B(x, y) = tr(ad x ad y)``."""
    return BilinearForm(np.einsum("iba,jab->ij", a.structure, a.structure))


def _symmetric_basis(n):
    forms = []
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        s = np.zeros((n, n))
        s[i, j] = s[j, i] = 1.0
        forms.append(s)
    return np.array(forms).reshape(-1, n, n)


def invariance_operator(a, forms):
    """Linear map sending each form ``F`` to the stack ``F ad_z + ad_z^T F``.

    Returns the matrix whose columns are the vectorised images of ``forms``.
    """
    ad = a.ad_basis
    rows = np.einsum("prs,zst->pzrt", forms, ad) + np.einsum("zsr,pst->pzrt", ad, forms)
    return rows.reshape(len(forms), -1).T


def invariant_forms(a, constraints=(), tol=DEFAULT_TOL):
    """Basis of ad-invariant symmetric forms satisfying extra linear constraints.

    Each constraint is an ``n x n`` matrix ``C`` imposing ``sum(C * Q) = 0``.
    An empty list means only the zero form qualifies.
    """
    n = a.dim
    sym = _symmetric_basis(n)
    system = invariance_operator(a, sym)
    if constraints:
        extra = np.array([np.einsum("rs,prs->p", np.asarray(c, dtype=float), sym) for c in constraints])
        system = np.vstack([system, extra])
    kernel = null_space(system, tol)
    return [BilinearForm(np.einsum("p,prs->rs", v, sym)) for v in kernel.T]


def centralizer(a, s, tol=DEFAULT_TOL):
    """``{x : [x, v] = 0 for all v in s}``."""
    if isinstance(s, Subspace):
        vs = s.basis
    else:
        vs = np.asarray(s, dtype=float).reshape(a.dim, -1)
    if vs.shape[1] == 0:
        return Subspace.whole(a.dim)
    # [x, v] = -ad(v) x
    stacked = np.vstack([a.ad(v) for v in vs.T])
    return Subspace(null_space(stacked, tol), a.dim)


def center(a, tol=DEFAULT_TOL):
    return centralizer(a, np.eye(a.dim), tol)


def derived_algebra(a, tol=DEFAULT_TOL):
    """Span of all brackets ``[e_i, e_j]``."""
    n = a.dim
    return Subspace(column_space(a.structure.reshape(n * n, n).T, tol), n)


def restrict(a, basis, tol=DEFAULT_TOL):
    """Abstract Lie algebra carried by the columns of ``basis``.

    Raises :class:`NotSubalgebra` when brackets leave the span.
    """
    if isinstance(basis, Subspace):
        basis = basis.basis
    b = np.asarray(basis, dtype=float)
    r = b.shape[1]
    if r == 0:
        return LieAlgebra(np.zeros((0, 0, 0)))
    br = np.einsum("ia,jb,ijk->abk", b, b, a.structure)
    coords, *_ = np.linalg.lstsq(b, br.reshape(r * r, a.dim).T, rcond=None)
    resid = np.max(np.abs(b @ coords - br.reshape(r * r, a.dim).T))
    if resid > tol:
        raise NotSubalgebra(f"span is not closed under the bracket (residual {resid:.3g})")
    c = coords.T.reshape(r, r, r)
    return LieAlgebra((c - c.transpose(1, 0, 2)) / 2)


@dataclass(frozen=True, eq=False)
class Ideals:
    """Center plus simple ideals of a compact-type Lie algebra."""

    center: Subspace
    simple: tuple

    def __iter__(self):
        yield self.center
        yield from self.simple

    @property
    def simple_dims(self):
        return [s.dim for s in self.simple]


def _split_semisimple(a, rng, tol, depth=0):
    """Simple ideals of a semisimple compact algebra, in its own coordinates."""
    n = a.dim
    forms = invariant_forms(a, tol=tol)
    if len(forms) <= 1:
        return [np.eye(n)]
    if depth > 8:
        raise DecompositionUnstable("ideal splitting did not converge")
    killing = -killing_form(a).matrix
    for _ in range(5):
        weights = rng.uniform(1.0, 2.0, size=len(forms))
        q = sum(w * f.matrix for w, f in zip(weights, forms))
        vals, vecs = scipy.linalg.eigh(q, killing)
        scale = max(1.0, float(np.max(np.abs(vals))))
        gaps = np.diff(vals) / scale
        tie = 1e-6
        if np.any((gaps > tie) & (gaps < 10 * tie)):
            continue
        cuts = np.flatnonzero(gaps >= 10 * tie) + 1
        groups = np.split(np.arange(n), cuts)
        if len(groups) < 2:
            continue
        out = []
        for g in groups:
            sub_basis = column_space(vecs[:, g], tol)
            sub = restrict(a, sub_basis, tol=max(tol, 1e-7))
            for piece in _split_semisimple(sub, rng, tol, depth + 1):
                out.append(sub_basis @ piece)
        return out
    raise DecompositionUnstable("eigenvalue gaps of the random invariant operator are ambiguous")


def _ideal_key(basis):
    weights = np.round(np.sum(basis**2, axis=1), 6)
    return (basis.shape[1], tuple(-weights))


def ideal_decomposition(a, tol=DEFAULT_TOL, seed=42):
    """Split a compact-type algebra into its center and simple ideals.

    The semisimple part is split along the eigenspaces of a random
    combination of invariant forms, relative to the Killing form; each piece
    is split again until its invariant forms are one-dimensional. The RNG is
    seeded, so the output is deterministic.
    """
    n = a.dim
    z = center(a, tol)
    d = derived_algebra(a, tol)
    if z.dim + d.dim != n or (z.dim and d.dim and np.linalg.matrix_rank(np.hstack([z.basis, d.basis]), tol) != n):
        raise NotCompactType("center and derived algebra do not span the algebra; not of compact type")
    if d.dim == 0:
        return Ideals(z, ())
    ss = restrict(a, d, tol=max(tol, 1e-7))
    kf = killing_form(ss).matrix
    top = float(np.max(np.linalg.eigvalsh(kf)))
    if top > -tol:
        raise NotCompactType(f"Killing form of the semisimple part is not negative definite (max eigenvalue {top:.3g})")
    rng = np.random.default_rng(seed)
    pieces = [Subspace(d.basis @ p, n) for p in _split_semisimple(ss, rng, tol)]
    pieces.sort(key=lambda s: _ideal_key(s.basis))
    return Ideals(z, tuple(pieces))
