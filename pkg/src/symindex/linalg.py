"""Rank-revealing helpers shared by every module.

All rank decisions go through :func:`numerical_rank` so that the threshold
policy lives in one place.
"""
import numpy as np

DEFAULT_TOL = 1e-8


def numerical_rank(s, tol=DEFAULT_TOL, relative=False):
    """Number of singular values in ``s`` above the cut.

    With ``relative=True`` the cut is ``tol * max(s)``, otherwise ``tol``.
    """
    s = np.asarray(s)
    if s.size == 0:
        return 0
    cut = tol * s[0] if relative else tol
    return int(np.sum(s > cut))


def null_space(a, tol=DEFAULT_TOL, relative=False):
    """Orthonormal basis (as columns) of the kernel of ``a``."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    rank = numerical_rank(s, tol, relative)
    return vh[rank:].T.copy()


def column_space(a, tol=DEFAULT_TOL, relative=False):
    """Orthonormal basis (as columns) of the range of ``a``."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.size == 0:
        return np.zeros((a.shape[0], 0))
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    rank = numerical_rank(s, tol, relative)
    return u[:, :rank].copy()


def projector(basis):
    """Orthogonal projector onto the span of orthonormal columns."""
    return basis @ basis.T


def outside_residual(basis, vectors):
    """Largest norm of the part of ``vectors`` (columns) not in span(basis)."""
    vectors = np.atleast_2d(vectors)
    if vectors.size == 0:
        return 0.0
    rest = vectors - basis @ (basis.T @ vectors)
    return float(np.max(np.linalg.norm(rest, axis=0)))


def canonical_basis(basis, tol=1e-6):
    """Reduced row echelon form of the span of ``basis`` columns.

    Used only for presentation: any two bases of the same subspace give the
    same output, up to floating point noise.
    """
    rows = np.array(basis, dtype=float).T.copy()
    k, n = rows.shape
    lead = 0
    r = 0
    while r < k and lead < n:
        pivot = r + int(np.argmax(np.abs(rows[r:, lead])))
        if abs(rows[pivot, lead]) < tol:
            lead += 1
            continue
        rows[[r, pivot]] = rows[[pivot, r]]
        rows[r] /= rows[r, lead]
        for i in range(k):
            if i != r:
                rows[i] -= rows[i, lead] * rows[r]
        r += 1
        lead += 1
    return rows[:r]
