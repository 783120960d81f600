"""Builders for the algebras and spaces used as ground truth.

Expected values carry a provenance tag: ``PAPER`` (stated in the source
literature for this construction), ``DERIVED`` (computed independently in
the test suite) or ``TRIVIAL`` (follows from the definitions).
"""
from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ChainInvalid, MissingData, PerpendicularityFailure, UnknownEntry
from .homogeneous import Assumptions, Explicit, Normal, build_space
from .lie import LieAlgebra, Subspace, killing_form, restrict
from .linalg import DEFAULT_TOL, column_space, null_space, outside_residual


def so_index(n):
    """Map ``(i, j)`` with ``0 <= i < j < n`` to the basis position of ``L_{i+1, j+1}``."""
    return {pair: k for k, pair in enumerate(itertools.combinations(range(n), 2))}


def build_so(n):
    """``so(n)`` on the basis ``L_ij = E_ij - E_ji`` (``i < j``).

    ``[L_ij, L_kl] = d_jk L_il - d_ik L_jl - d_jl L_ik + d_il L_jk``.
    The inner product ``-(1/2) tr(XY)`` makes this basis orthonormal.
    """
    if n < 2:
        raise ValueError("so(n) needs n >= 2")
    idx = so_index(n)
    dim = len(idx)
    c = np.zeros((dim, dim, dim))

    def add(out, i, j, coef):
        if i == j or coef == 0:
            return
        if i < j:
            out[idx[i, j]] += coef
        else:
            out[idx[j, i]] -= coef

    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            v = np.zeros(dim)
            add(v, i, l, float(j == k))
            add(v, j, l, -float(i == k))
            add(v, i, k, -float(j == l))
            add(v, j, k, float(i == l))
            c[a, b] = v
    labels = tuple(f"L{i + 1}{j + 1}" for i, j in idx)
    return LieAlgebra(c, labels)


def so_block(n, coords):
    """Columns spanning the ``so`` of the listed coordinates (0-based) inside ``so(n)``."""
    idx = so_index(n)
    cols = [idx[p] for p in itertools.combinations(sorted(coords), 2)]
    out = np.zeros((len(idx), len(cols)))
    for c, k in enumerate(cols):
        out[k, c] = 1.0
    return out


def gell_mann():
    lam = np.zeros((8, 3, 3), dtype=complex)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1], lam[1][1, 0] = -1j, 1j
    lam[2][0, 0], lam[2][1, 1] = 1, -1
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2], lam[4][2, 0] = -1j, 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2], lam[6][2, 1] = -1j, 1j
    lam[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return lam


def su3_matrices():
    """Anti-Hermitian basis ``T_a = -i lambda_a / 2``; ``[T_a, T_b] = f_abc T_c``."""
    return -0.5j * gell_mann()


def algebra_from_matrices(mats, inner, labels=()):
    """Structure constants of a matrix Lie algebra with an orthonormal basis."""
    n = len(mats)
    c = np.zeros((n, n, n))
    for a, b in itertools.product(range(n), repeat=2):
        comm = mats[a] @ mats[b] - mats[b] @ mats[a]
        c[a, b] = [inner(comm, mats[k]) for k in range(n)]
    return LieAlgebra(c, tuple(labels))


SU3_SO3 = (1, 4, 6)  # T2, T5, T7: the real antisymmetric directions
SU3_SO2 = (1,)       # T2: rotation of the (1,2)-plane


def build_su3():
    """``su(3)`` with ``-2 Re tr(XY)`` making the ``T_a`` orthonormal."""
    mats = su3_matrices()
    inner = lambda x, y: float(-2 * np.real(np.trace(x @ y)))
    return algebra_from_matrices(mats, inner, tuple(f"T{a + 1}" for a in range(8)))


def direct_sum(*algebras):
    n = sum(a.dim for a in algebras)
    c = np.zeros((n, n, n))
    labels = []
    off = 0
    for k, a in enumerate(algebras):
        sl = slice(off, off + a.dim)
        c[sl, sl, sl] = a.structure
        labels += [f"{lab}_{k + 1}" for lab in a.labels]
        off += a.dim
    return LieAlgebra(c, tuple(labels))


def build_normal(g, h_basis, q=None, q_scale=1.0, **kwargs):
    """Normal homogeneous metric from ``q_scale * q`` (identity if ``q`` is None)."""
    q = np.eye(g.dim) if q is None else np.asarray(q, dtype=float)
    return build_space(g, h_basis, Normal(q_scale * q), **kwargs)


@dataclass(frozen=True, eq=False)
class Triple:
    g_prime: np.ndarray
    k_prime: np.ndarray
    p_prime: np.ndarray
    m_prime: np.ndarray


def triple_split(g, q, g_prime, k_prime, tol=DEFAULT_TOL):
    """Check ``g > g' > k'`` and return the pieces ``k', p', m'`` as columns.

    ``p'`` is the Cartan complement of ``k'`` in ``g'`` for the Killing form
    of ``g'``; it must also be orthogonal to ``k'`` under ``q``.
    """
    n = g.dim
    gp = column_space(np.asarray(g_prime, dtype=float).reshape(n, -1), tol)
    kp = column_space(np.asarray(k_prime, dtype=float).reshape(n, -1), tol)
    if outside_residual(gp, kp) > tol:
        raise ChainInvalid("k' is not contained in g'")
    try:
        gp_alg = restrict(g, gp, tol=max(tol, 1e-7))
        restrict(g, kp, tol=max(tol, 1e-7))
    except Exception as exc:
        raise ChainInvalid(f"chain member is not a subalgebra: {exc}") from exc
    b = killing_form(gp_alg).matrix
    k_in = gp.T @ kp
    p_in = null_space(k_in.T @ b, tol)
    pp = gp @ p_in
    if pp.shape[1] + kp.shape[1] != gp.shape[1]:
        raise ChainInvalid("Killing form of g' is degenerate on k'")
    for a, c in itertools.combinations_with_replacement(range(pp.shape[1]), 2):
        v = g.bracket(pp[:, a], pp[:, c])
        if outside_residual(kp, v[:, None]) > max(tol, 1e-7):
            raise ChainInvalid("(g', k') is not a symmetric pair: [p', p'] leaves k'")
    cross = float(np.max(np.abs(kp.T @ q @ pp), initial=0.0))
    if cross > max(tol, 1e-7):
        raise PerpendicularityFailure(f"k' and p' are not orthogonal for the ambient form (residual {cross:.3g})")
    m = null_space(kp.T @ q, tol)
    mp = m @ null_space((m.T @ q @ pp).T, tol)
    return Triple(gp, kp, column_space(pp, tol), mp)


def build_triple_scaled(g, g_prime, k_prime, lam=2.0, q=None, **kwargs):
    """``G/K'`` with the ambient metric on ``m'`` and ``lam`` times it on ``p'``."""
    q = np.eye(g.dim) if q is None else np.asarray(q, dtype=float)
    tol = kwargs.get("tol", DEFAULT_TOL)
    t = triple_split(g, q, g_prime, k_prime, tol)
    basis = np.hstack([t.m_prime, t.p_prime])
    gram = basis.T @ q @ basis
    a = t.m_prime.shape[1]
    gram[a:, :] *= np.sqrt(lam)
    gram[:, a:] *= np.sqrt(lam)
    gram[:a, a:] = 0.0
    gram[a:, :a] = 0.0
    return build_space(g, t.k_prime, Explicit(basis, gram), **kwargs)


# -- named spaces -----------------------------------------------------------

IRREDUCIBLE = Assumptions(irreducible=True, non_sphere=True)
SPHERE = Assumptions(irreducible=True, non_sphere=False)


def sphere(n, **kw):
    """``S^n = SO(n+1)/SO(n)``, isotropy on the last ``n`` coordinates."""
    g = build_so(n + 1)
    return build_normal(g, so_block(n + 1, range(1, n + 1)), assumptions=SPHERE, name=f"sphere-{n}", **kw)


def stiefel(n, k, **kw):
    """``SO(n+k)/SO(n)`` with ``SO(n)`` in the lower-right block."""
    g = build_so(n + k)
    return build_normal(g, so_block(n + k, range(k, n + k)), assumptions=IRREDUCIBLE,
                        name=f"stiefel-{n + k}-{n}", **kw)


def group_space(**kw):
    """``(so(3) + so(3)) / diag``: ``SO(3)`` with a bi-invariant metric."""
    g = direct_sum(build_so(3), build_so(3))
    diag = np.vstack([np.eye(3), np.eye(3)])
    return build_normal(g, diag, assumptions=Assumptions(irreducible=True, non_sphere=False),
                        name="group-so3", **kw)


def unit_tangent_bundle(n, lam=2.0, **kw):
    """``SO(n+1) > SO(n) > SO(n-1)``; ``G'`` acts on the last ``n`` coordinates."""
    g = build_so(n + 1)
    return build_triple_scaled(g, so_block(n + 1, range(1, n + 1)), so_block(n + 1, range(2, n + 1)), lam,
                               assumptions=IRREDUCIBLE, name=f"t1s{n}", **kw)


def aloff_wallach(lam=2.0, **kw):
    """``SU(3) > SO(3) > SO(2)`` with the scaled metric: ``W^7_{1,-1}``."""
    g = build_su3()
    eye = np.eye(8)
    return build_triple_scaled(g, eye[:, list(SU3_SO3)], eye[:, list(SU3_SO2)], lam,
                               assumptions=IRREDUCIBLE, name="aloff-wallach", **kw)


F4_DATA_ENV = "SYMINDEX_F4_DATA"


def wallach_24(**kw):
    """``F4 > Spin(9) > Spin(8)``; needs f4 structure constants from a data file.

    The file (path in ``$SYMINDEX_F4_DATA``) is a space-description-style
    algebra block plus ``spin9`` and ``spin8`` basis vectors.
    """
    path = os.environ.get(F4_DATA_ENV)
    if not path or not os.path.exists(path):
        raise MissingData(f"wallach-24 needs f4 structure constants; set ${F4_DATA_ENV} to a data file")
    from .spacefile import parse_algebra

    with open(path) as fh:
        data = json.load(fh)
    g = parse_algebra(data["algebra"])
    return build_triple_scaled(g, np.array(data["spin9"]).T, np.array(data["spin8"]).T, 2.0,
                               assumptions=IRREDUCIBLE, name="wallach-24", **kw)


@dataclass(frozen=True)
class Expected:
    value: object
    provenance: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    builder: Callable = field(repr=False)
    expected: dict = field(default_factory=dict)
    optional: bool = False

    def build(self, **kw):
        return self.builder(**kw)


def _entries():
    P, D, T = "PAPER", "DERIVED", "TRIVIAL"
    e = Expected
    return (
        CatalogEntry("sphere-3", "S^3 = SO(4)/SO(3), round", lambda **kw: sphere(3, **kw),
                     {"index": e(3, P), "symmetric": e(True, P), "theorem1": e("NOT_APPLICABLE", T)}),
        CatalogEntry("sphere-4", "S^4 = SO(5)/SO(4), round", lambda **kw: sphere(4, **kw),
                     {"index": e(4, P), "symmetric": e(True, P), "theorem1": e("NOT_APPLICABLE", T)}),
        CatalogEntry("stiefel-4-2", "Stiefel SO(4)/SO(2), normal metric", lambda **kw: stiefel(2, 2, **kw),
                     {"index": e(1, P), "symmetric": e(False, P), "flat_dim": e(1, D), "group_type": e([], D),
                      "theorem1": e("PASS", P)}),
        CatalogEntry("stiefel-5-2", "Stiefel SO(5)/SO(2), normal metric", lambda **kw: stiefel(2, 3, **kw),
                     {"index": e(3, P), "symmetric": e(False, P), "flat_dim": e(0, D), "group_type": e([True], P),
                      "theorem1": e("PASS", P)}),
        CatalogEntry("stiefel-5-3", "Stiefel SO(5)/SO(3), normal metric", lambda **kw: stiefel(3, 2, **kw),
                     {"index": e(1, P), "symmetric": e(False, P), "flat_dim": e(1, D), "group_type": e([], D),
                      "theorem1": e("PASS", P)}),
        CatalogEntry("group-so3", "SO(3) bi-invariant, as (SO(3) x SO(3))/diag", group_space,
                     {"index": e(3, T), "symmetric": e(True, T), "theorem1": e("NOT_APPLICABLE", T)}),
        CatalogEntry("t1s3", "unit tangent bundle T^1 S^3 = SO(4)/SO(2), factor 2 on p'",
                     lambda **kw: unit_tangent_bundle(3, **kw),
                     {"index": e(2, P), "symmetric": e(False, P), "leaf_dim": e(2, P), "group_type": e([False], P)}),
        CatalogEntry("t1s4", "unit tangent bundle T^1 S^4 = SO(5)/SO(3), factor 2 on p'",
                     lambda **kw: unit_tangent_bundle(4, **kw),
                     {"index": e(3, P), "symmetric": e(False, P), "leaf_dim": e(3, P), "group_type": e([True], D)}),
        CatalogEntry("aloff-wallach", "Aloff-Wallach W^7_{1,-1} = SU(3)/SO(2), factor 2 on p'", aloff_wallach,
                     {"index": e(2, P), "symmetric": e(False, P), "leaf_dim": e(2, P), "group_type": e([False], P)}),
        CatalogEntry("wallach-24", "Wallach W^24 = F4/Spin(8); needs f4 data file", wallach_24,
                     {"index": e(8, P), "leaf_dim": e(8, P)}, optional=True),
    )


CATALOG = {entry.name: entry for entry in _entries()}


def named_catalog():
    return list(CATALOG.values())


def get_entry(name):
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownEntry(f"unknown catalog entry {name!r}; try 'catalog list'") from None
