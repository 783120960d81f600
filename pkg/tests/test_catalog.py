import numpy as np
import pytest

from conftest import CORE_NAMES, space_of
from symindex.catalog import (
    CATALOG,
    SU3_SO2,
    SU3_SO3,
    build_so,
    build_su3,
    build_triple_scaled,
    direct_sum,
    get_entry,
    named_catalog,
    so_block,
    triple_split,
)
from symindex.errors import ChainInvalid, MissingData, PerpendicularityFailure, UnknownEntry
from symindex.homogeneous import u_tensor
from symindex.lie import jacobi_residual, killing_form, restrict


def gell_mann_t(a):
    """Independent T_a = -i lambda_a / 2 for a = 1, 2, 3."""
    lam = {
        1: np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], complex),
        2: np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], complex),
        3: np.array([[1, 0, 0], [0, -1, 0], [0, 0, 0]], complex),
    }[a]
    return -0.5j * lam


def test_so_dimensions_and_jacobi():
    assert build_so(3).dim == 3
    assert build_so(4).dim == 6
    assert jacobi_residual(build_so(4)) < 1e-12
    with pytest.raises(ValueError):
        build_so(1)


def test_so5_killing():
    assert np.allclose(killing_form(build_so(5)).matrix, -6 * np.eye(10))


def test_su3_f123():
    t1, t2, t3 = (gell_mann_t(a) for a in (1, 2, 3))
    assert np.allclose(t1 @ t2 - t2 @ t1, t3)
    assert build_su3().structure[0, 1, 2] == pytest.approx(1.0)


def test_su3_so3_closes():
    g = build_su3()
    basis = np.eye(8)[:, list(SU3_SO3)]
    assert restrict(g, basis).dim == 3
    assert jacobi_residual(g) < 1e-12
    # so(2) generator sits inside so(3)
    assert set(SU3_SO2) <= set(SU3_SO3)


def test_catalog_algebras_jacobi(catalog_name):
    assert jacobi_residual(space_of(catalog_name).g) < 1e-9


def test_triple_orthogonality():
    g = build_so(5)
    t = triple_split(g, np.eye(10), so_block(5, range(1, 5)), so_block(5, range(2, 5)))
    assert np.max(np.abs(t.k_prime.T @ t.p_prime)) < 1e-10
    assert np.max(np.abs(t.m_prime.T @ t.p_prime)) < 1e-10
    assert t.p_prime.shape[1] == 3 and t.m_prime.shape[1] == 4


def test_lambda_one_is_normal():
    g = build_so(4)
    s = build_triple_scaled(g, so_block(4, range(1, 4)), so_block(4, range(2, 4)), lam=1.0)
    assert u_tensor(s).max_coefficient() < 1e-12
    assert s.flags.normal


def test_chain_invalid():
    g = build_so(4)
    with pytest.raises(ChainInvalid):
        # k' (coordinates 0,1) is not inside g' (coordinates 1,2,3)
        triple_split(g, np.eye(6), so_block(4, range(1, 4)), so_block(4, [0, 1]))


def test_chain_not_symmetric_pair():
    g = build_so(5)
    # (so(4), so(2)) is not a symmetric pair
    with pytest.raises(ChainInvalid):
        triple_split(g, np.eye(10), so_block(5, range(1, 5)), so_block(5, [3, 4]))


def test_perpendicularity_failure():
    # group-type (so3 + so3, diag) with unequal block scales: Killing-orthogonal is not Q-orthogonal
    g = direct_sum(build_so(3), build_so(3))
    q = np.diag([1.0] * 3 + [2.0] * 3)
    diag = np.vstack([np.eye(3), np.eye(3)])
    with pytest.raises(PerpendicularityFailure):
        triple_split(g, q, np.eye(6), diag)


def test_named_catalog_contents():
    entries = named_catalog()
    assert len(entries) >= 8
    names = {e.name for e in entries}
    for required in ("sphere-3", "stiefel-4-2", "stiefel-5-2", "stiefel-5-3", "group-so3", "t1s3", "t1s4",
                     "aloff-wallach"):
        assert required in names
    for e in entries:
        for exp in e.expected.values():
            assert exp.provenance in ("PAPER", "DERIVED", "TRIVIAL")


@pytest.mark.parametrize("n, k", [(2, 2), (3, 2), (2, 3)])
def test_stiefel_expected_formula(n, k):
    entry = get_entry(f"stiefel-{n + k}-{n}")
    assert entry.expected["index"].value == k * (k - 1) // 2


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        get_entry("nonexistent")


def test_wallach_gated(monkeypatch):
    monkeypatch.delenv("SYMINDEX_F4_DATA", raising=False)
    entry = CATALOG["wallach-24"]
    assert entry.optional
    with pytest.raises(MissingData):
        entry.build()


def test_core_entries_build():
    for name in CORE_NAMES:
        assert space_of(name).dim_m > 0
