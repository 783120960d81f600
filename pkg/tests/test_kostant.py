import numpy as np
import pytest

from conftest import CORE_NAMES, space_of
from symindex.catalog import build_so, direct_sum, so_block
from symindex.errors import NotApplicable, TransvectionMismatch
from symindex.homogeneous import Explicit, Normal, build_space
from symindex.kostant import classify_metric, kostant_form, naturally_reductive_residual, transvection_algebra
from symindex.lie import LieAlgebra

NR_NAMES = [n for n in CORE_NAMES if space_of(n).flags.naturally_reductive]


def ineffective_sphere():
    """S^2 = so(3)/so(2) presented with an extra so(3) that acts trivially."""
    g = direct_sum(build_so(3), build_so(3))
    h = np.zeros((6, 4))
    h[2, 0] = 1.0                 # L23 of the first factor
    h[3:, 1:] = np.eye(3)         # whole second factor
    return build_space(g, h, Normal(np.eye(6)))


@pytest.mark.parametrize("name", ["sphere-3", "stiefel-4-2", "stiefel-5-2", "stiefel-5-3", "group-so3"])
def test_normal_built_spaces(name):
    flags = space_of(name).flags
    assert flags.normal and flags.naturally_reductive


@pytest.mark.parametrize("name", ["t1s3", "t1s4", "aloff-wallach"])
def test_scaled_spaces_not_naturally_reductive(name):
    s = space_of(name)
    assert not s.flags.naturally_reductive
    assert naturally_reductive_residual(s) > 0.1


def test_normal_implies_naturally_reductive(catalog_name):
    flags = classify_metric(space_of(catalog_name))
    assert (not flags.normal) or flags.naturally_reductive


def test_explicit_bi_invariant_is_detected_normal():
    # same space as sphere-3 but given by an explicit m and Gram matrix
    g = build_so(4)
    h = so_block(4, [1, 2, 3])
    m = np.eye(6)[:, :3]
    s = build_space(g, h, Explicit(m, 3.0 * np.eye(3)))
    assert s.flags.normal and s.flags.naturally_reductive


def test_transvection_algebra_stiefel_full():
    assert transvection_algebra(space_of("stiefel-5-3")).dim == 10


def test_transvection_algebra_symmetric():
    assert transvection_algebra(space_of("sphere-3")).dim == 6


def test_transvection_algebra_abelian():
    s = build_space(LieAlgebra.abelian(2), np.zeros((2, 0)), Normal(np.eye(2)))
    assert transvection_algebra(s).dim == 2


def test_transvection_algebra_needs_naturally_reductive():
    with pytest.raises(NotApplicable):
        transvection_algebra(space_of("t1s3"))


def test_kostant_stiefel_is_defining_form():
    s = space_of("stiefel-5-2")
    kf = kostant_form(s)
    assert np.allclose(kf.q.matrix, np.eye(10), atol=1e-10)
    assert kf.signature_on_h == (1, 0, 0)


def test_kostant_group_space_block_scales():
    # Q = a I + b I on the blocks; Q(h, m) = 0 forces a = b and Q|_m = I forces a = 1
    kf = kostant_form(space_of("group-so3"))
    assert np.allclose(kf.q.matrix, np.eye(6), atol=1e-10)
    assert kf.solution_dim == 0


def test_kostant_symmetric_pair():
    kf = kostant_form(space_of("sphere-3"))
    assert np.allclose(kf.q.matrix, np.eye(6), atol=1e-10)


@pytest.mark.parametrize("name", NR_NAMES)
def test_kostant_residuals(name):
    kf = kostant_form(space_of(name))
    assert kf.max_residual < 1e-8
    assert kf.signature_on_h[2] == 0
    if space_of(name).flags.normal:
        assert kf.signature_on_h[1] == 0


def test_transvection_mismatch_and_restriction():
    s = ineffective_sphere()
    assert transvection_algebra(s).dim == 3
    with pytest.raises(TransvectionMismatch):
        kostant_form(s)
    kf = kostant_form(s, restrict_to_transvections=True)
    assert kf.restricted
    assert kf.max_residual < 1e-8
    assert kf.signature_on_h == (1, 0, 0)


def test_kostant_not_applicable():
    with pytest.raises(NotApplicable):
        kostant_form(space_of("aloff-wallach"))
