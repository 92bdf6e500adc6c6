"""Chain complexes, duality operators, cones, and the structural ops."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpsig import (
    ChainComplex,
    DualityOperator,
    HilbertPoincareComplex,
    adjoint,
    direct_sum,
    dual_complex,
    duality_cone,
    homology_ranks,
    mapping_cone,
    operator_norm,
    opposite,
    perturb_duality,
    random_unitary,
    twist,
    verify_complex,
    verify_duality,
)
from hpsig.errors import (
    DimensionMismatch,
    GroupMismatch,
    NotChainMap,
    NotSelfAdjoint,
    NotUnitary,
    ShapeMismatch,
)
from hpsig.fixtures import model_even_sphere, model_projective_plane


def _interval() -> ChainComplex:
    # two points, one edge: b1 = (-1, 1)^T columns
    return ChainComplex((2, 1), (np.array([[-1.0], [1.0]]),))


def test_chain_complex_shape_validation():
    with pytest.raises(ShapeMismatch):
        ChainComplex((2, -1), (np.zeros((2, 1)),))
    with pytest.raises(ShapeMismatch):
        ChainComplex((2, 1), (np.zeros((1, 1)),))
    with pytest.raises(ShapeMismatch):
        ChainComplex((2, 1), ())


def test_total_boundary_blocks():
    c = _interval()
    total = c.total_boundary()
    assert total.shape == (3, 3)
    assert np.array_equal(total[:2, 2:], np.array([[-1.0], [1.0]]))
    assert not total[:, :2].any()


def test_verify_complex_catches_nonzero_square():
    good = ChainComplex(
        (1, 1, 1), (np.array([[1.0]]), np.array([[0.0]]))
    )
    assert verify_complex(good).passed
    bad = ChainComplex(
        (1, 1, 1), (np.array([[1.0]]), np.array([[1.0]]))
    )
    rep = verify_complex(bad)
    assert not rep.passed
    assert rep.residuals[0] == pytest.approx(1.0)


def test_homology_ranks_interval_and_sphere_model():
    assert homology_ranks(_interval()) == (1, 0)
    sphere = model_even_sphere(2)
    assert homology_ranks(sphere.chain) == (1, 0, 1)


def test_dual_complex_is_an_involution():
    c = _interval()
    dd = dual_complex(dual_complex(c))
    assert dd.dims == c.dims
    for k in range(1, c.n + 1):
        assert np.array_equal(dd.boundary(k), c.boundary(k))


def test_mapping_cone_of_identity_is_acyclic():
    for hp in (model_even_sphere(2), model_projective_plane()):
        c = hp.chain
        eye = [np.eye(d) for d in c.dims]
        cone = mapping_cone(eye, c, c)
        assert homology_ranks(cone) == (0,) * (c.n + 2)


def test_mapping_cone_rejects_non_chain_maps():
    c = _interval()
    blocks = [np.zeros((2, 2)), np.ones((1, 1))]
    with pytest.raises(NotChainMap):
        mapping_cone(blocks, c, c)


def test_duality_cone_dims():
    hp = model_even_sphere(2)
    cone = duality_cone(hp)
    # degree j of the cone stacks dual degree j-1 over degree j
    assert cone.dims == (1, 1, 1, 1)
    assert homology_ranks(cone) == (0, 0, 0, 0)


def test_verify_duality_passes_on_models():
    for hp in (model_even_sphere(2), model_even_sphere(4), model_projective_plane()):
        rep = verify_duality(hp)
        assert rep.passed, rep.failures
        assert rep.cone_invertible


def test_verify_duality_failure_strings():
    hp = model_even_sphere(2)
    # break self-adjointness: S_0 and S_2 no longer adjoint to each other
    blocks = list(hp.duality.blocks)
    blocks[0] = 2.0 * blocks[0]
    rep = verify_duality(HilbertPoincareComplex(hp.chain, DualityOperator(tuple(blocks))))
    assert "duality is not self-adjoint" in rep.failures

    zero = DualityOperator(tuple(np.zeros_like(b) for b in hp.duality.blocks))
    rep = verify_duality(HilbertPoincareComplex(hp.chain, zero))
    assert rep.failures == ("duality cone operator is not invertible",)
    assert rep.cone_min_singular_value == pytest.approx(0.0)

    bad_chain = ChainComplex(
        (1, 1, 1), (np.array([[1.0]]), np.array([[1.0]]))
    )
    rep = verify_duality(
        HilbertPoincareComplex(bad_chain, DualityOperator(
            (np.eye(1), np.eye(1), np.eye(1))
        ))
    )
    assert "boundary squares to a nonzero operator" in rep.failures


def test_duality_shape_mismatch_is_constructor_level():
    hp = model_even_sphere(2)
    blocks = list(hp.duality.blocks)
    blocks[1] = np.zeros((2, 2))
    with pytest.raises(ShapeMismatch):
        HilbertPoincareComplex(hp.chain, DualityOperator(tuple(blocks)))


def test_opposite_is_an_involution_and_negates_duality():
    hp = model_projective_plane()
    opp = opposite(hp)
    for k in range(hp.n + 1):
        assert np.array_equal(opp.duality.block(k), -hp.duality.block(k))
    back = opposite(opp)
    for k in range(hp.n + 1):
        assert np.array_equal(back.duality.block(k), hp.duality.block(k))


def test_direct_sum_with_zero_is_identity():
    hp = model_even_sphere(2)
    zero = HilbertPoincareComplex(
        ChainComplex((0, 0, 0), (np.zeros((0, 0)), np.zeros((0, 0)))),
        DualityOperator((np.zeros((0, 0)),) * 3),
    )
    total = direct_sum(hp, zero)
    assert total.dims == hp.dims
    for k in range(1, hp.n + 1):
        assert np.array_equal(total.chain.boundary(k), hp.chain.boundary(k))
    for k in range(hp.n + 1):
        assert np.array_equal(total.duality.block(k), hp.duality.block(k))


def test_direct_sum_mismatch_errors():
    with pytest.raises(DimensionMismatch):
        direct_sum(model_even_sphere(2), model_even_sphere(4))
    from hpsig import FiniteGroup, GroupAction

    hp = model_even_sphere(2)
    act = GroupAction.trivial_action(hp.dims)
    withact = HilbertPoincareComplex(hp.chain, hp.duality, act)
    with pytest.raises(GroupMismatch):
        direct_sum(withact, hp)


def test_twist_requires_unitaries():
    hp = model_even_sphere(2)
    us = [np.eye(1), np.zeros((0, 0)), 2.0 * np.eye(1)]
    with pytest.raises(NotUnitary):
        twist(hp, us)
    with pytest.raises(ShapeMismatch):
        twist(hp, us[:2])


@settings(deadline=None, max_examples=25)
@given(seed=st.integers(0, 10_000))
def test_twist_preserves_all_residuals(seed):
    rng = np.random.default_rng(seed)
    hp = model_projective_plane()
    us = [random_unitary(rng, d) for d in hp.dims]
    rep = verify_duality(twist(hp, us))
    assert rep.passed, rep.failures


def test_perturb_duality_validates_blocks():
    hp = model_even_sphere(2)
    with pytest.raises(ShapeMismatch):
        perturb_duality(hp, [None, None])
    bad = [None, None, np.ones((1, 1))]
    # R_2 must be adjoint to R_{n+2-2} = R_2 itself here, so an
    # anti-selfadjoint choice is rejected
    with pytest.raises(NotSelfAdjoint):
        perturb_duality(hp, [None, None, np.array([[1j]])])
    out = perturb_duality(hp, bad)
    assert verify_duality(out).passed


def test_perturb_duality_changes_s_but_not_homology_pairing():
    from hpsig import generate_with_signature

    hp, _ = generate_with_signature(0, "n2")
    rng = np.random.default_rng(5)
    r = rng.normal(size=(hp.dims[2], hp.dims[2]))
    r = (r + r.T) / 2.0
    out = perturb_duality(hp, [None, None, r])
    # middle block picks up b R b^*, top and bottom blocks cannot move
    assert np.array_equal(out.duality.block(0), hp.duality.block(0))
    assert np.array_equal(out.duality.block(hp.n), hp.duality.block(hp.n))
    moved = operator_norm(out.duality.block(1) - hp.duality.block(1))
    assert moved > 1e-6
    assert verify_duality(out).passed
