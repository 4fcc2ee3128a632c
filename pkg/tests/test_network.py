"""Partitioned impedance assembly, the exact channel, and the structured
inverse, each checked against independent references."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from multiris.network import (
    AssumptionSet,
    BlockBidiagonal,
    InconsistentScenarioError,
    PartitionedImpedance,
    RisLoadSet,
    SystemTopology,
    assemble_impedance_matrix,
    block_bidiagonal_inverse,
    channel_cascaded_impedance,
    channel_exact,
)
from multiris.numerics import IllConditionedError


# ---------------------------------------------------------------- topology

def test_topology_validation():
    topo = SystemTopology(3, 4, 50.0)
    assert topo.total_elements == 12
    assert topo.port_count == 14
    with pytest.raises(ValueError):
        SystemTopology(0, 4)
    with pytest.raises(ValueError):
        SystemTopology(2, 0)
    with pytest.raises(ValueError):
        SystemTopology(2, 2, -50.0)


def test_assumption_set_counting():
    assert AssumptionSet.all_active().count_active() == 6
    assert AssumptionSet.none_active().count_active() == 0


# ---------------------------------------------------------------- assembly

def test_assemble_single_surface_single_element():
    # the smallest cascade: readbacks show the matched structure
    topo = SystemTopology(1, 1, 50.0)
    net = assemble_impedance_matrix(topo, z_ri=[1.0], z_it=[1.0])
    assert net.z_tt == 50 + 0j
    assert net.z_rr == 50 + 0j
    assert net.z_rt == 0j
    np.testing.assert_array_equal(net.z_ii, [[50.0 + 0j]])
    np.testing.assert_array_equal(net.z_it, [1.0 + 0j])
    np.testing.assert_array_equal(net.z_ri, [1.0 + 0j])


def test_assemble_two_surfaces_structure():
    topo = SystemTopology(2, 2, 50.0)
    coupling = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
    net = assemble_impedance_matrix(topo, z_ii_cross={(2, 1): coupling})
    assert net.z_ii.shape == (4, 4)
    np.testing.assert_array_equal(net.z_ii_diag(1), 50.0 * np.eye(2))
    np.testing.assert_array_equal(net.z_ii_diag(2), 50.0 * np.eye(2))
    np.testing.assert_array_equal(net.z_ii_cross(2, 1), coupling)
    # blocks removed by the unilateral assumption are exact zeros
    assert np.all(net.z_ii_cross(1, 2) == 0)


def test_forced_blocks_are_exact_zeros():
    topo = SystemTopology(3, 2, 50.0)
    net = assemble_impedance_matrix(topo, z_it=np.zeros(6), z_tr=0.0)
    assert np.all(net.z_ti == 0)
    assert net.z_tr == 0j
    assert np.all(net.z_ir == 0)
    assert net.z_rt == 0j
    assert np.all(net.z_ii_cross(3, 1) == 0)
    assert np.all(net.z_ii_cross(1, 3) == 0)
    # matched self blocks are exact
    assert np.all(net.z_ii_diag(2) == 50.0 * np.eye(2))


def test_supplying_matching_forced_value_is_allowed():
    topo = SystemTopology(1, 2, 50.0)
    net = assemble_impedance_matrix(topo, z_tt=50.0, z_rr=50.0 + 0j)
    assert net.z_tt == 50 + 0j


@pytest.mark.parametrize(
    "kwargs, assumption",
    [
        ({"z_tr": 1.0}, "unilateral_endpoints"),
        ({"z_ti": [1.0, 0, 0, 0]}, "unilateral_endpoints"),
        ({"z_ir": [0, 0, 0, 1.0]}, "unilateral_endpoints"),
        ({"z_tt": 49.0}, "matched_endpoints"),
        ({"z_rr": 51.0}, "matched_endpoints"),
        ({"z_rt": 2.0}, "blocked_nonadjacent_endpoints"),
        ({"z_it": [0, 0, 1.0, 0]}, "blocked_nonadjacent_endpoints"),
        ({"z_ri": [1.0, 0, 0, 0]}, "blocked_nonadjacent_endpoints"),
        ({"z_ii_cross": {(1, 2): np.ones((2, 2))}}, "unilateral_inter_ris"),
        ({"z_ii_diag": [49 * np.eye(2), 50 * np.eye(2)]}, "matched_uncoupled_ris"),
    ],
)
def test_assumption_contradictions_raise(kwargs, assumption):
    topo = SystemTopology(2, 2, 50.0)
    with pytest.raises(InconsistentScenarioError, match=assumption):
        assemble_impedance_matrix(topo, **kwargs)


def test_skip_coupling_contradicts_nearest_neighbor():
    topo = SystemTopology(3, 1, 50.0)
    with pytest.raises(InconsistentScenarioError, match="nearest_neighbor_only"):
        assemble_impedance_matrix(topo, z_ii_cross={(3, 1): np.array([[1.0]])})


def test_inactive_assumptions_allow_the_blocks():
    topo = SystemTopology(2, 1, 50.0)
    net = assemble_impedance_matrix(
        topo,
        AssumptionSet.none_active(),
        z_tt=10.0,
        z_tr=3.0,
        z_rt=4.0,
        z_ii_cross={(1, 2): np.array([[7.0]])},
        z_ii_diag=[np.array([[1.0]]), np.array([[2.0]])],
    )
    assert net.z_tt == 10 + 0j
    assert net.z_tr == 3 + 0j
    np.testing.assert_array_equal(net.z_ii_cross(1, 2), [[7.0 + 0j]])


# ------------------------------------------------------------- reciprocity

def test_reciprocity_contradiction_raises():
    topo = SystemTopology(1, 2, 50.0)
    with pytest.raises(InconsistentScenarioError, match="reciprocity"):
        assemble_impedance_matrix(
            topo,
            AssumptionSet.none_active(),
            reciprocal=True,
            z_ti=[1.0, 2.0],
            z_it=[1.0, 3.0],
        )


def test_reciprocity_mirrors_missing_side():
    topo = SystemTopology(1, 2, 50.0)
    net = assemble_impedance_matrix(
        topo,
        AssumptionSet.none_active(),
        reciprocal=True,
        z_it=[1.0, 2.0],
        z_rt=5.0,
    )
    np.testing.assert_array_equal(net.z_ti, [1.0 + 0j, 2.0 + 0j])
    assert net.z_tr == 5 + 0j
    assert net.reciprocal


def test_assumptions_take_precedence_over_mirroring():
    # with the unilateral assumption active, supplying z_it must not drag
    # a nonzero mirror into the pinned z_ti
    topo = SystemTopology(1, 2, 50.0)
    net = assemble_impedance_matrix(topo, reciprocal=True, z_it=[1.0, 2.0])
    assert np.all(net.z_ti == 0)
    assert not net.reciprocal  # enforcement broke the symmetry


def test_reciprocal_flag_validated_on_direct_construction():
    topo = SystemTopology(1, 1, 50.0)
    with pytest.raises(InconsistentScenarioError):
        PartitionedImpedance(
            topology=topo,
            z_tt=50,
            z_tr=1.0,
            z_rt=2.0,
            z_rr=50,
            z_ti=np.zeros(1),
            z_it=np.zeros(1),
            z_ri=np.zeros(1),
            z_ir=np.zeros(1),
            z_ii=50 * np.eye(1),
            reciprocal=True,
        )


# ------------------------------------------------------------ partitioning

def test_to_matrix_layout():
    topo = SystemTopology(2, 1, 50.0)
    net = assemble_impedance_matrix(
        topo,
        z_it=[3.0, 0.0],
        z_ri=[0.0, 7.0],
        z_ii_cross={(2, 1): np.array([[11.0]])},
    )
    full = net.to_matrix()
    assert full.shape == (4, 4)
    assert full[0, 0] == 50 + 0j          # transmitter self
    assert full[1, 0] == 3 + 0j           # transmitter into surface 1
    assert full[2, 1] == 11 + 0j          # surface 1 into surface 2
    assert full[3, 2] == 7 + 0j           # surface 2 into receiver
    assert full[3, 3] == 50 + 0j          # receiver self
    assert full[3, 0] == 0j               # no direct path


def test_arrays_are_read_only():
    topo = SystemTopology(1, 2, 50.0)
    net = assemble_impedance_matrix(topo, z_it=[1.0, 2.0])
    with pytest.raises(ValueError):
        net.z_it[0] = 9.0
    with pytest.raises(ValueError):
        net.z_ii[0, 0] = 9.0


def test_segment_accessors():
    topo = SystemTopology(3, 2, 50.0)
    z_it = np.array([1, 2, 0, 0, 0, 0], dtype=complex)
    z_ri = np.array([0, 0, 0, 0, 5, 6], dtype=complex)
    net = assemble_impedance_matrix(topo, z_it=z_it, z_ri=z_ri)
    np.testing.assert_array_equal(net.z_it_seg(1), [1, 2])
    np.testing.assert_array_equal(net.z_ri_seg(3), [5, 6])
    with pytest.raises(ValueError):
        net.z_it_seg(4)
    with pytest.raises(ValueError):
        net.z_ii_cross(0, 1)


# -------------------------------------------------------------------- loads

def test_loads_from_phases_reactive():
    loads = RisLoadSet.from_phases([[np.pi]], z0=50.0)
    # phase pi reflects straight back: the required load is (nearly) a short
    assert abs(loads.matrices[0][0, 0]) < 1e-12
    loads2 = RisLoadSet.from_phases([np.pi / 2], z0=50.0)
    # cot(pi/4) = 1, so the load is j*50
    assert loads2.matrices[0][0, 0] == pytest.approx(50j)


def test_loads_reject_zero_phase():
    with pytest.raises(ValueError, match="not realizable"):
        RisLoadSet.from_phases([[0.0, 1.0]])
    with pytest.raises(ValueError, match="not realizable"):
        RisLoadSet.from_phases([[2 * np.pi]])  # wraps onto 0


def test_loads_block_diagonal():
    loads = RisLoadSet((np.eye(2), 2 * np.eye(2)))
    bd = loads.block_diagonal()
    assert bd.shape == (4, 4)
    assert bd[0, 0] == 1 and bd[3, 3] == 2
    assert bd[0, 2] == 0


def test_loads_dimension_validation():
    with pytest.raises(ValueError):
        RisLoadSet((np.eye(2), np.eye(3)))
    with pytest.raises(ValueError):
        RisLoadSet(())


# ------------------------------------------------------------ exact channel

def test_channel_exact_scalar_oracle():
    # independent arithmetic: h = -z_ri * z_it / ((z_load + z0) * 2 * z0)
    # with z_load = j*50:  -1 / ((50 + 50j) * 100) = -1e-4 + 1e-4j ... times (1)
    topo = SystemTopology(1, 1, 50.0)
    net = assemble_impedance_matrix(topo, z_ri=[1.0], z_it=[1.0])
    loads = RisLoadSet([np.array([[50j]])])
    h = channel_exact(net, loads)
    by_hand = -(1.0 * 1.0) / ((50j + 50.0) * 2 * 50.0)
    assert h == pytest.approx(-1e-4 + 1e-4j, rel=1e-12)
    assert h == pytest.approx(by_hand, rel=1e-12)


def test_channel_exact_requires_endpoint_structure():
    topo = SystemTopology(1, 1, 50.0)
    net = assemble_impedance_matrix(
        topo, AssumptionSet.none_active(), z_tt=10.0, z_rr=50.0
    )
    loads = RisLoadSet([np.array([[50j]])])
    with pytest.raises(ValueError, match="z_tt != Z0"):
        channel_exact(net, loads)


def test_channel_exact_dimension_mismatch():
    net = assemble_impedance_matrix(SystemTopology(2, 2, 50.0))
    with pytest.raises(ValueError, match="loads describe"):
        channel_exact(net, RisLoadSet([np.eye(2)]))


def test_channel_exact_singular_system():
    topo = SystemTopology(1, 2, 50.0)
    net = assemble_impedance_matrix(topo, z_it=[1.0, 0], z_ri=[0, 1.0])
    # loads = -Z0*I cancel the matched self block exactly
    with pytest.raises(IllConditionedError):
        channel_exact(net, RisLoadSet([-50.0 * np.eye(2)]))


def test_channel_exact_ignores_load_structure():
    # a fully coupled load network is fine; compare against a dense solve
    rng = np.random.default_rng(11)
    topo = SystemTopology(2, 3, 50.0)
    z_it = np.concatenate([rng.normal(size=3) + 1j * rng.normal(size=3), np.zeros(3)])
    z_ri = np.concatenate([np.zeros(3), rng.normal(size=3) + 1j * rng.normal(size=3)])
    coupling = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    net = assemble_impedance_matrix(
        topo, z_it=z_it, z_ri=z_ri, z_ii_cross={(2, 1): coupling}
    )
    loads = RisLoadSet(
        tuple(50 * (np.diag(1j * rng.uniform(-2, 2, 3)) + 0.2 * rng.normal(size=(3, 3))) for _ in range(2))
    )
    h = channel_exact(net, loads)
    reference = (
        net.z_rt
        - net.z_ri @ np.linalg.solve(loads.block_diagonal() + net.z_ii, net.z_it)
    ) / 100.0
    assert h == pytest.approx(complex(reference), rel=1e-12)


# ------------------------------------------------------- structured inverse

def test_block_bidiagonal_scalar_example():
    m = BlockBidiagonal(
        diag=(np.array([[2.0 + 0j]]), np.array([[4.0 + 0j]])),
        sub=(np.array([[8.0 + 0j]]),),
    )
    inv = block_bidiagonal_inverse(m)
    np.testing.assert_allclose(inv, [[0.5, 0.0], [-1.0, 0.25]])


def test_block_bidiagonal_validation():
    with pytest.raises(ValueError):
        BlockBidiagonal(diag=(np.eye(2),), sub=(np.eye(2),))
    with pytest.raises(ValueError):
        BlockBidiagonal(diag=(np.ones((2, 3)),))
    with pytest.raises(ValueError):
        BlockBidiagonal(diag=())


def test_block_bidiagonal_singular_block():
    m = BlockBidiagonal(diag=(np.zeros((2, 2)),))
    with pytest.raises(IllConditionedError, match="diagonal block 1"):
        block_bidiagonal_inverse(m)


def test_block_bidiagonal_upper_triangle_exactly_zero():
    rng = np.random.default_rng(21)
    diag = tuple(np.eye(3) + 0.3 * (rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))) for _ in range(4))
    sub = tuple(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(3))
    inv = block_bidiagonal_inverse(BlockBidiagonal(diag, sub))
    for i in range(4):
        for j in range(i + 1, 4):
            block = inv[i * 3 : (i + 1) * 3, j * 3 : (j + 1) * 3]
            assert np.all(block == 0)  # constructed zeros, not computed ones


@settings(max_examples=40, deadline=None)
@given(
    num_blocks=st.integers(min_value=1, max_value=6),
    block_size=st.integers(min_value=1, max_value=5),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_block_bidiagonal_matches_dense(num_blocks, block_size, seed):
    from multiris.verify import random_block_bidiagonal

    rng = np.random.default_rng(seed)
    m = random_block_bidiagonal(rng, num_blocks, block_size)
    structured = block_bidiagonal_inverse(m)
    dense = np.linalg.inv(m.to_dense())
    np.testing.assert_allclose(structured, dense, rtol=1e-10, atol=1e-12)


def test_block_bidiagonal_identity_residual():
    rng = np.random.default_rng(33)
    from multiris.verify import random_block_bidiagonal

    m = random_block_bidiagonal(rng, 8, 4)
    inv = block_bidiagonal_inverse(m)
    residual = m.to_dense() @ inv - np.eye(32)
    assert np.max(np.abs(residual)) < 1e-12


# -------------------------------------------------------- cascaded channel

def test_cascaded_single_surface_matched_loads():
    # with Z_I = Z0*I the solve collapses to division by 2*Z0:
    # h = -z_ri . z_it / (4 * Z0^2)
    rng = np.random.default_rng(7)
    z_ri = rng.normal(size=3) + 1j * rng.normal(size=3)
    z_it = rng.normal(size=3) + 1j * rng.normal(size=3)
    loads = RisLoadSet([50.0 * np.eye(3)])
    h = channel_cascaded_impedance(z_ri, [], z_it, loads, z0=50.0)
    assert h == pytest.approx(-np.dot(z_ri, z_it) / 1e4, rel=1e-12)


def test_cascaded_dimension_checks():
    loads = RisLoadSet([np.eye(2), np.eye(2)])
    with pytest.raises(ValueError, match="inter-surface"):
        channel_cascaded_impedance(np.ones(2), [], np.ones(2), loads)
    with pytest.raises(ValueError, match="z_ri_last"):
        channel_cascaded_impedance(np.ones(3), [np.eye(2)], np.ones(2), loads)


def test_cascaded_sign_alternates_with_length():
    # identical per-surface data; the sign of the result flips with the
    # number of surfaces while the magnitude follows the cascade product
    z0 = 50.0
    one = np.array([1.0 + 0j])
    coupling = np.array([[100.0 + 0j]])
    results = []
    for L in (1, 2, 3):
        loads = RisLoadSet([50.0 * np.eye(1)] * L)
        results.append(
            channel_cascaded_impedance(one, [coupling] * (L - 1), one, loads, z0=z0)
        )
    assert results[0].real < 0          # L=1: negative
    assert results[1].real > 0          # L=2: positive
    assert results[2].real < 0          # L=3: negative again
    assert abs(results[1]) == pytest.approx(abs(results[0]), rel=1e-12)
    assert abs(results[2]) == pytest.approx(abs(results[0]), rel=1e-12)
