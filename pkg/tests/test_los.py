"""Line-of-sight sampling: seeding contract, draw order, statistics, and
the rank-one structure of materialized links."""
import math

import numpy as np
import pytest
from scipy import stats

from multiris.los import (
    LosLinks,
    derive_seed,
    hop_phase_sums,
    materialize,
    phase_generator,
    sample_los_links,
)
from multiris.network import SystemTopology
from multiris.scattering import RisScattering, conventional_channel, physics_channel

TWO_PI = 2.0 * np.pi


# -------------------------------------------------------------------- seeding

def test_derive_seed_frozen_values():
    # pinned so the reproducibility contract survives library upgrades
    assert derive_seed(20260818) == 2875960755528405626
    assert derive_seed(1, 2, 3) == 15323499849503866763


def test_derive_seed_depends_on_indices_and_order():
    base = derive_seed(99)
    assert derive_seed(99, 0) != base
    assert derive_seed(99, 1, 2) != derive_seed(99, 2, 1)
    assert derive_seed(99, 5) == derive_seed(99, 5)
    # tuples differing only by trailing zeros must stay distinct; the
    # seed-sequence pool would otherwise absorb them into its padding
    assert derive_seed(7, 3) != derive_seed(7, 3, 0)


def test_derive_seed_reduces_modulo_64_bits():
    assert derive_seed(2**64 + 5) == derive_seed(5)
    assert derive_seed(-1) == derive_seed(2**64 - 1)
    assert 0 <= derive_seed(123, 456) < 2**64


def test_sampling_is_deterministic():
    topo = SystemTopology(3, 4)
    a = sample_los_links(topo, seed=derive_seed(7, 0))
    b = sample_los_links(topo, seed=derive_seed(7, 0))
    c = sample_los_links(topo, seed=derive_seed(7, 1))
    np.testing.assert_array_equal(a.phi_from_tx, b.phi_from_tx)
    np.testing.assert_array_equal(a.alpha, b.alpha)
    np.testing.assert_array_equal(a.beta, b.beta)
    assert not np.array_equal(a.phi_from_tx, c.phi_from_tx)


def test_draw_order_is_frozen():
    # replicate the documented order with a bare generator: phi_from_tx,
    # phi_to_rx, then alpha and beta alternating per inter-surface link
    topo = SystemTopology(4, 3)
    seed = derive_seed(11, 4)
    links = sample_los_links(topo, seed=seed)
    rng = phase_generator(seed)
    np.testing.assert_array_equal(links.phi_from_tx, rng.uniform(0, TWO_PI, 3))
    np.testing.assert_array_equal(links.phi_to_rx, rng.uniform(0, TWO_PI, 3))
    for k in range(3):
        np.testing.assert_array_equal(links.alpha[k], rng.uniform(0, TWO_PI, 3))
        np.testing.assert_array_equal(links.beta[k], rng.uniform(0, TWO_PI, 3))


def test_sampled_arrays_are_read_only():
    links = sample_los_links(SystemTopology(2, 2), seed=1)
    with pytest.raises(ValueError):
        links.alpha[0, 0] = 0.0


# ----------------------------------------------------------------- path gains

def test_path_gain_handling():
    topo = SystemTopology(3, 2)
    default = sample_los_links(topo, seed=5)
    assert default.path_gain_product() == 1.0
    scalar = sample_los_links(topo, 0.5, seed=5)
    assert scalar.path_gain_product() == pytest.approx(0.5**4)
    per_link = sample_los_links(topo, [1.0, 2.0, 3.0, 4.0], seed=5)
    assert per_link.gain_from_tx == 1.0
    np.testing.assert_array_equal(per_link.gains_inter, [2.0, 3.0])
    assert per_link.gain_to_rx == 4.0
    assert per_link.path_gain_product() == pytest.approx(24.0)
    assert per_link.log_path_gain() == pytest.approx(math.log(24.0))


def test_path_gain_validation():
    topo = SystemTopology(2, 2)
    with pytest.raises(ValueError, match="3 entries"):
        sample_los_links(topo, [1.0, 2.0], seed=0)
    with pytest.raises(ValueError, match="nonnegative"):
        sample_los_links(topo, -1.0, seed=0)


def test_zero_gain_gives_minus_infinite_log():
    links = sample_los_links(SystemTopology(1, 2), [0.0, 1.0], seed=0)
    assert links.path_gain_product() == 0.0
    assert links.log_path_gain() == float("-inf")


def test_los_links_shape_validation():
    with pytest.raises(ValueError, match="phi_to_rx"):
        LosLinks(
            elements=2,
            gain_from_tx=1.0,
            gain_to_rx=1.0,
            gains_inter=np.zeros(0),
            phi_from_tx=np.zeros(2),
            phi_to_rx=np.zeros(3),
            alpha=np.zeros((0, 2)),
            beta=np.zeros((0, 2)),
        )


# ----------------------------------------------------------------- statistics

def test_phases_are_uniform_on_the_circle():
    links = sample_los_links(SystemTopology(1, 100_000), seed=derive_seed(13))
    draws = links.phi_from_tx
    assert draws.min() >= 0.0
    assert draws.max() < TWO_PI
    # mean of U(0, 2*pi) is pi with sd (2*pi)/sqrt(12)
    se = TWO_PI / math.sqrt(12.0) / math.sqrt(draws.size)
    assert abs(draws.mean() - np.pi) < 3 * se
    result = stats.kstest(draws / TWO_PI, "uniform")
    assert result.pvalue > 0.01


@pytest.mark.parametrize("n", [1, 4, 16, 64])
def test_phasor_sum_second_moment(n):
    # |sum of n unit phasors|^2 has mean n under uniform phases
    rng = phase_generator(derive_seed(17, n))
    draws = rng.uniform(0.0, TWO_PI, (20_000, n))
    power = np.abs(np.exp(1j * draws).sum(axis=1)) ** 2
    if n == 1:
        np.testing.assert_allclose(power, 1.0, rtol=1e-12)
        return
    se = power.std(ddof=1) / math.sqrt(power.size)
    assert abs(power.mean() - n) < 3 * se


@pytest.mark.parametrize("n", [32, 128])
def test_phasor_sum_first_moment(n):
    # E|sum| approaches sqrt(pi*n/4) for large n
    rng = phase_generator(derive_seed(19, n))
    draws = rng.uniform(0.0, TWO_PI, (20_000, n))
    amplitude = np.abs(np.exp(1j * draws).sum(axis=1))
    se = amplitude.std(ddof=1) / math.sqrt(amplitude.size)
    assert abs(amplitude.mean() - math.sqrt(math.pi * n / 4.0)) < 3 * se


# ------------------------------------------------------------- materialization

def test_materialize_structure():
    topo = SystemTopology(3, 4)
    links = sample_los_links(topo, [2.0, 3.0, 5.0, 7.0], seed=derive_seed(23))
    normalized = materialize(links)
    assert normalized.num_ris == 3
    np.testing.assert_allclose(np.abs(normalized.from_tx), 2.0)
    np.testing.assert_allclose(np.abs(normalized.to_rx), 7.0)
    np.testing.assert_allclose(
        np.angle(normalized.from_tx) % TWO_PI, links.phi_from_tx, atol=1e-12
    )
    for k, gain in enumerate([3.0, 5.0]):
        block = normalized.inter_ris[k]
        expected = gain * np.outer(
            np.exp(1j * links.alpha[k]), np.exp(1j * links.beta[k])
        )
        np.testing.assert_allclose(block, expected, atol=1e-14)
        assert np.linalg.matrix_rank(block) == 1


@pytest.mark.parametrize("num_ris", [1, 2, 3, 4])
def test_hop_phase_sums_structure(num_ris):
    links = sample_los_links(SystemTopology(num_ris, 5), seed=derive_seed(29, num_ris))
    sums = hop_phase_sums(links)
    assert len(sums) == num_ris
    if num_ris == 1:
        np.testing.assert_allclose(sums[0], links.phi_to_rx + links.phi_from_tx)
        return
    np.testing.assert_allclose(sums[0], links.beta[0] + links.phi_from_tx)
    np.testing.assert_allclose(sums[-1], links.phi_to_rx + links.alpha[-1])
    for s in range(1, num_ris - 1):
        np.testing.assert_allclose(sums[s], links.beta[s] + links.alpha[s - 1])


def test_every_phase_vector_used_exactly_once():
    links = sample_los_links(SystemTopology(4, 6), seed=derive_seed(31))
    total = np.sum(hop_phase_sums(links), axis=0)
    expected = (
        links.phi_from_tx
        + links.phi_to_rx
        + links.alpha.sum(axis=0)
        + links.beta.sum(axis=0)
    )
    np.testing.assert_allclose(total, expected, atol=1e-12)


@pytest.mark.parametrize("num_ris", [1, 2, 3])
def test_channel_factors_over_hops(num_ris):
    # the cascade collapses to a product of per-surface scalar factors
    # driven by the combined hop phases; check both channel variants
    links = sample_los_links(
        SystemTopology(num_ris, 4), [1.5] * (num_ris + 1), seed=derive_seed(37, num_ris)
    )
    rng = phase_generator(derive_seed(38, num_ris))
    thetas = rng.uniform(0.0, TWO_PI, (num_ris, 4))
    ris = RisScattering.from_phases(thetas)
    normalized = materialize(links)
    sums = hop_phase_sums(links)
    lam = links.path_gain_product()

    physics_product = lam
    conventional_product = lam
    for k in range(num_ris):
        w = np.exp(1j * sums[k])
        physics_product *= np.sum((np.exp(1j * thetas[k]) - 1.0) * w)
        conventional_product *= np.sum(np.exp(1j * thetas[k]) * w)
    assert physics_channel(normalized, ris) == pytest.approx(
        complex(physics_product), rel=1e-10
    )
    assert conventional_channel(normalized, ris) == pytest.approx(
        complex(conventional_product), rel=1e-10
    )
