"""Random line-of-sight scenarios for the cascade.

Every link in the cascade is modeled as a rank-one phase front: a real
path gain times unit-modulus phase vectors, one phase per element.  The
transmitter and receiver links carry one phase vector each; every
surface-to-surface link carries an arrival vector (alpha, phases seen at
the downstream surface) and a departure vector (beta, phases leaving the
upstream surface).  All phases are drawn independently and uniformly on
[0, 2*pi).

Seeding is part of the reproducibility contract.  A scenario is fully
determined by a 64-bit seed through a counter-based generator, and the
draw order is frozen: phi_from_tx, phi_to_rx, then alternately alpha and
beta for each surface-to-surface link in cascade order.  Derived seeds
for trials and sweep cells come from derive_seed, which folds a master
seed and integer indices through a seed sequence.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .numerics import TWO_PI, readonly
from .network import SystemTopology
from .scattering import NormalizedLinks

_MASK64 = (1 << 64) - 1


def derive_seed(master_seed: int, *indices: int) -> int:
    """Fold a master seed and integer indices into one 64-bit stream seed.

    Deterministic and stable across platforms; inputs are reduced modulo
    2**64.  The index count is folded in and indices are offset by one,
    because the underlying seed sequence pads short entropy with zeros
    and would otherwise collide on tuples differing only by trailing
    zero entries.
    """
    entropy = [int(master_seed) & _MASK64, len(indices)] + [
        (int(i) & _MASK64) + 1 for i in indices
    ]
    ss = np.random.SeedSequence(entropy)
    return int(ss.generate_state(1, np.uint64)[0])


def phase_generator(seed: int) -> np.random.Generator:
    """Counter-based generator for a given stream seed."""
    return np.random.Generator(np.random.Philox(int(seed) & _MASK64))


def _normalize_path_gains(
    topology: SystemTopology, path_gains
) -> tuple[float, np.ndarray, float]:
    """Split user path gains into (from_tx, inter array, to_rx).

    Accepts None (all ones), a single scalar applied to every link, or a
    sequence of L + 1 values ordered from the transmitter side: the
    transmitter link, the L - 1 surface-to-surface links, the receiver
    link.
    """
    count = topology.num_ris + 1
    if path_gains is None:
        gains = np.ones(count)
    elif np.isscalar(path_gains):
        gains = np.full(count, float(path_gains))
    else:
        gains = np.asarray(path_gains, dtype=float)
        if gains.shape != (count,):
            raise ValueError(
                f"path_gains must have {count} entries for {topology.num_ris} "
                f"surfaces, got shape {gains.shape}"
            )
    if np.any(gains < 0):
        raise ValueError("path gains must be nonnegative")
    return float(gains[0]), gains[1:-1].copy(), float(gains[-1])


@dataclass(frozen=True)
class LosLinks:
    """One sampled line-of-sight scenario.

    Fields:
        elements: elements per surface.
        gain_from_tx, gain_to_rx: path gains of the endpoint links.
        gains_inter: path gains of the surface-to-surface links, cascade
            order, length L - 1.
        phi_from_tx, phi_to_rx: endpoint phase vectors, length N.
        alpha, beta: arrival and departure phase vectors of the
            surface-to-surface links, shape (L - 1, N); row k belongs to
            the link from surface k+1 into surface k+2.
    """

    elements: int
    gain_from_tx: float
    gain_to_rx: float
    gains_inter: np.ndarray
    phi_from_tx: np.ndarray
    phi_to_rx: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        n = int(self.elements)
        if n < 1:
            raise ValueError(f"elements must be >= 1, got {n}")
        gains = np.asarray(self.gains_inter, dtype=float)
        k = gains.shape[0] if gains.ndim == 1 else -1
        if k < 0:
            raise ValueError("gains_inter must be a vector")
        for name, shape in (
            ("phi_from_tx", (n,)),
            ("phi_to_rx", (n,)),
            ("alpha", (k, n)),
            ("beta", (k, n)),
        ):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != shape:
                raise ValueError(f"{name}: expected shape {shape}, got {arr.shape}")
            object.__setattr__(self, name, readonly(arr))
        object.__setattr__(self, "gains_inter", readonly(gains))

    @property
    def num_ris(self) -> int:
        return self.gains_inter.shape[0] + 1

    def path_gain_product(self) -> float:
        """Product of every path gain along the cascade."""
        return float(
            self.gain_from_tx * np.prod(self.gains_inter) * self.gain_to_rx
        )

    def log_path_gain(self) -> float:
        """Sum of log path gains; -inf when any gain is zero."""
        all_gains = np.concatenate(
            ([self.gain_from_tx, self.gain_to_rx], self.gains_inter)
        )
        if np.any(all_gains == 0.0):
            return float("-inf")
        return float(np.sum(np.log(all_gains)))


def sample_los_links(
    topology: SystemTopology,
    path_gains=None,
    *,
    seed: int,
) -> LosLinks:
    """Draw one line-of-sight scenario for the given topology.

    The draw order is part of the reproducibility contract (see the
    module docstring); a given (topology, seed) pair always produces the
    same scenario, independent of platform and process layout.

    Args:
        topology: cascade layout; only the counts matter here.
        path_gains: None, scalar, or L + 1 per-link values (see
            _normalize_path_gains for the ordering).
        seed: 64-bit stream seed, e.g. from derive_seed.
    """
    g_tx, g_inter, g_rx = _normalize_path_gains(topology, path_gains)
    n = topology.elements_per_ris
    hops = topology.num_ris - 1
    rng = phase_generator(seed)
    phi_from_tx = rng.uniform(0.0, TWO_PI, n)
    phi_to_rx = rng.uniform(0.0, TWO_PI, n)
    alpha = np.empty((hops, n))
    beta = np.empty((hops, n))
    for k in range(hops):
        alpha[k] = rng.uniform(0.0, TWO_PI, n)
        beta[k] = rng.uniform(0.0, TWO_PI, n)
    return LosLinks(
        elements=n,
        gain_from_tx=g_tx,
        gain_to_rx=g_rx,
        gains_inter=g_inter,
        phi_from_tx=phi_from_tx,
        phi_to_rx=phi_to_rx,
        alpha=alpha,
        beta=beta,
    )


def materialize(links: LosLinks) -> NormalizedLinks:
    """Turn a sampled scenario into explicit normalized link blocks.

    Endpoint links become unit-modulus phase vectors scaled by their path
    gain; each surface-to-surface link becomes a rank-one matrix, the
    outer product of its arrival and departure phase vectors.
    """
    from_tx = links.gain_from_tx * np.exp(1j * links.phi_from_tx)
    to_rx = links.gain_to_rx * np.exp(1j * links.phi_to_rx)
    inter = tuple(
        links.gains_inter[k]
        * np.outer(np.exp(1j * links.alpha[k]), np.exp(1j * links.beta[k]))
        for k in range(links.num_ris - 1)
    )
    return NormalizedLinks(from_tx=from_tx, to_rx=to_rx, inter_ris=inter)


def hop_phase_sums(links: LosLinks) -> list:
    """Combined phase vector seen by each surface, in cascade order.

    The channel of the cascade factors into one term per surface, and the
    term for surface k depends only on the sum of the phases arriving at
    and departing from that surface.  Each link's phase vector appears in
    exactly one term, so the terms are statistically independent.
    """
    L = links.num_ris
    if L == 1:
        return [links.phi_to_rx + links.phi_from_tx]
    sums = [links.beta[0] + links.phi_from_tx]
    for surface in range(2, L):
        sums.append(links.beta[surface - 1] + links.alpha[surface - 2])
    sums.append(links.phi_to_rx + links.alpha[L - 2])
    return sums
