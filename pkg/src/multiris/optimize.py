"""Optimal phase programming and closed-form gains for both channel models.

For a line-of-sight scenario the channel magnitude factors into one term
per surface.  A surface with reflection phases theta_n contributes

    physics:       K = sum_n exp(j(w_n + theta_n)) - c,   c = sum_n exp(j w_n)
    conventional:  K' = sum_n exp(j(w_n + theta_n))

where w is the combined arrival-plus-departure phase vector of that
surface.  Each factor depends on its own surface only, so the factors can
be maximized independently and the channel gain is the squared product of
path gains and factor magnitudes.

For the conventional model the optimum simply cancels every phase,
giving |K'| = N exactly.  For the physics model the sum term must also be
anti-aligned with the structural term -c: the optimum points every
element opposite to c, giving |K| = N + |c|.  The tie case c = 0 uses
arg(0) = 0, matching numpy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import readonly, wrap_phase
from .los import LosLinks, hop_phase_sums


@dataclass(frozen=True)
class OptimizationResult:
    """Phases chosen for every element plus the resulting channel gain.

    Fields:
        phases: optimal reflection phases, shape (L, N), wrapped to
            [0, 2*pi).
        gain: channel power gain |h|^2 at those phases.
        hop_factors: magnitude of the per-surface factor, length L.
    """

    phases: np.ndarray
    gain: float
    hop_factors: np.ndarray

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=float)
        factors = np.asarray(self.hop_factors, dtype=float)
        if phases.ndim != 2:
            raise ValueError(f"phases must be 2-D, got shape {phases.shape}")
        if factors.shape != (phases.shape[0],):
            raise ValueError(
                f"hop_factors must have one entry per surface, got {factors.shape}"
            )
        object.__setattr__(self, "phases", readonly(phases))
        object.__setattr__(self, "hop_factors", readonly(factors))
        object.__setattr__(self, "gain", float(self.gain))


def _squared_gain(log_path_gain: float, factors: np.ndarray) -> float:
    # accumulate in log domain; large cascades overflow a direct product
    if log_path_gain == float("-inf"):
        return 0.0
    try:
        return float(math.exp(2.0 * (log_path_gain + float(np.sum(np.log(factors))))))
    except OverflowError:
        # the true value exceeds the float range
        return math.inf


def optimize_physics(links: LosLinks) -> OptimizationResult:
    """Phases maximizing the physics-model gain of one sampled scenario.

    Every element of surface k is steered opposite to that surface's
    aggregate term c_k: theta_n = pi + arg(c_k) - w_n.  The reflected sum
    then has magnitude N and points along -c_k, so the factor magnitude
    reaches its ceiling N + |c_k|.
    """
    sums = hop_phase_sums(links)
    n = links.elements
    L = links.num_ris
    phases = np.empty((L, n))
    factors = np.empty(L)
    for k, w in enumerate(sums):
        c = complex(np.sum(np.exp(1j * w)))
        phases[k] = wrap_phase(math.pi + np.angle(c) - w)
        factors[k] = n + abs(c)
    return OptimizationResult(
        phases=phases,
        gain=_squared_gain(links.log_path_gain(), factors),
        hop_factors=factors,
    )


def optimize_conventional(links: LosLinks) -> OptimizationResult:
    """Phases maximizing the conventional-model gain of one sampled scenario.

    Cancelling every combined phase aligns all N element contributions,
    so each surface factor equals N exactly and the gain is the
    deterministic value (path gain)^2 * N^(2L), independent of the drawn
    phases.
    """
    sums = hop_phase_sums(links)
    n = links.elements
    L = links.num_ris
    phases = np.empty((L, n))
    for k, w in enumerate(sums):
        phases[k] = wrap_phase(-w)
    factors = np.full(L, float(n))
    lam = links.path_gain_product()
    try:
        gain = lam * lam * float(n) ** (2 * L)
    except OverflowError:  # float powers raise instead of returning inf
        gain = math.inf
    if math.isinf(gain):
        gain = _squared_gain(links.log_path_gain(), factors)
    return OptimizationResult(phases=phases, gain=gain, hop_factors=factors)


def expected_gain_physics(num_ris: int, elements: int, path_gain: float = 1.0) -> float:
    """Expected optimized physics-model gain over random uniform phases.

    Uses the central-limit value for the mean magnitude of a sum of N
    random phasors, E|c| = sqrt(pi*N/4), and the exact second moment
    E|c|^2 = N, giving the per-surface expectation
    N^2 + N*sqrt(pi*N) + N.  Exact in the large-N limit; an accurate
    approximation at moderate N.

    Args:
        num_ris: number of surfaces L.
        elements: elements per surface N.
        path_gain: total path gain product along the cascade.
    """
    if num_ris < 1 or elements < 1:
        raise ValueError("num_ris and elements must be >= 1")
    if path_gain < 0:
        raise ValueError("path_gain must be nonnegative")
    if path_gain == 0.0:
        return 0.0
    n = float(elements)
    per_surface = n * n + n * math.sqrt(math.pi * n) + n
    try:
        return float(
            math.exp(2.0 * math.log(path_gain) + num_ris * math.log(per_surface))
        )
    except OverflowError:
        return math.inf


def gain_conventional(num_ris: int, elements: int, path_gain: float = 1.0) -> float:
    """Optimized conventional-model gain; deterministic for every scenario."""
    if num_ris < 1 or elements < 1:
        raise ValueError("num_ris and elements must be >= 1")
    if path_gain < 0:
        raise ValueError("path_gain must be nonnegative")
    try:
        gain = path_gain * path_gain * float(elements) ** (2 * num_ris)
    except OverflowError:  # float powers raise instead of returning inf
        gain = math.inf if path_gain > 0.0 else 0.0
    if math.isinf(gain) and path_gain > 0.0:
        n = float(elements)
        try:
            gain = float(math.exp(2.0 * (math.log(path_gain) + num_ris * math.log(n))))
        except OverflowError:
            gain = math.inf
    return gain


def delta_theory(num_ris: int, elements: int) -> float:
    """Relative gain advantage of the physics model at the optimum.

    Equals (N^2 + N*sqrt(pi*N) + N)^L / N^(2L) - 1, evaluated in a form
    stable for large L and N: expm1(L * log1p((sqrt(pi*N) + 1) / N)).
    Independent of path gains, which cancel in the ratio.
    """
    if num_ris < 1 or elements < 1:
        raise ValueError("num_ris and elements must be >= 1")
    n = float(elements)
    return float(math.expm1(num_ris * math.log1p((math.sqrt(math.pi * n) + 1.0) / n)))
