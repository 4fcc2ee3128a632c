"""Scattering-parameter form of the cascade and the two channel models
built on it.

The tunable state of each surface enters through its reflection matrix
Theta, related to the load impedance by the usual bilinear map against
the reference impedance.  After normalizing every coupling block by
2*Z0, the end-to-end channel of the unilateral nearest-neighbor cascade
becomes a plain matrix product over hops.  Two variants matter:

* physics_channel: each surface contributes (Theta - I).  The identity
  term is the structural reflection an element produces even when its
  load is matched; dropping it is an approximation, not a simplification.
* conventional_channel: each surface contributes Theta alone.  This is
  the form commonly assumed in link-level models.

Both accept the same normalized links, so their outputs are directly
comparable.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import (
    as_complex_array,
    checked_solve,
    close,
    readonly,
)
from .network import PartitionedImpedance


def scattering_from_impedance(z_load: np.ndarray, z0: float = 50.0) -> np.ndarray:
    """Reflection matrix of a load network relative to the reference impedance.

    Computes (Z + Z0*I)^-1 (Z - Z0*I) without forming the inverse.

    Raises:
        IllConditionedError: when Z + Z0*I is singular or near singular.
    """
    z = as_complex_array(z_load, name="z_load")
    if z.ndim != 2 or z.shape[0] != z.shape[1]:
        raise ValueError(f"z_load must be square, got shape {z.shape}")
    eye = np.eye(z.shape[0], dtype=complex)
    return checked_solve(z + z0 * eye, z - z0 * eye, what="load plus reference system")


def impedance_from_scattering(theta: np.ndarray, z0: float = 50.0) -> np.ndarray:
    """Load impedance realizing a given reflection matrix.

    Inverts the bilinear map: Z = Z0 (I + Theta)(I - Theta)^-1.  A unit
    reflection with zero phase makes I - Theta singular; there is no
    finite load realizing it (the zero-phase point corresponds to an open
    circuit) and the conditioning guard rejects it.

    Raises:
        IllConditionedError: when I - Theta is singular or near singular,
            in particular at the non-realizable phase 0.
    """
    t = as_complex_array(theta, name="theta")
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError(f"theta must be square, got shape {t.shape}")
    eye = np.eye(t.shape[0], dtype=complex)
    # right division via a transposed solve: (I + Theta) @ inv(I - Theta)
    x = checked_solve(
        (eye - t).T, (eye + t).T, what="reflection map (phase 0 is not realizable)"
    )
    return z0 * x.T


@dataclass(frozen=True)
class RisScattering:
    """Reflection matrices of every surface in cascade order.

    ``diagonal_unimodular`` asserts the usual tunable-surface structure:
    each matrix is diagonal with unit-modulus entries.  Construction
    verifies the claim (off-diagonal terms must be exactly zero, the
    diagonal moduli within 1e-12 of one).
    """

    matrices: tuple
    diagonal_unimodular: bool = False

    def __post_init__(self):
        if len(self.matrices) == 0:
            raise ValueError("at least one reflection matrix is required")
        first = as_complex_array(self.matrices[0], name="reflection matrix 1")
        if first.ndim != 2 or first.shape[0] != first.shape[1]:
            raise ValueError(f"reflection matrix 1 must be square, got {first.shape}")
        n = first.shape[0]
        cleaned = []
        for idx, m in enumerate(self.matrices):
            arr = as_complex_array(m, (n, n), f"reflection matrix {idx + 1}")
            if self.diagonal_unimodular:
                off = arr - np.diag(np.diag(arr))
                if np.any(off != 0):
                    raise ValueError(
                        f"reflection matrix {idx + 1} is not diagonal"
                    )
                moduli = np.abs(np.diag(arr))
                if np.max(np.abs(moduli - 1.0)) > 1e-12:
                    raise ValueError(
                        f"reflection matrix {idx + 1} is not unit modulus on the diagonal"
                    )
            cleaned.append(readonly(arr))
        object.__setattr__(self, "matrices", tuple(cleaned))

    @property
    def num_ris(self) -> int:
        return len(self.matrices)

    @property
    def elements(self) -> int:
        return self.matrices[0].shape[0]

    @classmethod
    def from_phases(cls, phases) -> "RisScattering":
        """Diagonal unit-modulus reflection matrices from per-element phases.

        Args:
            phases: shape (L, N) or (N,) for a single surface.
        """
        arr = np.atleast_2d(np.asarray(phases, dtype=float))
        return cls(
            tuple(np.diag(np.exp(1j * row)) for row in arr),
            diagonal_unimodular=True,
        )


@dataclass(frozen=True)
class NormalizedLinks:
    """Propagation blocks of the cascade, normalized by 2*Z0.

    Fields:
        from_tx: transmitter into the first surface, length N.
        to_rx: last surface into the receiver, length N.
        inter_ris: surface-to-surface blocks in cascade order; element k
            couples surface k+1 into surface k+2 (empty for one surface).
    """

    from_tx: np.ndarray
    to_rx: np.ndarray
    inter_ris: tuple = ()

    def __post_init__(self):
        from_tx = as_complex_array(self.from_tx, name="from_tx")
        if from_tx.ndim != 1:
            raise ValueError(f"from_tx must be a vector, got shape {from_tx.shape}")
        n = from_tx.shape[0]
        to_rx = as_complex_array(self.to_rx, (n,), "to_rx")
        object.__setattr__(self, "from_tx", readonly(from_tx))
        object.__setattr__(self, "to_rx", readonly(to_rx))
        object.__setattr__(
            self,
            "inter_ris",
            tuple(
                readonly(as_complex_array(h, (n, n), f"inter_ris[{k}]"))
                for k, h in enumerate(self.inter_ris)
            ),
        )

    @property
    def num_ris(self) -> int:
        return len(self.inter_ris) + 1

    @property
    def elements(self) -> int:
        return self.from_tx.shape[0]

    @classmethod
    def from_impedance(cls, network: PartitionedImpedance) -> "NormalizedLinks":
        """Extract and normalize the cascade blocks of a partitioned network.

        Uses the transmitter coupling into the first surface, the receiver
        coupling out of the last, and the first-subdiagonal inter-surface
        blocks, each divided by 2*Z0.
        """
        L = network.topology.num_ris
        scale = 1.0 / (2.0 * network.topology.z0)
        return cls(
            from_tx=scale * network.z_it_seg(1),
            to_rx=scale * network.z_ri_seg(L),
            inter_ris=tuple(
                scale * network.z_ii_cross(k + 2, k + 1) for k in range(L - 1)
            ),
        )


def _cascade(links: NormalizedLinks, ris: RisScattering, shift: float) -> complex:
    if ris.num_ris != links.num_ris or ris.elements != links.elements:
        raise ValueError(
            f"reflection matrices describe {ris.num_ris} surfaces of "
            f"{ris.elements} elements, links have {links.num_ris} of {links.elements}"
        )
    eye = np.eye(links.elements, dtype=complex)
    v = links.to_rx @ (ris.matrices[-1] - shift * eye)
    # walk the cascade from the receiver side back to the transmitter
    for k in range(links.num_ris - 2, -1, -1):
        v = v @ links.inter_ris[k]
        v = v @ (ris.matrices[k] - shift * eye)
    return complex(v @ links.from_tx)


def physics_channel(links: NormalizedLinks, ris: RisScattering) -> complex:
    """Cascade channel with the structural reflection kept: each surface
    enters as (Theta - I)."""
    return _cascade(links, ris, shift=1.0)


def conventional_channel(links: NormalizedLinks, ris: RisScattering) -> complex:
    """Cascade channel in the commonly assumed form: each surface enters
    as Theta alone."""
    return _cascade(links, ris, shift=0.0)
