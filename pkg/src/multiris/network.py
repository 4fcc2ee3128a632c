"""Impedance description of a transmitter, receiver, and a cascade of
reconfigurable surfaces, treated as one multiport network.

The full network has 2 + L*N ports: one transmit antenna, one receive
antenna, and N reflecting elements on each of L surfaces.  Its impedance
matrix is handled in partitioned form; the blocks couple the three port
groups (transmitter T, surface elements I, receiver R).

A set of six structural assumptions turns the general network into the
unilateral nearest-neighbor cascade the rest of the package works with:

  1. unilateral_endpoints        feedback into the transmitter and out of
                                 the receiver is ignored (z_TI, z_TR, z_IR
                                 vanish)
  2. matched_endpoints           both antennas are matched to the reference
                                 impedance (z_TT = z_RR = Z0)
  3. blocked_nonadjacent_endpoints  the transmitter only illuminates the
                                 first surface, the receiver only sees the
                                 last one, and there is no direct
                                 transmitter-receiver path
  4. unilateral_inter_ris        no feedback from later surfaces to earlier
                                 ones (upper cross blocks vanish)
  5. nearest_neighbor_only       links that skip a surface are obstructed
                                 (cross blocks with index gap >= 2 vanish)
  6. matched_uncoupled_ris       each surface array is matched and free of
                                 mutual coupling (self blocks equal Z0*I)

With all six active, the load-plus-coupling system becomes block
bidiagonal and admits the structured inverse implemented here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .numerics import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    as_complex_array,
    checked_inv,
    checked_solve,
    close,
    readonly,
    wrap_phase,
)


class InconsistentScenarioError(ValueError):
    """Supplied blocks contradict an active assumption or reciprocity."""


@dataclass(frozen=True)
class SystemTopology:
    """Port-level layout of the cascade.

    Args:
        num_ris: number of reflecting surfaces in the cascade (>= 1).
        elements_per_ris: reflecting elements on each surface (>= 1).
        z0: real reference impedance in ohms, shared by every port.
    """

    num_ris: int
    elements_per_ris: int
    z0: float = 50.0

    def __post_init__(self):
        if self.num_ris < 1:
            raise ValueError(f"num_ris must be >= 1, got {self.num_ris}")
        if self.elements_per_ris < 1:
            raise ValueError(
                f"elements_per_ris must be >= 1, got {self.elements_per_ris}"
            )
        if not (np.isreal(self.z0) and float(np.real(self.z0)) > 0.0):
            raise ValueError(f"z0 must be a positive real number, got {self.z0!r}")

    @property
    def total_elements(self) -> int:
        return self.num_ris * self.elements_per_ris

    @property
    def port_count(self) -> int:
        return 2 + self.total_elements


@dataclass(frozen=True)
class AssumptionSet:
    """Which of the six structural assumptions are in force."""

    unilateral_endpoints: bool = True
    matched_endpoints: bool = True
    blocked_nonadjacent_endpoints: bool = True
    unilateral_inter_ris: bool = True
    nearest_neighbor_only: bool = True
    matched_uncoupled_ris: bool = True

    @classmethod
    def all_active(cls) -> "AssumptionSet":
        return cls()

    @classmethod
    def none_active(cls) -> "AssumptionSet":
        return cls(False, False, False, False, False, False)

    def count_active(self) -> int:
        return sum(
            (
                self.unilateral_endpoints,
                self.matched_endpoints,
                self.blocked_nonadjacent_endpoints,
                self.unilateral_inter_ris,
                self.nearest_neighbor_only,
                self.matched_uncoupled_ris,
            )
        )


@dataclass(frozen=True)
class PartitionedImpedance:
    """Impedance matrix of the full network, stored block by block.

    Vector couplings are kept one dimensional; orientation is implied by
    the name (z_ti and z_ri act as rows, z_it and z_ir as columns).
    Surface indices in the accessors are 1-based, matching the cascade
    order from the transmitter side.

    All array fields are locked read-only at construction, so instances
    can be shared freely across threads and processes.
    """

    topology: SystemTopology
    z_tt: complex
    z_tr: complex
    z_rt: complex
    z_rr: complex
    z_ti: np.ndarray
    z_it: np.ndarray
    z_ri: np.ndarray
    z_ir: np.ndarray
    z_ii: np.ndarray
    assumptions: AssumptionSet | None = None
    reciprocal: bool = False

    def __post_init__(self):
        ln = self.topology.total_elements
        for name in ("z_ti", "z_it", "z_ri", "z_ir"):
            arr = as_complex_array(getattr(self, name), (ln,), name)
            object.__setattr__(self, name, readonly(arr))
        zii = as_complex_array(self.z_ii, (ln, ln), "z_ii")
        object.__setattr__(self, "z_ii", readonly(zii))
        for name in ("z_tt", "z_tr", "z_rt", "z_rr"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.reciprocal:
            ok = (
                close(self.z_tr, self.z_rt)
                and close(self.z_ti, self.z_it)
                and close(self.z_ir, self.z_ri)
                and close(self.z_ii, self.z_ii.T)
            )
            if not ok:
                raise InconsistentScenarioError(
                    "reciprocal flag set but the transpose relations do not hold"
                )

    def _seg(self, vec: np.ndarray, surface: int) -> np.ndarray:
        n = self.topology.elements_per_ris
        if not 1 <= surface <= self.topology.num_ris:
            raise ValueError(f"surface index {surface} outside 1..{self.topology.num_ris}")
        return vec[(surface - 1) * n : surface * n]

    def z_it_seg(self, surface: int) -> np.ndarray:
        """Transmitter coupling into one surface (1-based index)."""
        return self._seg(self.z_it, surface)

    def z_ri_seg(self, surface: int) -> np.ndarray:
        """Coupling from one surface to the receiver (1-based index)."""
        return self._seg(self.z_ri, surface)

    def z_ii_diag(self, surface: int) -> np.ndarray:
        """Self block of one surface array (1-based index)."""
        return self.z_ii_cross(surface, surface)

    def z_ii_cross(self, i: int, j: int) -> np.ndarray:
        """Coupling block from surface j into surface i (1-based indices)."""
        n = self.topology.elements_per_ris
        for k in (i, j):
            if not 1 <= k <= self.topology.num_ris:
                raise ValueError(f"surface index {k} outside 1..{self.topology.num_ris}")
        return self.z_ii[(i - 1) * n : i * n, (j - 1) * n : j * n]

    def to_matrix(self) -> np.ndarray:
        """Assemble the full (2 + L*N) square impedance matrix.

        Port order: transmitter, surface elements in cascade order, receiver.
        """
        ln = self.topology.total_elements
        full = np.zeros((ln + 2, ln + 2), dtype=complex)
        full[0, 0] = self.z_tt
        full[0, 1 : ln + 1] = self.z_ti
        full[0, ln + 1] = self.z_tr
        full[1 : ln + 1, 0] = self.z_it
        full[1 : ln + 1, 1 : ln + 1] = self.z_ii
        full[1 : ln + 1, ln + 1] = self.z_ir
        full[ln + 1, 0] = self.z_rt
        full[ln + 1, 1 : ln + 1] = self.z_ri
        full[ln + 1, ln + 1] = self.z_rr
        return full


@dataclass(frozen=True)
class RisLoadSet:
    """Tunable load networks terminating the surface element ports.

    One square load matrix per surface.  A diagonal matrix means
    independently loaded elements; off-diagonal terms would describe a
    coupled load network.
    """

    matrices: tuple

    def __post_init__(self):
        if len(self.matrices) == 0:
            raise ValueError("at least one load matrix is required")
        first = as_complex_array(self.matrices[0], name="load matrix 1")
        if first.ndim != 2 or first.shape[0] != first.shape[1]:
            raise ValueError(f"load matrix 1 must be square, got shape {first.shape}")
        n = first.shape[0]
        cleaned = []
        for idx, m in enumerate(self.matrices):
            arr = as_complex_array(m, (n, n), f"load matrix {idx + 1}")
            cleaned.append(readonly(arr))
        object.__setattr__(self, "matrices", tuple(cleaned))

    @property
    def num_arrays(self) -> int:
        return len(self.matrices)

    @property
    def elements(self) -> int:
        return self.matrices[0].shape[0]

    @classmethod
    def from_phases(cls, phases, z0: float = 50.0) -> "RisLoadSet":
        """Build purely reactive diagonal loads realizing given reflection phases.

        Each element reflects with unit modulus and phase theta when loaded
        with the reactance jX = j * z0 * cos(theta/2) / sin(theta/2).  The
        phase theta = 0 has no finite realization (the required load is an
        open circuit) and is rejected.

        Args:
            phases: per-surface reflection phases, shape (L, N) or (N,) for
                a single surface.  Values are wrapped onto [0, 2*pi).
            z0: reference impedance the phases are defined against.

        Raises:
            ValueError: if any wrapped phase is exactly 0.
        """
        arr = np.atleast_2d(np.asarray(phases, dtype=float))
        if arr.ndim != 2:
            raise ValueError(f"phases must be at most 2-D, got shape {arr.shape}")
        wrapped = wrap_phase(arr)
        bad = np.argwhere(wrapped == 0.0)
        if bad.size:
            s, e = bad[0]
            raise ValueError(
                f"phase 0 at surface {s + 1}, element {e + 1} is not realizable: "
                "the required reactive load is an open circuit"
            )
        half = 0.5 * wrapped
        reactance = float(z0) * np.cos(half) / np.sin(half)
        return cls(tuple(np.diag(1j * row) for row in reactance))

    def block_diagonal(self) -> np.ndarray:
        """Stack the load matrices into one block-diagonal matrix."""
        n = self.elements
        ln = n * self.num_arrays
        out = np.zeros((ln, ln), dtype=complex)
        for k, m in enumerate(self.matrices):
            out[k * n : (k + 1) * n, k * n : (k + 1) * n] = m
        return out


@dataclass(frozen=True)
class BlockBidiagonal:
    """Square block matrix with nonzero blocks only on the diagonal and
    first subdiagonal, all blocks sharing one size."""

    diag: tuple
    sub: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if len(self.diag) == 0:
            raise ValueError("at least one diagonal block is required")
        if len(self.sub) != len(self.diag) - 1:
            raise ValueError(
                f"expected {len(self.diag) - 1} subdiagonal blocks, got {len(self.sub)}"
            )
        first = as_complex_array(self.diag[0], name="diagonal block 1")
        if first.ndim != 2 or first.shape[0] != first.shape[1]:
            raise ValueError(f"diagonal block 1 must be square, got {first.shape}")
        n = first.shape[0]
        object.__setattr__(
            self,
            "diag",
            tuple(
                readonly(as_complex_array(d, (n, n), f"diagonal block {k + 1}"))
                for k, d in enumerate(self.diag)
            ),
        )
        object.__setattr__(
            self,
            "sub",
            tuple(
                readonly(as_complex_array(s, (n, n), f"subdiagonal block {k + 2},{k + 1}"))
                for k, s in enumerate(self.sub)
            ),
        )

    @property
    def num_blocks(self) -> int:
        return len(self.diag)

    @property
    def block_size(self) -> int:
        return self.diag[0].shape[0]

    def to_dense(self) -> np.ndarray:
        n = self.block_size
        ln = n * self.num_blocks
        out = np.zeros((ln, ln), dtype=complex)
        for k, d in enumerate(self.diag):
            out[k * n : (k + 1) * n, k * n : (k + 1) * n] = d
        for k, s in enumerate(self.sub):
            out[(k + 1) * n : (k + 2) * n, k * n : (k + 1) * n] = s
        return out


def _merge_reciprocal_pair(name_a, a, name_b, b, forced_a, forced_b):
    """Resolve one reciprocity-related pair of blocks.

    Vectors are stored one dimensional on both sides, so transposition is
    plain equality here.  Returns the pair (a, b) with a missing side
    mirrored from the other, unless the missing side is pinned by an
    active assumption, in which case the assumption wins and no mirroring
    happens.
    """
    if a is not None and b is not None:
        if not close(a, b):
            raise InconsistentScenarioError(
                f"reciprocity contradiction: {name_a} does not equal the "
                f"transpose of {name_b}"
            )
        return a, b
    if a is None and b is not None and not forced_a:
        return b, b
    if b is None and a is not None and not forced_b:
        return a, a
    return a, b


def _apply_forced(name, supplied, forced_value, reason):
    """Return the forced value, rejecting a contradictory supplied block."""
    if supplied is not None and not close(supplied, forced_value):
        raise InconsistentScenarioError(
            f"{name} contradicts the active assumption '{reason}'"
        )
    return forced_value


def assemble_impedance_matrix(
    topology: SystemTopology,
    assumptions: AssumptionSet = AssumptionSet(),
    reciprocal: bool = False,
    *,
    z_tt=None,
    z_tr=None,
    z_rt=None,
    z_rr=None,
    z_ti=None,
    z_it=None,
    z_ri=None,
    z_ir=None,
    z_ii=None,
    z_ii_diag: Sequence | None = None,
    z_ii_cross: Mapping | None = None,
) -> PartitionedImpedance:
    """Build a PartitionedImpedance from named blocks and active assumptions.

    Omitted blocks default to zero, except blocks pinned by an active
    assumption, which are set to their structural value exactly (zeros, or
    Z0 terms for the matched assumptions).  Supplying a block that an
    active assumption pins is allowed only when it matches the pinned
    value within the default tolerance; otherwise the scenario is
    inconsistent and a typed error is raised.  The stored block is always
    the exact structural value, never the supplied approximation.

    Inter-surface coupling can be given either as one full z_ii matrix or
    as pieces: ``z_ii_diag`` (sequence of per-surface self blocks, index
    0 is the first surface) and ``z_ii_cross`` (mapping from 1-based index
    pairs (i, j) to the block coupling surface j into surface i).

    With ``reciprocal=True``, supplied pairs related by transposition must
    agree, and a block whose mirror was supplied is filled in by
    transposition unless an active assumption pins it (the assumption
    takes precedence; the unilateral assumptions deliberately break
    reciprocity).

    Raises:
        ValueError: on dimension mismatches or conflicting z_ii inputs.
        InconsistentScenarioError: on contradictions with assumptions or
            reciprocity.
    """
    L = topology.num_ris
    n = topology.elements_per_ris
    ln = topology.total_elements
    z0 = complex(topology.z0)

    def vec(name, value):
        if value is None:
            return None
        return as_complex_array(value, (ln,), name)

    z_ti = vec("z_ti", z_ti)
    z_it = vec("z_it", z_it)
    z_ri = vec("z_ri", z_ri)
    z_ir = vec("z_ir", z_ir)
    z_tt = None if z_tt is None else complex(z_tt)
    z_tr = None if z_tr is None else complex(z_tr)
    z_rt = None if z_rt is None else complex(z_rt)
    z_rr = None if z_rr is None else complex(z_rr)

    # Collect supplied z_ii blocks into a single per-pair mapping.
    if z_ii is not None and (z_ii_diag is not None or z_ii_cross is not None):
        raise ValueError("pass either z_ii or the z_ii_diag/z_ii_cross pieces, not both")
    blocks: dict = {}
    if z_ii is not None:
        full = as_complex_array(z_ii, (ln, ln), "z_ii")
        for i in range(1, L + 1):
            for j in range(1, L + 1):
                blocks[(i, j)] = full[(i - 1) * n : i * n, (j - 1) * n : j * n]
    if z_ii_diag is not None:
        if len(z_ii_diag) != L:
            raise ValueError(f"z_ii_diag must have {L} blocks, got {len(z_ii_diag)}")
        for k, b in enumerate(z_ii_diag):
            blocks[(k + 1, k + 1)] = as_complex_array(b, (n, n), f"z_ii_diag[{k}]")
    if z_ii_cross is not None:
        for (i, j), b in z_ii_cross.items():
            if not (1 <= i <= L and 1 <= j <= L) or i == j:
                raise ValueError(f"z_ii_cross index {(i, j)} outside the cascade")
            blocks[(i, j)] = as_complex_array(b, (n, n), f"z_ii_cross[{i},{j}]")

    a = assumptions

    # Targets pinned by active assumptions; reciprocity never mirrors into these.
    ti_forced = a.unilateral_endpoints
    tr_forced = a.unilateral_endpoints
    ir_forced = a.unilateral_endpoints
    rt_forced = a.blocked_nonadjacent_endpoints

    if reciprocal:
        z_tr, z_rt = _merge_reciprocal_pair(
            "z_tr", z_tr, "z_rt", z_rt, tr_forced, rt_forced
        )
        z_ti, z_it = _merge_reciprocal_pair(
            "z_ti", z_ti, "z_it", z_it, ti_forced, False
        )
        z_ir, z_ri = _merge_reciprocal_pair(
            "z_ir", z_ir, "z_ri", z_ri, ir_forced, False
        )
        for i in range(1, L + 1):
            for j in range(1, L + 1):
                if i == j:
                    if (i, i) in blocks and not close(blocks[(i, i)], blocks[(i, i)].T):
                        raise InconsistentScenarioError(
                            f"reciprocity contradiction: self block ({i},{i}) is not symmetric"
                        )
                    continue
                forced_ij = (a.unilateral_inter_ris and i < j) or (
                    a.nearest_neighbor_only and (i - j) >= 2
                )
                if (i, j) in blocks and (j, i) in blocks:
                    if i < j and not close(blocks[(i, j)], blocks[(j, i)].T):
                        raise InconsistentScenarioError(
                            f"reciprocity contradiction: blocks ({i},{j}) and ({j},{i})"
                        )
                elif (j, i) in blocks and not forced_ij:
                    blocks[(i, j)] = blocks[(j, i)].T

    zeros_v = np.zeros(ln, dtype=complex)

    if a.unilateral_endpoints:
        z_ti = _apply_forced("z_ti", z_ti, zeros_v, "unilateral_endpoints")
        z_tr = _apply_forced("z_tr", z_tr, 0j, "unilateral_endpoints")
        z_ir = _apply_forced("z_ir", z_ir, zeros_v, "unilateral_endpoints")
    if a.matched_endpoints:
        z_tt = _apply_forced("z_tt", z_tt, z0, "matched_endpoints")
        z_rr = _apply_forced("z_rr", z_rr, z0, "matched_endpoints")
    if a.blocked_nonadjacent_endpoints:
        z_rt = _apply_forced("z_rt", z_rt, 0j, "blocked_nonadjacent_endpoints")
        if z_it is not None:
            merged = z_it.copy()
            for s in range(2, L + 1):
                seg = merged[(s - 1) * n : s * n]
                merged[(s - 1) * n : s * n] = _apply_forced(
                    f"z_it segment {s}", seg, np.zeros(n, dtype=complex),
                    "blocked_nonadjacent_endpoints",
                )
            z_it = merged
        if z_ri is not None:
            merged = z_ri.copy()
            for s in range(1, L):
                seg = merged[(s - 1) * n : s * n]
                merged[(s - 1) * n : s * n] = _apply_forced(
                    f"z_ri segment {s}", seg, np.zeros(n, dtype=complex),
                    "blocked_nonadjacent_endpoints",
                )
            z_ri = merged

    zeros_b = np.zeros((n, n), dtype=complex)
    for i in range(1, L + 1):
        for j in range(1, L + 1):
            if i == j:
                if a.matched_uncoupled_ris:
                    blocks[(i, i)] = _apply_forced(
                        f"z_ii self block ({i},{i})", blocks.get((i, i)),
                        z0 * np.eye(n, dtype=complex), "matched_uncoupled_ris",
                    )
                continue
            if a.unilateral_inter_ris and i < j:
                blocks[(i, j)] = _apply_forced(
                    f"z_ii cross block ({i},{j})", blocks.get((i, j)),
                    zeros_b, "unilateral_inter_ris",
                )
            if a.nearest_neighbor_only and (i - j) >= 2:
                blocks[(i, j)] = _apply_forced(
                    f"z_ii cross block ({i},{j})", blocks.get((i, j)),
                    zeros_b, "nearest_neighbor_only",
                )

    zii = np.zeros((ln, ln), dtype=complex)
    for (i, j), b in blocks.items():
        zii[(i - 1) * n : i * n, (j - 1) * n : j * n] = b

    def dflt(value, fallback):
        return fallback if value is None else value

    z_ti = dflt(z_ti, zeros_v)
    z_it = dflt(z_it, zeros_v)
    z_ri = dflt(z_ri, zeros_v)
    z_ir = dflt(z_ir, zeros_v)
    z_tt = dflt(z_tt, 0j)
    z_tr = dflt(z_tr, 0j)
    z_rt = dflt(z_rt, 0j)
    z_rr = dflt(z_rr, 0j)

    # Record reciprocity only if it actually survived assumption enforcement.
    holds = (
        close(z_tr, z_rt)
        and close(z_ti, z_it)
        and close(z_ir, z_ri)
        and close(zii, zii.T)
    )
    return PartitionedImpedance(
        topology=topology,
        z_tt=z_tt,
        z_tr=z_tr,
        z_rt=z_rt,
        z_rr=z_rr,
        z_ti=z_ti,
        z_it=z_it,
        z_ri=z_ri,
        z_ir=z_ir,
        z_ii=zii,
        assumptions=assumptions,
        reciprocal=bool(reciprocal and holds),
    )


def channel_exact(network: PartitionedImpedance, loads: RisLoadSet) -> complex:
    """End-to-end transfer coefficient of the loaded network, no
    approximations beyond the endpoint assumptions.

    Requires unilateral endpoint feedback and matched endpoints; these two
    assumptions are what reduce the full port relations to a single
    transmitter-to-receiver coefficient.  The structure of z_ii and of the
    couplings is otherwise arbitrary.

    Raises:
        ValueError: if the endpoint structure is not present or dimensions
            do not match.
        IllConditionedError: if the load-plus-coupling system is singular
            or numerically near singular.
    """
    topo = network.topology
    if loads.num_arrays != topo.num_ris or loads.elements != topo.elements_per_ris:
        raise ValueError(
            f"loads describe {loads.num_arrays} surfaces of {loads.elements} elements, "
            f"topology has {topo.num_ris} surfaces of {topo.elements_per_ris}"
        )
    z0 = complex(topo.z0)
    problems = []
    if not close(network.z_ti, np.zeros_like(network.z_ti)):
        problems.append("z_ti != 0")
    if not close(network.z_tr, 0j):
        problems.append("z_tr != 0")
    if not close(network.z_ir, np.zeros_like(network.z_ir)):
        problems.append("z_ir != 0")
    if not close(network.z_tt, z0):
        problems.append("z_tt != Z0")
    if not close(network.z_rr, z0):
        problems.append("z_rr != Z0")
    if problems:
        raise ValueError(
            "channel_exact requires unilateral endpoint feedback and matched "
            "endpoints; violated: " + ", ".join(problems)
        )
    system = loads.block_diagonal() + network.z_ii
    x = checked_solve(system, network.z_it, what="load plus coupling system")
    return complex((network.z_rt - network.z_ri @ x) / (2.0 * z0))


def block_bidiagonal_inverse(m: BlockBidiagonal) -> np.ndarray:
    """Invert a block-bidiagonal matrix by forward substitution on blocks.

    The inverse of a lower block-bidiagonal matrix is lower block
    triangular.  Its diagonal blocks are the inverses of the diagonal
    blocks of the input, and each subdiagonal block is an alternating-sign
    product of subdiagonal and inverted diagonal blocks.  The factors in
    that product are applied in descending row order; the blocks do not
    commute, so the order is load-bearing.

    The strictly upper block triangle of the result is written as exact
    zeros, never computed.

    Returns:
        Dense ndarray holding the full inverse.

    Raises:
        IllConditionedError: if any diagonal block is singular or close to it.
    """
    L = m.num_blocks
    n = m.block_size
    dinv = [
        checked_inv(d, what=f"diagonal block {k + 1}") for k, d in enumerate(m.diag)
    ]
    # pair[k] couples row k into row k-1 of the inverse: S_(k,k-1) @ inv(D_(k-1))
    pair = {k: m.sub[k - 2] @ dinv[k - 2] for k in range(2, L + 1)}

    out = np.zeros((L * n, L * n), dtype=complex)
    for i in range(1, L + 1):
        out[(i - 1) * n : i * n, (i - 1) * n : i * n] = dinv[i - 1]
        prod = None
        for j in range(i - 1, 0, -1):
            step = pair[j + 1]
            prod = step if prod is None else prod @ step
            sign = -1.0 if (i - j) % 2 else 1.0
            out[(i - 1) * n : i * n, (j - 1) * n : j * n] = sign * (dinv[i - 1] @ prod)
    return out


def _solve_from_right(row: np.ndarray, system: np.ndarray, what: str) -> np.ndarray:
    # row @ inv(system), computed as a transposed solve
    return checked_solve(system.T, row, what=what)


def channel_cascaded_impedance(
    z_ri_last,
    inter_ris: Sequence,
    z_it_first,
    loads: RisLoadSet,
    z0: float = 50.0,
) -> complex:
    """Transfer coefficient of the unilateral nearest-neighbor cascade,
    written directly as a product over hops in the impedance domain.

    Args:
        z_ri_last: coupling from the last surface to the receiver, length N.
        inter_ris: surface-to-surface coupling blocks in cascade order;
            element k couples surface k+1 into surface k+2, so the list is
            empty for a single surface.
        z_it_first: coupling from the transmitter into the first surface.
        loads: per-surface load matrices (defines the number of surfaces).
        z0: reference impedance.

    Raises:
        ValueError: on dimension mismatches.
        IllConditionedError: if any per-surface load system is singular.
    """
    L = loads.num_arrays
    n = loads.elements
    z_ri_last = as_complex_array(z_ri_last, (n,), "z_ri_last")
    z_it_first = as_complex_array(z_it_first, (n,), "z_it_first")
    if len(inter_ris) != L - 1:
        raise ValueError(f"expected {L - 1} inter-surface blocks, got {len(inter_ris)}")
    hops = [as_complex_array(h, (n, n), f"inter_ris[{k}]") for k, h in enumerate(inter_ris)]

    eye = np.eye(n, dtype=complex)
    sign = (-1.0) ** L
    v = _solve_from_right(
        z_ri_last, loads.matrices[L - 1] + z0 * eye, what=f"surface {L} load system"
    )
    for k in range(L - 2, -1, -1):
        v = v @ hops[k]
        v = _solve_from_right(
            v, loads.matrices[k] + z0 * eye, what=f"surface {k + 1} load system"
        )
    return complex(sign * (v @ z_it_first) / (2.0 * z0))
