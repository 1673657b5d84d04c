"""Stabilizer structure of a bipartite pure state under local unitaries.

The pairs (u1, u2) with ``u1 @ psi @ u2.T == psi`` form a group determined
entirely by the singular spectrum of psi. In the Schmidt basis the condition
reads ``r1 @ Sigma == Sigma @ r2.conj()``; unitarity splits each r_j into a
support block and a free null block, the support blocks decompose over the
clusters of equal singular values, and on every cluster the side-2 block is
forced to be the conjugate of the side-1 block. Converting back to the
original basis uses ``u_j = s_j.T @ r_j @ s_j.conj()``.

The group's real dimension under this parameterization is the sum of squared
cluster multiplicities plus the squared null dimensions; it is cross-checked
against an independent oracle that linearizes the invariance condition at the
identity and counts nullspace dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bipartite import (
    BipartiteState,
    DegeneracySpectrum,
    SchmidtForm,
    cluster_spectrum,
    partial_trace_1,
    partial_trace_2,
    schmidt_decompose,
)
from .config import (
    DEFAULT_DECISION_TOL,
    DEFAULT_DEGENERACY_TOL,
    DEFAULT_RANK_TOL,
)
from .errors import DimensionMismatch, NotUnitary
from .matkernel import (
    as_complex_matrix,
    haar_unitary,
    real_nullspace_dimension,
    unitarity_defect,
)


@dataclass(frozen=True)
class SupportBlock:
    """One free unitary block on the support, shared by both sides up to conjugation."""

    start: int
    size: int
    value: float


@dataclass(frozen=True)
class InvarianceStructure:
    """Symbolic description of the stabilizer group of one state.

    ``blocks`` lists the coupled support blocks in Schmidt order (side-2 block
    equal to the conjugate of the side-1 block); the null blocks of dimensions
    ``null_dims`` are free and independent per side. ``schmidt`` carries the
    basis change to the original basis.
    """

    schmidt: SchmidtForm
    spectrum: DegeneracySpectrum
    blocks: tuple[SupportBlock, ...]

    @property
    def d1(self) -> int:
        return self.schmidt.d1

    @property
    def d2(self) -> int:
        return self.schmidt.d2

    @property
    def rank(self) -> int:
        return self.spectrum.rank

    @property
    def null_dims(self) -> tuple[int, int]:
        return self.spectrum.null_dims


@dataclass(frozen=True)
class UnitaryPair:
    """Local unitaries acting on subsystem 1 and 2 respectively."""

    u1: np.ndarray
    u2: np.ndarray


@dataclass(frozen=True)
class NoSolution:
    """Failure certificate for the undo problem.

    ``off_block_mass`` is the largest matrix entry (in modulus) of the
    Schmidt-basis operator outside the block pattern the spectrum allows.
    """

    off_block_mass: float


@dataclass(frozen=True)
class InvarianceCheck:
    invariant: bool
    residual: float


@dataclass(frozen=True)
class CommutantCheck:
    side1: bool
    side2: bool
    residual1: float
    residual2: float


def invariance_structure(state: BipartiteState, rank_tol: float = DEFAULT_RANK_TOL,
                         degeneracy_tol: float = DEFAULT_DEGENERACY_TOL) -> InvarianceStructure:
    """Full stabilizer structure of a state: one free block per degeneracy cluster.

    States near a degeneracy boundary can flip structure with the tolerance;
    the spectrum's minimum gap is exposed so fragile cases are visible.
    """
    schmidt = schmidt_decompose(state, rank_tol=rank_tol)
    spectrum = cluster_spectrum(
        schmidt.sigma,
        rank_tol=rank_tol,
        degeneracy_tol=degeneracy_tol,
        dims=(state.d1, state.d2),
    )
    blocks = []
    start = 0
    for value, mult in spectrum.clusters:
        blocks.append(SupportBlock(start=start, size=mult, value=value))
        start += mult
    return InvarianceStructure(schmidt=schmidt, spectrum=spectrum, blocks=tuple(blocks))


def sample_invariant_pair(structure: InvarianceStructure, rng: np.random.Generator) -> UnitaryPair:
    """Draw a Haar-random element of the stabilizer group.

    Each support block is drawn Haar-randomly and conjugated onto side 2; the
    null blocks are drawn independently (side 1 first, then side 2). The draw
    order is fixed so a seeded generator reproduces the same pair.
    """
    d1, d2, rank = structure.d1, structure.d2, structure.rank
    r1 = np.zeros((d1, d1), dtype=np.complex128)
    r2 = np.zeros((d2, d2), dtype=np.complex128)
    for block in structure.blocks:
        w = haar_unitary(block.size, rng)
        sl = slice(block.start, block.start + block.size)
        r1[sl, sl] = w
        r2[sl, sl] = w.conj()
    if d1 > rank:
        r1[rank:, rank:] = haar_unitary(d1 - rank, rng)
    if d2 > rank:
        r2[rank:, rank:] = haar_unitary(d2 - rank, rng)
    s1, s2 = structure.schmidt.s1, structure.schmidt.s2
    return UnitaryPair(u1=s1.T @ r1 @ s1.conj(), u2=s2.T @ r2 @ s2.conj())


def _check_pair_dims(pair: UnitaryPair, state: BipartiteState) -> tuple[np.ndarray, np.ndarray]:
    u1 = as_complex_matrix(pair.u1, "u1")
    u2 = as_complex_matrix(pair.u2, "u2")
    if u1.shape != (state.d1, state.d1):
        raise DimensionMismatch(f"u1 must be {state.d1}x{state.d1}, got {u1.shape}")
    if u2.shape != (state.d2, state.d2):
        raise DimensionMismatch(f"u2 must be {state.d2}x{state.d2}, got {u2.shape}")
    return u1, u2


def is_invariant(pair: UnitaryPair, state: BipartiteState,
                 tol: float = DEFAULT_DECISION_TOL) -> InvarianceCheck:
    """Decide ``u1 @ psi @ u2.T == psi`` by the max-entry residual.

    Strict equality is required, not equality up to a global phase.
    """
    u1, u2 = _check_pair_dims(pair, state)
    residual = float(np.max(np.abs(u1 @ state.psi @ u2.T - state.psi)))
    return InvarianceCheck(invariant=residual <= tol, residual=residual)


def commutant_check(pair: UnitaryPair, state: BipartiteState,
                    tol: float = DEFAULT_DECISION_TOL) -> CommutantCheck:
    """Per-side commutator test against the reduced operators.

    Vanishing commutators are necessary for invariance but not sufficient:
    a maximally mixed reduction commutes with every unitary.
    """
    u1, u2 = _check_pair_dims(pair, state)
    rho1 = partial_trace_2(state)
    rho2 = partial_trace_1(state)
    res1 = float(np.max(np.abs(u1 @ rho1 - rho1 @ u1)))
    res2 = float(np.max(np.abs(u2 @ rho2 - rho2 @ u2)))
    return CommutantCheck(side1=res1 <= tol, side2=res2 <= tol, residual1=res1, residual2=res2)


def _block_pattern(structure: InvarianceStructure, dim: int) -> np.ndarray:
    """Boolean mask of entries the stabilizer allows in the Schmidt basis."""
    mask = np.zeros((dim, dim), dtype=bool)
    for block in structure.blocks:
        sl = slice(block.start, block.start + block.size)
        mask[sl, sl] = True
    rank = structure.rank
    if dim > rank:
        mask[rank:, rank:] = True
    return mask


def undo_operator(u1, state: BipartiteState, tol: float = DEFAULT_DECISION_TOL,
                  rank_tol: float = DEFAULT_RANK_TOL,
                  degeneracy_tol: float = DEFAULT_DEGENERACY_TOL,
                  unitary_tol: float = 1e-10) -> UnitaryPair | NoSolution:
    """Find u2 on subsystem 2 undoing the action of ``u1`` on subsystem 1.

    In the Schmidt basis ``r1 = s1.conj() @ u1 @ s1.T`` must be block-diagonal
    with respect to the degeneracy clusters and the support/null split; the
    matching ``r2`` conjugates the support blocks and completes the null block
    with the identity (any unitary there would do; the identity keeps the
    output deterministic). Returns ``NoSolution`` with the off-block mass when
    ``r1`` leaks outside the allowed pattern.
    """
    m1 = as_complex_matrix(u1, "u1")
    if m1.shape != (state.d1, state.d1):
        raise DimensionMismatch(f"u1 must be {state.d1}x{state.d1}, got {m1.shape}")
    defect = unitarity_defect(m1)
    if defect > unitary_tol:
        raise NotUnitary(f"u1 deviates from unitarity by {defect:.3e}")

    structure = invariance_structure(state, rank_tol=rank_tol, degeneracy_tol=degeneracy_tol)
    s1, s2 = structure.schmidt.s1, structure.schmidt.s2
    r1 = s1.conj() @ m1 @ s1.T

    allowed = _block_pattern(structure, state.d1)
    off_entries = np.abs(r1[~allowed])
    off_mass = float(off_entries.max()) if off_entries.size else 0.0
    if off_mass > tol:
        return NoSolution(off_block_mass=off_mass)

    r2 = np.zeros((state.d2, state.d2), dtype=np.complex128)
    for block in structure.blocks:
        sl = slice(block.start, block.start + block.size)
        r2[sl, sl] = r1[sl, sl].conj()
    rank = structure.rank
    if state.d2 > rank:
        r2[rank:, rank:] = np.eye(state.d2 - rank)
    return UnitaryPair(u1=m1, u2=s2.T @ r2 @ s2.conj())


def group_dimension(structure: InvarianceStructure) -> int:
    """Real dimension of the stabilizer group under the block parameterization."""
    n1, n2 = structure.null_dims
    return sum(block.size**2 for block in structure.blocks) + n1**2 + n2**2


def _anti_hermitian_basis(n: int) -> list[np.ndarray]:
    """Real basis of the n x n anti-Hermitian matrices, in a fixed order."""
    basis = []
    for k in range(n):
        g = np.zeros((n, n), dtype=np.complex128)
        g[k, k] = 1j
        basis.append(g)
    for j in range(n):
        for k in range(j + 1, n):
            g = np.zeros((n, n), dtype=np.complex128)
            g[j, k] = 1.0
            g[k, j] = -1.0
            basis.append(g)
            g = np.zeros((n, n), dtype=np.complex128)
            g[j, k] = 1j
            g[k, j] = 1j
            basis.append(g)
    return basis


def lie_algebra_dimension(state: BipartiteState, tol: float = DEFAULT_DECISION_TOL) -> int:
    """Stabilizer dimension from linearizing the invariance condition at the identity.

    Anti-Hermitian generators (x1, x2) of invariant one-parameter groups
    satisfy ``x1 @ psi + psi @ x2.T == 0``. Anti-Hermiticity is a real-linear
    constraint, so the system is assembled over the d1^2 + d2^2 real
    coordinates of (x1, x2) with real and imaginary parts stacked as separate
    equations, and the solution-space dimension is its nullspace dimension.
    This count is independent of the block bookkeeping and serves as its
    oracle.
    """
    psi = state.psi
    columns = []
    for g in _anti_hermitian_basis(state.d1):
        columns.append((g @ psi).ravel())
    for g in _anti_hermitian_basis(state.d2):
        columns.append((psi @ g.T).ravel())
    complex_system = np.array(columns).T
    system = np.vstack([complex_system.real, complex_system.imag])
    return real_nullspace_dimension(system, tol=tol)
