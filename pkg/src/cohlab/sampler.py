"""Haar-distributed sampling of pure states, unitaries, subspaces, and
ensemble decompositions.

Every operation draws from a :class:`~cohlab.streams.RandomStream`, so any
sample can be reproduced from its ``(master_seed, stream_index)`` pair.
Pure states are generated by normalizing a complex Gaussian vector, which
is distributed exactly like ``U |psi_0>`` for Haar ``U`` (rotation
invariance of the Gaussian) at O(d) instead of O(d^2) cost.  Unitaries and
subspace frames come from QR factorization of complex Ginibre matrices
with the R-diagonal phase correction; without that correction QR output is
NOT Haar-distributed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, InvalidDimensionError
from .streams import RandomStream

_NORM_ATOL = 1e-12
_UNITARY_ATOL_PER_DIM = 1e-10
_ORTHO_ATOL = 1e-10
_WEIGHT_SUM_ATOL = 1e-12
_GRAM_ATOL = 1e-9
# numerical noise floor for dropping zero-weight ensemble members; well
# below any weight scale used in practice
ZERO_WEIGHT_DROP = 1e-14


@dataclass
class PureState:
    """Unit-norm complex amplitude vector in the fixed reference basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size < 1:
            raise InvalidDimensionError("amplitudes must be a nonempty 1-d vector")
        norm_sq = float((amps.real**2 + amps.imag**2).sum())
        if abs(norm_sq - 1.0) > _NORM_ATOL:
            raise InvalidArgumentError(
                f"state is not normalized: sum |psi_i|^2 = {norm_sq!r}"
            )
        self.amplitudes = amps

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass
class UnitaryMatrix:
    """d x d complex matrix with U^dag U = I within Frobenius tolerance."""

    entries: np.ndarray

    def __post_init__(self):
        u = np.ascontiguousarray(self.entries, dtype=np.complex128)
        if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] < 1:
            raise InvalidDimensionError("entries must be a square matrix")
        d = u.shape[0]
        defect = np.linalg.norm(u.conj().T @ u - np.eye(d))
        if defect > _UNITARY_ATOL_PER_DIM * d:
            raise InvalidArgumentError(
                f"matrix is not unitary: ||U^dag U - I||_F = {defect:.3e}"
            )
        self.entries = u

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass
class SubspaceBasis:
    """Column-orthonormal d x s frame spanning a subspace of C^d."""

    columns: np.ndarray

    def __post_init__(self):
        b = np.ascontiguousarray(self.columns, dtype=np.complex128)
        if b.ndim != 2:
            raise InvalidDimensionError("columns must be a 2-d array")
        d, s = b.shape
        if not 1 <= s <= d:
            raise InvalidDimensionError(
                f"need 1 <= sub_dim <= ambient_dim, got {s} and {d}"
            )
        defect = np.abs(b.conj().T @ b - np.eye(s)).max()
        if defect > _ORTHO_ATOL:
            raise InvalidArgumentError(
                f"columns are not orthonormal: max deviation {defect:.3e}"
            )
        self.columns = b

    @property
    def ambient_dim(self) -> int:
        return self.columns.shape[0]

    @property
    def sub_dim(self) -> int:
        return self.columns.shape[1]


@dataclass
class Decomposition:
    """Weighted pure-state ensemble {p_a, |psi_a>} of one density matrix."""

    weights: np.ndarray
    states: list[PureState]

    def __post_init__(self):
        w = np.ascontiguousarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size < 1:
            raise InvalidArgumentError("weights must be a nonempty 1-d vector")
        if w.min() < 0.0:
            raise InvalidArgumentError("weights must be nonnegative")
        total = float(w.sum())
        if abs(total - 1.0) > _WEIGHT_SUM_ATOL:
            raise InvalidArgumentError(f"weights must sum to 1, got {total!r}")
        states = list(self.states)
        if len(states) != w.size:
            raise InvalidArgumentError("weights and states must have equal length")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise InvalidArgumentError("all ensemble states must share one dimension")
        self.weights = w
        self.states = states

    @property
    def size(self) -> int:
        return self.weights.size

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def density_matrix(self) -> np.ndarray:
        """Dense d x d reconstruction sum_a p_a |psi_a><psi_a| (small d only)."""
        psi = np.stack([s.amplitudes for s in self.states])
        return (psi.T * self.weights) @ psi.conj()


def ginibre(generator: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """rows x cols matrix of iid standard complex normals (variance 1)."""
    z = generator.standard_normal((rows, 2 * cols)).view(np.complex128)
    return z / np.sqrt(2.0)


def positive_qr(matrix: np.ndarray) -> np.ndarray:
    """Q factor of a (possibly stacked) QR with real-positive R diagonal.

    The phase correction makes the factorization unique, which is what
    turns QR of a Ginibre matrix into a Haar-distributed frame; plain
    ``np.linalg.qr`` alone does not sample Haar.
    """
    q, r = np.linalg.qr(matrix)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    mag = np.abs(diag)
    phase = np.where(mag > 0.0, diag / np.where(mag > 0.0, mag, 1.0), 1.0)
    return q * phase[..., None, :]


def _haar_amplitudes(dim: int, generator: np.random.Generator) -> np.ndarray:
    z = generator.standard_normal(2 * dim).view(np.complex128)
    w = z.real**2 + z.imag**2
    return z / np.sqrt(w.sum())


def sample_haar_pure(dim: int, stream: RandomStream) -> PureState:
    """Draw a Haar-distributed pure state of the given dimension.

    Implemented as 2*dim iid standard normals (real and imaginary parts)
    normalized to unit length; by rotation invariance of the Gaussian this
    is exactly the unitarily invariant measure.
    """
    if dim < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {dim}")
    return PureState(_haar_amplitudes(dim, stream.generator))


def sample_haar_unitary(dim: int, stream: RandomStream) -> UnitaryMatrix:
    """Draw a Haar-distributed unitary via phase-corrected Ginibre QR."""
    if dim < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {dim}")
    q = positive_qr(ginibre(stream.generator, dim, dim))
    return UnitaryMatrix(q)


def sample_random_subspace(dim: int, sub_dim: int, stream: RandomStream) -> SubspaceBasis:
    """Draw a Haar-random sub_dim-dimensional subspace of C^dim.

    The returned frame is the phase-corrected QR orthonormalization of a
    dim x sub_dim Ginibre matrix, equal in distribution to the first
    sub_dim columns of a Haar unitary.
    """
    if dim < 1 or sub_dim < 1 or sub_dim > dim:
        raise InvalidDimensionError(
            f"need 1 <= sub_dim <= dim, got sub_dim={sub_dim}, dim={dim}"
        )
    q = positive_qr(ginibre(stream.generator, dim, sub_dim))
    return SubspaceBasis(q)


def sample_pure_in_subspace(basis: SubspaceBasis, stream: RandomStream) -> PureState:
    """Draw a Haar pure state supported on the given subspace.

    A Haar state of the subspace dimension is drawn and mapped through the
    frame columns; the result is unit norm in the ambient dimension.
    """
    coeff = _haar_amplitudes(basis.sub_dim, stream.generator)
    return PureState(basis.columns @ coeff)


def _mix_ensemble(seed_ensemble: Decomposition, isometry: np.ndarray) -> Decomposition:
    """Re-decompose the ensemble's density matrix through a mixing isometry.

    With W an m_out x m matrix satisfying W^dag W = I, the unnormalized
    vectors |phi_b> = sum_a W_ba sqrt(p_a) |psi_a> carry weights
    q_b = <phi_b|phi_b> and reproduce the same density matrix.  Members
    with q_b below ``ZERO_WEIGHT_DROP`` are dropped and the weights
    renormalized.
    """
    w = np.ascontiguousarray(isometry, dtype=np.complex128)
    m = seed_ensemble.size
    if w.ndim != 2 or w.shape[1] != m:
        raise InvalidArgumentError(
            f"mixing matrix must have {m} columns, got shape {w.shape}"
        )
    if np.abs(w.conj().T @ w - np.eye(m)).max() > _ORTHO_ATOL:
        raise InvalidArgumentError("mixing matrix is not an isometry")

    coeff = w * np.sqrt(seed_ensemble.weights)[None, :]
    # Gram-data check that the output decomposes the same density matrix:
    # coefficient-space identity C^dag C = diag(p).
    defect = np.abs(coeff.conj().T @ coeff - np.diag(seed_ensemble.weights)).max()
    if defect > _GRAM_ATOL:
        raise InvalidArgumentError(
            f"re-decomposition does not preserve the density matrix "
            f"(coefficient Gram defect {defect:.3e})"
        )

    psi = np.stack([s.amplitudes for s in seed_ensemble.states])
    phi = coeff @ psi
    q = (phi.real**2 + phi.imag**2).sum(axis=1)
    keep = q >= ZERO_WEIGHT_DROP
    phi, q = phi[keep], q[keep]
    states = [PureState(phi[b] / math.sqrt(q[b])) for b in range(q.size)]
    return Decomposition(weights=q / q.sum(), states=states)


def sample_random_decomposition(
    seed_ensemble: Decomposition, m_out: int, stream: RandomStream
) -> Decomposition:
    """Draw a random size-m_out re-decomposition of the same density matrix.

    The mixing matrix is a Haar random isometry (first ``size`` columns of
    a Haar unitary of dimension m_out), sampled by phase-corrected QR.
    Requires ``m_out >= seed_ensemble.size``.
    """
    if m_out < seed_ensemble.size:
        raise InvalidArgumentError(
            f"m_out must be >= ensemble size {seed_ensemble.size}, got {m_out}"
        )
    w = positive_qr(ginibre(stream.generator, m_out, seed_ensemble.size))
    return _mix_ensemble(seed_ensemble, w)
