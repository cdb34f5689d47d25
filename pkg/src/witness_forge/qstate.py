"""Validated quantum-state types and purification constructors.

Density matrices are checked for Hermiticity, positive semidefiniteness
and (when flagged normalized) unit trace at construction time; the
eigendecomposition computed for the PSD check is cached so `spectral`
is free afterwards. Purifications follow the canonical spectral order
of `linalg.hermitian_eig`, pairing the i-th nonzero eigenvector with
ancilla basis vector |i>.

Partial purifications are deliberately kept unnormalized: their squared
norm is the sum of the selected eigenvalues, which downstream witness
extensions rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParamOutOfRange, SelectionOutOfRange
from .linalg import (
    ComplexMatrix,
    ComplexVector,
    SpectralDecomposition,
    _canonical_eig,
)

RANK_TOL = 1e-10
MAX_EIG_TIE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A PSD Hermitian operator; trace 1 when `normalized` is set."""

    mat: ComplexMatrix
    normalized: bool = True

    def __post_init__(self) -> None:
        self.mat.require_hermitian()
        tr = self.mat.trace().real
        if self.normalized:
            if abs(tr - 1.0) > 1e-10:
                raise ParamOutOfRange(
                    f"normalized density matrix has trace {tr!r}, expected 1"
                )
        elif tr <= 0.0:
            raise ParamOutOfRange(f"density matrix trace {tr!r} must be positive")
        vals, vecs = _canonical_eig(self.mat.mat)
        if vals[0] < -1e-10:
            raise ParamOutOfRange(
                f"density matrix has eigenvalue {vals[0]:.3e} below -1e-10"
            )
        object.__setattr__(self, "_eig", (vals, vecs))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.mat.dims

    @property
    def dim(self) -> int:
        return self.mat.dim


@dataclass(frozen=True, eq=False)
class PureState:
    """A state vector; unit norm when `normalized` is set.

    Partial purifications carry normalized=False and a squared norm
    equal to the sum of their selected eigenvalues.
    """

    vec: ComplexVector
    normalized: bool = True

    def __post_init__(self) -> None:
        nrm = self.vec.norm()
        if self.normalized:
            if abs(nrm - 1.0) > 1e-10:
                raise ParamOutOfRange(
                    f"normalized pure state has norm {nrm!r}, expected 1"
                )
        elif nrm <= 0.0:
            raise ParamOutOfRange("pure state must be nonzero")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.vec.dims

    @property
    def dim(self) -> int:
        return self.vec.dim


@dataclass(frozen=True, eq=False)
class PurificationSelection:
    """Which eigenpairs go to which ancilla basis slots.

    `pairs` holds (eigen-index, ancilla-slot) entries; eigen-indices
    refer to the ascending canonical spectral order. Stored sorted by
    eigen-index. Slots must be distinct and below `ancilla_dim`.
    """

    pairs: tuple[tuple[int, int], ...]
    ancilla_dim: int

    def __post_init__(self) -> None:
        if int(self.ancilla_dim) < 1:
            raise SelectionOutOfRange("ancilla dimension must be >= 1")
        object.__setattr__(self, "ancilla_dim", int(self.ancilla_dim))
        try:
            pairs = tuple((int(i), int(s)) for i, s in self.pairs)
        except (TypeError, ValueError) as exc:
            raise SelectionOutOfRange(f"malformed selection pairs: {exc}") from exc
        if not pairs:
            raise SelectionOutOfRange("selection must contain at least one pair")
        if len(pairs) > self.ancilla_dim:
            raise SelectionOutOfRange(
                f"{len(pairs)} pairs exceed ancilla dimension {self.ancilla_dim}"
            )
        eig_indices = [i for i, _ in pairs]
        slots = [s for _, s in pairs]
        if len(set(eig_indices)) != len(eig_indices):
            raise SelectionOutOfRange("eigen-indices must be distinct")
        if len(set(slots)) != len(slots):
            raise SelectionOutOfRange("ancilla slots must be distinct")
        if any(i < 0 for i in eig_indices):
            raise SelectionOutOfRange("eigen-indices must be nonnegative")
        if any(not 0 <= s < self.ancilla_dim for s in slots):
            raise SelectionOutOfRange(
                f"ancilla slots must lie in 0..{self.ancilla_dim - 1}"
            )
        object.__setattr__(self, "pairs", tuple(sorted(pairs)))


def _cached_eig(d: DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    return d._eig  # populated in __post_init__


def spectral(d: DensityMatrix) -> SpectralDecomposition:
    """Spectral decomposition in the canonical order, reusing the
    validation eigendecomposition."""
    vals, vecs = _cached_eig(d)
    vectors = tuple(
        ComplexVector(d.dims, vecs[:, k].copy()) for k in range(vecs.shape[1])
    )
    return SpectralDecomposition(tuple(float(v) for v in vals), vectors, d.dims)


def _nonzero_indices(vals: np.ndarray) -> list[int]:
    return [i for i in range(vals.size) if vals[i] > RANK_TOL]


def purify(d: DensityMatrix, ancilla_dim: int | None = None) -> PureState:
    """Minimal purification: |psi> = sum_i sqrt(p_i) |e_i>|i>.

    The ancilla dimension defaults to rank(d); a larger explicit value
    pads with zero amplitudes. Eigenpairs enter in canonical ascending
    order, the i-th nonzero one paired with ancilla slot i.
    """
    if not d.normalized:
        raise ParamOutOfRange("can only purify a normalized density matrix")
    vals, vecs = _cached_eig(d)
    nz = _nonzero_indices(vals)
    rank = len(nz)
    anc = rank if ancilla_dim is None else int(ancilla_dim)
    if anc < rank:
        raise ParamOutOfRange(f"ancilla dimension {anc} below rank {rank}")
    out = np.zeros(d.dim * anc, dtype=np.complex128)
    for slot, idx in enumerate(nz):
        unit = np.zeros(anc, dtype=np.complex128)
        unit[slot] = 1.0
        out += np.sqrt(vals[idx]) * np.kron(vecs[:, idx], unit)
    return PureState(ComplexVector(d.dims + (anc,), out), normalized=True)


def partial_purify(d: DensityMatrix, sel: PurificationSelection) -> PureState:
    """Unnormalized |phi> = sum over selected pairs of sqrt(lambda_i) |e_i>|slot_i>.

    Squared norm equals the sum of the selected eigenvalues. Selecting
    an index outside the spectrum or one whose eigenvalue is numerically
    zero raises SelectionOutOfRange.
    """
    vals, vecs = _cached_eig(d)
    out = np.zeros(d.dim * sel.ancilla_dim, dtype=np.complex128)
    for idx, slot in sel.pairs:
        if idx >= vals.size:
            raise SelectionOutOfRange(
                f"eigen-index {idx} outside spectrum of size {vals.size}"
            )
        if vals[idx] <= RANK_TOL:
            raise SelectionOutOfRange(
                f"eigen-index {idx} selects a zero eigenvalue ({vals[idx]:.3e})"
            )
        unit = np.zeros(sel.ancilla_dim, dtype=np.complex128)
        unit[slot] = 1.0
        out += np.sqrt(vals[idx]) * np.kron(vecs[:, idx], unit)
    return PureState(
        ComplexVector(d.dims + (sel.ancilla_dim,), out), normalized=False
    )


def has_max_eigenvalue(sel: PurificationSelection, sd: SpectralDecomposition) -> bool:
    """True iff some selected eigen-index attains the top eigenvalue
    (within 1e-12, so every member of a degenerate top eigenspace counts)."""
    top = sd.eigenvalues[-1]
    for idx, _ in sel.pairs:
        if idx >= len(sd.eigenvalues):
            raise SelectionOutOfRange(
                f"eigen-index {idx} outside spectrum of size {len(sd.eigenvalues)}"
            )
        if sd.eigenvalues[idx] >= top - MAX_EIG_TIE_TOL:
            return True
    return False


def isotropic(q: float) -> DensityMatrix:
    """Two-qubit family q|psi+><psi+| + (1-q) I/4.

    Diagonal ((1+q)/4, (1-q)/4, (1-q)/4, (1+q)/4) with corner couplings
    q/2. Separable below q = 1/3, entangled above.
    """
    q = float(q)
    if not 0.0 <= q <= 1.0:
        raise ParamOutOfRange(f"mixing parameter {q!r} outside [0, 1]")
    hi = (1.0 + q) / 4.0
    lo = (1.0 - q) / 4.0
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = hi
    m[1, 1] = lo
    m[2, 2] = lo
    m[3, 3] = hi
    m[0, 3] = q / 2.0
    m[3, 0] = q / 2.0
    return DensityMatrix(ComplexMatrix((2, 2), m), normalized=True)


def projector(p: PureState) -> DensityMatrix:
    """|p><p| as a density matrix; inherits the normalized flag."""
    outer = np.outer(p.vec.vec, p.vec.vec.conj())
    return DensityMatrix(ComplexMatrix(p.dims, outer), normalized=p.normalized)
