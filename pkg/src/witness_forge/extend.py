"""Offset-preserving witness extensions to more parties.

Every operation here maps a valid witness to a valid witness on an
enlarged party list while leaving the offset c untouched (except for
the explicit relaxed-offset variant of the partial purification). The
dual form `c*I - sigma` extends by purification, partial purification,
and tensoring with scaled mixed or pure states; the primal form
`sigma - c*I` survives only identity tails, so the other operations
reject it with FormNotSupported.

Extension projectors are materialized from the spectral data as
sum_ij sqrt(l_i l_j) |e_i a_i><e_j a_j| rather than as an outer product
of the amplitude vector: the two agree to one ulp, but the gram route
keeps entries exact when eigenvalues are exactly representable (for
example I/2, whose purified projector then has entries exactly 1/2).
"""

from __future__ import annotations

import math
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .errors import (
    COutOfInterval,
    CountTooLarge,
    CPrimeOutOfInterval,
    DimensionMismatch,
    FormNotSupported,
    MaxEigenvalueNotSelected,
    ParamOutOfRange,
    SelectionOutOfRange,
    UnnormalizedTail,
    ZeroMaxEigenvalue,
)
from .linalg import ComplexMatrix
from .qstate import (
    DensityMatrix,
    PureState,
    PurificationSelection,
    RANK_TOL,
    SpectralDecomposition,
    _cached_eig,
    has_max_eigenvalue,
    spectral,
)
from .witness import Witness, WitnessForm, evaluate

ENUMERATION_CAP = 64


def _require_dual_form(w: Witness, op: str) -> None:
    if w.form is not WitnessForm.C_MINUS_SIGMA:
        raise FormNotSupported(
            f"{op} applies only to the c*I - sigma form; "
            "the dual form does not survive this extension"
        )


def _wrap_density(dims: tuple[int, ...], arr: np.ndarray) -> DensityMatrix:
    m = ComplexMatrix(dims, arr)
    normalized = abs(m.trace().real - 1.0) <= 1e-10
    return DensityMatrix(m, normalized=normalized)


def _weighted_projector(
    vals: np.ndarray,
    vecs: np.ndarray,
    pairs: Sequence[tuple[int, int]],
    ancilla_dim: int,
) -> np.ndarray:
    cols = []
    lams = []
    for idx, slot in pairs:
        unit = np.zeros(ancilla_dim, dtype=np.complex128)
        unit[slot] = 1.0
        cols.append(np.kron(vecs[:, idx], unit))
        lams.append(vals[idx])
    wmat = np.column_stack(cols)
    gram = np.sqrt(np.outer(lams, lams))
    return (wmat @ gram) @ wmat.conj().T


def purify_extend(w: Witness) -> Witness:
    """Replace sigma by the projector onto its minimal purification.

    The new party has dimension rank(sigma) and c is unchanged; the
    smallest eigenvalue of the extended witness is c - 1.
    """
    _require_dual_form(w, "purify_extend")
    if not w.sigma.normalized:
        raise ParamOutOfRange("can only purify a normalized sigma")
    vals, vecs = _cached_eig(w.sigma)
    nz = [i for i in range(vals.size) if vals[i] > RANK_TOL]
    pairs = [(idx, slot) for slot, idx in enumerate(nz)]
    proj = _weighted_projector(vals, vecs, pairs, len(nz))
    sigma2 = _wrap_density(w.sigma.dims + (len(nz),), proj)
    return Witness(w.form, w.c, sigma2)


def pure_tails_extend(w: Witness, tails: Sequence[PureState]) -> Witness:
    """Tensor sigma with projectors onto normalized pure tails.

    A pure tail has top eigenvalue 1, so this is the mixed-tensor
    extension without any rescaling.
    """
    _require_dual_form(w, "pure_tails_extend")
    arr = w.sigma.mat.mat
    dims = w.sigma.dims
    for t in tails:
        if not t.normalized:
            raise UnnormalizedTail("pure tails must be normalized")
        arr = np.kron(arr, np.outer(t.vec.vec, t.vec.vec.conj()))
        dims = dims + t.dims
    if not tails:
        return w
    return Witness(w.form, w.c, _wrap_density(dims, arr))


def purify_extend_n(w: Witness, pure_tails: Sequence[PureState]) -> Witness:
    """Purify sigma, then tensor with pure tails; with no tails this is
    exactly purify_extend."""
    out = purify_extend(w)
    return pure_tails_extend(out, pure_tails)


def partial_purify_extend(
    w: Witness,
    sel: PurificationSelection,
    c_prime: float | None = None,
) -> Witness:
    """Replace sigma by an unnormalized partial-purification projector.

    The selection must include a top eigenpair, otherwise the extended
    operator stops being a witness (MaxEigenvalueNotSelected). The
    optional relaxed offset must satisfy c <= c_prime < sum of selected
    eigenvalues (the squared norm of the partial purification).
    """
    _require_dual_form(w, "partial_purify_extend")
    sd = spectral(w.sigma)
    vals, vecs = _cached_eig(w.sigma)
    for idx, _ in sel.pairs:
        if idx >= vals.size:
            raise SelectionOutOfRange(
                f"eigen-index {idx} outside spectrum of size {vals.size}"
            )
        if vals[idx] <= RANK_TOL:
            raise SelectionOutOfRange(
                f"eigen-index {idx} selects a zero eigenvalue ({vals[idx]:.3e})"
            )
    if not has_max_eigenvalue(sel, sd):
        raise MaxEigenvalueNotSelected(
            "selection omits the top eigenvalue, so the extended operator "
            "would go negative on a product state"
        )
    total = float(sum(vals[idx] for idx, _ in sel.pairs))
    c_out = w.c
    if c_prime is not None:
        c_out = float(c_prime)
        if not (w.c <= c_out < total):
            raise CPrimeOutOfInterval(
                f"c_prime={c_out!r} outside [{w.c!r}, {total!r})"
            )
    proj = _weighted_projector(vals, vecs, sel.pairs, sel.ancilla_dim)
    sigma2 = _wrap_density(w.sigma.dims + (sel.ancilla_dim,), proj)
    return Witness(w.form, c_out, sigma2)


def count_partial_purifications(rank: int, d3: int) -> int:
    """Closed-form count of distinct partial purifications with the top
    eigenpair selected, over an ancilla of dimension d3:

        sum_{i=1}^{min(d3, rank)} C(rank-1, i-1) * d3!/(d3-i)!
    """
    rank = int(rank)
    d3 = int(d3)
    if rank < 1 or d3 < 1:
        raise ParamOutOfRange("rank and ancilla dimension must be >= 1")
    total = 0
    for i in range(1, min(d3, rank) + 1):
        total += math.comb(rank - 1, i - 1) * math.perm(d3, i)
    return total


def enumerate_partial_purifications(
    sd: SpectralDecomposition, d3: int
) -> list[PurificationSelection]:
    """All selections over a d3-dimensional ancilla that include the top
    eigen-index (for a degenerate top eigenvalue: its highest-index
    representative, so the count formula stays exact), lexicographically
    sorted by their pair lists."""
    d3 = int(d3)
    if d3 < 1:
        raise ParamOutOfRange("ancilla dimension must be >= 1")
    nz = [i for i, v in enumerate(sd.eigenvalues) if v > RANK_TOL]
    rank = len(nz)
    if rank == 0:
        return []
    if rank * d3 > ENUMERATION_CAP:
        raise CountTooLarge(
            f"rank*d3 = {rank * d3} exceeds the enumeration cap "
            f"{ENUMERATION_CAP}; the closed-form count is "
            f"{count_partial_purifications(rank, d3)}"
        )
    top = nz[-1]
    rest = nz[:-1]
    out: list[PurificationSelection] = []
    for size in range(1, min(d3, rank) + 1):
        for combo in combinations(rest, size - 1):
            eigs = sorted(combo + (top,))
            for slots in permutations(range(d3), size):
                pairs = tuple(zip(eigs, slots))
                out.append(PurificationSelection(pairs, d3))
    out.sort(key=lambda s: s.pairs)
    return out


def mixed_tensor_extend(w: Witness, tails: Sequence[DensityMatrix]) -> Witness:
    """Tensor sigma with each tail scaled by its top eigenvalue,
    sigma (x) tail_i / lambda_max(tail_i), keeping c valid unchanged."""
    _require_dual_form(w, "mixed_tensor_extend")
    arr = w.sigma.mat.mat
    dims = w.sigma.dims
    for t in tails:
        if not t.normalized:
            raise UnnormalizedTail("tensor tails must be normalized")
        tvals, _ = _cached_eig(t)
        lam_max = float(tvals[-1])
        if lam_max <= 1e-12:
            raise ZeroMaxEigenvalue("tail state has vanishing top eigenvalue")
        arr = np.kron(arr, t.mat.mat / lam_max)
        dims = dims + t.dims
    if not tails:
        return w
    return Witness(w.form, w.c, _wrap_density(dims, arr))


def identity_extend(w: Witness, tail_dims: Sequence[int]) -> Witness:
    """Tensor sigma with identity factors; valid for both forms.

    The spectrum of sigma (x) I is the spectrum of sigma with higher
    multiplicity, so the open interval side is revalidated against the
    extended spectrum as a numerics guard.
    """
    dims = w.sigma.dims
    arr = w.sigma.mat.mat
    for d in tail_dims:
        d = int(d)
        if d < 1:
            raise ParamOutOfRange(f"tail dimension {d} must be >= 1")
        arr = np.kron(arr, np.eye(d))
        dims = dims + (d,)
    if not tail_dims:
        return w
    sigma2 = _wrap_density(dims, arr)
    vals, _ = _cached_eig(sigma2)
    if w.form is WitnessForm.C_MINUS_SIGMA:
        if not w.c < float(vals[-1]):
            raise COutOfInterval(
                f"c={w.c!r} not below the extended top eigenvalue {vals[-1]!r}"
            )
    else:
        if not w.c > float(vals[0]):
            raise COutOfInterval(
                f"c={w.c!r} not above the extended bottom eigenvalue {vals[0]!r}"
            )
    return Witness(w.form, w.c, sigma2)


def detect_product_extension(
    w_ext: Witness, rho12: DensityMatrix, tails: Sequence[DensityMatrix]
) -> float:
    """Expectation of the extended witness on rho12 (x) tails.

    For identity-tail witnesses with normalized tails this equals the
    base witness expectation on rho12, so a state detected before
    extension stays detected after it.
    """
    arr = rho12.mat.mat
    dims = rho12.dims
    for t in tails:
        arr = np.kron(arr, t.mat.mat)
        dims = dims + t.dims
    if dims != w_ext.dims:
        raise DimensionMismatch(
            f"extended witness dims {w_ext.dims} vs product state dims {dims}"
        )
    return evaluate(w_ext, _wrap_density(dims, arr))
