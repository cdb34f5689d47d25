"""Witness construction, product-state optimization, and verification.

A witness here is one of two affine forms in a fixed Hermitian state
sigma: `c*I - sigma` (dual form) or `sigma - c*I` (primal form). The
admissible offsets c form an interval whose closed side is an extremal
product-state expectation of sigma and whose open side is a spectral
bound:

    dual:   max_mu <mu|sigma|mu>  <=  c  <  lambda_max(sigma)
    primal: lambda_min(sigma)  <  c  <=  min_mu <mu|sigma|mu>

with mu ranging over unit product states. The extremal expectations are
computed by see-saw coordinate ascent: with all factors but one fixed,
the optimal remaining factor is an extremal eigenvector of the
contracted operator on that party, so each step solves a small
eigenproblem and the objective is monotone. See-saw certifies only one
side (a lower bound for the max, an upper bound for the min); interval
checks therefore widen the closed side by INTERVAL_PAD and use the
exact spectral bound for the open side.

All randomness is driven by explicit integer seeds; identical inputs
and seeds reproduce results bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import (
    COutOfInterval,
    DimensionMismatch,
    NotOrthonormal,
    ParamOutOfRange,
)
from .linalg import ComplexMatrix, ComplexVector, _canonical_eig
from .qstate import DensityMatrix, _cached_eig

SEESAW_TOL = 1e-12
SEESAW_MAX_ITERS = 500
DEFAULT_RESTARTS = 32
INTERVAL_PAD = 1e-8
TOL_POS = 1e-8
TOL_NEG = 1e-10
CES_GAP = 1e-6


class WitnessForm(str, Enum):
    C_MINUS_SIGMA = "c_minus_sigma"
    SIGMA_MINUS_C = "sigma_minus_c"


@dataclass(frozen=True, eq=False)
class ProductState:
    """One unit vector per party."""

    factors: tuple[ComplexVector, ...]

    def __post_init__(self) -> None:
        factors = tuple(self.factors)
        if not factors:
            raise ParamOutOfRange("product state needs at least one factor")
        for f in factors:
            if len(f.dims) != 1:
                raise ParamOutOfRange("each factor must live on a single party")
            if abs(f.norm() - 1.0) > 1e-12:
                raise ParamOutOfRange(f"factor norm {f.norm()!r} is not 1")
        object.__setattr__(self, "factors", factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dims[0] for f in self.factors)

    def to_vector(self) -> ComplexVector:
        out = self.factors[0].vec
        for f in self.factors[1:]:
            out = np.kron(out, f.vec)
        return ComplexVector(self.dims, out)


@dataclass(frozen=True, eq=False)
class OptResult:
    """Outcome of a product-state optimization.

    `value` is the best expectation found and `extremizer` the product
    state achieving it (the argmax for the max variant, the argmin for
    the min variant). `converged` reports whether every restart
    stabilized within the iteration cap.
    """

    value: float
    extremizer: ProductState
    restarts_used: int
    converged: bool


@dataclass(frozen=True, eq=False)
class Witness:
    """An affine witness candidate; interval checking happens in
    make_witness, so bare construction never optimizes."""

    form: WitnessForm
    c: float
    sigma: DensityMatrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "form", WitnessForm(self.form))
        c = float(self.c)
        if not np.isfinite(c):
            raise ParamOutOfRange("witness offset c must be finite")
        object.__setattr__(self, "c", c)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.sigma.dims

    def matrix(self) -> ComplexMatrix:
        eye = np.eye(self.sigma.dim)
        if self.form is WitnessForm.C_MINUS_SIGMA:
            return ComplexMatrix(self.dims, self.c * eye - self.sigma.mat.mat)
        return ComplexMatrix(self.dims, self.sigma.mat.mat - self.c * eye)


@dataclass(frozen=True, eq=False)
class WitnessReport:
    """Verification summary.

    `min_product_expectation` is an upper bound on the true product
    minimum when produced by see-saw (exhaustive grid reports are
    grid-accurate instead); `witnessing_margin` is the negated smallest
    eigenvalue of the witness matrix. `certificate_state` is the
    product state achieving the reported minimum.
    """

    min_product_expectation: float
    witnessing_margin: float
    is_witness: bool
    certificate_state: ProductState


_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _expectation(mt: np.ndarray, factors: Sequence[np.ndarray]) -> float:
    n = len(factors)
    rows = _LETTERS[:n]
    cols = _LETTERS[n : 2 * n]
    sub = [rows + cols]
    ops: list[np.ndarray] = [mt]
    for k, f in enumerate(factors):
        sub.append(rows[k])
        ops.append(f.conj())
        sub.append(cols[k])
        ops.append(f)
    out = np.einsum(",".join(sub) + "->", *ops)
    return float(out.real)


def _contract_except(mt: np.ndarray, factors: Sequence[np.ndarray], k: int) -> np.ndarray:
    n = len(factors)
    rows = _LETTERS[:n]
    cols = _LETTERS[n : 2 * n]
    sub = [rows + cols]
    ops: list[np.ndarray] = [mt]
    for j, f in enumerate(factors):
        if j == k:
            continue
        sub.append(rows[j])
        ops.append(f.conj())
        sub.append(cols[j])
        ops.append(f)
    out = np.einsum(",".join(sub) + "->" + rows[k] + cols[k], *ops)
    return 0.5 * (out + out.conj().T)


def _seesaw_run(
    mt: np.ndarray,
    dims: tuple[int, ...],
    start: list[np.ndarray],
    mode: str,
    max_iters: int = SEESAW_MAX_ITERS,
    tol: float = SEESAW_TOL,
) -> tuple[float, list[np.ndarray], bool, list[float]]:
    """One coordinate-ascent run. Returns (value, factors, converged,
    per-update objective trajectory)."""
    factors = [f.copy() for f in start]
    pick = -1 if mode == "max" else 0
    value = _expectation(mt, factors)
    traj = [value]
    converged = False
    for _ in range(max_iters):
        prev = value
        for k in range(len(dims)):
            b = _contract_except(mt, factors, k)
            vals, vecs = _canonical_eig(b)
            factors[k] = vecs[:, pick].copy()
            value = float(vals[pick])
            traj.append(value)
        if abs(value - prev) < tol:
            converged = True
            break
    return value, factors, converged, traj


def _random_product(rng: np.random.Generator, dims: tuple[int, ...]) -> list[np.ndarray]:
    out = []
    for d in dims:
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        out.append(v / np.linalg.norm(v))
    return out


def _optimize(
    m: ComplexMatrix, mode: str, restarts: int, seed: int
) -> OptResult:
    m.require_hermitian()
    restarts = int(restarts)
    if restarts < 1:
        raise ParamOutOfRange("restarts must be >= 1")
    seed = int(seed)
    if seed < 0:
        raise ParamOutOfRange("seed must be nonnegative")
    dims = m.dims
    mt = m.mat.reshape(dims + dims)
    best_value = -np.inf if mode == "max" else np.inf
    best_factors: list[np.ndarray] | None = None
    all_converged = True
    for r in range(restarts):
        rng = np.random.default_rng(np.random.SeedSequence([seed, r]))
        start = _random_product(rng, dims)
        value, factors, converged, _ = _seesaw_run(mt, dims, start, mode)
        all_converged = all_converged and converged
        better = value > best_value if mode == "max" else value < best_value
        if best_factors is None or better:
            best_value = value
            best_factors = factors
    assert best_factors is not None
    state = ProductState(
        tuple(ComplexVector((d,), f) for d, f in zip(dims, best_factors))
    )
    final = _expectation(mt, best_factors)
    return OptResult(final, state, restarts, all_converged)


def max_product_expectation(
    m: ComplexMatrix, restarts: int = DEFAULT_RESTARTS, seed: int = 0
) -> OptResult:
    """Best found sup over unit product states of <mu|m|mu>.

    See-saw from `restarts` seeded random starts; the result is a
    certified lower bound on the true supremum.
    """
    return _optimize(m, "max", restarts, seed)


def min_product_expectation(
    m: ComplexMatrix, restarts: int = DEFAULT_RESTARTS, seed: int = 0
) -> OptResult:
    """Best found inf over unit product states; an upper bound on the
    true infimum."""
    return _optimize(m, "min", restarts, seed)


def product_expectation(m: ComplexMatrix, state: ProductState) -> float:
    """<mu|m|mu> for an explicit product state."""
    if m.dims != state.dims:
        raise DimensionMismatch(f"dims {m.dims} vs {state.dims}")
    mt = m.mat.reshape(m.dims + m.dims)
    return _expectation(mt, [f.vec for f in state.factors])


def make_witness(
    form: WitnessForm | str,
    sigma: DensityMatrix,
    c: float,
    check: str = "strict",
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> Witness:
    """Build a witness, optionally enforcing the admissible c-interval.

    With check="strict" the closed interval side is the optimized
    extremal product expectation widened by INTERVAL_PAD (see-saw is
    one-sided) and the open side is the exact spectral eigenvalue;
    violations raise COutOfInterval, which signals that the requested
    operator is not a witness. check="none" skips validation, for
    callers with an external guarantee.
    """
    form = WitnessForm(form)
    if check not in ("strict", "none"):
        raise ParamOutOfRange(f"unknown check mode {check!r}")
    w = Witness(form, c, sigma)
    if check == "none":
        return w
    vals, _ = _cached_eig(sigma)
    lam0 = float(vals[0])
    lam_max = float(vals[-1])
    if form is WitnessForm.C_MINUS_SIGMA:
        bound = max_product_expectation(sigma.mat, restarts, seed).value
        if not (bound - INTERVAL_PAD <= w.c < lam_max):
            raise COutOfInterval(
                f"c={w.c!r} outside [{bound!r} - {INTERVAL_PAD}, {lam_max!r}): "
                "no witness of this form exists at this offset"
            )
    else:
        bound = min_product_expectation(sigma.mat, restarts, seed).value
        if not (lam0 < w.c <= bound + INTERVAL_PAD):
            raise COutOfInterval(
                f"c={w.c!r} outside ({lam0!r}, {bound!r} + {INTERVAL_PAD}]: "
                "no witness of this form exists at this offset"
            )
    return w


def evaluate(w: Witness, rho: DensityMatrix) -> float:
    """tr(W rho); real up to a <=1e-10 imaginary residue by Hermiticity."""
    if w.dims != rho.dims:
        raise DimensionMismatch(f"witness dims {w.dims} vs state dims {rho.dims}")
    val = np.einsum("ij,ji->", w.matrix().mat, rho.mat.mat)
    return float(val.real)


def verify_witness(
    w: Witness, restarts: int = DEFAULT_RESTARTS, seed: int = 0
) -> WitnessReport:
    """See-saw verification: nonnegative on product states (within
    TOL_POS) and at least one negative eigenvalue (margin above TOL_NEG)."""
    wm = w.matrix()
    opt = min_product_expectation(wm, restarts, seed)
    vals, _ = _canonical_eig(wm.mat)
    margin = -float(vals[0])
    is_w = (opt.value >= -TOL_POS) and (margin > TOL_NEG)
    return WitnessReport(opt.value, margin, is_w, opt.extremizer)


def is_ces(
    basis: Sequence[ComplexVector],
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> tuple[bool, OptResult]:
    """Heuristic completely-entangled-subspace check for span(basis).

    Maximizes the product overlap with the subspace projector. Because
    see-saw lower-bounds the max, True is heuristic while False
    (overlap reaching 1) is conclusive.
    """
    if not basis:
        raise ParamOutOfRange("basis must be non-empty")
    dims = basis[0].dims
    for b in basis:
        if b.dims != dims:
            raise DimensionMismatch("basis vectors live on different dims")
    cols = np.column_stack([b.vec for b in basis])
    gram = cols.conj().T @ cols
    defect = np.abs(gram - np.eye(len(basis))).max()
    if defect > 1e-10:
        raise NotOrthonormal(f"basis gram deviates from identity by {defect:.3e}")
    proj = ComplexMatrix(dims, cols @ cols.conj().T)
    opt = max_product_expectation(proj, restarts, seed)
    return opt.value < 1.0 - CES_GAP, opt
