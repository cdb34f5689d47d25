"""From a negative partial transpose to a full-rank witness family.

Take the two-qubit operator W12 = |phi><phi|^G / 4, the partial
transpose of a Bell-state projector scaled by 1/4. It decomposes as
W12 = sigma12 - (3/16) I where sigma12 is a genuine full-rank state, so
it is a primal-form witness with offset 3/16, and its most negative
eigenvalue -1/8 is attained on the entangled state it detects.
Tensoring sigma12 with identity factors then yields witnesses on three
parties of any tail dimension, still full rank on the original pair.

Run:  python3 demos/negative_partial_transpose.py
"""

from __future__ import annotations

import numpy as np

from witness_forge import (
    ComplexMatrix,
    DensityMatrix,
    WitnessForm,
    detect_product_extension,
    evaluate,
    hermitian_eig,
    identity_extend,
    make_witness,
    min_product_expectation,
    partial_transpose,
    spectral,
    verify_witness,
)


def main() -> None:
    # Bell projector, partially transposed on party 2, scaled by 1/4
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = np.sqrt(0.5)
    proj = ComplexMatrix((2, 2), np.outer(v, v.conj()))
    w_raw = partial_transpose(proj, 2).mat / 4

    # the same operator as state-minus-offset
    arr = np.diag([5 / 16, 3 / 16, 3 / 16, 5 / 16]).astype(complex)
    arr[1, 2] = arr[2, 1] = 1 / 8
    sigma12 = DensityMatrix(ComplexMatrix((2, 2), arr))
    w12 = make_witness(WitnessForm.SIGMA_MINUS_C, sigma12, 3 / 16)
    gap = float(np.abs(w12.matrix().mat - w_raw).max())
    print(f"|phi><phi|^G/4 equals sigma12 - (3/16) I entrywise to {gap:.1e}")

    sd = spectral(sigma12)
    print(f"sigma12 spectrum: {[round(x, 6) for x in sd.eigenvalues]} (full rank)")
    lo = min_product_expectation(sigma12.mat, restarts=16, seed=0)
    print(f"smallest product expectation of sigma12: {lo.value:.6f} (= 3/16 = {3 / 16})")

    rep = verify_witness(w12, restarts=16, seed=0)
    print(
        f"verify W12: is_witness = {rep.is_witness}, "
        f"margin = {rep.witnessing_margin} (the -1/8 eigenvalue)"
    )
    bottom = hermitian_eig(sigma12.mat).eigenvectors[0]
    detected = DensityMatrix(
        ComplexMatrix((2, 2), np.outer(bottom.vec, bottom.vec.conj()))
    )
    print(f"tr(W12 on its bottom eigenstate) = {evaluate(w12, detected):+.6f}")
    print()

    for tail in ([4], [2]):
        we = identity_extend(w12, tail)
        rep = verify_witness(we, restarts=16, seed=0)
        lam = hermitian_eig(we.matrix()).eigenvalues[0]
        print(
            f"identity tail {tail}: dims {list(we.dims)}, "
            f"is_witness = {rep.is_witness}, lambda_min = {lam:+.4f}"
        )
        mixed_tail = DensityMatrix(ComplexMatrix((tail[0],), np.eye(tail[0]) / tail[0]))
        val = detect_product_extension(we, detected, [mixed_tail])
        print(f"  detects (bottom eigenstate) x (I/{tail[0]}): {val:+.6f}")


if __name__ == "__main__":
    main()
