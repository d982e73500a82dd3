"""Implicit-shift QR for real symmetric tridiagonal matrices.

Sector matrices have dimension N + 1 <= 65, so the rotations are applied to
a dense copy of the matrix; the bulge-chasing sequence is the textbook one
(Wilkinson shift, Givens rotations, deflation of negligible off-diagonals).
"""

from __future__ import annotations

import math

import numpy as np

EPS = np.finfo(float).eps


class ConvergenceError(RuntimeError):
    pass


def givens(a: float, b: float) -> tuple[float, float]:
    """(c, s) such that [[c, -s], [s, c]] @ [a, b] = [r, 0]."""
    if b == 0.0:
        return 1.0, 0.0
    if abs(b) > abs(a):
        tau = -a / b
        s = 1.0 / math.sqrt(1.0 + tau * tau)
        return s * tau, s
    tau = -b / a
    c = 1.0 / math.sqrt(1.0 + tau * tau)
    return c, c * tau


def _rotate(T: np.ndarray, Q: np.ndarray, k: int, c: float, s: float) -> None:
    rows = T[[k, k + 1], :]
    T[k, :] = c * rows[0] - s * rows[1]
    T[k + 1, :] = s * rows[0] + c * rows[1]
    cols = T[:, [k, k + 1]]
    T[:, k] = c * cols[:, 0] - s * cols[:, 1]
    T[:, k + 1] = s * cols[:, 0] + c * cols[:, 1]
    qcols = Q[:, [k, k + 1]]
    Q[:, k] = c * qcols[:, 0] - s * qcols[:, 1]
    Q[:, k + 1] = s * qcols[:, 0] + c * qcols[:, 1]


def _qr_sweep(T: np.ndarray, Q: np.ndarray, lo: int, hi: int) -> None:
    delta = 0.5 * (T[hi - 1, hi - 1] - T[hi, hi])
    b = T[hi, hi - 1]
    mu = T[hi, hi] - b * b / (delta + math.copysign(math.hypot(delta, b), delta))
    x = T[lo, lo] - mu
    z = T[lo + 1, lo]
    for k in range(lo, hi):
        c, s = givens(x, z)
        _rotate(T, Q, k, c, s)
        if k < hi - 1:
            x = T[k + 1, k]
            z = T[k + 2, k]
    # after the last rotation anything outside the band is round-off
    idx = np.arange(T.shape[0])
    T[np.abs(idx[:, None] - idx[None, :]) > 1] = 0.0


def tridiagonal_eigh(diagonal, offdiagonal, max_sweeps: int | None = None):
    """Eigenvalues (unsorted) and orthonormal eigenvectors (columns).

    ``offdiagonal[i]`` couples entries i and i + 1.
    """
    d = np.asarray(diagonal, dtype=float)
    e = np.asarray(offdiagonal, dtype=float)
    n = d.size
    if e.size != max(n - 1, 0):
        raise ValueError("off-diagonal must have length len(diagonal) - 1")
    T = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    Q = np.eye(n)
    if n <= 1:
        return d.copy(), Q
    anorm = np.abs(T).sum(axis=0).max()
    if anorm == 0.0:
        return d.copy(), Q
    # work at unit scale so tiny or huge entries cannot under/overflow the shifts
    T /= anorm
    budget = max_sweeps if max_sweeps is not None else 30 * n
    sweeps = 0
    while True:
        for i in range(n - 1):
            off = abs(T[i + 1, i])
            if off <= EPS * (abs(T[i, i]) + abs(T[i + 1, i + 1])) or off <= EPS * 1e-3:
                T[i + 1, i] = T[i, i + 1] = 0.0
        hi = n - 1
        while hi > 0 and T[hi, hi - 1] == 0.0:
            hi -= 1
        if hi == 0:
            break
        lo = hi - 1
        while lo > 0 and T[lo, lo - 1] != 0.0:
            lo -= 1
        if sweeps >= budget:
            raise ConvergenceError(f"no convergence after {sweeps} sweeps")
        _qr_sweep(T, Q, lo, hi)
        sweeps += 1
    return np.diag(T) * anorm, Q


def fix_sign(vector: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rescale by a unit phase so the first non-negligible component is positive real."""
    v = np.asarray(vector)
    scale = max(np.abs(v).max(initial=0.0), 1.0)
    for x in v:
        if abs(x) > tol * scale:
            return v * (abs(x) / x)
    return v


def sorted_eigenpairs(values, vectors, degenerate_tol: float = 1e-10):
    """Ascending eigenpairs with deterministic vectors.

    Near-degenerate clusters are re-orthonormalized, sign-fixed and ordered
    lexicographically; every vector is sign-fixed.
    """
    values = np.asarray(values, dtype=float)
    vectors = np.asarray(vectors)
    order = np.argsort(values, kind="stable")
    values, vectors = values[order], vectors[:, order]
    pairs = []
    i = 0
    n = values.size
    while i < n:
        j = i + 1
        while j < n and values[j] - values[j - 1] <= degenerate_tol:
            j += 1
        block = vectors[:, i:j]
        if j - i > 1:
            block, _ = np.linalg.qr(block)
        cluster = [fix_sign(block[:, k]) for k in range(block.shape[1])]
        if len(cluster) > 1:
            cluster.sort(key=lambda v: tuple(np.round(np.real(v), 12)) + tuple(np.round(np.imag(v), 12)),
                         reverse=True)
        for k, v in enumerate(cluster):
            pairs.append((float(values[i + k]), v))
        i = j
    return pairs
