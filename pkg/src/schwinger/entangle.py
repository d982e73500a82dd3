"""Schmidt decomposition of two-mode states and the spin-half mapping onto them."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import FockKet, TwoModeState

RANK_TOL = 1e-12
NORM_TOL = 1e-10


class NotNormalizedError(ValueError):
    def __init__(self, norm2: float):
        self.norm2 = norm2
        super().__init__(f"state is not normalized: norm^2 = {norm2!r}")


@dataclass
class SchmidtDecomposition:
    """coefficients descending; left_vectors[k] lives on mode a, right_vectors[k] on mode b."""

    coefficients: np.ndarray
    left_vectors: list[np.ndarray]
    right_vectors: list[np.ndarray]

    @property
    def rank(self) -> int:
        return int(np.sum(self.coefficients > RANK_TOL))

    def reconstruct(self) -> TwoModeState:
        amps = {}
        for lam, u, v in zip(self.coefficients, self.left_vectors, self.right_vectors):
            block = lam * np.outer(u, v)
            for (m, n), x in np.ndenumerate(block):
                amps[(m, n)] = amps.get((m, n), 0j) + x
        return TwoModeState(amps)

    def to_dict(self) -> dict:
        return {"rank": self.rank, "coefficients": [float(x) for x in self.coefficients]}


def coefficient_matrix(state: TwoModeState) -> np.ndarray:
    if state.is_zero():
        raise ValueError("the zero state has no Schmidt decomposition")
    max_m, max_n = state.max_occupations()
    M = np.zeros((max_m + 1, max_n + 1), dtype=complex)
    for ket, amp in state.items():
        M[ket.m, ket.n] = amp
    return M


def schmidt(state: TwoModeState) -> SchmidtDecomposition:
    """SVD of the amplitude matrix over the finite support of ``state``."""
    M = coefficient_matrix(state)
    U, s, Vh = np.linalg.svd(M)
    pairs = []
    for k, lam in enumerate(s):
        u, v = U[:, k], Vh[k, :]
        nz = np.flatnonzero(np.abs(u) > RANK_TOL)
        if nz.size:
            phase = abs(u[nz[0]]) / u[nz[0]]
            u, v = u * phase, v / phase
        pairs.append((float(lam), u, v))
    # ties broken by the lexicographic order of the left vectors
    pairs.sort(key=lambda p: (-round(p[0], 12),) + tuple(np.round(-p[1].real, 12)) + tuple(np.round(-p[1].imag, 12)))
    return SchmidtDecomposition(
        coefficients=np.array([p[0] for p in pairs]),
        left_vectors=[p[1] for p in pairs],
        right_vectors=[p[2] for p in pairs],
    )


def entanglement_entropy(state: TwoModeState) -> float:
    """Von Neumann entropy of either reduced state, natural log."""
    norm2 = state.norm2()
    if abs(norm2 - 1.0) > NORM_TOL:
        raise NotNormalizedError(norm2)
    weights = schmidt(state).coefficients ** 2
    return float(-math.fsum(p * math.log(p) for p in weights if p > 0))


def map_spin_state(rep: str, amplitudes) -> TwoModeState:
    """Two-mode image of a spin-half state given in the z or x basis.

    ``z``: A|z+> + B|z-> -> A|1,0> + B|0,1>.
    ``x``: C|x+> + D|x-> -> ((C + D)|1,0> + (C - D)|0,1>)/sqrt(2).
    """
    first, second = (complex(x) for x in amplitudes)
    norm2 = abs(first) ** 2 + abs(second) ** 2
    if abs(norm2 - 1.0) > NORM_TOL:
        raise NotNormalizedError(norm2)
    up, down = FockKet(1, 0), FockKet(0, 1)
    if rep == "z":
        return TwoModeState([(up, first), (down, second)])
    if rep == "x":
        r = 1 / math.sqrt(2)
        return TwoModeState([(up, r * (first + second)), (down, r * (first - second))])
    raise ValueError("rep must be 'z' or 'x'")
