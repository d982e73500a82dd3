"""Two-oscillator occupation-number basis and ladder-operator actions.

States are sparse maps from :class:`FockKet` to complex amplitude. Nothing
is truncated: ``a^+`` applied to any ket is computed exactly, so products of
ladder operators can be evaluated on arbitrary finite-support states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

LADDER_OPS = ("a", "a^+", "b", "b^+")
_ALIASES = {"a†": "a^+", "b†": "b^+", "ad": "a^+", "bd": "b^+"}


@dataclass(frozen=True, order=True)
class FockKet:
    """Product state |m, n> of oscillator a (m quanta) and oscillator b (n quanta)."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError(f"occupations must be non-negative, got ({self.m}, {self.n})")

    @property
    def total(self) -> int:
        return self.m + self.n

    def __repr__(self) -> str:
        return f"|{self.m},{self.n}>"


def _as_ket(key) -> FockKet:
    if isinstance(key, FockKet):
        return key
    m, n = key
    return FockKet(int(m), int(n))


class TwoModeState:
    """Finite complex superposition of two-mode Fock kets.

    Canonical form keeps only nonzero amplitudes; pruning is by exact zero so
    that round-off stays visible.
    """

    __slots__ = ("_amps",)

    def __init__(self, amplitudes: Mapping | Iterable = ()):
        amps: dict[FockKet, complex] = {}
        items = amplitudes.items() if isinstance(amplitudes, Mapping) else amplitudes
        for key, value in items:
            ket = _as_ket(key)
            total = amps.get(ket, 0j) + complex(value)
            if total == 0:
                amps.pop(ket, None)
            else:
                amps[ket] = total
        self._amps = amps

    @classmethod
    def ket(cls, m: int, n: int, amplitude: complex = 1.0) -> "TwoModeState":
        return cls({FockKet(m, n): amplitude})

    @classmethod
    def zero(cls) -> "TwoModeState":
        return cls()

    @property
    def amplitudes(self) -> dict[FockKet, complex]:
        return dict(self._amps)

    def __getitem__(self, key) -> complex:
        return self._amps.get(_as_ket(key), 0j)

    def __iter__(self) -> Iterator[FockKet]:
        return iter(sorted(self._amps))

    def __len__(self) -> int:
        return len(self._amps)

    def items(self):
        return sorted(self._amps.items())

    def is_zero(self) -> bool:
        return not self._amps

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwoModeState):
            return NotImplemented
        return self._amps == other._amps

    def __add__(self, other: "TwoModeState") -> "TwoModeState":
        return TwoModeState(list(self._amps.items()) + list(other._amps.items()))

    def __sub__(self, other: "TwoModeState") -> "TwoModeState":
        return self + (-1) * other

    def __mul__(self, scalar: complex) -> "TwoModeState":
        scalar = complex(scalar)
        return TwoModeState({k: v * scalar for k, v in self._amps.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "TwoModeState":
        return self * -1

    def norm2(self) -> float:
        return math.fsum(abs(v) ** 2 for v in self._amps.values())

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def normalized(self) -> "TwoModeState":
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero state")
        return self * (1.0 / nrm)

    def sectors(self) -> list[int]:
        """Total boson numbers present in the support, ascending."""
        return sorted({k.total for k in self._amps})

    def max_occupations(self) -> tuple[int, int]:
        if not self._amps:
            return (0, 0)
        return (max(k.m for k in self._amps), max(k.n for k in self._amps))

    def isclose(self, other: "TwoModeState", atol: float = 1e-12) -> bool:
        keys = set(self._amps) | set(other._amps)
        return all(abs(self[k] - other[k]) <= atol for k in keys)

    def __repr__(self) -> str:
        if not self._amps:
            return "TwoModeState(0)"
        body = " + ".join(f"({v:.6g}){k!r}" for k, v in self.items())
        return f"TwoModeState({body})"


def apply_ladder(op_id: str, state: TwoModeState) -> TwoModeState:
    """Apply one of ``a``, ``a^+``, ``b``, ``b^+`` to ``state``.

    Annihilating an empty mode contributes nothing.
    """
    op = _ALIASES.get(op_id, op_id)
    if op not in LADDER_OPS:
        raise ValueError(f"unknown ladder operator {op_id!r}; expected one of {LADDER_OPS}")
    out = []
    for ket, amp in state.items():
        m, n = ket.m, ket.n
        if op == "a^+":
            out.append((FockKet(m + 1, n), amp * math.sqrt(m + 1)))
        elif op == "a":
            if m:
                out.append((FockKet(m - 1, n), amp * math.sqrt(m)))
        elif op == "b^+":
            out.append((FockKet(m, n + 1), amp * math.sqrt(n + 1)))
        elif n:
            out.append((FockKet(m, n - 1), amp * math.sqrt(n)))
    return TwoModeState(out)


def apply_word(word: Iterable[str], state: TwoModeState) -> TwoModeState:
    """Apply an operator product written left to right, so the rightmost acts first."""
    for op in reversed(list(word)):
        state = apply_ladder(op, state)
    return state


def inner_product(x: TwoModeState, y: TwoModeState) -> complex:
    """<x|y>, conjugate-linear in ``x``."""
    total = 0j
    for ket, u in x.items():
        v = y[ket]
        if v:
            total += u.conjugate() * v
    return total


@dataclass(frozen=True)
class SectorBasis:
    """Kets (m, N - m) of the total-number-N sector, ascending in m."""

    N: int
    kets: tuple[FockKet, ...]

    @property
    def dim(self) -> int:
        return len(self.kets)

    def index(self, ket) -> int:
        ket = _as_ket(ket)
        if ket.total != self.N:
            raise KeyError(f"{ket!r} is not in sector {self.N}")
        return ket.m


def sector_basis(N: int) -> SectorBasis:
    if N < 0:
        raise ValueError("sector label must be non-negative")
    return SectorBasis(N, tuple(FockKet(m, N - m) for m in range(N + 1)))


def project_to_sector(state: TwoModeState, N: int) -> np.ndarray:
    """Coefficient vector of ``state`` on sector N; other sectors are dropped."""
    vec = np.zeros(N + 1, dtype=complex)
    for ket, amp in state.items():
        if ket.total == N:
            vec[ket.m] = amp
    return vec


def embed_sector(vector, N: int) -> TwoModeState:
    """Inverse of :func:`project_to_sector` for sector-supported states."""
    vector = np.asarray(vector, dtype=complex)
    if vector.shape != (N + 1,):
        raise ValueError(f"sector {N} vectors have length {N + 1}, got shape {vector.shape}")
    return TwoModeState((FockKet(m, N - m), vector[m]) for m in range(N + 1))


def grid_basis(n: int) -> tuple[FockKet, ...]:
    """The n x n occupation grid 0 <= m, k < n, row-major (m, then k)."""
    if n < 1:
        raise ValueError("grid side must be positive")
    return tuple(FockKet(m, k) for m in range(n) for k in range(n))


def project_to_grid(state: TwoModeState, n: int) -> np.ndarray:
    """Amplitudes on the n x n grid as an (n, n) array indexed [m, k]."""
    arr = np.zeros((n, n), dtype=complex)
    for ket, amp in state.items():
        if ket.m < n and ket.n < n:
            arr[ket.m, ket.n] = amp
    return arr
