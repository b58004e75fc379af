from __future__ import annotations

import random
from dataclasses import dataclass

from ..scalar import I, ZERO, GaussianRational
from ..tensor import TensorElement

# Coefficients for random elements; small so exact arithmetic stays cheap.
SAMPLE_COEFFS = (
    ZERO,
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(1, 2),
    GaussianRational(-1, 2),
    I,
    -I,
)


@dataclass(frozen=True)
class TruncationWindow:
    """Finite slice ``k <= k_max``, ``n <= n_max`` with generators ``m_lo..m_hi``."""

    k_max: int = 4
    n_max: int = 5
    m_lo: int = -4
    m_hi: int = 4

    def __post_init__(self):
        if self.k_max < 0 or self.n_max < 0:
            raise ValueError("k_max and n_max must be nonnegative")
        if self.m_lo > self.m_hi:
            raise ValueError("m_lo must not exceed m_hi")

    @property
    def m_values(self) -> range:
        return range(self.m_lo, self.m_hi + 1)

    def monomials(self, dim: int = 1) -> list[tuple]:
        return [
            (k, s, n)
            for k in range(self.k_max + 1)
            for s in range(dim)
            for n in range(self.n_max + 1)
        ]

    def contains(self, x: TensorElement) -> bool:
        return all(k <= self.k_max and len(p) - 1 <= self.n_max for (k, _), p in x.blocks.items())

    def as_dict(self) -> dict:
        return {"k_max": self.k_max, "n_max": self.n_max, "m_lo": self.m_lo, "m_hi": self.m_hi}


def random_element(rng: random.Random, window: TruncationWindow, dim: int = 1) -> TensorElement:
    """Nonzero element supported in ``window`` with coefficients from SAMPLE_COEFFS."""
    mons = window.monomials(dim)
    while True:
        terms = {mon: rng.choice(SAMPLE_COEFFS) for mon in mons}
        x = TensorElement(terms)
        if x:
            return x
