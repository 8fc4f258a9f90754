"""Seeded sampling shared by the verification suites, searches and tests.

The generator is SplitMix64, so a run can be reproduced from its seed in any
language.  For seed 1234567 the first outputs are

    6457827717110365317, 3203168211198807973, 9817491932198370423,
    4593380528125082431, 16408922859458223821

uniform() takes the top 53 bits of an output; normal() is Box-Muller on two
uniforms (cosine branch first, sine branch cached for the next call).
"""
from __future__ import annotations

import math

import numpy as np

from algebra_core import CDElement, ComplexScalar
from errors import PreconditionError

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK
        self._spare: float | None = None

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform on [0, 1)."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def below(self, bound: int) -> int:
        return self.next_u64() % bound

    def normal(self) -> float:
        if self._spare is not None:
            value, self._spare = self._spare, None
            return value
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        radius = math.sqrt(-2.0 * math.log(u1))
        self._spare = radius * math.sin(2.0 * math.pi * u2)
        return radius * math.cos(2.0 * math.pi * u2)

    def normals(self, size: int) -> np.ndarray:
        return np.array([self.normal() for _ in range(size)])

    def angle(self, low: float = 0.0, high: float = math.pi / 2) -> float:
        return low + (high - low) * self.uniform()


def random_element(rng: SplitMix64, level: int) -> CDElement:
    return CDElement(level, rng.normals(1 << level))


def random_unit(rng: SplitMix64, level: int) -> CDElement:
    x = rng.normals(1 << level)
    return CDElement(level, x / np.linalg.norm(x))


def random_imaginary(rng: SplitMix64, level: int, unit: bool = False) -> CDElement:
    x = rng.normals(1 << level)
    x[0] = 0.0
    if unit:
        x /= np.linalg.norm(x)
    return CDElement(level, x)


def random_perp(rng: SplitMix64, level: int, unit: bool = False) -> CDElement:
    """Random element of the orthogonal complement of C_n."""
    if level < 2:
        raise PreconditionError("C_n^⊥ is zero below level 2")
    x = rng.normals(1 << level)
    x[0] = 0.0
    x[1 << (level - 1)] = 0.0
    if unit:
        x /= np.linalg.norm(x)
    return CDElement(level, x)


def random_complex(rng: SplitMix64, unit: bool = False) -> ComplexScalar:
    re, im = rng.normal(), rng.normal()
    if unit:
        r = math.hypot(re, im)
        re, im = re / r, im / r
    return ComplexScalar(re, im)
