"""Deterministic rational sample points and tangent vectors."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from moufang.scalars import EXACT, to_scalar


@dataclass(frozen=True)
class SampleConfig:
    """Sampling policy; every stream is seeded from ``(seed, stream name)``."""

    seed: int = 0
    max_den: int = 16
    radius2: Fraction = Fraction(1, 4)
    vector_num: int = 3
    vector_den: int = 4
    include_origin: bool = False

    def rng(self, stream: str) -> random.Random:
        return random.Random(f"{self.seed}:{stream}")


def _point(rng: random.Random, dim: int, cfg: SampleConfig, support=None) -> tuple:
    support = range(dim) if support is None else support
    while True:
        q = rng.randint(2, cfg.max_den)
        bound = q // 2
        nums = [0] * dim
        for i in support:
            nums[i] = rng.randint(-bound, bound)
        if any(nums) and Fraction(sum(p * p for p in nums), q * q) <= cfg.radius2:
            return tuple(mpq(p, q) for p in nums)


def sample_points(n: int, cfg: SampleConfig, stream: str = "points", dim: int = 7, support=None) -> list:
    """``n`` exact chart points with ``|g|^2 <= radius2`` and a common denominator per point.

    ``support`` restricts the nonzero coordinates (e.g. the quaternionic
    indices).  With ``include_origin`` the first point is the origin.
    """
    rng = cfg.rng(stream)
    out = []
    if cfg.include_origin and n:
        out.append((mpq(0),) * dim)
    while len(out) < n:
        out.append(_point(rng, dim, cfg, support))
    return out


def sample_vectors(n: int, cfg: SampleConfig, stream: str = "vectors", dim: int = 7, support=None) -> list:
    """``n`` nonzero rational tangent vectors with small numerators and denominators."""
    rng = cfg.rng(stream)
    support = range(dim) if support is None else support
    out = []
    while len(out) < n:
        v = [mpq(0)] * dim
        for i in support:
            v[i] = mpq(rng.randint(-cfg.vector_num, cfg.vector_num), rng.randint(1, cfg.vector_den))
        if any(v):
            out.append(tuple(v))
    return out


def sample_octonions(n: int, seed: int = 0, max_num: int = 9, max_den: int = 9) -> list:
    """Random rational octonions (no norm restriction)."""
    rng = random.Random(f"{seed}:octonions")
    return [
        tuple(mpq(rng.randint(-max_num, max_num), rng.randint(1, max_den)) for _ in range(8)) for _ in range(n)
    ]


def in_mode(values, mode: str = EXACT):
    """Convert a point or vector (or a list of them) to ``mode``."""
    if values and isinstance(values[0], (tuple, list)):
        return [in_mode(v, mode) for v in values]
    return tuple(to_scalar(v, mode) for v in values)
