"""Random generation of classes and characteristic data for property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from flatclasses import Coefficients, GradedRing


def rand_coef(rng: random.Random, co: Coefficients, bound: int = 4):
    if co is Coefficients.F2:
        return rng.randint(0, 1)
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))


def rand_homogeneous(ring: GradedRing, degree: int, rng: random.Random):
    n = ring.rank(degree)
    if n == 0:
        return ring.zero()
    return ring.element({degree: [rand_coef(rng, ring.coefficients) for _ in range(n)]})


def rand_class(ring: GradedRing, rng: random.Random, degrees=None):
    degrees = range(ring.top_degree + 1) if degrees is None else degrees
    out = ring.zero()
    for d in degrees:
        out = out + rand_homogeneous(ring, d, rng)
    return out


def rand_chern(ring: GradedRing, rng: random.Random, dim=None):
    from flatclasses import TotalChernData
    c = {i: rand_homogeneous(ring, 2 * i, rng) for i in range(1, ring.top_degree // 2 + 1)}
    if dim is None:
        dim = 0 if ring.reduced else rng.randint(0, 5)
    return TotalChernData(ring, dim, c)


def rand_sw(ring: GradedRing, rng: random.Random, with_higher: bool = True):
    from flatclasses import StiefelWhitneyData
    higher = {}
    if with_higher:
        higher = {i: rand_homogeneous(ring, i, rng) for i in range(3, ring.top_degree + 1)}
    return StiefelWhitneyData(ring, rand_homogeneous(ring, 1, rng),
                              rand_homogeneous(ring, 2, rng), higher)
