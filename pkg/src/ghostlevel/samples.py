"""Seeded random inputs: homogeneous matrices and their free resolutions."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement

from .complexes import FreeComplex, minimize, shift
from .errors import InternalError
from .groebner import FreeMap, syzygies
from .poly import Poly, RingSpec


def _monomials(n, deg):
    out = []
    for c in combinations_with_replacement(range(n), deg):
        e = [0] * n
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    return out


def random_coeff(ring: RingSpec, rng: random.Random):
    if ring.characteristic:
        return rng.randrange(1, ring.characteristic)
    return rng.choice([-3, -2, -1, 1, 2, 3])


def random_homogeneous(ring: RingSpec, deg: int, rng: random.Random, density=0.6) -> Poly:
    if ring.num_vars == 0:
        return Poly.const(ring, random_coeff(ring, rng)) if deg == 0 else Poly.zero(ring)
    terms = [(random_coeff(ring, rng), e) for e in _monomials(ring.num_vars, deg) if rng.random() < density]
    return Poly.from_terms(ring, terms)


def random_homogeneous_matrix(ring, rows, cols, rng, degree=None, zero_prob=0.2) -> FreeMap:
    """Entries homogeneous of one common degree (1 or 2 unless given)."""
    if degree is None:
        degree = 0 if ring.num_vars == 0 else rng.choice([1, 2])
    z = Poly.zero(ring)
    entries = [[z if rng.random() < zero_prob else random_homogeneous(ring, degree, rng)
                for _ in range(cols)] for _ in range(rows)]
    return FreeMap.from_rows(ring, entries, source_rank=cols)


def free_resolution(f: FreeMap, max_length: int | None = None) -> FreeComplex:
    """Minimised free resolution of coker f, target of f in degree 0.

    For homogeneous f this is the minimal graded resolution, of length at
    most the number of variables.
    """
    ring = f.ring
    cap = (ring.num_vars + 3) if max_length is None else max_length
    X = FreeComplex.make(ring, {0: f.target_rank, 1: f.source_rank}, {1: f}, check=False)
    X, _ = minimize(X)
    for _ in range(cap):
        top = X.hi
        if X.is_zero_object() or top < 1:
            # coker is free (or zero); nothing left to resolve
            return X
        S = syzygies(X.d(top))
        if S.source_rank == 0:
            return X
        ranks = {i: X.rank(i) for i in X.degrees()}
        ranks[top + 1] = S.source_rank
        diffs = {i: X.d(i) for i in range(X.lo + 1, top + 1)}
        diffs[top + 1] = S
        X, _ = minimize(FreeComplex.make(ring, ranks, diffs, check=False))
    raise InternalError("resolution did not terminate within the length cap")


def random_perfect_complex(ring: RingSpec, rng: random.Random) -> FreeComplex:
    """Resolution of the cokernel of a small random homogeneous matrix, randomly shifted."""
    rows = rng.randint(1, 2)
    cols = rng.randint(1, 3)
    f = random_homogeneous_matrix(ring, rows, cols, rng)
    X = free_resolution(f)
    return shift(X, rng.randint(-1, 1))
