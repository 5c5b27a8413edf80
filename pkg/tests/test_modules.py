import math
import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, xs
from ghostlevel import truncation as T
from ghostlevel.groebner import FreeMap, in_image
from ghostlevel.modules import (GradedModule, IdealGens, ModulePresentation, depth,
                                hilbert_function, is_regular_sequence, kernel_mult,
                                koszul_homology, regular_sequence_in, torsion_exponent,
                                torsion_submodule)
from ghostlevel.poly import Poly, RingSpec
from ghostlevel.samples import random_homogeneous

R = RingSpec(P, 2)
R3 = RingSpec(P, 3)
x, y = xs(R)
ZERO = Poly.zero(R)
A = ModulePresentation.free(R)


def cyclic(*gens):
    return ModulePresentation.cyclic(R, list(gens))


def sub_hf(H, shifts, D):
    """Hilbert function of a subquotient, generator degrees read off the generators."""
    if H.ambient_rank == 0:
        return [0] * (D + 1)
    gd = [T.vector_degree(c, shifts) for c in H.generators.columns()]
    return hilbert_function(H, gd, D)


def test_kernel_mult_examples():
    assert kernel_mult(x, A).is_zero()
    K = kernel_mult(x, cyclic(x ** 2))
    # (x)/(x^2) is A/(x) generated in degree 1
    assert sub_hf(K, [0], 5) == [0, 1, 1, 1, 1, 1]
    assert sub_hf(K, [0], 5) == T.subquotient_dims(K.generators, cyclic(x ** 2).relations, [0], 5, P)
    M = cyclic(x * y)
    K = kernel_mult(ZERO, M)
    assert sub_hf(K, [0], 4) == hilbert_function(M, [0], 4)


def test_torsion_submodule_examples():
    assert torsion_submodule(x, A).is_zero()
    M = ModulePresentation.direct_sum(R, [cyclic(x ** 2), A])
    G = torsion_submodule(x, M)
    assert all(c[1].is_zero() for c in G.generators.columns())
    assert sub_hf(G, [0, 0], 5) == [1, 2, 2, 2, 2, 2]
    assert torsion_submodule(Poly.const(R, 3), cyclic(x)).is_zero()


def test_torsion_exponent_examples():
    assert torsion_exponent(x, A) == 0
    assert torsion_exponent(x, cyclic(x)) == 1
    assert torsion_exponent(x, cyclic(x ** 2)) == 2
    assert torsion_exponent(x, cyclic(x ** 2 * y, x ** 3)) == 3


def test_regular_sequence_examples():
    assert is_regular_sequence([x, y], A)
    assert not is_regular_sequence([x, x], A)
    assert is_regular_sequence([x ** 2, y], A)
    assert not is_regular_sequence([Poly.const(R, 1)], A)  # M/(1)M = 0


def test_koszul_homology_examples():
    H = koszul_homology([x], A)
    assert hilbert_function(H[0], [0], 4) == [1, 1, 1, 1, 1] and H[1].is_zero()
    H = koszul_homology(IdealGens.of(R, [x, y]), A)
    assert hilbert_function(H[0], [0], 4) == [1, 0, 0, 0, 0]
    assert H[1].is_zero() and H[2].is_zero()
    H = koszul_homology([ZERO], A)
    assert hilbert_function(H[0], [0], 3) == [1, 2, 3, 4]
    assert sub_hf(H[1], [1], 3) == [0, 1, 2, 3]


def test_depth_examples():
    assert depth([x, y], A) == 2
    assert depth([Poly.const(R, 1)], A) == math.inf
    assert depth([Poly.const(R, 1)], cyclic(x)) == math.inf
    assert depth([x], cyclic(x)) == 0
    assert depth([x, y, x * y], A) == 2


def test_depth_of_graded_module_is_depth_of_sum():
    G = GradedModule({-1: cyclic(x), 0: A})
    # min over the summands: A/(x) has depth 1, A has depth 2
    assert depth([x, y], G, R) == 1
    assert depth([y], G, R) == 1
    assert depth([x], G, R) == 0


def _random_cyclic(rng, ring=R):
    gens = [random_homogeneous(ring, rng.randint(1, 3), rng, density=0.5) for _ in range(rng.randint(1, 2))]
    gens = [g for g in gens if not g.is_zero()] or [Poly.var(ring, 0) ** 2]
    return ModulePresentation.cyclic(ring, gens)


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_kernel_chain_stabilizes_at_torsion_exponent(seed):
    rng = random.Random(seed)
    M = _random_cyclic(rng)
    v = rng.choice([x, y, x + y, x * y])
    n = torsion_exponent(v, M)
    kn = kernel_mult(v ** n, M) if n else None
    k1 = kernel_mult(v ** (n + 1), M)
    span = kn.generators.hstack(M.relations) if n else M.relations
    assert all(in_image(c, span) for c in k1.generators.columns())
    # x^n kills Γ
    G = torsion_submodule(v, M)
    for c in (G.generators.columns() if G.ambient_rank else []):
        assert in_image(tuple(v ** n * e for e in c), M.relations)


def _greedy_longest(gens, M, cap=3):
    cands = list(gens) + [p * q for p, q in combinations(gens, 2)] + [g * g for g in gens]
    best = 0
    for t in range(1, cap + 1):
        for seq in combinations(cands, t):
            if is_regular_sequence(list(seq), M):
                best = t
                break
    return best


@settings(max_examples=12)
@given(st.integers(0, 10 ** 6))
def test_depth_matches_greedy_search(seed):
    rng = random.Random(seed)
    M = _random_cyclic(rng, R3)
    a = [Poly.var(R3, i) for i in sorted(rng.sample(range(3), rng.randint(1, 3)))]
    d = depth(a, M)
    if d == math.inf:
        return
    assert d == _greedy_longest(a, M)
    seq = regular_sequence_in(a, M, d)
    assert seq is not None and is_regular_sequence(seq, M)


@pytest.mark.parametrize("seq", [[x], [x, y], [x ** 2, y], [y, x]])
def test_powers_of_regular_sequence_stay_regular(seq):
    assert is_regular_sequence(seq, A)
    for ns in product([0, 1], repeat=len(seq)):
        assert is_regular_sequence([s ** (n + 1) for s, n in zip(seq, ns)], A)
