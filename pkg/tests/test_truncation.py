"""The truncation oracle checked against closed-form counts, independent of Gröbner code."""
from math import comb

import numpy as np
import pytest

from conftest import P, xs
from ghostlevel import truncation as T
from ghostlevel.complexes import FreeComplex
from ghostlevel.groebner import FreeMap
from ghostlevel.modules import koszul_matrices
from ghostlevel.poly import Poly, RingSpec

R = RingSpec(P, 2)
x, y = xs(R)


def test_monomial_counts():
    for n in range(4):
        for d in range(6):
            expected = comb(n + d - 1, d) if n else int(d == 0)
            assert len(T.monomials(n, d)) == expected


def test_rank_and_nullspace_mod_p():
    M = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert T.rref_rank(M, P) == 2
    (v,) = T.nullspace(M, P)
    assert not np.any(M @ v % P)
    assert T.rref_rank(np.array([[2, 0], [0, 2]]), 2) == 0


def test_quotient_dims_closed_forms():
    f = FreeMap.from_rows(R, [[x, y]], source_rank=2)
    assert T.quotient_dims(f, [0], 5, P) == [1, 0, 0, 0, 0, 0]
    f = FreeMap.from_rows(R, [[x * x]], source_rank=1)
    # A/(x^2): monomials x^a y^b with a < 2
    assert T.quotient_dims(f, [0], 5, P) == [1, 2, 2, 2, 2, 2]
    free = FreeMap.zero(R, 2, 0)
    assert T.quotient_dims(free, [0, 1], 3, P) == [1, 3, 5, 7]


def test_member_respects_shifts():
    f = FreeMap.from_rows(R, [[x], [y]], source_rank=1)
    assert T.member((x * y, y * y), f, [0, 0], P)
    assert not T.member((x * y, x * y), f, [0, 0], P)
    with pytest.raises(ValueError):
        T.vector_degree((x, y * y), [0, 0])


def test_kernel_upto_koszul_syzygy():
    f = FreeMap.from_rows(R, [[x, y]], source_rank=2)
    # kernel is generated by (y, -x); entries of degree <= D give dim sum_{k<D} (k+1)
    for D in range(1, 5):
        ks = T.kernel_upto(f, D, P)
        assert len(ks) == sum(k + 1 for k in range(D))
        for k in ks:
            assert f.apply(k) == (Poly.zero(R),)


def test_homology_of_koszul_complex_is_residue_field():
    d1, d2 = koszul_matrices(R, [x, y])
    K = FreeComplex.make(R, {0: 1, 1: 2, 2: 1}, {1: d1, 2: d2})
    g = T.infer_grading(K)
    assert g == {0: [0], 1: [1, 1], 2: [2]}
    assert T.homology_dims(K, g, 0, 4, P) == [1, 0, 0, 0, 0]
    assert T.homology_dims(K, g, 1, 4, P) == [0] * 5
    assert T.homology_dims(K, g, 2, 4, P) == [0] * 5


def test_infer_grading_rejects_inconsistent():
    # the entry degrees around the square 1, 1, 1, 2 admit no basis degrees
    d = FreeMap.from_rows(R, [[x, x], [x, x * x]], source_rank=2)
    X = FreeComplex.make(R, {0: 2, 1: 2}, {1: d})
    with pytest.raises(ValueError):
        T.infer_grading(X)


def test_member_upto_sound():
    f = FreeMap.from_rows(R, [[x + 1]], source_rank=1)
    assert T.member_upto((x * x + x,), f, 2, P)
    assert not T.member_upto((Poly.const(R, 1),), f, 4, P)
