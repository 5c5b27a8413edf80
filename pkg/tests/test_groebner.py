import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, xs
from ghostlevel import truncation as T
from ghostlevel.errors import InvalidInput
from ghostlevel.groebner import (FreeMap, groebner_basis, in_image, lift_membership,
                                 module_groebner, normal_form, syzygies)
from ghostlevel.poly import Poly, RingSpec
from ghostlevel.samples import random_homogeneous, random_homogeneous_matrix

R = RingSpec(P, 2)
x, y = xs(R)
ZERO = Poly.zero(R)


def row(*entries):
    return FreeMap.from_rows(R, [list(entries)], source_rank=len(entries))


def s_poly_reduces(gb):
    """Every S-pair of the basis reduces to zero (checked independently of the pair queue)."""
    ps = gb.polys
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            a, b = ps[i], ps[j]
            lcm = tuple(max(u, v) for u, v in zip(a.lead_exp, b.lead_exp))
            ma = Poly.monomial(a.ring, tuple(l - e for l, e in zip(lcm, a.lead_exp)), b.lead_coeff)
            mb = Poly.monomial(b.ring, tuple(l - e for l, e in zip(lcm, b.lead_exp)), a.lead_coeff)
            if any(normal_form((ma * a - mb * b,), gb)):
                return False
    return True


def test_single_generator():
    assert groebner_basis([x]).polys == (x,)


def test_two_monomials_already_a_basis():
    gb = groebner_basis([x * x, x * y])
    assert set(gb.polys) == {x * x, x * y}
    # S-pair y*x^2 - x*xy expands to 0 by hand
    assert y * (x * x) - x * (x * y) == ZERO
    assert s_poly_reduces(gb)


def test_mixed_rings_rejected():
    with pytest.raises(InvalidInput):
        groebner_basis([x, Poly.var(RingSpec(P, 3), 0)])


def test_lex_twisted_cubic_against_substitution():
    L = RingSpec(P, 3, "lex")
    z, yy, t = xs(L)  # lex order z > y > t
    gb = groebner_basis([yy - t ** 2, z - t ** 3])
    assert s_poly_reduces(gb)
    rng = random.Random(5)

    def substitute(p):
        out = Poly.zero(L)
        for c, (a, b, e) in p.terms:
            out = out + Poly.monomial(L, (0, 0, 3 * a + 2 * b + e), c)
        return out

    gens = [yy - t ** 2, z - t ** 3]
    for k in range(50):
        p = Poly.zero(L)
        for d in range(5):
            p = p + random_homogeneous(L, d, rng, density=0.3)
        if k % 2:
            # half the samples are forced into the ideal
            p = p * gens[k % 4 // 2] + random_homogeneous(L, 1, rng) * gens[0]
        assert (not any(normal_form((p,), gb))) == substitute(p).is_zero()


def test_normal_form_examples():
    assert normal_form((x * x,), groebner_basis([x * x - y])) == (y,)
    assert normal_form((x * y,), groebner_basis([x])) == (ZERO,)
    empty = module_groebner(FreeMap.zero(R, 1, 0))
    assert len(empty) == 0
    assert normal_form((x + 1,), empty) == (x + 1,)
    with pytest.raises(InvalidInput):
        normal_form((x, y), groebner_basis([x]))


def test_module_groebner_examples():
    gb = module_groebner(FreeMap.identity(R, 2))
    assert sorted(gb.leads()) == [(0, (0, 0)), (1, (0, 0))]
    gb = module_groebner(row(x, y))
    assert set(gb.polys) == {x, y}
    one = Poly.const(R, 1)
    assert not gb.contains((one,)) and gb.contains((x * x + y,))


def test_syzygy_examples():
    assert syzygies(FreeMap.identity(R, 2)).source_rank == 0
    S = syzygies(row(x, y))
    assert S.source_rank == 1
    assert S.column(0) in [(y, -x), (-y, x)]
    assert (row(x, y) @ S).is_zero()
    S = syzygies(row(x, x))
    assert in_image((Poly.const(R, 1), Poly.const(R, -1)), S)


def test_lift_examples():
    assert lift_membership((x * x + x * y,), row(x)) == (x + y,)
    assert lift_membership((Poly.const(R, 1),), row(x, y)) is None
    assert lift_membership((x, ZERO), FreeMap.identity(R, 2)) == (x, ZERO)


def test_membership_agrees_with_truncation_for_xy():
    f = row(x, y)
    gb = module_groebner(f)
    for d in range(7):
        for m in T.monomials(2, d):
            v = (Poly.monomial(R, m),)
            assert gb.contains(v) == T.member(v, f, [0], P)


def _random_map(seed, rows=2, cols=3):
    rng = random.Random(seed)
    return random_homogeneous_matrix(R, rows, cols, rng), rng


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_lift_is_sound_and_complete(seed):
    f, rng = _random_map(seed)
    w = tuple(random_homogeneous(R, rng.randint(0, 2), rng) for _ in range(f.source_rank))
    v = f.apply(w)
    got = lift_membership(v, f)
    assert got is not None
    assert f.apply(got) == v


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_syzygies_contain_truncated_kernel(seed):
    f, _ = _random_map(seed, rows=1, cols=3)
    S = syzygies(f)
    assert (f @ S).is_zero()
    for k in T.kernel_upto(f, 4, P):
        assert in_image(k, S)


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_normal_form_zero_iff_truncated_member(seed):
    f, rng = _random_map(seed, rows=2, cols=2)
    gb = module_groebner(f)
    shifts = [0, 0]
    src_deg = [T.vector_degree(c, shifts) for c in f.columns()]
    for _ in range(6):
        d = rng.randint(1, 4)
        if rng.random() < 0.5 and src_deg[0] is not None and d >= src_deg[0]:
            c = random_homogeneous(R, d - src_deg[0], rng)
            v = tuple(c * e for e in f.column(0))
        else:
            v = tuple(random_homogeneous(R, d, rng) for _ in range(2))
        assert gb.contains(v) == T.member(v, f, shifts, P)
