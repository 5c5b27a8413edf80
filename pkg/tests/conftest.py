import hypothesis
import pytest
from hypothesis import strategies as st

from ghostlevel.complexes import FreeComplex
from ghostlevel.poly import Poly, RingSpec

hypothesis.settings.register_profile("default", max_examples=40, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=8, deadline=None)
hypothesis.settings.load_profile("default")

P = 32003


@pytest.fixture
def R2():
    return RingSpec(P, 2)


@pytest.fixture
def R3():
    return RingSpec(P, 3)


@pytest.fixture
def A2(R2):
    return FreeComplex.free(R2)


def xs(ring):
    return [Poly.var(ring, i) for i in range(ring.num_vars)]


def polys(ring, max_deg=3, max_terms=5):
    n = ring.num_vars
    coeff = st.integers(-5, 5) if ring.characteristic == 0 else st.integers(0, ring.characteristic - 1)
    exp = st.tuples(*[st.integers(0, max_deg) for _ in range(n)])
    return st.lists(st.tuples(coeff, exp), max_size=max_terms).map(lambda t: Poly.from_terms(ring, t))
