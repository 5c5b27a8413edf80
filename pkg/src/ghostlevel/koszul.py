"""Koszul objects, their ε-maps, and towers of ghost factors.

Stage s of a tower is ``Σ^-1 cone(y_s · id)`` on stage s-1, where
``y_s = x_s^(n_s + 1)``; up to the sign of one block this is
``Σ^-s (M // (y_1, ..., y_s))``.  The map ε(y_s) from stage s to stage s-1
is the projection onto the copy of stage s-1, i.e. the rotated connecting
map of the defining triangle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import ChainMap, FreeComplex, cone, graded_hom, shift
from .errors import InvalidInput
from .groebner import FreeMap
from .modules import torsion_exponent
from .poly import AlgebraElement, Poly, elements


def _elem(X, x) -> AlgebraElement:
    (e,) = elements(X.ring, [x])
    if e.degree != 0:
        raise InvalidInput("only degree-0 elements are supported")
    return e


def koszul_object(M: FreeComplex, xs) -> FreeComplex:
    """M // (x_1, ..., x_t) by iterated cones of multiplication maps."""
    K = M
    for x in elements(M.ring, xs):
        K = cone(ChainMap.scalar(K, _elem(M, x).value))
    return K


def epsilon_map(M: FreeComplex, x) -> ChainMap:
    """ε(x): Σ^-1 (M // x) -> M, the projection onto M."""
    x = _elem(M, x)
    S = shift(cone(ChainMap.scalar(M, x.value)), -1)
    ring = M.ring
    comps = {}
    # (Σ^-1 cone)_i = M_i ⊕ M_(i+1)
    for i in S.support():
        a, b = M.rank(i), M.rank(i + 1)
        if a:
            comps[i] = FreeMap.identity(ring, a).hstack(FreeMap.zero(ring, a, b))
    return ChainMap(S, M, comps, False)


def ghost_factor(stage: FreeComplex, x, n: int) -> ChainMap:
    """x^n ∘ ε(x^(n+1)), from the next stage into ``stage``."""
    x = _elem(stage, x)
    eps = epsilon_map(stage, x ** (n + 1))
    if n == 0:
        return eps
    return ChainMap.scalar(stage, (x**n).value) @ eps


def exponent_for(G: FreeComplex, stage: FreeComplex, x) -> int:
    """Largest torsion exponent of x over the components of Hom*(G, stage)."""
    x = _elem(stage, x)
    if x.value.is_zero():
        return 0
    H = graded_hom(G, stage)
    return max((torsion_exponent(x, H[d]) for d in H.degrees()), default=0)


@dataclass(frozen=True, eq=False)
class KoszulTower:
    base: FreeComplex
    elements: tuple
    exponents: tuple
    stages: tuple  # stages[0] = base
    eps_maps: tuple  # eps_maps[s-1]: stages[s] -> stages[s-1]
    factors: tuple  # factors[s-1] = x_s^n_s ∘ eps_maps[s-1]

    @property
    def length(self):
        return len(self.elements)

    @property
    def top(self) -> FreeComplex:
        return self.stages[-1]

    def powers(self):
        """The sequence x_1^(n_1+1), ..., x_t^(n_t+1)."""
        return tuple(x ** (n + 1) for x, n in zip(self.elements, self.exponents))


def build_tower(M: FreeComplex, xs, exponents=None, generator: FreeComplex | None = None) -> KoszulTower:
    """Build stages one by one.

    With ``exponents=None`` each n_s is chosen by ``exponent_for`` against
    ``generator`` (default: M itself) on the stage built so far.
    """
    xs = tuple(_elem(M, x) for x in elements(M.ring, xs))
    if exponents is not None and len(exponents) != len(xs):
        raise InvalidInput("one exponent per element required")
    G = M if generator is None else generator
    stages = [M]
    eps_maps, factors, ns = [], [], []
    for s, x in enumerate(xs):
        cur = stages[-1]
        n = exponents[s] if exponents is not None else exponent_for(G, cur, x)
        if n < 0:
            raise InvalidInput("exponents are natural numbers")
        eps = epsilon_map(cur, x ** (n + 1))
        fac = eps if n == 0 else ChainMap.scalar(cur, (x**n).value) @ eps
        stages.append(eps.source)
        eps_maps.append(eps)
        factors.append(fac)
        ns.append(n)
    return KoszulTower(M, xs, tuple(ns), tuple(stages), tuple(eps_maps), tuple(factors))


def auto_exponents(G: FreeComplex, M: FreeComplex, xs) -> tuple:
    return build_tower(M, xs, None, G).exponents


def ghost_candidate_composition(tower: KoszulTower) -> ChainMap:
    """factor_1 ∘ factor_2 ∘ ... ∘ factor_t : top stage -> base."""
    comp = ChainMap.identity(tower.base)
    for f in tower.factors:
        comp = comp @ f
    return comp


def regular_criterion(M: FreeComplex, xs, is_ghost) -> dict:
    """Evaluate 'each ε is M-ghost and the composite is nonzero' on the plain tower.

    ``is_ghost`` is injected to keep this module independent of the level engine.
    """
    from .complexes import is_nullhomotopic

    tower = build_tower(M, xs, exponents=[0] * len(tuple(xs)))
    ghosts = [is_ghost(M, e) for e in tower.eps_maps]
    nonzero = not is_nullhomotopic(ghost_candidate_composition(tower))
    return {"ghost": ghosts, "composite_nonzero": nonzero, "holds": all(ghosts) and nonzero}
