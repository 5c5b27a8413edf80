"""Finitely presented modules: kernels of multiplication, torsion, regular
sequences, Koszul homology and depth.

A module is the cokernel of its relation matrix.  Submodules are carried
as generator columns in the ambient free module; ``subquotient`` turns
``(generators, relations)`` into a presentation of the image of the
generators in ``ambient / relations``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .errors import InternalError, InvalidInput
from .groebner import FreeMap, in_image, module_groebner, syzygies
from .poly import AlgebraElement, Poly, RingSpec, elements

TORSION_CAP = 64


@dataclass(frozen=True, eq=False)
class ModulePresentation:
    """coker(relations: A^k -> A^ambient_rank).

    ``generators`` optionally records where the ambient basis vectors live
    in some larger free module (set for kernels, homology, torsion).
    """

    ring: RingSpec
    ambient_rank: int
    relations: FreeMap
    generators: FreeMap | None = None

    def __post_init__(self):
        if self.relations.target_rank != self.ambient_rank:
            raise InvalidInput("relations target rank must equal the ambient rank")

    @classmethod
    def free(cls, ring, rank=1):
        return cls(ring, rank, FreeMap.zero(ring, rank, 0))

    @classmethod
    def cyclic(cls, ring, ideal):
        """A/I for I generated by the given polynomials (or strings)."""
        return cls(ring, 1, FreeMap.from_rows(ring, [list(ideal)], source_rank=len(ideal)))

    @cached_property
    def gb(self):
        return module_groebner(self.relations)

    def is_zero(self) -> bool:
        return self.ambient_rank == 0 or self.gb.contains_all_units()

    def contains(self, v) -> bool:
        """Whether an ambient vector is zero in the module."""
        return in_image(tuple(v), self.relations)

    def quotient(self, extra: FreeMap) -> "ModulePresentation":
        return ModulePresentation(self.ring, self.ambient_rank, self.relations.hstack(extra), self.generators)

    def quotient_by_ideal(self, xs) -> "ModulePresentation":
        """M / (xs) M."""
        xs = elements(self.ring, xs)
        if not xs or self.ambient_rank == 0:
            return self
        extra = FreeMap.scalar(self.ring, self.ambient_rank, xs[0].value)
        for x in xs[1:]:
            extra = extra.hstack(FreeMap.scalar(self.ring, self.ambient_rank, x.value))
        return self.quotient(extra)

    @staticmethod
    def direct_sum(ring, mods: Sequence["ModulePresentation"]) -> "ModulePresentation":
        if not mods:
            return ModulePresentation.free(ring, 0)
        rel = FreeMap.block_diag(ring, [m.relations for m in mods])
        return ModulePresentation(ring, rel.target_rank, rel)

    def __repr__(self):
        return f"ModulePresentation(rank={self.ambient_rank}, relations={self.relations.source_rank})"


def subquotient(gens: FreeMap, rel: FreeMap) -> ModulePresentation:
    """Presentation of (im gens + im rel) / im rel, on the columns of ``gens``."""
    ring = gens.ring
    k = gens.source_rank
    if k == 0:
        return ModulePresentation(ring, 0, FreeMap.zero(ring, 0, 0), gens)
    S = syzygies(gens.hstack(rel))
    R = S.select(rows=range(k)).drop_zero_columns()
    return ModulePresentation(ring, k, R, gens)


@dataclass(frozen=True)
class GradedModule:
    """A finite family degree -> module; absent degrees are zero."""

    components: dict = field(default_factory=dict)

    def degrees(self):
        return sorted(self.components)

    def __getitem__(self, n):
        return self.components.get(n)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def reindex(self, n: int) -> "GradedModule":
        """Move the component in degree d to degree d + n."""
        return GradedModule({d + n: m for d, m in self.components.items()})

    def total(self, ring) -> ModulePresentation:
        return ModulePresentation.direct_sum(ring, [self.components[d] for d in self.degrees()])


@dataclass(frozen=True)
class IdealGens:
    gens: tuple

    @classmethod
    def of(cls, ring, gens):
        return cls(elements(ring, gens))

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


# ---------------------------------------------------------------------------

def _kernel_gens(x: Poly, M: ModulePresentation) -> FreeMap:
    """Ambient generators of the preimage of ker(x·) on M."""
    r = M.ambient_rank
    S = syzygies(FreeMap.scalar(M.ring, r, x).hstack(M.relations))
    return S.select(rows=range(r)).drop_zero_columns()


def _contained(K: FreeMap, N: FreeMap, R: FreeMap) -> bool:
    """im K ⊆ im N + im R."""
    if K.source_rank == 0:
        return True
    span = N.hstack(R)
    return all(in_image(c, span) for c in K.columns())


def _value(x) -> Poly:
    return x.value if isinstance(x, AlgebraElement) else x


def kernel_mult(x, M: ModulePresentation) -> ModulePresentation:
    """ker(x·: M -> M)."""
    return subquotient(_kernel_gens(_value(x), M), M.relations)


def torsion_exponent(x, M: ModulePresentation) -> int:
    """Least n with ker(x^n) = ker(x^(n+1)), which is also least n with x^n·Γ_x(M) = 0."""
    x = _value(x)
    if x.is_zero():
        raise InvalidInput("torsion exponent of the zero element")
    R = M.relations
    prev = FreeMap.zero(M.ring, M.ambient_rank, 0)
    for n in range(TORSION_CAP + 1):
        nxt = _kernel_gens(x ** (n + 1), M)
        if _contained(nxt, prev, R):
            return n
        prev = nxt
    raise InternalError(f"kernel chain did not stabilise within {TORSION_CAP} steps")


def torsion_submodule(x, M: ModulePresentation) -> ModulePresentation:
    """Γ_x(M) = elements killed by some power of x."""
    x = _value(x)
    n = torsion_exponent(x, M)
    if n == 0:
        return subquotient(FreeMap.zero(M.ring, M.ambient_rank, 0), M.relations)
    return subquotient(_kernel_gens(x**n, M), M.relations)


def is_regular_sequence(xs, M: ModulePresentation) -> bool:
    """Each x_i is a nonzerodivisor on M/(x_1..x_{i-1})M, and M/(xs)M ≠ 0."""
    xs = elements(M.ring, xs)
    cur = M
    for x in xs:
        K = _kernel_gens(x.value, cur)
        if not _contained(K, FreeMap.zero(M.ring, M.ambient_rank, 0), cur.relations):
            return False
        cur = cur.quotient_by_ideal([x])
    return not cur.is_zero()


def koszul_matrices(ring, polys) -> list[FreeMap]:
    """Differentials d_k: ∧^k A^t -> ∧^(k-1) A^t, k = 1..t, on sorted subsets."""
    t = len(polys)
    bases = [list(combinations(range(t), k)) for k in range(t + 1)]
    index = [{S: i for i, S in enumerate(b)} for b in bases]
    out = []
    z = Poly.zero(ring)
    for k in range(1, t + 1):
        rows = [[z] * len(bases[k]) for _ in bases[k - 1]]
        for j, S in enumerate(bases[k]):
            for pos, s in enumerate(S):
                T = S[:pos] + S[pos + 1:]
                v = polys[s] if pos % 2 == 0 else -polys[s]
                rows[index[k - 1][T]][j] = v
        out.append(FreeMap(ring, len(bases[k - 1]), len(bases[k]), tuple(tuple(r) for r in rows)))
    return out


def presented_homology(d_out: FreeMap, d_in: FreeMap, rel_below: FreeMap, rel_here: FreeMap) -> ModulePresentation:
    """Homology at a spot of a complex of presented modules.

    ``d_out`` leaves this spot, ``d_in`` arrives; both are lifts to the
    ambient free modules.  Relations of the spot below and of this spot are
    ``rel_below`` and ``rel_here``.
    """
    ring = d_out.ring
    n = d_out.source_rank
    if n == 0:
        return ModulePresentation(ring, 0, FreeMap.zero(ring, 0, 0))
    if d_out.target_rank == 0 or (d_out.is_zero()):
        Z = FreeMap.identity(ring, n)
    else:
        S = syzygies(d_out.hstack(rel_below))
        Z = S.select(rows=range(n)).drop_zero_columns()
    return subquotient(Z, d_in.hstack(rel_here))


def koszul_homology(xs, M: ModulePresentation) -> list[ModulePresentation]:
    """H_0..H_t of K(xs) ⊗ M."""
    ring = M.ring
    polys = [x.value for x in elements(ring, xs)]
    t = len(polys)
    r = M.ambient_rank
    D = koszul_matrices(ring, polys)
    I = FreeMap.identity(ring, r)
    dims = [math.comb(t, k) for k in range(t + 1)]
    d = [D[k - 1].kron(I) if 1 <= k <= t else None for k in range(t + 2)]
    rel = [FreeMap.block_diag(ring, [M.relations] * dims[k]) for k in range(t + 1)]
    out = []
    for k in range(t + 1):
        d_out = d[k] if k >= 1 else FreeMap.zero(ring, 0, dims[0] * r)
        d_in = d[k + 1] if k < t else FreeMap.zero(ring, dims[k] * r, 0)
        rel_below = rel[k - 1] if k >= 1 else FreeMap.zero(ring, 0, 0)
        out.append(presented_homology(d_out, d_in, rel_below, rel[k]))
    return out


def _as_presentation(M, ring=None):
    if isinstance(M, GradedModule):
        if ring is None:
            mods = list(M.components.values())
            if not mods:
                raise InvalidInput("cannot infer the ring of an empty graded module")
            ring = mods[0].ring
        return M.total(ring)
    return M


def depth(a, M, ring: RingSpec | None = None):
    """a-depth of M (an int, or math.inf when aM = M).

    Computed as t - max{i : H_i(K(a) ⊗ M) ≠ 0}.  Graded modules are treated
    as the direct sum of their components.
    """
    if isinstance(a, IdealGens):
        a = a.gens
    M = _as_presentation(M, ring)
    xs = elements(M.ring, a)
    if M.quotient_by_ideal(xs).is_zero():
        return math.inf
    H = koszul_homology(xs, M)
    t = len(xs)
    for i in range(t, -1, -1):
        if not H[i].is_zero():
            return t - i
    raise InternalError("H_0 vanished although M/aM is nonzero")


def regular_sequence_in(a, M, length: int, ring: RingSpec | None = None):
    """Search for an M-regular sequence of the given length inside the ideal a.

    Candidates are the generators, then pairwise products, then pairwise
    sums; the search backtracks, so it returns None only if no sequence
    from those candidates works.
    """
    if isinstance(a, IdealGens):
        a = a.gens
    M = _as_presentation(M, ring)
    gens = [x.value for x in elements(M.ring, a) if not x.value.is_zero()]
    cands = list(gens)
    cands += [p * q for p, q in combinations(gens, 2)] + [g * g for g in gens]
    cands += [p + q for p, q in combinations(gens, 2)]
    seen = []
    for c in cands:
        if c not in seen:
            seen.append(c)

    def dfs(prefix, cur):
        if len(prefix) == length:
            return prefix if not cur.is_zero() else None
        for c in seen:
            K = _kernel_gens(c, cur)
            if _contained(K, FreeMap.zero(M.ring, M.ambient_rank, 0), cur.relations):
                nxt = cur.quotient_by_ideal([c])
                if nxt.is_zero():
                    continue
                got = dfs(prefix + [c], nxt)
                if got is not None:
                    return got
        return None

    found = dfs([], M)
    return None if found is None else tuple(AlgebraElement(c) for c in found)


def hilbert_function(M: ModulePresentation, gen_degrees: Sequence[int], max_degree: int) -> list[int]:
    """dim_k (M)_d for d = 0..max_degree, for a homogeneous presentation.

    Counts standard monomials of the relation basis; ``gen_degrees`` are the
    degrees of the ambient basis vectors.
    """
    from itertools import combinations_with_replacement

    ring = M.ring
    n = ring.num_vars
    leads = M.gb.leads() if M.ambient_rank else []
    by_pos: dict[int, list] = {}
    for pos, e in leads:
        by_pos.setdefault(pos, []).append(e)

    def monos(deg):
        for c in combinations_with_replacement(range(n), deg):
            e = [0] * n
            for i in c:
                e[i] += 1
            yield tuple(e)

    out = []
    for d in range(max_degree + 1):
        count = 0
        for pos in range(M.ambient_rank):
            k = d - gen_degrees[pos]
            if k < 0 or (n == 0 and k > 0):
                continue
            for e in monos(k):
                if not any(all(a >= b for a, b in zip(e, l)) for l in by_pos.get(pos, ())):
                    count += 1
        out.append(count)
    return out
