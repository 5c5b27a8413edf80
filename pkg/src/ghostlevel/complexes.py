"""Bounded complexes of finite free modules and degree-0 chain maps.

Conventions (fixed throughout the package):

* homological indexing, ``d_i : X_i -> X_(i-1)``;
* ``(Σ^n X)_i = X_(i-n)`` with differential ``(-1)^n d``;
* ``cone(f)_i = X_(i-1) ⊕ Y_i`` with differential ``[[-d_X, 0], [-f, d_Y]]``;
* ``Hom(X, Y)_n = ⊕_i Hom(X_i, Y_(i+n))`` with ``∂φ = d_Y φ - (-1)^n φ d_X``.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from functools import cached_property

from .errors import InvalidInput
from .groebner import FreeMap, in_image, lift_membership, residual
from .modules import GradedModule, ModulePresentation, presented_homology
from .poly import Poly, RingSpec, format_ring, parse_ring


@dataclass(frozen=True, eq=False)
class FreeComplex:
    ring: RingSpec
    lo: int
    ranks: tuple
    diffs: tuple  # diffs[j] = d_(lo+1+j)
    check: InitVar[bool] = True

    def __post_init__(self, check):
        lo, ranks, diffs = self.lo, tuple(self.ranks), tuple(self.diffs)
        if len(diffs) != max(len(ranks) - 1, 0):
            raise InvalidInput("need exactly one differential between consecutive degrees")
        for j, d in enumerate(diffs):
            if (d.target_rank, d.source_rank) != (ranks[j], ranks[j + 1]):
                raise InvalidInput(f"differential d_{lo + 1 + j} has the wrong shape")
        while ranks and ranks[0] == 0:
            ranks, diffs, lo = ranks[1:], diffs[1:], lo + 1
        while ranks and ranks[-1] == 0:
            ranks, diffs = ranks[:-1], diffs[:-1]
        if not ranks:
            lo = 0
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "diffs", diffs)
        if check:
            for j in range(len(diffs) - 1):
                if not (diffs[j] @ diffs[j + 1]).is_zero():
                    raise InvalidInput(f"d_{lo + 1 + j} ∘ d_{lo + 2 + j} ≠ 0")

    # construction -------------------------------------------------------
    @classmethod
    def make(cls, ring, ranks: dict, diffs: dict | None = None, check=True):
        """From {degree: rank} and {degree i: d_i}; missing differentials are zero."""
        diffs = diffs or {}
        degs = [d for d, r in ranks.items() if r]
        if not degs:
            return cls(ring, 0, (), ())
        lo, hi = min(degs), max(degs)
        rk = tuple(ranks.get(i, 0) for i in range(lo, hi + 1))
        ds = []
        for i in range(lo + 1, hi + 1):
            d = diffs.get(i)
            if d is None:
                d = FreeMap.zero(ring, ranks.get(i - 1, 0), ranks.get(i, 0))
            ds.append(d)
        for i in diffs:
            if not lo < i <= hi and not diffs[i].is_zero():
                raise InvalidInput(f"differential in degree {i} outside the support")
        return cls(ring, lo, rk, tuple(ds), check)

    @classmethod
    def free(cls, ring, rank=1, degree=0):
        return cls(ring, degree, (rank,), ())

    @classmethod
    def two_term(cls, f: FreeMap, degree=0):
        """A^source --f--> A^target, target sitting in ``degree``."""
        return cls.make(f.ring, {degree + 1: f.source_rank, degree: f.target_rank}, {degree + 1: f})

    # access -------------------------------------------------------------
    @property
    def hi(self):
        return self.lo + len(self.ranks) - 1

    def is_zero_object(self) -> bool:
        """Literally the zero complex (not merely contractible)."""
        return not self.ranks

    def rank(self, i):
        j = i - self.lo
        return self.ranks[j] if 0 <= j < len(self.ranks) else 0

    def d(self, i) -> FreeMap:
        j = i - self.lo - 1
        if 0 <= j < len(self.diffs):
            return self.diffs[j]
        return FreeMap.zero(self.ring, self.rank(i - 1), self.rank(i))

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def support(self):
        return [i for i in self.degrees() if self.rank(i)]

    def __eq__(self, other):
        if not isinstance(other, FreeComplex):
            return NotImplemented
        return (self.ring == other.ring and self.lo == other.lo
                and self.ranks == other.ranks and self.diffs == other.diffs)

    def __hash__(self):
        return hash((self.lo, self.ranks))

    def __repr__(self):
        return f"FreeComplex(lo={self.lo}, ranks={list(self.ranks)})"

    def direct_sum(self, *others) -> "FreeComplex":
        cs = (self,) + others
        degs = [i for c in cs for i in c.support()]
        if not degs:
            return FreeComplex(self.ring, 0, (), ())
        lo, hi = min(degs), max(degs)
        ranks = {i: sum(c.rank(i) for c in cs) for i in range(lo, hi + 1)}
        diffs = {i: FreeMap.block_diag(self.ring, [c.d(i) for c in cs]) for i in range(lo + 1, hi + 1)}
        return FreeComplex.make(self.ring, ranks, diffs, check=False)

    def __add__(self, other):
        return self.direct_sum(other)


def shift(X: FreeComplex, n: int) -> FreeComplex:
    """Σ^n X."""
    diffs = X.diffs if n % 2 == 0 else tuple(-d for d in X.diffs)
    return FreeComplex(X.ring, X.lo + n, X.ranks, diffs, False)


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: FreeComplex
    target: FreeComplex
    components: dict = field(default_factory=dict)
    check: InitVar[bool] = True

    def __post_init__(self, check):
        src, tgt = self.source, self.target
        if src.ring != tgt.ring:
            raise InvalidInput("ring mismatch")
        comps = {}
        for i, f in self.components.items():
            if (f.target_rank, f.source_rank) != (tgt.rank(i), src.rank(i)):
                raise InvalidInput(f"component in degree {i} has the wrong shape")
            if not f.is_zero():
                comps[i] = f
        object.__setattr__(self, "components", comps)
        if check:
            for i in self.degrees_to_check():
                lhs = tgt.d(i) @ self[i]
                rhs = self[i - 1] @ src.d(i)
                if lhs != rhs:
                    raise InvalidInput(f"chain map square fails in degree {i}")

    def degrees_to_check(self):
        s = set()
        for i in self.components:
            s.update((i, i + 1))
        return sorted(s)

    @property
    def ring(self):
        return self.source.ring

    def __getitem__(self, i) -> FreeMap:
        f = self.components.get(i)
        if f is None:
            return FreeMap.zero(self.ring, self.target.rank(i), self.source.rank(i))
        return f

    @classmethod
    def identity(cls, X):
        return cls(X, X, {i: FreeMap.identity(X.ring, X.rank(i)) for i in X.support()}, False)

    @classmethod
    def zero(cls, X, Y):
        return cls(X, Y, {}, False)

    @classmethod
    def scalar(cls, X, x):
        """x·id_X."""
        if isinstance(x, (int, str)):
            x = Poly.parse(X.ring, x) if isinstance(x, str) else Poly.const(X.ring, x)
        x = getattr(x, "value", x)
        return cls(X, X, {i: FreeMap.scalar(X.ring, X.rank(i), x) for i in X.support()}, False)

    def is_zero(self):
        return not self.components

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        if other.target != self.source:
            raise InvalidInput("chain maps are not composable")
        comps = {i: self[i] @ other[i] for i in other.components if i in self.components}
        return ChainMap(other.source, self.target, comps, False)

    def _combine(self, other, sign):
        if (self.source, self.target) != (other.source, other.target):
            raise InvalidInput("chain maps with different source/target")
        comps = {}
        for i in set(self.components) | set(other.components):
            comps[i] = self[i] + other[i] if sign > 0 else self[i] - other[i]
        return ChainMap(self.source, self.target, comps, False)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return ChainMap(self.source, self.target, {i: -f for i, f in self.components.items()}, False)

    def scale(self, x):
        return ChainMap(self.source, self.target, {i: f.scale(x) for i, f in self.components.items()}, False)

    def shift(self, n):
        return ChainMap(shift(self.source, n), shift(self.target, n),
                        {i + n: f for i, f in self.components.items()}, False)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.components == other.components)

    def __hash__(self):
        return hash(tuple(sorted(self.components)))

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


def cone_triangle(f: ChainMap):
    """(cone(f), inclusion target -> cone, projection cone -> Σ source)."""
    X, Y, ring = f.source, f.target, f.ring
    degs = [i + 1 for i in X.support()] + Y.support()
    if not degs:
        C = FreeComplex(ring, 0, (), ())
        return C, ChainMap.zero(Y, C), ChainMap.zero(C, shift(X, 1))
    lo, hi = min(degs), max(degs)
    ranks = {i: X.rank(i - 1) + Y.rank(i) for i in range(lo, hi + 1)}
    diffs = {}
    for i in range(lo + 1, hi + 1):
        top = (-X.d(i - 1)).hstack(FreeMap.zero(ring, X.rank(i - 2), Y.rank(i)))
        bot = (-f[i - 1]).hstack(Y.d(i))
        diffs[i] = top.vstack(bot)
    C = FreeComplex.make(ring, ranks, diffs, check=False)
    incl = {}
    proj = {}
    for i in range(lo, hi + 1):
        a, b = X.rank(i - 1), Y.rank(i)
        if b:
            incl[i] = FreeMap.zero(ring, a, b).vstack(FreeMap.identity(ring, b))
        if a:
            proj[i] = FreeMap.identity(ring, a).hstack(FreeMap.zero(ring, a, b))
    return C, ChainMap(Y, C, incl, False), ChainMap(C, shift(X, 1), proj, False)


def cone(f: ChainMap) -> FreeComplex:
    return cone_triangle(f)[0]


class HomComplex:
    """Hom(X, Y) with a fixed flattening of each degree into a vector."""

    def __init__(self, X: FreeComplex, Y: FreeComplex):
        self.X, self.Y = X, Y
        ring = X.ring
        self.blocks: dict[int, list] = {}
        self.ranks: dict[int, int] = {}
        if X.is_zero_object() or Y.is_zero_object():
            self.lo, self.hi = 0, -1
        else:
            self.lo, self.hi = Y.lo - X.hi, Y.hi - X.lo
        for n in range(self.lo, self.hi + 1):
            off = 0
            blocks = []
            for i in X.support():
                a, b = X.rank(i), Y.rank(i + n)
                if b:
                    blocks.append((i, off))
                    off += a * b
            self.blocks[n] = blocks
            self.ranks[n] = off
        diffs = {n: self._boundary(n) for n in range(self.lo + 1, self.hi + 1)}
        self.complex = FreeComplex.make(ring, self.ranks, diffs, check=False)

    def rank(self, n):
        return self.ranks.get(n, 0)

    def _offset(self, n, i):
        for j, off in self.blocks.get(n, ()):
            if j == i:
                return off
        return None

    def _boundary(self, n) -> FreeMap:
        X, Y, ring = self.X, self.Y, self.X.ring
        z = Poly.zero(ring)
        rows = [[z] * self.rank(n) for _ in range(self.rank(n - 1))]
        sign = -1 if n % 2 == 0 else 1  # -(-1)^n
        for j, off in self.blocks[n]:
            a, b = X.rank(j), Y.rank(j + n)
            dY = Y.d(j + n)
            o1 = self._offset(n - 1, j)
            dX = X.d(j + 1)
            o2 = self._offset(n - 1, j + 1)
            a2 = X.rank(j + 1)
            for r in range(b):
                for c in range(a):
                    col = off + r * a + c
                    if o1 is not None:
                        for r2 in range(Y.rank(j + n - 1)):
                            e = dY[r2, r]
                            if e:
                                rows[o1 + r2 * a + c][col] = rows[o1 + r2 * a + c][col] + e
                    if o2 is not None:
                        for c2 in range(a2):
                            e = dX[c, c2]
                            if e:
                                idx = o2 + r * a2 + c2
                                rows[idx][col] = rows[idx][col] + (e if sign > 0 else -e)
        return FreeMap(ring, self.rank(n - 1), self.rank(n), tuple(tuple(r) for r in rows))

    def flatten(self, n, maps) -> tuple:
        """Vector in Hom_n from a mapping i -> (X_i -> Y_(i+n)) (ChainMap or dict)."""
        ring = self.X.ring
        z = Poly.zero(ring)
        out = [z] * self.rank(n)
        get = maps.__getitem__ if isinstance(maps, ChainMap) else (lambda i: maps.get(i))
        for i, off in self.blocks.get(n, ()):
            m = get(i)
            if m is None:
                continue
            a = self.X.rank(i)
            for r in range(self.Y.rank(i + n)):
                for c in range(a):
                    out[off + r * a + c] = m[r, c]
        return tuple(out)

    def unflatten(self, n, vec) -> dict:
        ring = self.X.ring
        out = {}
        for i, off in self.blocks.get(n, ()):
            a, b = self.X.rank(i), self.Y.rank(i + n)
            rows = tuple(tuple(vec[off + r * a + c] for c in range(a)) for r in range(b))
            out[i] = FreeMap(ring, b, a, rows)
        return out

    def postcompose(self, other: "HomComplex", f: ChainMap, n) -> FreeMap:
        """Matrix of φ ↦ f∘φ from Hom(X, Y)_n to Hom(X, Y')_n, where other = Hom(X, Y')."""
        ring = self.X.ring
        z = Poly.zero(ring)
        rows = [[z] * self.rank(n) for _ in range(other.rank(n))]
        for i, off in self.blocks.get(n, ()):
            o2 = other._offset(n, i)
            if o2 is None:
                continue
            a = self.X.rank(i)
            fi = f[i + n]
            for r in range(self.Y.rank(i + n)):
                for c in range(a):
                    col = off + r * a + c
                    for r2 in range(other.Y.rank(i + n)):
                        e = fi[r2, r]
                        if e:
                            rows[o2 + r2 * a + c][col] = e
        return FreeMap(ring, other.rank(n), self.rank(n), tuple(tuple(r) for r in rows))


def hom_complex(X: FreeComplex, Y: FreeComplex) -> FreeComplex:
    return HomComplex(X, Y).complex


def homology(X: FreeComplex, i: int) -> ModulePresentation:
    """H_i(X) = ker d_i / im d_(i+1); generators are cycles in X_i."""
    ring = X.ring
    return presented_homology(X.d(i), X.d(i + 1), FreeMap.zero(ring, X.rank(i - 1), 0),
                              FreeMap.zero(ring, X.rank(i), 0))


def graded_hom(G: FreeComplex, M: FreeComplex) -> GradedModule:
    """Hom*(G, M): degree n holds H_n(Hom(G, M)); zero degrees are omitted."""
    hc = HomComplex(G, M)
    comps = {}
    for n in range(hc.lo, hc.hi + 1):
        H = homology(hc.complex, n)
        if not H.is_zero():
            comps[n] = H
    return GradedModule(comps)


def find_nullhomotopy(f: ChainMap):
    """h with f = d h + h d, as {i: X_i -> Y_(i+1)}, or None."""
    hc = HomComplex(f.source, f.target)
    v = hc.flatten(0, f)
    if not any(v):
        return {}
    B = hc.complex.d(1)
    w = lift_membership(v, B)
    if w is None:
        return None
    return hc.unflatten(1, w)


def is_nullhomotopic(f: ChainMap) -> bool:
    hc = HomComplex(f.source, f.target)
    v = hc.flatten(0, f)
    if not any(v):
        return True
    return in_image(v, hc.complex.d(1))


def nullhomotopy_residual(f: ChainMap) -> tuple:
    """Remainder of f against the degree-1 boundaries; nonzero iff f ≄ 0."""
    hc = HomComplex(f.source, f.target)
    v = hc.flatten(0, f)
    if not any(v):
        return v
    return residual(v, hc.complex.d(1))


def minimize(X: FreeComplex) -> tuple[FreeComplex, int]:
    """Cancel nonzero constant differential entries (Gaussian elimination).

    Returns the smaller homotopy-equivalent complex and the number of
    cancelled pairs.  Scan order is degree, then column, then row.
    """
    ring = X.ring
    if X.is_zero_object():
        return X, 0
    lo, hi = X.lo, X.hi
    ranks = {i: X.rank(i) for i in range(lo, hi + 1)}
    D = {i: [list(row) for row in X.d(i).entries] for i in range(lo + 1, hi + 1)}
    count = 0

    def find():
        for i in range(lo + 1, hi + 1):
            M = D[i]
            for c in range(ranks[i]):
                for r in range(ranks[i - 1]):
                    e = M[r][c]
                    if e and e.is_constant():
                        return i, r, c
        return None

    while True:
        hit = find()
        if hit is None:
            break
        i, r, c = hit
        M = D[i]
        uinv = ring.inv(M[r][c].constant_term())
        pivot_row = [e.scale(uinv) for e in M[r]]
        new = []
        for a in range(ranks[i - 1]):
            if a == r:
                continue
            fac = M[a][c]
            row = []
            for b in range(ranks[i]):
                if b == c:
                    continue
                e = M[a][b]
                if fac and pivot_row[b]:
                    e = e - fac * pivot_row[b]
                row.append(e)
            new.append(row)
        D[i] = new
        if i + 1 in D:
            D[i + 1] = [row for k, row in enumerate(D[i + 1]) if k != c]
        if i - 1 in D:
            D[i - 1] = [[e for k, e in enumerate(row) if k != r] for row in D[i - 1]]
        ranks[i] -= 1
        ranks[i - 1] -= 1
        count += 1

    diffs = {i: FreeMap(ring, ranks[i - 1], ranks[i], tuple(tuple(r) for r in D[i]))
             for i in range(lo + 1, hi + 1)}
    return FreeComplex.make(ring, ranks, diffs, check=False), count


# ---------------------------------------------------------------------------
# JSON

def map_to_json(f: FreeMap):
    return [[str(e) for e in row] for row in f.entries]


def map_from_json(ring, rows, target_rank, source_rank) -> FreeMap:
    if len(rows) != target_rank or any(len(r) != source_rank for r in rows):
        raise InvalidInput("matrix entries do not match the declared ranks")
    return FreeMap(ring, target_rank, source_rank,
                   tuple(tuple(Poly.parse(ring, e) for e in r) for r in rows))


def complex_to_json(X: FreeComplex) -> dict:
    return {
        "lo": X.lo,
        "ranks": list(X.ranks),
        "differentials": [
            {"degree": i, "entries": map_to_json(X.d(i))}
            for i in range(X.lo + 1, X.hi + 1) if not X.d(i).is_zero()
        ],
    }


def complex_from_json(ring, data: dict) -> FreeComplex:
    lo = data["lo"]
    ranks = {lo + j: r for j, r in enumerate(data["ranks"])}
    diffs = {}
    for d in data.get("differentials", []):
        i = d["degree"]
        diffs[i] = map_from_json(ring, d["entries"], ranks.get(i - 1, 0), ranks.get(i, 0))
    return FreeComplex.make(ring, ranks, diffs)


def chainmap_to_json(f: ChainMap, with_complexes=True) -> dict:
    out = {"components": [{"degree": i, "entries": map_to_json(f[i])} for i in sorted(f.components)]}
    if with_complexes:
        out = {"source": complex_to_json(f.source), "target": complex_to_json(f.target), **out}
    return out


def chainmap_from_json(ring, data: dict, source=None, target=None) -> ChainMap:
    source = source if source is not None else complex_from_json(ring, data["source"])
    target = target if target is not None else complex_from_json(ring, data["target"])
    comps = {c["degree"]: map_from_json(ring, c["entries"], target.rank(c["degree"]), source.rank(c["degree"]))
             for c in data["components"]}
    return ChainMap(source, target, comps)


def document(ring, payload: dict) -> dict:
    """Wrap a payload with the ring description."""
    return {"ring": format_ring(ring), "order": ring.order, **payload}


def ring_from_document(doc: dict) -> RingSpec:
    return parse_ring(doc["ring"], doc.get("order", "grevlex"))
