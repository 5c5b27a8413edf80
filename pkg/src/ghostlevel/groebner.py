"""Buchberger bases for submodules of free modules, syzygies and lifting.

Module elements are handled internally as ``dict[int, coeff]`` whose keys
pack (position, monomial) so that integer order is the position-over-term
order with position 0 largest.  Multiplying by a monomial is adding a
constant to every key.

Syzygies and lifts both come from one construction: the Gröbner basis of
the columns of ``[f; I]`` (f stacked over the identity).  Position-over-term
with the f-rows first eliminates those rows, so basis elements that lead in
the identity block generate ker f, and top-reducing ``(v; 0)`` either clears
the f block (then the identity block holds minus a lift) or leaves a
nonzero remainder (v is not in the image).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import InvalidInput
from .poly import Poly, RingSpec, _axpy

Vector = tuple  # tuple[Poly, ...]


@dataclass(frozen=True, eq=False)
class FreeMap:
    """A matrix of polynomials, viewed as a map A^source_rank -> A^target_rank."""

    ring: RingSpec
    target_rank: int
    source_rank: int
    entries: tuple  # target_rank rows, each a tuple of source_rank Polys

    def __post_init__(self):
        if len(self.entries) != self.target_rank or any(
            len(row) != self.source_rank for row in self.entries
        ):
            raise InvalidInput("entry dimensions do not match the ranks")

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, ring, rows, source_rank=None):
        rows = [tuple(_as_poly(ring, e) for e in row) for row in rows]
        if source_rank is None:
            source_rank = len(rows[0]) if rows else 0
        return cls(ring, len(rows), source_rank, tuple(rows))

    @classmethod
    def from_columns(cls, ring, target_rank, cols):
        cols = [tuple(_as_poly(ring, e) for e in c) for c in cols]
        for c in cols:
            if len(c) != target_rank:
                raise InvalidInput("column length does not match target rank")
        rows = tuple(tuple(c[i] for c in cols) for i in range(target_rank))
        return cls(ring, target_rank, len(cols), rows)

    @classmethod
    def zero(cls, ring, target_rank, source_rank):
        z = Poly.zero(ring)
        return cls(ring, target_rank, source_rank, tuple((z,) * source_rank for _ in range(target_rank)))

    @classmethod
    def identity(cls, ring, n):
        return cls.scalar(ring, n, Poly.const(ring, 1))

    @classmethod
    def scalar(cls, ring, n, x: Poly):
        z = Poly.zero(ring)
        return cls(ring, n, n, tuple(tuple(x if i == j else z for j in range(n)) for i in range(n)))

    # access -------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.source_rank)]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, FreeMap):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.target_rank == other.target_rank
            and self.source_rank == other.source_rank
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.target_rank, self.source_rank, self.entries))

    def __repr__(self):
        rows = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"FreeMap({self.target_rank}x{self.source_rank}: [{rows}])"

    # algebra ------------------------------------------------------------
    def _check_same(self, other):
        if self.ring != other.ring:
            raise InvalidInput("ring mismatch")
        if (self.target_rank, self.source_rank) != (other.target_rank, other.source_rank):
            raise InvalidInput("shape mismatch")

    def __add__(self, other):
        self._check_same(other)
        return FreeMap(self.ring, self.target_rank, self.source_rank, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check_same(other)
        return FreeMap(self.ring, self.target_rank, self.source_rank, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self):
        return FreeMap(self.ring, self.target_rank, self.source_rank,
                       tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, x):
        x = _as_poly(self.ring, x)
        return FreeMap(self.ring, self.target_rank, self.source_rank,
                       tuple(tuple(x * a for a in r) for r in self.entries))

    def __matmul__(self, other: "FreeMap") -> "FreeMap":
        """Composition: (self @ other)(v) = self(other(v))."""
        if self.ring != other.ring:
            raise InvalidInput("ring mismatch")
        if self.source_rank != other.target_rank:
            raise InvalidInput(
                f"cannot compose {self.target_rank}x{self.source_rank} with "
                f"{other.target_rank}x{other.source_rank}")
        z = Poly.zero(self.ring)
        cols = other.columns()
        rows = []
        for row in self.entries:
            out = []
            for c in cols:
                acc = z
                for a, b in zip(row, c):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
            rows.append(tuple(out))
        return FreeMap(self.ring, self.target_rank, other.source_rank, tuple(rows))

    def apply(self, v: Sequence[Poly]) -> Vector:
        if len(v) != self.source_rank:
            raise InvalidInput("vector length does not match source rank")
        z = Poly.zero(self.ring)
        out = []
        for row in self.entries:
            acc = z
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def hstack(self, *others):
        ms = (self,) + others
        if len({m.target_rank for m in ms}) > 1:
            raise InvalidInput("hstack needs equal target ranks")
        rows = tuple(sum((m.entries[i] for m in ms), ()) for i in range(self.target_rank))
        return FreeMap(self.ring, self.target_rank, sum(m.source_rank for m in ms), rows)

    def vstack(self, *others):
        ms = (self,) + others
        if len({m.source_rank for m in ms}) > 1:
            raise InvalidInput("vstack needs equal source ranks")
        rows = sum((m.entries for m in ms), ())
        return FreeMap(self.ring, len(rows), self.source_rank, rows)

    @classmethod
    def block_diag(cls, ring, blocks):
        z = Poly.zero(ring)
        tr = sum(b.target_rank for b in blocks)
        sr = sum(b.source_rank for b in blocks)
        rows = []
        c0 = 0
        for b in blocks:
            for row in b.entries:
                rows.append((z,) * c0 + row + (z,) * (sr - c0 - b.source_rank))
            c0 += b.source_rank
        return cls(ring, tr, sr, tuple(rows))

    def kron(self, other):
        """Kronecker product (self ⊗ other)."""
        rows = []
        for ra in self.entries:
            for rb in other.entries:
                rows.append(tuple(a * b for a in ra for b in rb))
        return FreeMap(self.ring, self.target_rank * other.target_rank,
                       self.source_rank * other.source_rank, tuple(rows))

    def select(self, rows=None, cols=None):
        rows = range(self.target_rank) if rows is None else list(rows)
        cols = range(self.source_rank) if cols is None else list(cols)
        cols = list(cols)
        out = tuple(tuple(self.entries[i][j] for j in cols) for i in rows)
        return FreeMap(self.ring, len(out), len(cols), out)

    def drop_zero_columns(self):
        keep = [j for j in range(self.source_rank) if any(self.entries[i][j] for i in range(self.target_rank))]
        return self.select(cols=keep)

    def transpose(self):
        return FreeMap(self.ring, self.source_rank, self.target_rank,
                       tuple(self.column(j) for j in range(self.source_rank)))

    # Gröbner data (computed once per map) -------------------------------
    @cached_property
    def _stacked(self):
        return _stacked_basis(self)

    @cached_property
    def _image_gb(self):
        return module_groebner(self)


def _as_poly(ring, e):
    if isinstance(e, Poly):
        if e.ring != ring:
            raise InvalidInput("ring mismatch")
        return e
    if isinstance(e, str):
        return Poly.parse(ring, e)
    return Poly.const(ring, e)


# ---------------------------------------------------------------------------
# internal vector helpers

def _to_internal(ring, vec, pos0=0) -> dict:
    codec = ring.codec
    out = {}
    for pos, p in enumerate(vec):
        if p.ring != ring:
            raise InvalidInput("ring mismatch")
        off = codec.pos_offset(pos0 + pos)
        for k, c in p._d.items():
            out[off + k] = c
    return out


def _from_internal(ring, d, rank, pos0=0) -> Vector:
    codec = ring.codec
    parts = [dict() for _ in range(rank)]
    for key, c in d.items():
        pos, k = codec.split(key)
        parts[pos - pos0][k] = c
    return tuple(Poly(ring, part) for part in parts)


def _monic(ring, d):
    lc = d[max(d)]
    if lc == 1:
        return d
    inv = ring.inv(lc)
    out = {}
    _axpy(ring, out, -inv, d, 0)
    return out


class _Basis:
    """Growing list of monic module elements with a lead-term index per position."""

    def __init__(self, ring):
        self.ring = ring
        self.codec = ring.codec
        self.vecs: list[dict] = []
        self.lead: list[int] = []
        self.lexp: list[tuple] = []
        self.lpos: list[int] = []
        self.by_pos: dict[int, list[int]] = {}
        self.alive: list[bool] = []

    def add(self, d):
        d = _monic(self.ring, d)
        lk = max(d)
        pos, mk = self.codec.split(lk)
        idx = len(self.vecs)
        self.vecs.append(d)
        self.lead.append(lk)
        self.lexp.append(self.codec.decode(mk))
        self.lpos.append(pos)
        self.alive.append(True)
        self.by_pos.setdefault(pos, []).append(idx)
        return idx

    def reducer(self, key, skip=-1):
        pos, mk = self.codec.split(key)
        idxs = self.by_pos.get(pos)
        if not idxs:
            return -1
        e = self.codec.decode(mk)
        for i in idxs:
            if i == skip or not self.alive[i]:
                continue
            le = self.lexp[i]
            for a, b in zip(e, le):
                if a < b:
                    break
            else:
                return i
        return -1

    def reduce(self, d, full=True, stop=None, skip=-1):
        """Return (remainder, rest).

        Terms whose key is >= ``stop`` (or all terms when stop is None) are
        reduced; with ``full=False`` reduction ends at the first irreducible
        lead term.  ``rest`` holds whatever was below ``stop``.
        """
        p = dict(d)
        rem = {}
        ring = self.ring
        while p:
            lk = max(p)
            if stop is not None and lk < stop:
                break
            i = self.reducer(lk, skip)
            if i < 0:
                if not full:
                    break
                rem[lk] = p.pop(lk)
                continue
            c = p[lk]
            _axpy(ring, p, c, self.vecs[i], lk - self.lead[i])
        if not full:
            return p, {}
        return rem, p


def _buchberger(ring, vecs, rank_one=False) -> list[dict]:
    """Reduced Gröbner basis (as internal dicts, sorted by descending lead)."""
    B = _Basis(ring)
    codec = ring.codec
    pairs = []
    pending = set()

    def push_pairs(j):
        for i in B.by_pos[B.lpos[j]]:
            if i == j or not B.alive[i]:
                continue
            lcm = tuple(max(a, b) for a, b in zip(B.lexp[i], B.lexp[j]))
            lk = codec.pos_offset(B.lpos[j]) + codec.encode(lcm)
            heapq.heappush(pairs, (lk, i, j))
            pending.add((i, j))

    for v in vecs:
        if not v:
            continue
        h, _ = B.reduce(v, full=False)
        if h:
            push_pairs(B.add(h))

    while pairs:
        lk, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        ei, ej = B.lexp[i], B.lexp[j]
        if rank_one and all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue
        lcm = codec.decode(lk % codec.span)
        pos = B.lpos[i]
        chain = False
        for k in B.by_pos[pos]:
            if k in (i, j):
                continue
            if all(a <= b for a, b in zip(B.lexp[k], lcm)):
                if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                    chain = True
                    break
        if chain:
            continue
        s = {}
        _axpy(ring, s, -1, B.vecs[i], lk - B.lead[i])
        _axpy(ring, s, 1, B.vecs[j], lk - B.lead[j])
        h, _ = B.reduce(s, full=False)
        if h:
            push_pairs(B.add(h))

    # minimal leads, then tail-reduce
    n = len(B.vecs)
    keep = []
    for i in range(n):
        redundant = False
        for j in B.by_pos[B.lpos[i]]:
            if j == i:
                continue
            if all(a <= b for a, b in zip(B.lexp[j], B.lexp[i])) and (B.lexp[j] != B.lexp[i] or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    for i in range(n):
        B.alive[i] = i in keep
    out = []
    for i in keep:
        lead = {B.lead[i]: B.vecs[i][B.lead[i]]}
        tail = dict(B.vecs[i])
        del tail[B.lead[i]]
        rem, _ = B.reduce(tail, full=True, skip=i)
        rem.update(lead)
        out.append(_monic(ring, rem))
    out.sort(key=max, reverse=True)
    return out


# ---------------------------------------------------------------------------
# public API

@dataclass(frozen=True, eq=False)
class ModuleGB:
    """Reduced Gröbner basis of a submodule of A^rank (position-over-term)."""

    ring: RingSpec
    rank: int
    _elems: tuple  # internal dicts

    @property
    def generators(self) -> tuple:
        return tuple(_from_internal(self.ring, d, self.rank) for d in self._elems)

    @property
    def polys(self) -> tuple:
        """The basis as polynomials (rank-one case)."""
        return tuple(v[0] for v in self.generators)

    def __len__(self):
        return len(self._elems)

    @cached_property
    def _basis(self):
        B = _Basis(self.ring)
        for d in self._elems:
            B.add(d)
        return B

    def leads(self) -> list[tuple[int, tuple]]:
        """(position, exponent) of each leading term."""
        B = self._basis
        return list(zip(B.lpos, B.lexp))

    def contains(self, v) -> bool:
        return not any(p for p in normal_form(v, self))

    def contains_all_units(self) -> bool:
        lead_pos = {pos for pos, e in self.leads() if not any(e)}
        return lead_pos >= set(range(self.rank))


def groebner_basis(gens: Sequence[Poly]) -> ModuleGB:
    """Reduced Gröbner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens:
        raise InvalidInput("need at least one generator to fix the ring")
    ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise InvalidInput("generators over different rings")
    elems = _buchberger(ring, [_to_internal(ring, (g,)) for g in gens], rank_one=True)
    return ModuleGB(ring, 1, tuple(elems))


def module_groebner(image_of: FreeMap) -> ModuleGB:
    """Gröbner basis of the column span of a map."""
    ring = image_of.ring
    vecs = [_to_internal(ring, c) for c in image_of.columns()]
    elems = _buchberger(ring, vecs, rank_one=image_of.target_rank == 1)
    return ModuleGB(ring, image_of.target_rank, tuple(elems))


def normal_form(v, gb: ModuleGB) -> Vector:
    """Fully reduced remainder of v modulo the basis."""
    if isinstance(v, Poly):
        v = (v,)
    if len(v) != gb.rank:
        raise InvalidInput(f"vector of length {len(v)} against rank {gb.rank} basis")
    rem, _ = gb._basis.reduce(_to_internal(gb.ring, v), full=True)
    return _from_internal(gb.ring, rem, gb.rank)


def _stacked_basis(f: FreeMap):
    ring = f.ring
    r, m = f.target_rank, f.source_rank
    codec = ring.codec
    vecs = []
    for j, col in enumerate(f.columns()):
        d = _to_internal(ring, col)
        d[codec.pos_offset(r + j) + codec.one] = ring.coerce(1)
        vecs.append(d)
    B = _Basis(ring)
    for d in _buchberger(ring, vecs):
        B.add(d)
    return B


def syzygies(f: FreeMap) -> FreeMap:
    """A map whose columns generate ker f."""
    ring = f.ring
    r, m = f.target_rank, f.source_rank
    if m == 0:
        return FreeMap.zero(ring, 0, 0)
    if r == 0 or f.is_zero():
        return FreeMap.identity(ring, m)
    B = f._stacked
    cols = []
    for d, pos in zip(B.vecs, B.lpos):
        if pos >= r:
            cols.append(_from_internal(ring, d, m, pos0=r))
    return FreeMap.from_columns(ring, m, cols)


def _lift(v, f: FreeMap):
    """Return (w, residual): w with f·w = v or None, and the top remainder."""
    ring = f.ring
    r, m = f.target_rank, f.source_rank
    if len(v) != r:
        raise InvalidInput(f"vector of length {len(v)} against target rank {r}")
    d = _to_internal(ring, v)
    if not d:
        return tuple(Poly.zero(ring) for _ in range(m)), d
    if m == 0:
        return None, d
    B = f._stacked
    stop = ring.codec.pos_offset(r - 1)
    rem, rest = B.reduce(d, full=True, stop=stop)
    if rem:
        return None, rem
    w = _from_internal(ring, rest, m, pos0=r)
    return tuple(-p for p in w), rem


def lift_membership(v, f: FreeMap):
    """Solve f·w = v.  Returns w, or None when v is not in the image of f."""
    if isinstance(v, Poly):
        v = (v,)
    w, _ = _lift(tuple(v), f)
    return w


def in_image(v, f: FreeMap) -> bool:
    if isinstance(v, Poly):
        v = (v,)
    if f.source_rank == 0:
        return not any(v)
    return f._image_gb.contains(tuple(v))


def residual(v, f: FreeMap) -> Vector:
    """Top remainder of v against the image of f (zero iff v ∈ im f)."""
    _, rem = _lift(tuple(v), f)
    return _from_internal(f.ring, rem, f.target_rank) if rem else tuple(Poly.zero(f.ring) for _ in range(f.target_rank))
