"""Finite-dimensional truncation oracle.

Restricts modules to polynomial degree ≤ D (or to one graded piece) and
decides membership, kernels and dimensions by exact Gaussian elimination
over F_p on coefficient vectors.  Nothing here touches the Gröbner code;
polynomials are read term by term and products of monomials are formed by
adding exponent tuples directly.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations_with_replacement

import numpy as np

from .poly import Poly


def monomials(n: int, deg: int) -> list[tuple]:
    if deg < 0:
        return []
    if n == 0:
        return [()] if deg == 0 else []
    out = []
    for c in combinations_with_replacement(range(n), deg):
        e = [0] * n
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    return out


def monomials_upto(n: int, D: int) -> list[tuple]:
    return [m for d in range(D + 1) for m in monomials(n, d)]


def _terms(p: Poly):
    return [(int(c), e) for c, e in p.terms]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def rref_rank(M: np.ndarray, p: int) -> int:
    return len(_rref(M, p)[1])


def _rref(M: np.ndarray, p: int):
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        others = np.nonzero(M[:, c])[0]
        for o in others:
            if o != r:
                M[o] = (M[o] - M[o, c] * M[r]) % p
        pivots.append(c)
        r += 1
    return M, pivots


def nullspace(M: np.ndarray, p: int) -> list[np.ndarray]:
    rows, cols = M.shape
    R, pivots = _rref(M, p)
    free = [c for c in range(cols) if c not in pivots]
    out = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-R[i, f]) % p
        out.append(v)
    return out


def in_span(vecs: list[np.ndarray], v: np.ndarray, p: int) -> bool:
    if not vecs:
        return not np.any(v % p)
    M = np.array(vecs, dtype=np.int64)
    return rref_rank(M, p) == rref_rank(np.vstack([M, v[None, :]]), p)


# ---------------------------------------------------------------------------
# graded pieces

def piece_basis(n: int, shifts, k: int) -> list[tuple]:
    """Basis (pos, monomial) of the degree-k piece of ⊕ A(-shift)."""
    return [(pos, m) for pos, s in enumerate(shifts) for m in monomials(n, k - s)]


def vector_degree(vec, shifts):
    """Degree of a homogeneous vector, None for zero; raises if inhomogeneous."""
    degs = {sum(e) + shifts[pos] for pos, p in enumerate(vec) for _, e in p.terms}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError(f"vector is not homogeneous: degrees {sorted(degs)}")
    return degs.pop()


def _coeff_vector(vec, index, p):
    v = np.zeros(len(index), dtype=np.int64)
    for pos, poly in enumerate(vec):
        for c, e in _terms(poly):
            v[index[(pos, e)]] = c % p
    return v


def piece_matrix(f, src_shifts, tgt_shifts, k: int, p: int) -> np.ndarray:
    """Matrix of a homogeneous map on degree-k pieces (rows = target basis)."""
    n = f.ring.num_vars
    src = piece_basis(n, src_shifts, k)
    tgt = piece_basis(n, tgt_shifts, k)
    index = {b: i for i, b in enumerate(tgt)}
    M = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for col, (j, m) in enumerate(src):
        for i in range(f.target_rank):
            for c, e in _terms(f[i, j]):
                key = (i, _add(m, e))
                if key not in index:
                    raise ValueError("map is not homogeneous for the given shifts")
                M[index[key], col] = (M[index[key], col] + c) % p
    return M


def image_piece(gens, gen_degrees, shifts, k, p) -> list[np.ndarray]:
    """Spanning vectors of the degree-k piece of the submodule generated by columns."""
    n = gens.ring.num_vars
    index = {b: i for i, b in enumerate(piece_basis(n, shifts, k))}
    out = []
    for j, col in enumerate(gens.columns()):
        if gen_degrees[j] is None:
            continue
        for m in monomials(n, k - gen_degrees[j]):
            v = np.zeros(len(index), dtype=np.int64)
            for pos, poly in enumerate(col):
                for c, e in _terms(poly):
                    idx = index[(pos, _add(m, e))]
                    v[idx] = (v[idx] + c) % p
            out.append(v)
    return out


def member(v, gens, shifts, p) -> bool:
    """Is the homogeneous vector v in the span of the homogeneous columns of gens?"""
    k = vector_degree(v, shifts)
    if k is None:
        return True
    n = gens.ring.num_vars
    gd = [vector_degree(c, shifts) for c in gens.columns()]
    index = {b: i for i, b in enumerate(piece_basis(n, shifts, k))}
    return in_span(image_piece(gens, gd, shifts, k, p), _coeff_vector(v, index, p), p)


def quotient_dims(gens, shifts, D, p) -> list[int]:
    """dim (F / im gens)_k for k = 0..D."""
    n = gens.ring.num_vars
    gd = [vector_degree(c, shifts) for c in gens.columns()]
    out = []
    for k in range(D + 1):
        total = len(piece_basis(n, shifts, k))
        vecs = image_piece(gens, gd, shifts, k, p)
        rank = rref_rank(np.array(vecs), p) if vecs else 0
        out.append(total - rank)
    return out


def subquotient_dims(gens, rel, shifts, D, p) -> list[int]:
    """dim ((im gens + im rel) / im rel)_k for k = 0..D."""
    n = gens.ring.num_vars
    both = gens.hstack(rel)
    gd = [vector_degree(c, shifts) for c in both.columns()]
    rd = gd[gens.source_rank:]
    out = []
    for k in range(D + 1):
        top = image_piece(both, gd, shifts, k, p)
        low = image_piece(rel, rd, shifts, k, p)
        rt = rref_rank(np.array(top), p) if top else 0
        rl = rref_rank(np.array(low), p) if low else 0
        out.append(rt - rl)
    return out


def homology_dims(X, grading: dict, i: int, D: int, p: int) -> list[int]:
    """dim H_i(X)_k for k = 0..D via ranks of graded pieces of the differentials."""
    n = X.ring.num_vars
    out = []
    for k in range(D + 1):
        dim_i = len(piece_basis(n, grading.get(i, []), k))
        if dim_i == 0:
            out.append(0)
            continue
        r_out = r_in = 0
        if X.rank(i - 1):
            M = piece_matrix(X.d(i), grading[i], grading[i - 1], k, p)
            r_out = rref_rank(M, p) if M.size else 0
        if X.rank(i + 1):
            M = piece_matrix(X.d(i + 1), grading[i + 1], grading[i], k, p)
            r_in = rref_rank(M, p) if M.size else 0
        out.append(dim_i - r_out - r_in)
    return out


def infer_grading(X) -> dict:
    """Basis degrees making every differential homogeneous (each entry of
    d_i in row r, column c has degree shift(c) - shift(r)).

    Components not linked by any entry get degree 0.  Raises ValueError if
    no consistent grading exists.
    """
    nodes = [(i, a) for i in X.degrees() for a in range(X.rank(i))]
    adj = {v: [] for v in nodes}
    for i in range(X.lo + 1, X.hi + 1):
        d = X.d(i)
        for r in range(d.target_rank):
            for c in range(d.source_rank):
                e = d[r, c]
                if e.is_zero():
                    continue
                if not e.is_homogeneous():
                    raise ValueError("differential entry is not homogeneous")
                w = e.total_degree()
                adj[(i, c)].append(((i - 1, r), -w))
                adj[(i - 1, r)].append(((i, c), w))
    deg = {}
    for v in nodes:
        if v in deg:
            continue
        deg[v] = 0
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for nb, w in adj[u]:
                want = deg[u] + w
                if nb in deg:
                    if deg[nb] != want:
                        raise ValueError("no consistent grading")
                else:
                    deg[nb] = want
                    queue.append(nb)
    # normalise so the smallest shift is 0
    low = min(deg.values(), default=0)
    return {i: [deg[(i, a)] - low for a in range(X.rank(i))] for i in X.degrees()}


# ---------------------------------------------------------------------------
# inhomogeneous truncation (degree ≤ D)

def kernel_upto(f, D: int, p: int) -> list[tuple]:
    """All kernel vectors of f whose entries have degree ≤ D (a basis of that space)."""
    ring = f.ring
    n = ring.num_vars
    src = [(j, m) for j in range(f.source_rank) for m in monomials_upto(n, D)]
    maxdeg = max((f[i, j].total_degree() for i in range(f.target_rank) for j in range(f.source_rank)), default=0)
    tgt = [(i, m) for i in range(f.target_rank) for m in monomials_upto(n, D + max(maxdeg, 0))]
    index = {b: k for k, b in enumerate(tgt)}
    M = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for col, (j, m) in enumerate(src):
        for i in range(f.target_rank):
            for c, e in _terms(f[i, j]):
                k = index[(i, _add(m, e))]
                M[k, col] = (M[k, col] + c) % p
    out = []
    for v in nullspace(M, p):
        polys = [[] for _ in range(f.source_rank)]
        for col in np.nonzero(v)[0]:
            j, m = src[col]
            polys[j].append((int(v[col]), m))
        out.append(tuple(Poly.from_terms(ring, t) for t in polys))
    return out


def member_upto(v, gens, D: int, p: int) -> bool:
    """Is v a combination Σ c_j g_j with deg(c_j) + deg(g_j) ≤ D?  (sound, not complete)."""
    ring = gens.ring
    n = ring.num_vars
    cols = gens.columns()
    vecs = []
    basis = [(i, m) for i in range(gens.target_rank) for m in monomials_upto(n, D)]
    index = {b: k for k, b in enumerate(basis)}

    def coeffs(vec):
        out = np.zeros(len(basis), dtype=np.int64)
        for pos, poly in enumerate(vec):
            for c, e in _terms(poly):
                if (pos, e) not in index:
                    return None
                out[index[(pos, e)]] = (out[index[(pos, e)]] + c) % p
        return out

    for col in cols:
        dg = max((q.total_degree() for q in col), default=-1)
        if dg < 0:
            continue
        for m in monomials_upto(n, D - dg):
            shifted = tuple(Poly.from_terms(ring, [(c, _add(m, e)) for c, e in _terms(q)]) for q in col)
            vecs.append(coeffs(shifted))
    target = coeffs(v)
    if target is None:
        return False
    return in_span(vecs, target, p)
