"""Ghost maps, ghost-lemma certificates, level bounds and the dimension reports.

A certificate is a tower of Koszul stages whose t factors are each G-ghost
and whose composite is not null-homotopic; by the ghost lemma the top stage
then has G-level at least t + 1.  A build plan is the matching upper bound:
an explicit recipe of shifts, sums and cones producing the object from G.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .complexes import (ChainMap, FreeComplex, HomComplex, chainmap_from_json,
                        chainmap_to_json, complex_from_json, complex_to_json, cone,
                        document, graded_hom, is_nullhomotopic, map_from_json,
                        map_to_json, minimize, nullhomotopy_residual,
                        ring_from_document, shift)
from .errors import (CompositionZero, InternalError, InvalidInput, NotGhost,
                     PreconditionFailed, UnsupportedGenerator)
from .groebner import FreeMap, in_image, syzygies
from .koszul import (KoszulTower, build_tower, ghost_candidate_composition,
                     ghost_factor, koszul_object)
from .modules import depth, regular_sequence_in
from .poly import AlgebraElement, Poly, RingSpec, elements, format_ring
from .samples import random_perfect_complex

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# ghost maps

def ghost_checks(G: FreeComplex, f: ChainMap) -> list[tuple[int, bool]]:
    """Per degree n: is Hom(G, f) zero on H_n?  Only degrees with cycles are listed."""
    hs = HomComplex(G, f.source)
    ht = HomComplex(G, f.target)
    out = []
    for n in range(hs.lo, hs.hi + 1):
        if hs.rank(n) == 0:
            continue
        if ht.rank(n) == 0:
            out.append((n, True))
            continue
        d = hs.complex.d(n)
        Z = FreeMap.identity(G.ring, hs.rank(n)) if d.is_zero() else syzygies(d)
        img = hs.postcompose(ht, f, n) @ Z
        B = ht.complex.d(n + 1)
        ok = all(in_image(c, B) for c in img.columns() if any(c))
        out.append((n, ok))
    return out


def is_ghost(G: FreeComplex, f: ChainMap) -> bool:
    return all(v for _, v in ghost_checks(G, f))


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True, eq=False)
class GhostCertificate:
    generator: FreeComplex
    tower: KoszulTower
    ghost_evidence: tuple  # per factor: ((degree, verdict), ...)
    composition: ChainMap
    residual: tuple  # nonzero remainder of the composite against boundaries
    build_plans: tuple = ()

    @property
    def maps(self):
        return self.tower.factors

    @property
    def implied_bound(self) -> int:
        return self.tower.length

    @property
    def implied_level_lower_bound(self) -> int:
        return self.tower.length + 1

    def with_plans(self, *plans) -> "GhostCertificate":
        return GhostCertificate(self.generator, self.tower, self.ghost_evidence,
                                self.composition, self.residual, self.build_plans + plans)

    def to_json(self) -> dict:
        tw = self.tower
        factors = []
        for s, (f, ev) in enumerate(zip(tw.factors, self.ghost_evidence), start=1):
            factors.append({
                "source_stage": s,
                "target_stage": s - 1,
                "map": chainmap_to_json(f, with_complexes=False),
                "ghost_checks": [[d, v] for d, v in ev],
            })
        return document(self.generator.ring, {
            "schema_version": SCHEMA_VERSION,
            "generator": complex_to_json(self.generator),
            "base": complex_to_json(tw.base),
            "sequence": [str(x) for x in tw.elements],
            "exponents": list(tw.exponents),
            "stages": [complex_to_json(S) for S in tw.stages],
            "factors": factors,
            "composition": {
                "nullhomotopic": False,
                "map": chainmap_to_json(self.composition, with_complexes=False),
                "residual": [str(p) for p in self.residual],
            },
            "implied_level_lower_bound": self.implied_level_lower_bound,
            "build_plans": [p.to_json() for p in self.build_plans],
        })


def _certify(G, M, xs, exponents=None) -> GhostCertificate:
    tower = build_tower(M, xs, exponents, generator=G)
    evidence = []
    for s, f in enumerate(tower.factors, start=1):
        checks = ghost_checks(G, f)
        if not all(v for _, v in checks):
            raise NotGhost(s, checks)
        evidence.append(tuple(checks))
    comp = ghost_candidate_composition(tower)
    res = nullhomotopy_residual(comp)
    if not any(res):
        raise CompositionZero()
    return GhostCertificate(G, tower, tuple(evidence), comp, tuple(res))


def ghost_certificate(G: FreeComplex, M: FreeComplex, xs, exponents=None) -> GhostCertificate:
    """Certify level^G(top of the Koszul tower of M on xs) > len(xs).

    Raises NotGhost(s) or CompositionZero when the hypotheses fail.
    ``exponents`` overrides the automatic choice.
    """
    xs = elements(M.ring, xs)
    if not xs:
        raise InvalidInput("ghost_certificate needs a nonempty sequence")
    return _certify(G, M, xs, exponents)


def replay_certificate(doc: dict) -> dict:
    """Re-derive every verdict of a certificate from its JSON alone."""
    ring = ring_from_document(doc)
    problems = []
    G = complex_from_json(ring, doc["generator"])
    base = complex_from_json(ring, doc["base"])
    stages = [complex_from_json(ring, s) for s in doc["stages"]]
    xs = elements(ring, doc["sequence"])
    ns = doc["exponents"]
    if stages[0] != base:
        problems.append("stage 0 is not the base object")
    factors = []
    for s, fd in enumerate(doc["factors"], start=1):
        expected = ghost_factor(stages[s - 1], xs[s - 1], ns[s - 1])
        if expected.source != stages[s]:
            problems.append(f"stage {s} is not the cone construction on stage {s - 1}")
        try:
            f = chainmap_from_json(ring, fd["map"], stages[s], stages[s - 1])
        except InvalidInput as exc:
            problems.append(f"factor {s}: {exc}")
            continue
        if f != expected:
            problems.append(f"factor {s} differs from x^n ∘ ε(x^(n+1))")
        checks = [[d, v] for d, v in ghost_checks(G, f)]
        if checks != fd["ghost_checks"]:
            problems.append(f"factor {s}: ghost checks do not replay")
        if not all(v for _, v in checks):
            problems.append(f"factor {s} is not ghost")
        factors.append(f)
    comp = ChainMap.identity(base)
    for f in factors:
        comp = comp @ f
    null = is_nullhomotopic(comp)
    if null or doc["composition"]["nullhomotopic"]:
        problems.append("composite is null-homotopic")
    if doc["implied_level_lower_bound"] != len(factors) + 1:
        problems.append("implied bound does not match the number of factors")
    for k, pd in enumerate(doc.get("build_plans", [])):
        plan = BuildPlan.from_json(pd)
        try:
            plan.replay(G)
        except InvalidInput as exc:
            problems.append(f"build plan {k}: {exc}")
    return {"valid": not problems, "problems": problems, "nullhomotopic": null}


# ---------------------------------------------------------------------------
# build plans

@dataclass(frozen=True)
class BuildPlan:
    """Steps building an object from G; every step may refer to earlier ones by index.

    ops: ``take-G``; ``shift`` (of, by); ``sum`` (of: [...]);
    ``cone-with`` (source, target, map components); ``summand`` (of, zero):
    the final passage from X to its minimised summand (X ≅ summand ⊕
    contractible), or to the zero summand.
    """

    steps: tuple = field(default_factory=tuple)

    @property
    def cone_count(self) -> int:
        return sum(1 for s in self.steps if s["op"] == "cone-with")

    def replay(self, G: FreeComplex):
        """Return (complex, level bound) produced by the steps."""
        ring = G.ring
        vals, lens = [], []
        for k, st in enumerate(self.steps):
            op = st["op"]
            if op == "take-G":
                vals.append(G)
                lens.append(1)
            elif op == "shift":
                vals.append(shift(vals[st["of"]], st["by"]))
                lens.append(lens[st["of"]])
            elif op == "sum":
                parts = [vals[j] for j in st["of"]]
                vals.append(parts[0].direct_sum(*parts[1:]))
                lens.append(max(lens[j] for j in st["of"]))
            elif op == "cone-with":
                src, tgt = vals[st["source"]], vals[st["target"]]
                comps = {c["degree"]: map_from_json(ring, c["entries"], tgt.rank(c["degree"]), src.rank(c["degree"]))
                         for c in st["components"]}
                vals.append(cone(ChainMap(src, tgt, comps)))
                lens.append(lens[st["source"]] + lens[st["target"]])
            elif op == "summand":
                vals.append(FreeComplex(ring, 0, (), ()) if st.get("zero") else vals[st["of"]])
                lens.append(lens[st["of"]])
            else:
                raise InvalidInput(f"unknown build step {op!r} at {k}")
        if not vals:
            raise InvalidInput("empty build plan")
        return vals[-1], lens[-1]

    def level_bound(self, G) -> int:
        return self.replay(G)[1]

    def to_json(self) -> dict:
        return {"steps": list(self.steps), "cone_count": self.cone_count}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["steps"]))


def _blocks(X: FreeComplex):
    """Maximal degree runs of X joined by nonzero differentials."""
    blocks = []
    cur = []
    for i in X.support():
        if cur and i == cur[-1] + 1 and not X.d(i).is_zero():
            cur.append(i)
        else:
            if cur:
                blocks.append(cur)
            cur = [i]
    if cur:
        blocks.append(cur)
    return blocks


def level_upper_bound(G: FreeComplex, X: FreeComplex) -> tuple[int, BuildPlan]:
    """Constructive bound on level^A(X) for the rank-one free generator A.

    X is minimised, split where the differential vanishes, and each block is
    built by peeling one degree at a time with a cone.
    """
    ring = X.ring
    if G != FreeComplex.free(ring):
        raise UnsupportedGenerator("level_upper_bound only supports G = A in degree 0")
    Xm, cancelled = minimize(X)
    steps = [{"op": "take-G"}]
    if Xm.is_zero_object():
        steps.append({"op": "summand", "of": 0, "zero": True, "cancelled_pairs": cancelled})
        return 1, BuildPlan(tuple(steps))

    def add(step):
        steps.append(step)
        return len(steps) - 1

    def free_sum(rank, degree):
        ref = add({"op": "shift", "of": 0, "by": degree})
        if rank > 1:
            ref = add({"op": "sum", "of": [ref] * rank})
        return ref

    block_refs = []
    widths = []
    for block in _blocks(Xm):
        a = block[0]
        cur = free_sum(Xm.rank(a), a)
        for k in block[1:]:
            p = free_sum(Xm.rank(k), k - 1)
            cur = add({"op": "cone-with", "source": p, "target": cur,
                       "components": [{"degree": k - 1, "entries": map_to_json(-Xm.d(k))}]})
        block_refs.append(cur)
        widths.append(len(block))
    top = block_refs[0] if len(block_refs) == 1 else add({"op": "sum", "of": block_refs})
    add({"op": "summand", "of": top, "zero": False, "cancelled_pairs": cancelled})
    plan = BuildPlan(tuple(steps))
    return max(widths), plan


# ---------------------------------------------------------------------------
# reports

def _is_free_generator(G):
    return G == FreeComplex.free(G.ring)


def verify_depth_leq_gentime(G: FreeComplex, M: FreeComplex, a) -> dict:
    """depth(a, Hom*(M, M)) ≤ gentime(G), with a certificate realising the depth."""
    ring = M.ring
    xs = elements(ring, getattr(a, "gens", a))
    H = graded_hom(M, M).total(ring)
    if H.quotient_by_ideal(xs).is_zero():
        raise PreconditionFailed("a·Hom*(M,M) = Hom*(M,M)")
    d = depth(xs, H)
    seq = regular_sequence_in(xs, H, d) if d else ()
    if seq is None:
        raise InternalError(f"no regular sequence of length {d} among the candidates")
    cert = _certify(G, M, seq)
    report = {
        "depth": d,
        "sequence": [str(x) for x in seq],
        "certificate_length": cert.implied_bound,
        "gentime_lower_bound": cert.implied_bound,
        "certificate": None,
        "inequality_holds": d <= cert.implied_bound,
    }
    if _is_free_generator(G):
        u, plan = level_upper_bound(G, cert.tower.top)
        cert = cert.with_plans(plan)
        report["tower_top_level_upper_bound"] = u
        report["dim"] = ring.num_vars
        report["inequality_holds"] = report["inequality_holds"] and cert.implied_bound <= ring.num_vars
    report["certificate"] = cert.to_json()
    return document(ring, {"schema_version": SCHEMA_VERSION, **report})


def rdim_report(ring: RingSpec, samples: int = 20, seed: int = 0, generators=(), max_vars: int = 3) -> dict:
    """Lower bound via a ghost certificate, upper bound via build plans."""
    n = ring.num_vars
    if n > max_vars:
        raise InvalidInput(f"{n} variables exceeds the configured bound {max_vars}")
    A = FreeComplex.free(ring)
    xs = [Poly.var(ring, i) for i in range(n)]
    cert = _certify(A, A, xs)
    top_bound, top_plan = level_upper_bound(A, cert.tower.top)
    cert = cert.with_plans(top_plan)
    K = koszul_object(A, xs)
    k_bound, k_plan = level_upper_bound(A, K)

    gens_out = []
    for k, Gp in enumerate(generators):
        entry = {"index": k, "generator": complex_to_json(Gp)}
        try:
            c = _certify(Gp, A, xs)
            entry.update(certificate_length=c.implied_bound, exponents=list(c.tower.exponents),
                         rdim_lower_bound=c.implied_bound)
        except (NotGhost, CompositionZero) as exc:
            entry.update(exc.to_json())
        gens_out.append(entry)

    rng = random.Random(seed)
    battery = []
    for k in range(samples):
        X = random_perfect_complex(ring, rng)
        u, plan = level_upper_bound(A, X)
        battery.append({"index": k, "complex": complex_to_json(X), "level_upper_bound": u,
                        "cone_count": plan.cone_count})
    worst = max((b["level_upper_bound"] for b in battery), default=1)
    lower = cert.implied_bound
    verified = (lower == n and top_bound == n + 1 and k_bound == n + 1 and worst <= n + 1
                and all(g.get("rdim_lower_bound") == n for g in gens_out))
    return document(ring, {
        "schema_version": SCHEMA_VERSION,
        "dim": n,
        "rdim_lower_bound": lower,
        "implied_level_lower_bound": cert.implied_level_lower_bound,
        "certificate": cert.to_json(),
        "koszul": {
            "sequence": [str(x) for x in xs],
            "level_lower_bound": lower + 1,
            "level_upper_bound": k_bound,
            "level_exact": k_bound == lower + 1,
            "build_plan": k_plan.to_json(),
        },
        "generators": gens_out,
        "battery": {"seed": seed, "samples": battery, "max_level_upper_bound": worst,
                    "gentime_upper_evidence": worst - 1},
        "verified": verified,
    })
