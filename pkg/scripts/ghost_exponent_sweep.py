"""Sweep random (G, M, x): how large must the exponent be before x^n ε(x^(n+1)) is G-ghost?

For each sample the smallest working exponent is found by direct ghost testing
and compared with the torsion exponent chosen automatically.
"""
from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import asdict, dataclass

from ghostlevel.complexes import FreeComplex
from ghostlevel.groebner import FreeMap
from ghostlevel.koszul import build_tower
from ghostlevel.level import is_ghost
from ghostlevel.poly import Poly, RingSpec
from ghostlevel.samples import random_homogeneous


@dataclass
class Config:
    nvars: int = 2
    samples: int = 100
    seed: int = 0
    max_exponent: int = 6


def two_term(ring, rng):
    rows, cols = rng.randint(1, 2), rng.randint(1, 2)
    f = FreeMap.from_rows(ring, [[random_homogeneous(ring, rng.randint(1, 2), rng, 0.7)
                                  for _ in range(cols)] for _ in range(rows)], source_rank=cols)
    return FreeComplex.two_term(f, rng.randint(-1, 1))


def minimal_ghost_exponent(G, M, x, cap):
    for n in range(cap + 1):
        if is_ghost(G, build_tower(M, [x], [n]).factors[0]):
            return n
    return None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for k, v in asdict(Config()).items():
        ap.add_argument(f"--{k.replace('_', '-')}", type=type(v), default=v)
    cfg = Config(**vars(ap.parse_args()))
    ring = RingSpec(32003, cfg.nvars)
    rng = random.Random(cfg.seed)
    xs = [Poly.var(ring, i) for i in range(cfg.nvars)]
    pairs = Counter()
    for _ in range(cfg.samples):
        G, M = two_term(ring, rng), two_term(ring, rng)
        x = rng.choice(xs) if rng.random() < 0.5 else rng.choice(xs) * rng.choice(xs)
        auto = build_tower(M, [x], None, generator=G).exponents[0]
        least = minimal_ghost_exponent(G, M, x, cfg.max_exponent)
        pairs[(least, auto)] += 1
    print("least ghost exponent vs automatic choice (count)")
    for (least, auto), c in sorted(pairs.items(), key=lambda kv: (kv[0][0] is None, kv[0])):
        print(f"  least={least}  auto={auto}  x{c}")
    over = sum(c for (least, auto), c in pairs.items() if least is not None and auto >= least)
    print(f"auto exponent sufficient in {over}/{cfg.samples} samples")


if __name__ == "__main__":
    main()
