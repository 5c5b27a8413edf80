"""Certify Rdim(D^b(mod A)) = dim A for A = F_p[x_0..x_{n-1}], n = 0..N, and print a table."""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from ghostlevel.cli import dumps
from ghostlevel.level import rdim_report
from ghostlevel.poly import RingSpec


@dataclass
class Config:
    max_vars: int = 3
    prime: int = 32003
    samples: int = 20
    seed: int = 0
    out_dir: str | None = None


def run(cfg: Config) -> list[dict]:
    rows = []
    for n in range(cfg.max_vars + 1):
        t0 = time.perf_counter()
        rep = rdim_report(RingSpec(cfg.prime, n), samples=cfg.samples, seed=cfg.seed, max_vars=cfg.max_vars)
        rows.append({
            "n": n,
            "rdim_lower": rep["rdim_lower_bound"],
            "koszul_level": rep["koszul"]["level_upper_bound"],
            "battery_max_level": rep["battery"]["max_level_upper_bound"],
            "verified": rep["verified"],
            "seconds": round(time.perf_counter() - t0, 3),
        })
        if cfg.out_dir:
            Path(cfg.out_dir).mkdir(parents=True, exist_ok=True)
            (Path(cfg.out_dir) / f"rdim_n{n}.json").write_text(dumps(rep))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for k, v in asdict(Config()).items():
        ap.add_argument(f"--{k.replace('_', '-')}", type=type(v) if v is not None else str, default=v)
    cfg = Config(**vars(ap.parse_args()))
    rows = run(cfg)
    print(f"{'n':>2} {'Rdim>=':>7} {'level(K)':>9} {'battery max':>12} {'ok':>4} {'sec':>7}")
    for r in rows:
        print(f"{r['n']:>2} {r['rdim_lower']:>7} {r['koszul_level']:>9} {r['battery_max_level']:>12} "
              f"{'yes' if r['verified'] else 'NO':>4} {r['seconds']:>7}")
    print(json.dumps({"config": asdict(cfg)}, sort_keys=True))


if __name__ == "__main__":
    main()
