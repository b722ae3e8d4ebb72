"""Watch the Frobenius cycle-type statistics of a polynomial converge.

For a polynomial with Galois group S_d the density of primes with cycle type
lambda is |class of lambda| / d!.  This script scans primes up to a growing
sequence of bounds and prints the observed frequency next to that
prediction, with the binomial standard error.

    python3 scripts/chebotarev_scan.py                       # the degree-8 example
    python3 scripts/chebotarev_scan.py --poly 1,1,0,0,0,1 --bounds 1000 10000
"""
from __future__ import annotations

import argparse
import math
from collections import Counter
from dataclasses import dataclass, field

from galois_forge.forge import paper_example
from galois_forge.galois import frobenius_scan
from galois_forge.intpoly import IntPoly


@dataclass
class ScanConfig:
    poly: str | None = None
    bounds: list[int] = field(default_factory=lambda: [1_000, 10_000, 100_000, 200_000])
    workers: int = 1
    top: int = 8


def class_density(parts: tuple[int, ...]) -> float:
    """Fraction of S_d made of permutations with the given cycle type."""
    mult = Counter(parts)
    denom = 1
    for length, count in mult.items():
        denom *= length**count * math.factorial(count)
    return 1 / denom


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--poly", help="ascending coefficient CSV (default: the degree-8 example)")
    ap.add_argument("--bounds", type=int, nargs="+", default=ScanConfig().bounds)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--top", type=int, default=8, help="cycle types to show at the largest bound")
    cfg = ScanConfig(**vars(ap.parse_args()))

    f = IntPoly.parse(cfg.poly) if cfg.poly else paper_example()
    d = f.degree
    print(f"f = {f}")
    print(f"{'bound':>8} {'primes':>7} {'irreducible':>12} {'expected':>9} {'z-score':>8}")
    hist = None
    for bound in cfg.bounds:
        hist = frobenius_scan(f, bound, workers=cfg.workers)
        n = hist.primes_used
        frac = float(hist.irreducible_fraction)
        p = 1 / d
        z = (frac - p) / math.sqrt(p * (1 - p) / n) if n else float("nan")
        print(f"{bound:>8} {n:>7} {frac:>12.5f} {p:>9.5f} {z:>8.2f}")

    print(f"\ncycle types at bound {cfg.bounds[-1]} (observed vs S_{d} prediction)")
    for parts, count in sorted(hist.buckets.items(), key=lambda kv: -kv[1])[: cfg.top]:
        print(f"  {','.join(map(str, parts)):<18} {count / hist.primes_used:>8.5f} {class_density(parts):>8.5f}")


if __name__ == "__main__":
    main()
