"""Tabulate Reid-Tai ages of the three double-point models as n grows.

    python3 scripts/age_table.py --max-n 8
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from galois_forge.reidtai import MODEL_NAMES, classify, local_model


@dataclass
class TableConfig:
    max_n: int = 6


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=TableConfig.max_n)
    cfg = TableConfig(**vars(ap.parse_args()))

    print(f"{'n':>3} {'variant':>8} {'model':>6} {'min age':>8} {'verdict':<22} ages")
    for n in range(1, cfg.max_n + 1):
        for variant in ("base", "total"):
            for name in MODEL_NAMES:
                res = classify(local_model(n, variant, name))
                ages = ", ".join(str(a) for a in sorted(res.ages))
                print(f"{n:>3} {variant:>8} {name:>6} {str(min(res.ages)):>8} {res.verdict.value:<22} {ages}")


if __name__ == "__main__":
    main()
