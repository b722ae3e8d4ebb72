"""Forge many scenic polynomials and summarize shift sizes, timings and torus residuals.

    python3 scripts/forge_batch.py --degrees 8 10 12 --seeds 50 --torus
    python3 scripts/forge_batch.py --out results/forge.json
"""
from __future__ import annotations

import argparse
import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from galois_forge.forge import forge
from galois_forge.torus import period_matrix


@dataclass
class BatchConfig:
    degrees: list[int] = field(default_factory=lambda: [8, 10, 12, 16, 20])
    seeds: int = 20
    first_seed: int = 0
    torus: bool = False
    out: str | None = None


def run(cfg: BatchConfig) -> dict:
    rows = []
    for d in cfg.degrees:
        for seed in range(cfg.first_seed, cfg.first_seed + cfg.seeds):
            t0 = time.perf_counter()
            res = forge(d, seed)
            row = {
                "degree": d,
                "seed": seed,
                "k_digits": len(str(res.k)),
                "max_coeff_digits": max(len(str(abs(c))) for c in res.f.coeffs),
                "forge_seconds": time.perf_counter() - t0,
            }
            if cfg.torus:
                t0 = time.perf_counter()
                model = period_matrix(res.f)
                row["torus_seconds"] = time.perf_counter() - t0
                row["torus_ok"] = model.ok()
                row["worst_residual"] = max(
                    model.residual_report[k] for k in ("Pi_C_minus_D_Pi", "J_squared_plus_I", "J_C_minus_C_J")
                )
                row["working_digits"] = model.dps
            rows.append(row)
    summary = {}
    for d in cfg.degrees:
        sub = [r for r in rows if r["degree"] == d]
        summary[d] = {
            "median_k_digits": statistics.median(r["k_digits"] for r in sub),
            "max_k_digits": max(r["k_digits"] for r in sub),
            "median_forge_seconds": statistics.median(r["forge_seconds"] for r in sub),
            "max_forge_seconds": max(r["forge_seconds"] for r in sub),
        }
        if cfg.torus:
            summary[d]["torus_all_ok"] = all(r["torus_ok"] for r in sub)
            summary[d]["max_working_digits"] = max(r["working_digits"] for r in sub)
    return {"config": asdict(cfg), "summary": summary, "runs": rows}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", type=int, nargs="+", default=BatchConfig().degrees)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--first-seed", type=int, default=0)
    ap.add_argument("--torus", action="store_true", help="also build the period matrix for each polynomial")
    ap.add_argument("--out", help="write the full JSON record here")
    cfg = BatchConfig(**vars(ap.parse_args()))
    result = run(cfg)

    header = f"{'d':>3} {'k digits (med/max)':>19} {'forge s (med/max)':>19}"
    if cfg.torus:
        header += f" {'torus ok':>9} {'max dps':>8}"
    print(header)
    for d, s in result["summary"].items():
        line = f"{d:>3} {s['median_k_digits']:>9} / {s['max_k_digits']:<7} {s['median_forge_seconds']:>8.3f} / {s['max_forge_seconds']:<8.3f}"
        if cfg.torus:
            line += f" {str(s['torus_all_ok']):>9} {s['max_working_digits']:>8}"
        print(line)
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps(result, indent=2, sort_keys=True) + "\n")
        print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main()
