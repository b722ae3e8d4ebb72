"""Scenic polynomials, their complex tori, and Reid-Tai checks."""

__version__ = "0.1.0"

from .intpoly import IntPoly
from .forge import combine, forge, minimal_k, paper_example, paper_lifts
from .galois import check_vdw, frobenius_scan, scenic_check, symmetric_closure_oracle

__all__ = [
    "IntPoly",
    "check_vdw",
    "combine",
    "forge",
    "frobenius_scan",
    "minimal_k",
    "paper_example",
    "paper_lifts",
    "scenic_check",
    "symmetric_closure_oracle",
]
