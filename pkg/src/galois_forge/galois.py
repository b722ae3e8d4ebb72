"""Certificates for the full symmetric Galois group.

``check_vdw`` applies the mod 2 / mod 3 / mod 5 factorization-shape criterion,
``symmetric_closure_oracle`` checks by brute force that the permutations that
criterion produces really generate S_d, and ``frobenius_scan`` tallies
Frobenius cycle types over many primes as a statistical sanity check.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegreeTooLarge, DegreeTooSmall, NotMonic, NotSquarefree
from .ffpoly import FactorShape, _ddf_pairs, ddf, primes_up_to, reduce
from .intpoly import IntPoly, discriminant, squarefree_part_check, sturm_real_root_count

ORACLE_MAX_DEGREE = 8


@dataclass(frozen=True)
class VdWCertificate:
    degree: int
    shape2: FactorShape
    shape3: FactorShape
    shape5: FactorShape
    cond1: bool
    cond2: bool
    cond3: bool

    @property
    def pass_(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3

    def odd_split(self) -> tuple[int, ...] | None:
        """Degrees of the odd factors mod 5, when condition 3 holds."""
        if not self.cond3:
            return None
        return tuple(sorted(d for d, c in self.shape5.pairs if d != 2 for _ in range(c)))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "shape2": self.shape2.to_json(),
            "shape3": self.shape3.to_json(),
            "shape5": self.shape5.to_json(),
            "cond1": self.cond1,
            "cond2": self.cond2,
            "cond3": self.cond3,
            "pass": self.pass_,
        }


def _cond3(shape: FactorShape, d: int) -> bool:
    if not shape.squarefree:
        return False
    quadratics = [c for deg, c in shape.pairs if deg == 2]
    if quadratics != [1]:
        return False
    odd = [(deg, c) for deg, c in shape.pairs if deg != 2]
    if any(deg % 2 == 0 for deg, _ in odd):
        return False
    n_factors = sum(c for _, c in odd)
    return n_factors in (1, 2) and sum(deg * c for deg, c in odd) == d - 2


def check_vdw(f: IntPoly) -> VdWCertificate:
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    d = f.degree
    if d < 4:
        raise DegreeTooSmall(f"criterion needs degree >= 4, got {d}")
    s2, s3, s5 = (ddf(reduce(f, p)) for p in (2, 3, 5))
    cond1 = s2.squarefree and s2.pairs == ((d, 1),)
    cond2 = s3.squarefree and s3.pairs == ((1, 1), (d - 1, 1))
    return VdWCertificate(d, s2, s3, s5, cond1, cond2, _cond3(s5, d))


@dataclass(frozen=True)
class ScenicCertificate:
    vdw: VdWCertificate | None
    monic: bool
    even_degree: bool
    real_root_count: int | None
    squarefree: bool
    failures: tuple[str, ...] = ()

    @property
    def scenic(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "vdw": self.vdw.to_json() if self.vdw else None,
            "monic": self.monic,
            "even_degree": self.even_degree,
            "real_root_count": self.real_root_count,
            "squarefree": self.squarefree,
            "scenic": self.scenic,
            "failures": list(self.failures),
        }


def scenic_check(f: IntPoly) -> ScenicCertificate:
    """Run every scenic requirement and record failures instead of raising."""
    failures = []
    monic = not f.is_zero() and f.is_monic()
    if not monic:
        failures.append("not monic")
    even = f.degree > 0 and f.degree % 2 == 0
    if not even:
        failures.append("degree not even and positive")
    squarefree = not f.is_zero() and squarefree_part_check(f)
    if not squarefree:
        failures.append("repeated roots")

    vdw = None
    if monic:
        try:
            vdw = check_vdw(f)
        except DegreeTooSmall as exc:
            failures.append(str(exc))
        else:
            for name in ("cond1", "cond2", "cond3"):
                if not getattr(vdw, name):
                    failures.append(f"van der Waerden {name} fails")

    real_roots = None
    if squarefree and f.degree > 0:
        real_roots = sturm_real_root_count(f)
        if real_roots:
            failures.append(f"{real_roots} real roots")
    return ScenicCertificate(vdw, monic, even, real_roots, squarefree, tuple(failures))


# ------------------------------------------------------------ group oracle


def _cycle(points: list[int], d: int) -> tuple[int, ...]:
    perm = list(range(d))
    for a, b in zip(points, points[1:] + points[:1]):
        perm[a] = b
    return tuple(perm)


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[i] for i in b)


def _power(a: tuple[int, ...], k: int) -> tuple[int, ...]:
    out = tuple(range(len(a)))
    for _ in range(k):
        out = _compose(a, out)
    return out


def closure_order(generators: list[tuple[int, ...]]) -> int:
    """Order of the group generated by ``generators`` (breadth-first closure)."""
    d = len(generators[0])
    identity = tuple(range(d))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = _compose(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


def oracle_generators(d: int, odd_split: tuple[int, int]) -> list[tuple[int, ...]]:
    """The d-cycle, a (d-1)-cycle, and the transposition hidden in a (2, o1, o2) element."""
    o1, o2 = odd_split
    full = _cycle(list(range(d)), d)
    almost = _cycle(list(range(1, d)), d)
    mixed = _compose(
        _cycle([0, 1], d),
        _compose(_cycle(list(range(2, 2 + o1)), d), _cycle(list(range(2 + o1, d)), d)),
    )
    transposition = _power(mixed, math.lcm(o1, o2))
    return [full, almost, transposition]


def symmetric_closure_oracle(
    d: int, odd_split: tuple[int, int] | None = None, *, only_full_cycle: bool = False
) -> tuple[bool, int]:
    """Check that the criterion's cycle types generate all of S_d.

    ``only_full_cycle`` keeps just the d-cycle, a diagnostic that must fail.
    """
    if d > ORACLE_MAX_DEGREE:
        raise DegreeTooLarge(f"closure oracle limited to d <= {ORACLE_MAX_DEGREE}")
    if only_full_cycle:
        gens = [_cycle(list(range(d)), d)]
    else:
        if odd_split is None:
            raise ValueError("odd_split required")
        o1, o2 = odd_split
        if o1 % 2 == 0 or o2 % 2 == 0 or o1 + o2 != d - 2 or min(o1, o2) < 1:
            raise ValueError(f"bad odd split {odd_split} for degree {d}")
        gens = oracle_generators(d, (o1, o2))
    order = closure_order(gens)
    return order == math.factorial(d), order


# ------------------------------------------------------------ Frobenius scan


@dataclass
class CycleHistogram:
    degree: int
    prime_bound: int
    primes_used: int = 0
    ramified: list[int] = field(default_factory=list)
    buckets: Counter = field(default_factory=Counter)

    @property
    def irreducible_fraction(self) -> Fraction:
        if not self.primes_used:
            return Fraction(0)
        return Fraction(self.buckets.get((self.degree,), 0), self.primes_used)

    def merge(self, other: "CycleHistogram") -> "CycleHistogram":
        return CycleHistogram(
            self.degree,
            max(self.prime_bound, other.prime_bound),
            self.primes_used + other.primes_used,
            sorted(self.ramified + other.ramified),
            self.buckets + other.buckets,
        )

    def to_json(self) -> dict:
        frac = self.irreducible_fraction
        keys = sorted(self.buckets, key=lambda k: (len(k), k))
        return {
            "degree": self.degree,
            "prime_bound": self.prime_bound,
            "primes_used": self.primes_used,
            "ramified": self.ramified,
            "buckets": {",".join(map(str, k)): self.buckets[k] for k in keys},
            "irreducible_fraction": f"{frac.numerator}/{frac.denominator}",
            "irreducible_fraction_float": float(frac),
        }


def _scan_primes(coeffs: tuple[int, ...], disc: int, primes: list[int], bound: int) -> CycleHistogram:
    hist = CycleHistogram(len(coeffs) - 1, bound)
    for p in primes:
        if disc % p == 0:
            hist.ramified.append(p)
            continue
        squarefree, pairs = _ddf_pairs([c % p for c in coeffs], p)
        # an unramified prime always gives a squarefree image
        assert squarefree
        parts = []
        for deg, count in pairs:
            parts.extend([deg] * count)
        hist.buckets[tuple(sorted(parts, reverse=True))] += 1
        hist.primes_used += 1
    return hist


def frobenius_scan(f: IntPoly, prime_bound: int, workers: int = 1) -> CycleHistogram:
    """Histogram of mod-p factorization patterns over unramified primes ``p <= prime_bound``."""
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    if not squarefree_part_check(f):
        raise NotSquarefree(f"{f} has a repeated root")
    disc = discriminant(f)
    primes = primes_up_to(prime_bound)
    if workers <= 1 or len(primes) < 2 * workers:
        return _scan_primes(f.coeffs, disc, primes, prime_bound)
    chunks = [primes[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_scan_primes, [f.coeffs] * workers, [disc] * workers, chunks, [prime_bound] * workers))
    total = CycleHistogram(f.degree, prime_bound)
    for part in parts:
        total = total.merge(part)
    return total
