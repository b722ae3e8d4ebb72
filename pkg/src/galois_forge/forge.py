"""Build scenic polynomials by the CRT combination ``-15 f2 + 10 f3 + 6 f5 + 30 k``.

``f2``, ``f3`` and ``f5`` carry the prescribed factorization shapes mod 2, 3
and 5; the combination keeps all three shapes because ``-15 = 1 (mod 2)``,
``10 = 1 (mod 3)`` and ``6 = 1 (mod 5)``.  The constant shift ``30 k`` lifts
the graph of an even-degree polynomial above the axis once ``k`` is large
enough, and ``minimal_k`` finds the least such ``k`` exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import mpmath

from .errors import DegreeInvalid, DegreeMismatch, KMaxExceeded, NotMonic
from .ffpoly import ModPoly, random_irreducible
from .galois import ScenicCertificate, scenic_check
from .intpoly import IntPoly, primitive_prs

REFERENCE_COEFFS = (133, 65, 26, 85, 15, 30, 24, -10, 1)
REFERENCE_K = 4
DEFAULT_K_MAX = 10**6


def paper_example() -> IntPoly:
    """``x^8 - 10x^7 + 24x^6 + 30x^5 + 15x^4 + 85x^3 + 26x^2 + 65x + 133``."""
    return IntPoly(REFERENCE_COEFFS)


def paper_lifts() -> tuple[IntPoly, IntPoly, IntPoly]:
    """The integer lifts behind the reference degree-8 example, in the order (f2, f3, f5)."""
    f2 = IntPoly((1, 1, 0, 1, 1, 0, 0, 0, 1))
    f3 = IntPoly((-1, 1)) * IntPoly((2, 0, 1, 0, 0, 0, 0, 1))
    f5 = IntPoly((2, 0, 1)) * IntPoly((1, 1, 0, 1)) * IntPoly((4, 1, 0, 1))
    return f2, f3, f5


def combine(f2: IntPoly, f3: IntPoly, f5: IntPoly, k: int) -> IntPoly:
    d = f2.degree
    if f3.degree != d or f5.degree != d:
        raise DegreeMismatch(f"degrees {f2.degree}, {f3.degree}, {f5.degree} differ")
    for g in (f2, f3, f5):
        if not g.is_monic():
            raise NotMonic(f"{g} is not monic")
    return f2 * -15 + f3 * 10 + f5 * 6 + 30 * k


def make_f2(d: int, rng: random.Random) -> IntPoly:
    return random_irreducible(2, d, rng).lift()


def make_f3(d: int, rng: random.Random) -> IntPoly:
    """Lift of ``(x - c) * g`` with ``g`` irreducible of degree ``d - 1`` mod 3."""
    if d < 4:
        raise DegreeInvalid(f"make_f3 needs d >= 4, got {d}")
    c = rng.randrange(3)
    g = random_irreducible(3, d - 1, rng)
    return (ModPoly(3, (-c, 1)) * g).lift()


def odd_split(d: int) -> tuple[int, int]:
    half = (d - 2) // 2
    if half % 2 == 1:
        return half, half
    return 1, d - 3


def make_f5(d: int, rng: random.Random) -> IntPoly:
    """Lift of ``q * g1 * g2``: an irreducible quadratic and two distinct odd-degree irreducibles mod 5."""
    if d < 6 or d % 2:
        raise DegreeInvalid(f"make_f5 needs even d >= 6, got {d}")
    o1, o2 = odd_split(d)
    q = random_irreducible(5, 2, rng)
    g1 = random_irreducible(5, o1, rng)
    g2 = random_irreducible(5, o2, rng)
    while g2 == g1:
        g2 = random_irreducible(5, o2, rng)
    return (q * g1 * g2).lift()


def real_root_count(f: IntPoly) -> int:
    """Distinct real roots, tolerating repeated roots (the chain then ends in the gcd)."""
    chain = primitive_prs(f, f.derivative())

    def variations(signs):
        signs = [s for s in signs if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    sgn = lambda v: (v > 0) - (v < 0)
    at_pos = [sgn(p.leading) for p in chain]
    at_neg = [sgn(p.leading) * (-1) ** p.degree for p in chain]
    return variations(at_neg) - variations(at_pos)


def _estimate_k(f0: IntPoly) -> int:
    """Least k with ``30 k > -min f0`` from high-precision critical values of ``f0``."""
    digits = max(len(str(abs(c))) for c in f0.coeffs) * 2 + 30
    with mpmath.workdps(digits):
        crit = mpmath.polyroots(
            list(reversed(f0.derivative().coeffs)), maxsteps=400, extraprec=4 * digits
        )
        desc = list(reversed(f0.coeffs))
        tiny = mpmath.mpf(10) ** (-digits // 2)
        values = [mpmath.polyval(desc, mpmath.re(c)) for c in crit if abs(mpmath.im(c)) < tiny]
        if not values:
            return 0
        lowest = min(values)
        return max(0, int(mpmath.floor(-lowest / 30)) + 1)


def minimal_k(
    f2: IntPoly, f3: IntPoly, f5: IntPoly, k_max: int | None = DEFAULT_K_MAX
) -> int:
    """Smallest ``k >= 0`` making ``combine(f2, f3, f5, k)`` free of real roots.

    Root-freeness is upward closed in ``k``, so the answer is certified by two
    Sturm counts: none at ``k``, at least one at ``k - 1``.  A numerical
    estimate of the global minimum supplies the starting guess; if it is off,
    a galloping search followed by bisection recovers the exact value.
    ``k_max=None`` removes the upper limit.
    """
    d = f2.degree
    if d % 2 or d < 2:
        raise DegreeInvalid(f"minimal_k needs even degree, got {d}")
    base = combine(f2, f3, f5, 0)

    def free(k: int) -> bool:
        return real_root_count(base + 30 * k) == 0

    def over(k: int) -> bool:
        return k_max is not None and k > k_max

    if free(0):
        return 0
    guess = max(1, _estimate_k(base))
    if over(guess) and not free(k_max):
        raise KMaxExceeded(f"no root-free shift with k <= {k_max}")
    if free(guess) and not free(guess - 1):
        return guess
    # bracket lo (has roots) < hi (root-free), then bisect
    if free(guess):
        hi, lo = guess, 0
    else:
        lo, step = guess, 1
        hi = guess + step
        while not free(hi):
            if over(hi):
                raise KMaxExceeded(f"no root-free shift with k <= {k_max}")
            lo, step = hi, step * 2
            hi = guess + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if free(mid):
            hi = mid
        else:
            lo = mid
    if over(hi):
        raise KMaxExceeded(f"no root-free shift with k <= {k_max}")
    return hi


@dataclass(frozen=True)
class ForgeResult:
    f: IntPoly
    f2: IntPoly
    f3: IntPoly
    f5: IntPoly
    k: int
    certificate: ScenicCertificate
    seed: int
    degree: int

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "seed": self.seed,
            "f": [str(c) for c in self.f.coeffs],
            "f2": [str(c) for c in self.f2.coeffs],
            "f3": [str(c) for c in self.f3.coeffs],
            "f5": [str(c) for c in self.f5.coeffs],
            "k": str(self.k),
            "odd_split": list(odd_split(self.degree)),
        }


def forge(d: int, seed: int, k_max: int | None = None) -> ForgeResult:
    """Deterministically build a scenic polynomial of even degree ``d >= 6``.

    Unlike :func:`minimal_k`, the shift is unbounded by default: for random
    lifts the least admissible ``k`` is routinely astronomically large.
    """
    if d < 6 or d % 2:
        raise DegreeInvalid(f"forge needs even degree >= 6, got {d}")
    rng = random.Random(seed)
    f2 = make_f2(d, rng)
    f3 = make_f3(d, rng)
    f5 = make_f5(d, rng)
    k = minimal_k(f2, f3, f5, k_max=k_max)
    f = combine(f2, f3, f5, k)
    cert = scenic_check(f)
    if not cert.scenic:
        # cannot happen if the shapes were built right; keep it loud
        raise AssertionError(f"forged polynomial failed certification: {cert.failures}")
    return ForgeResult(f, f2, f3, f5, k, cert, seed, d)
