"""Polynomials over prime fields F_p.

The public type is :class:`ModPoly`; the hot loops (used by the Frobenius
scanner over tens of thousands of primes) work on plain ascending lists of
residues and live in the underscore-prefixed kernels below.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotMonic, RetryLimitExceeded
from .intpoly import IntPoly

TRIAL_DIVISION_BOUND = 1 << 24


def is_small_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    i = 2
    while i * i <= n:
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
        i += 1
    return [i for i, flag in enumerate(sieve) if flag]


def prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------- kernels
# Polynomials are lists of residues in [0, p), ascending, with no trailing
# zeros; the zero polynomial is the empty list.


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _rem_monic(a: list[int], g: Sequence[int], p: int) -> list[int]:
    """``a mod g`` for monic ``g``; ``a`` is consumed."""
    d = len(g) - 1
    top = len(a) - 1
    if top < d:
        return _trim([c % p for c in a])
    for i in range(top, d - 1, -1):
        c = a[i] % p
        if c:
            base = i - d
            for j in range(d):
                a[base + j] -= c * g[j]
    return _trim([c % p for c in a[:d]])


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _sqr(a: Sequence[int]) -> list[int]:
    n = len(a)
    if not n:
        return []
    out = [0] * (2 * n - 1)
    for i in range(n):
        ai = a[i]
        if ai:
            out[2 * i] += ai * ai
            t = 2 * ai
            for j in range(i + 1, n):
                out[i + j] += t * a[j]
    return out


def _mulmod(a, b, g, p):
    return _rem_monic(_mul(a, b), g, p)


def _make_monic(a: list[int], p: int) -> list[int]:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Euclidean division over F_p; ``b`` nonzero."""
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] * inv % p
        q[i - db] = c
        if c:
            base = i - db
            for j in range(db + 1):
                r[base + j] = (r[base + j] - c * b[j]) % p
    return _trim(q), _trim(r[:db])


def _gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Monic gcd over F_p."""
    a, b = list(a), list(b)
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _make_monic(a, p)


def _sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _derivative(a: Sequence[int], p: int) -> list[int]:
    return _trim([(i * a[i]) % p for i in range(1, len(a))])


def _mulx_mod(a: list[int], g: Sequence[int], p: int) -> list[int]:
    """``x * a mod g`` for ``deg a < deg g``: one shift, at most one reduction step."""
    d = len(g) - 1
    if len(a) < d:
        return [0] + a
    c = a[-1]
    out = [(-c * g[0]) % p] + [(a[j - 1] - c * g[j]) % p for j in range(1, d)]
    return _trim(out)


def _x_pow_mod(e: int, g: Sequence[int], p: int) -> list[int]:
    """``x**e mod g`` by left-to-right square-and-multiply."""
    result = _rem_monic([1], g, p)
    for bit in bin(e)[2:]:
        result = _rem_monic(_sqr(result), g, p)
        if bit == "1":
            result = _mulx_mod(result, g, p)
    return result


def _frobenius_matrix(g: Sequence[int], p: int) -> list[list[int]]:
    """Rows ``x^(i*p) mod g`` for ``i < deg g``, padded to length ``deg g``."""
    d = len(g) - 1
    xp = _x_pow_mod(p, g, p)
    rows = []
    cur = _rem_monic([1], g, p)
    for _ in range(d):
        rows.append(cur + [0] * (d - len(cur)))
        cur = _mulmod(cur, xp, g, p)
    return rows


def _apply_frobenius(h: Sequence[int], rows: list[list[int]], p: int) -> list[int]:
    """``h**p mod g`` as the linear map ``sum h_i * x^(i*p)``."""
    d = len(rows)
    acc = [0] * d
    for hi, row in zip(h, rows):
        if hi:
            for j in range(d):
                acc[j] += hi * row[j]
    return _trim([c % p for c in acc])


def _ddf_pairs(g: Sequence[int], p: int) -> tuple[bool, list[tuple[int, int]]]:
    """Distinct-degree factor shape of monic ``g``: ``(squarefree, [(deg, count), ...])``."""
    d = len(g) - 1
    if d <= 0:
        return True, []
    if d == 1:
        return True, [(1, 1)]
    dg = _derivative(g, p)
    if not dg or len(_gcd(g, dg, p)) > 1:
        return False, []
    rows = _frobenius_matrix(g, p)
    x = _rem_monic([0, 1], g, p)
    h = x
    rest = list(g)
    pairs = []
    k = 0
    while 2 * (k + 1) <= len(rest) - 1:
        k += 1
        h = _apply_frobenius(h, rows, p)
        common = _gcd(rest, _sub(h, x, p), p)
        deg = len(common) - 1
        if deg > 0:
            pairs.append((k, deg // k))
            rest = _divmod(rest, common, p)[0]
    if len(rest) > 1:
        pairs.append((len(rest) - 1, 1))
    return True, pairs


# ---------------------------------------------------------------- public API


@dataclass(frozen=True)
class ModPoly:
    p: int
    coeffs: tuple[int, ...]

    def __init__(self, p: int, coeffs: Iterable[int]):
        if p < TRIAL_DIVISION_BOUND and not is_small_prime(p):
            raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(_trim([int(c) % p for c in coeffs])))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def lift(self) -> IntPoly:
        """Integer polynomial with canonical residues in ``[0, p)``."""
        return IntPoly(self.coeffs or (0,))

    def __mul__(self, other: "ModPoly") -> "ModPoly":
        if other.p != self.p:
            raise ValueError("moduli differ")
        return ModPoly(self.p, _mul(self.coeffs, other.coeffs))

    def __mod__(self, other: "ModPoly") -> "ModPoly":
        return ModPoly(self.p, _divmod(self.coeffs, other.coeffs, self.p)[1])

    def to_csv(self) -> str:
        return (",".join(str(c) for c in self.coeffs) or "0") + f" mod {self.p}"

    def __str__(self) -> str:
        return self.to_csv()


@dataclass(frozen=True)
class FactorShape:
    pairs: tuple[tuple[int, int], ...]
    squarefree: bool

    @property
    def total_degree(self) -> int:
        return sum(d * c for d, c in self.pairs)

    def partition(self) -> tuple[int, ...]:
        """Factor degrees as a descending partition, one part per factor."""
        parts = []
        for deg, count in self.pairs:
            parts.extend([deg] * count)
        return tuple(sorted(parts, reverse=True))

    def to_json(self) -> dict:
        return {"pairs": [[d, c] for d, c in self.pairs], "squarefree": self.squarefree}


def reduce(f: IntPoly, p: int) -> ModPoly:
    return ModPoly(p, f.coeffs)


def _require_monic(g: ModPoly) -> None:
    if not g.is_monic():
        raise NotMonic(f"{g} is not monic")


def is_irreducible(g: ModPoly) -> bool:
    """Rabin's test: ``x^(p^d) = x mod g`` and ``gcd(x^(p^(d/q)) - x, g) = 1`` for primes ``q | d``."""
    _require_monic(g)
    d = g.degree
    if d < 1:
        raise ValueError("irreducibility of a constant")
    if d == 1:
        return True
    p, gc = g.p, list(g.coeffs)
    rows = _frobenius_matrix(gc, p)
    x = _rem_monic([0, 1], gc, p)
    powers = [x]  # powers[k] = x^(p^k) mod g
    for _ in range(d):
        powers.append(_apply_frobenius(powers[-1], rows, p))
    if powers[d] != x:
        return False
    for q in prime_factors(d):
        if len(_gcd(gc, _sub(powers[d // q], x, p), p)) > 1:
            return False
    return True


def ddf(g: ModPoly) -> FactorShape:
    """Distinct-degree factorization shape of a monic polynomial.

    Non-squarefree inputs yield ``FactorShape((), squarefree=False)``.
    """
    _require_monic(g)
    squarefree, pairs = _ddf_pairs(list(g.coeffs), g.p)
    return FactorShape(tuple(pairs), squarefree)


def random_irreducible(p: int, m: int, rng: random.Random) -> ModPoly:
    """Rejection-sample a monic irreducible of degree ``m`` over F_p."""
    if m < 1:
        raise ValueError("degree must be at least 1")
    for _ in range(64 * m):
        cand = ModPoly(p, [rng.randrange(p) for _ in range(m)] + [1])
        if is_irreducible(cand):
            return cand
    raise RetryLimitExceeded(f"no irreducible of degree {m} mod {p} after {64 * m} draws")
