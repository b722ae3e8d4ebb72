"""Dense univariate polynomials over the integers.

Coefficients are stored ascending by exponent, so ``IntPoly((133, 65, 1))``
is ``x^2 + 65x + 133``.  The zero polynomial is ``IntPoly((0,))`` and is a
legitimate value: its degree is reported as ``-1``, it is not monic, it
evaluates to zero everywhere, and operations that need a nonzero input say so
in their docstring.

Everything here is exact: Python integers for coefficients, ``Fraction`` for
evaluation points.  Remainder sequences are computed fraction-free by
primitive pseudo-division.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import NotMonic, NotSquarefree

Number = int | Fraction


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        coeffs = [0]
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        coeffs = [int(c) for c in coeffs]
        object.__setattr__(self, "coeffs", _trim(coeffs))

    # construction helpers

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        """Parse the comma-separated ascending coefficient format, e.g. ``"1,0,1"``."""
        cleaned = "".join(text.split()).replace("−", "-")
        if not cleaned:
            raise ValueError("empty polynomial string")
        parts = cleaned.split(",")
        coeffs = []
        for part in parts:
            if part.startswith("+"):
                part = part[1:]
            try:
                coeffs.append(int(part))
            except ValueError:
                raise ValueError(f"bad coefficient {part!r} in polynomial {text!r}") from None
        return cls(coeffs)

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    def to_csv(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    # basic queries

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def content(self) -> int:
        c = 0
        for a in self.coeffs:
            c = gcd(c, a)
        return c

    def primitive(self) -> "IntPoly":
        """Divide out the content, normalising the leading coefficient to be positive."""
        if self.is_zero():
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return IntPoly(a // c for a in self.coeffs)

    def derivative(self) -> "IntPoly":
        if len(self.coeffs) == 1:
            return IntPoly((0,))
        return IntPoly(i * a for i, a in enumerate(self.coeffs) if i > 0)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    # ring operations

    def __add__(self, other: "IntPoly | int") -> "IntPoly":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other: "IntPoly | int") -> "IntPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "IntPoly | int") -> "IntPoly":
        return _coerce(other) - self

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(a * other for a in self.coeffs)
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __call__(self, x: Number) -> Number:
        return evaluate(self, x)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(value: "IntPoly | int") -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    return IntPoly((value,))


def evaluate(f: IntPoly, x: Number) -> Number:
    """Horner evaluation; exact for int and Fraction arguments."""
    acc: Number = 0
    for a in reversed(f.coeffs):
        acc = acc * x + a
    return acc


def pseudo_remainder(a: IntPoly, b: IntPoly) -> tuple[IntPoly, int]:
    """Return ``(r, m)`` with ``m * a = q * b + r`` and ``m = lc(b)**(deg a - deg b + 1)``."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-division by the zero polynomial")
    db = b.degree
    if a.degree < db:
        return a, 1
    r = list(a.coeffs)
    lb = b.leading
    bc = b.coeffs
    steps = a.degree - db + 1
    for _ in range(steps):
        dr = len(r) - 1
        if dr < db:
            # premature drop in degree still consumes a factor of lc(b)
            r = [c * lb for c in r]
            continue
        lr = r[-1]
        shift = dr - db
        r = [c * lb for c in r]
        for j, bj in enumerate(bc):
            r[shift + j] -= lr * bj
        r.pop()
        while len(r) > 1 and r[-1] == 0:
            r.pop()
        if not r:
            r = [0]
    return IntPoly(r), lb**steps


def primitive_prs(f: IntPoly, g: IntPoly) -> list[IntPoly]:
    """Sturm-style primitive remainder sequence ``f, g, -rem, ...``.

    Each new term is the negated pseudo-remainder, multiplied by a positive
    rational so it keeps the sign of the true Euclidean remainder and has
    content 1.  The sequence ends with the last nonzero term.
    """
    seq = [f, g]
    while not seq[-1].is_zero():
        r, mult = pseudo_remainder(seq[-2], seq[-1])
        if r.is_zero():
            break
        if mult < 0:
            r = -r
        c = r.content()
        seq.append(IntPoly(-(a // c) for a in r.coeffs))
    return seq


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Q (positive leading coefficient)."""
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r, _ = pseudo_remainder(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def squarefree_part_check(f: IntPoly) -> bool:
    """True iff ``f`` has no repeated complex root, i.e. ``gcd(f, f')`` is constant.

    The zero polynomial is rejected; nonzero constants count as squarefree.
    """
    if f.is_zero():
        raise ValueError("squarefree check on the zero polynomial")
    if f.degree <= 1:
        return True
    return poly_gcd(f, f.derivative()).degree == 0


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _variations(signs: Iterable[int]) -> int:
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def sturm_chain(f: IntPoly) -> list[IntPoly]:
    if f.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    return primitive_prs(f, f.derivative())


def sturm_real_root_count(f: IntPoly) -> int:
    """Number of distinct real roots of a squarefree ``f``.

    Signs at -inf/+inf come from leading coefficients and degree parity.
    Raises ``NotSquarefree`` when the chain ends in a nonconstant gcd.
    """
    if f.degree <= 0:
        if f.is_zero():
            raise ValueError("real root count of the zero polynomial")
        return 0
    chain = sturm_chain(f)
    if chain[-1].degree > 0:
        raise NotSquarefree(f"{f} has a repeated root")
    at_pos = [_sign(p.leading) for p in chain]
    at_neg = [_sign(p.leading) * (-1 if p.degree % 2 else 1) for p in chain]
    return _variations(at_neg) - _variations(at_pos)


def sturm_count_interval(f: IntPoly, a: Number, b: Number) -> int:
    """Distinct real roots in the half-open interval ``(a, b]``."""
    chain = sturm_chain(f)
    if chain[-1].degree > 0:
        raise NotSquarefree(f"{f} has a repeated root")
    va = _variations(_sign_q(evaluate(p, a)) for p in chain)
    vb = _variations(_sign_q(evaluate(p, b)) for p in chain)
    return va - vb


def _sign_q(v: Number) -> int:
    return (v > 0) - (v < 0)


def cauchy_bound(f: IntPoly) -> int:
    """``1 + max |a_i|`` over the non-leading coefficients of a monic ``f``."""
    if f.is_zero() or not f.is_monic():
        raise NotMonic(f"Cauchy bound needs a monic polynomial, got {f}")
    return 1 + max((abs(a) for a in f.coeffs[:-1]), default=0)


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant (Bareiss elimination) of a square integer matrix."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            mik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(f: IntPoly, g: IntPoly) -> list[list[int]]:
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return rows


def resultant(f: IntPoly, g: IntPoly) -> int:
    if f.is_zero() or g.is_zero():
        return 0
    if f.degree == 0:
        return f.leading ** g.degree
    if g.degree == 0:
        return g.leading ** f.degree
    return bareiss_det(sylvester_matrix(f, g))


def discriminant(f: IntPoly) -> int:
    """``(-1)^(d(d-1)/2) * Res(f, f') / lc(f)``; zero iff ``f`` has a repeated root."""
    d = f.degree
    if d < 1:
        raise ValueError(f"discriminant needs degree >= 1, got {f}")
    if d == 1:
        return 1
    res = resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, f.leading)
    assert r == 0
    return q
