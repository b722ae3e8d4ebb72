"""Reid-Tai ages for finite abelian groups acting diagonally on C^m.

An element of order ``r`` with rotation numbers ``a_j`` acts as
``diag(exp(2 pi i a_j / r))``; its age is ``sum a_j / r``.  Without
quasi-reflections the quotient is terminal iff every non-identity element
has age > 1, canonical iff every age is >= 1.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import QuasiReflectionPresent


class Verdict(enum.Enum):
    TERMINAL = "Terminal"
    CANONICAL_NOT_TERMINAL = "CanonicalNotTerminal"
    NOT_CANONICAL = "NotCanonical"


@dataclass(frozen=True)
class GroupElement:
    order: int
    rotations: tuple[int, ...]

    def __init__(self, order: int, rotations: Iterable[int]):
        if order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "rotations", tuple(int(a) % order for a in rotations))

    @property
    def dim(self) -> int:
        return len(self.rotations)

    def is_identity(self) -> bool:
        return not any(self.rotations)

    def is_quasi_reflection(self) -> bool:
        return sum(1 for a in self.rotations if a) == 1

    def normalized(self) -> "GroupElement":
        """Same element written with its true order."""
        g = math.gcd(self.order, *self.rotations) if any(self.rotations) else self.order
        return GroupElement(self.order // g, (a // g for a in self.rotations))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.order, (-a for a in self.rotations))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        r = math.lcm(self.order, other.order)
        s, t = r // self.order, r // other.order
        return GroupElement(r, (a * s + b * t for a, b in zip(self.rotations, other.rotations))).normalized()

    def to_json(self) -> dict:
        return {"order": self.order, "rotations": list(self.rotations)}


def age(g: GroupElement) -> Fraction:
    return Fraction(sum(g.rotations), g.order)


@dataclass(frozen=True)
class DiagonalAction:
    generators: tuple[GroupElement, ...]
    elements: tuple[GroupElement, ...]

    @property
    def dim(self) -> int:
        return self.generators[0].dim

    @property
    def group_order(self) -> int:
        return len(self.elements) + 1


def generate(generators: Sequence[GroupElement]) -> DiagonalAction:
    """Close the generators under multiplication; identity is dropped from ``elements``."""
    if not generators:
        raise ValueError("need at least one generator")
    dims = {g.dim for g in generators}
    if len(dims) != 1:
        raise ValueError("generators act on spaces of different dimension")
    gens = tuple(g.normalized() for g in generators)
    identity = GroupElement(1, [0] * gens[0].dim)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = h * g
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    elements = sorted((e for e in seen if not e.is_identity()), key=lambda e: (e.order, e.rotations))
    return DiagonalAction(gens, tuple(elements))


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    ages: tuple[Fraction, ...]
    elements: tuple[GroupElement, ...]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "ages": [str(a) for a in self.ages],
            "elements": [e.to_json() for e in self.elements],
            "quasi_reflections": [e.is_quasi_reflection() for e in self.elements],
        }


def classify(action: DiagonalAction) -> Classification:
    bad = [e for e in action.elements if e.is_quasi_reflection()]
    if bad:
        raise QuasiReflectionPresent(
            f"{len(bad)} quasi-reflection(s), e.g. {bad[0].rotations} of order {bad[0].order}", bad
        )
    ages = tuple(age(e) for e in action.elements)
    lowest = min(ages, default=None)
    if lowest is None or lowest > 1:
        verdict = Verdict.TERMINAL
    elif lowest == 1:
        verdict = Verdict.CANONICAL_NOT_TERMINAL
    else:
        verdict = Verdict.NOT_CANONICAL
    return Classification(verdict, ages, action.elements)


MODEL_NAMES = ("i", "ii", "iii")


def local_models(n: int, variant: str = "total") -> list[DiagonalAction]:
    """The three double-point models for the P^1-bundle (``base``) or its quotient (``total``).

    ``base`` lives in dimension 2n+1 with an extra fibre coordinate, ``total``
    in 2n+2 with two.  Models: (i) -1 on n+1 (base) / n+2 (total) coordinates,
    (ii) -1 on 2n coordinates, (iii) the Klein four-group generated by
    ``(-id, id, -id)`` and ``(id, -id, -id)`` on ``C^n x C^n x C^extra``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if variant == "base":
        extra = 1
    elif variant == "total":
        extra = 2
    else:
        raise ValueError(f"unknown variant {variant!r}")
    dim = 2 * n + extra
    model_i = [1] * (n + extra) + [0] * n
    model_ii = [1] * (2 * n) + [0] * extra
    g1 = [1] * n + [0] * n + [1] * extra
    g2 = [0] * n + [1] * n + [1] * extra
    assert len(model_i) == len(model_ii) == len(g1) == dim
    return [
        generate([GroupElement(2, model_i)]),
        generate([GroupElement(2, model_ii)]),
        generate([GroupElement(2, g1), GroupElement(2, g2)]),
    ]


def local_model(n: int, variant: str, name: str) -> DiagonalAction:
    return local_models(n, variant)[MODEL_NAMES.index(name)]


def minus_one_multiplicity_criterion(action: DiagonalAction) -> bool:
    """Every non-identity involution has eigenvalue -1 at least three times."""
    return all(sum(1 for a in e.rotations if a) >= 3 for e in action.elements)
