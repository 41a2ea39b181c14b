"""Locate natural numbers > 1 in the classes E, O3, O-, O+.

Every n > 1 is exactly one of::

    E  = 2g      O3 = 6g - 3      O- = 6g - 1      O+ = 6g + 1      (g >= 1)

2 is the only prime in E and 3 the only prime in O3, so all primes >= 5
live in O- or O+.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .arith import checked


class ResidueClass(enum.Enum):
    E = "E"
    O3 = "O3"
    OMINUS = "O-"
    OPLUS = "O+"

    @property
    def sign(self) -> int:
        """-1 for O-, +1 for O+; only defined for the two prime-bearing classes."""
        if self is ResidueClass.OMINUS:
            return -1
        if self is ResidueClass.OPLUS:
            return 1
        raise ValueError(f"{self.value} has no 6g+-1 sign")

    @classmethod
    def from_sign(cls, sign: int) -> "ResidueClass":
        if sign == -1:
            return cls.OMINUS
        if sign == 1:
            return cls.OPLUS
        raise ValueError(f"sign must be +1 or -1, got {sign}")


@dataclass(frozen=True)
class GammaIndex:
    cls: ResidueClass
    gamma: int

    def __post_init__(self):
        if self.gamma < 1:
            raise ValueError(f"gamma must be >= 1, got {self.gamma}")

    @property
    def value(self) -> int:
        return value(self)


def value_of(cls: ResidueClass, gamma: int, *, bignum: bool = False) -> int:
    """The natural number sitting at position ``gamma`` of ``cls``."""
    if cls is ResidueClass.E:
        return checked(2 * gamma, bignum=bignum)
    if cls is ResidueClass.O3:
        return checked(6 * gamma - 3, bignum=bignum)
    if cls is ResidueClass.OMINUS:
        return checked(6 * gamma - 1, bignum=bignum)
    return checked(6 * gamma + 1, bignum=bignum)


def value(g: GammaIndex, *, bignum: bool = False) -> int:
    return value_of(g.cls, g.gamma, bignum=bignum)


def classify(n: int) -> GammaIndex:
    if n <= 1:
        raise ValueError(f"classify needs n > 1, got {n}")
    r = n % 6
    if r in (0, 2, 4):
        return GammaIndex(ResidueClass.E, n // 2)
    if r == 3:
        return GammaIndex(ResidueClass.O3, (n + 3) // 6)
    if r == 5:
        return GammaIndex(ResidueClass.OMINUS, (n + 1) // 6)
    return GammaIndex(ResidueClass.OPLUS, (n - 1) // 6)
