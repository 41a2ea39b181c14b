"""Bilinear formulas producing the gamma-index of guaranteed composites.

From the factorizations

    (6a + 1)(6b - 1) = 6g - 1      ->  g = 6ab - a + b   (MINUS1)
                                        g = 6ab + a - b   (MINUS2, factor roles swapped)
    (6a + 1)(6b + 1) = 6g + 1      ->  g = 6ab + a + b   (PLUS1)
    (6a - 1)(6b - 1) = 6g + 1      ->  g = 6ab - a - b   (PLUS2)

With ``a`` held fixed each formula is an arithmetic progression in ``b``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .arith import checked
from .residue_classes import ResidueClass


class GeneratorKind(enum.Enum):
    MINUS1 = "minus1"
    MINUS2 = "minus2"
    PLUS1 = "plus1"
    PLUS2 = "plus2"

    @property
    def target(self) -> ResidueClass:
        if self in (GeneratorKind.MINUS1, GeneratorKind.MINUS2):
            return ResidueClass.OMINUS
        return ResidueClass.OPLUS


# (sign of a, sign of b) in g = 6ab + sa*a + sb*b
_COEFFS = {
    GeneratorKind.MINUS1: (-1, 1),
    GeneratorKind.MINUS2: (1, -1),
    GeneratorKind.PLUS1: (1, 1),
    GeneratorKind.PLUS2: (-1, -1),
}


def _raw(kind: GeneratorKind, alpha: int, beta: int) -> int:
    sa, sb = _COEFFS[kind]
    return 6 * alpha * beta + sa * alpha + sb * beta


def gamma_composite(kind: GeneratorKind, alpha: int, beta: int, *, bignum: bool = False) -> int:
    if alpha < 1 or beta < 1:
        raise ValueError(f"alpha and beta must be >= 1, got ({alpha}, {beta})")
    return checked(_raw(kind, alpha, beta), bignum=bignum)


@dataclass(frozen=True)
class CompositeFamily:
    """Members are ``modulus * beta + offset`` for beta >= 1."""

    kind: GeneratorKind
    alpha: int
    modulus: int
    offset: int

    @property
    def first(self) -> int:
        return self.modulus + self.offset

    @property
    def residue(self) -> int:
        return self.offset % self.modulus

    def factor(self) -> int:
        """The 6a+-1 factor every member's value is divisible by."""
        return self.modulus


def composite_family(kind: GeneratorKind, alpha: int) -> CompositeFamily:
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    sa, sb = _COEFFS[kind]
    # 6ab + sa*a + sb*b = (6a + sb) b + sa*a
    return CompositeFamily(kind, alpha, 6 * alpha + sb, sa * alpha)


def enumerate_composites(kind: GeneratorKind, alpha: int, gamma_max: int) -> list[int]:
    fam = composite_family(kind, alpha)
    return list(range(fam.first, gamma_max + 1, fam.modulus))


def check_sign_symmetry(alpha: int, beta: int) -> tuple[bool, bool]:
    """Evaluate g-(a, -b) == -g+(a, b) for both generator pairs."""
    first = _raw(GeneratorKind.MINUS1, alpha, -beta) == -_raw(GeneratorKind.PLUS1, alpha, beta)
    second = _raw(GeneratorKind.MINUS2, alpha, -beta) == -_raw(GeneratorKind.PLUS2, alpha, beta)
    return first, second
