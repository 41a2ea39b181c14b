"""Survivors of a single composite generator with one parameter held fixed.

For a fixed parameter the composite gamma-indices form one residue class
modulo 6a+-1 (see :mod:`composite_generators`). Everything else, the
"pseudoprimes" of that family, is the complement: all other residues, plus
the one gamma whose value *is* the modulus (the missing pseudoprime) when it
happens to sit in the composite class.

The affine chi-forms are kept for the symmetry checks and as an independent
enumeration route in tests::

    MINUS_ALPHA  (6a+1) b + 5a + 1 - chi     b >= 0, 1 <= chi <= 6a
    MINUS_BETA   (6b-1) a + b - chi          a >= 0, 1 <= chi <= 6b-2
    PLUS1_ALPHA  (6a+1) b + a - chi          b >= 0, 1 <= chi <= 6a
    PLUS2_ALPHA  (6a-1) b + 5a - 1 - chi     b >= 0, 1 <= chi <= 6a-2
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from math import isqrt
from typing import Iterable, Optional

import numpy as np

from .composite_generators import GeneratorKind, composite_family, enumerate_composites
from .residue_classes import ResidueClass


class PseudoprimeKind(enum.Enum):
    MINUS_ALPHA = "minus_alpha"
    MINUS_BETA = "minus_beta"
    PLUS1_ALPHA = "plus1_alpha"
    PLUS2_ALPHA = "plus2_alpha"

    @property
    def target(self) -> ResidueClass:
        if self in (PseudoprimeKind.MINUS_ALPHA, PseudoprimeKind.MINUS_BETA):
            return ResidueClass.OMINUS
        return ResidueClass.OPLUS

    @property
    def composite_kind(self) -> GeneratorKind:
        # MINUS2 with its first argument fixed is the beta-viewpoint of MINUS1
        return _COMPOSITE_KIND[self]


_COMPOSITE_KIND = {
    PseudoprimeKind.MINUS_ALPHA: GeneratorKind.MINUS1,
    PseudoprimeKind.MINUS_BETA: GeneratorKind.MINUS2,
    PseudoprimeKind.PLUS1_ALPHA: GeneratorKind.PLUS1,
    PseudoprimeKind.PLUS2_ALPHA: GeneratorKind.PLUS2,
}

# kind -> (s, c1, c0): modulus 6p + s, offset c1*p + c0
_AFFINE = {
    PseudoprimeKind.MINUS_ALPHA: (1, 5, 1),
    PseudoprimeKind.MINUS_BETA: (-1, 1, 0),
    PseudoprimeKind.PLUS1_ALPHA: (1, 1, 0),
    PseudoprimeKind.PLUS2_ALPHA: (-1, 5, -1),
}


@dataclass(frozen=True)
class ResidueSet:
    """Allowed residues modulo ``modulus`` plus finite force-in / force-out sets.

    ``gamma in rs`` is True for gamma in ``exceptions_add``, False for gamma in
    ``exceptions_remove`` and otherwise ``gamma % modulus in allowed``.

    Stored by its excluded residues: single families exclude exactly one
    residue, and a step carries thousands of them.
    """

    modulus: int
    excluded: tuple[int, ...]
    exceptions_add: frozenset[int] = field(default_factory=frozenset)
    exceptions_remove: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        excluded = tuple(sorted(set(self.excluded)))
        if excluded and (excluded[0] < 0 or excluded[-1] >= self.modulus):
            raise ValueError("residues must lie in [0, modulus)")
        object.__setattr__(self, "excluded", excluded)
        object.__setattr__(self, "exceptions_add", frozenset(self.exceptions_add))
        object.__setattr__(self, "exceptions_remove", frozenset(self.exceptions_remove))
        if self.exceptions_add & self.exceptions_remove:
            raise ValueError("exception sets must be disjoint")

    @classmethod
    def from_allowed(cls, modulus: int, allowed: Iterable[int], exceptions_add=(), exceptions_remove=()):
        ok = set(allowed)
        if ok and (min(ok) < 0 or max(ok) >= modulus):
            raise ValueError("allowed residues must lie in [0, modulus)")
        return cls(modulus, tuple(r for r in range(modulus) if r not in ok),
                   frozenset(exceptions_add), frozenset(exceptions_remove))

    @classmethod
    def full(cls, modulus: int) -> "ResidueSet":
        return cls(modulus, ())

    @classmethod
    def excluding(cls, modulus: int, excluded: Iterable[int], exceptions_add=(), exceptions_remove=()):
        return cls(modulus, tuple({e % modulus for e in excluded}),
                   frozenset(exceptions_add), frozenset(exceptions_remove))

    @cached_property
    def _excluded_set(self) -> frozenset[int]:
        return frozenset(self.excluded)

    @property
    def allowed(self) -> tuple[int, ...]:
        bad = self._excluded_set
        return tuple(r for r in range(self.modulus) if r not in bad)

    @property
    def allowed_count(self) -> int:
        return self.modulus - len(self.excluded)

    def residue_member(self, gamma: int) -> bool:
        return gamma % self.modulus not in self._excluded_set

    def __contains__(self, gamma: int) -> bool:
        if gamma in self.exceptions_add:
            return True
        if gamma in self.exceptions_remove:
            return False
        return self.residue_member(gamma)

    def mask(self, lo: int, hi: int) -> np.ndarray:
        """Boolean membership over gamma in [lo, hi] (index 0 is lo)."""
        n = hi - lo + 1
        if n <= 0:
            return np.zeros(0, dtype=bool)
        m = self.modulus
        if 2 * len(self.excluded) <= m:
            out = np.ones(n, dtype=bool)
            for r in self.excluded:
                out[(r - lo) % m::m] = False
        else:
            out = np.zeros(n, dtype=bool)
            for r in self.allowed:
                out[(r - lo) % m::m] = True
        for g in self.exceptions_add:
            if lo <= g <= hi:
                out[g - lo] = True
        for g in self.exceptions_remove:
            if lo <= g <= hi:
                out[g - lo] = False
        return out


@dataclass(frozen=True)
class PseudoprimeFamily:
    kind: PseudoprimeKind
    parameter: int
    modulus: int
    chi_max: int
    composite_residue: int
    spurious_range: tuple[int, int]
    missing: Optional[int] = None

    @property
    def target(self) -> ResidueClass:
        return self.kind.target


def _is_prime_small(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def family(kind: PseudoprimeKind, parameter: int, *, require_prime: bool = False) -> PseudoprimeFamily:
    """Build the survivor family of ``kind`` for a fixed parameter.

    ``require_prime`` is set by the recursion driver, which only ever asks for
    prime moduli; in debug runs a composite request is an assertion failure.
    """
    if parameter < 1:
        raise ValueError(f"parameter must be >= 1, got {parameter}")
    msign, coef, const = _AFFINE[kind]
    modulus = 6 * parameter + msign
    if require_prime:
        assert _is_prime_small(modulus), f"{kind.value}({parameter}) requested with composite modulus {modulus}"
    chi_max = modulus - 1
    comp = composite_family(kind.composite_kind, parameter)
    # lowest value of the affine form: smallest loop index (0) and chi = chi_max
    lowest = coef * parameter + const - chi_max
    missing = parameter if kind in (PseudoprimeKind.MINUS_BETA, PseudoprimeKind.PLUS1_ALPHA) else None
    return PseudoprimeFamily(kind, parameter, modulus, chi_max, comp.residue, (lowest, 0), missing)


def affine_value(kind: PseudoprimeKind, parameter: int, index: int, chi: int) -> int:
    """Raw affine chi-form; ``index`` is the free loop variable, any sign allowed."""
    msign, coef, const = _AFFINE[kind]
    return (6 * parameter + msign) * index + coef * parameter + const - chi


def affine_members(f: PseudoprimeFamily, gamma_max: int) -> list[int]:
    """Enumerate a family through its chi-form, dropping spurious values."""
    out = set()
    index = 0
    while affine_value(f.kind, f.parameter, index, f.chi_max) <= gamma_max:
        for chi in range(1, f.chi_max + 1):
            g = affine_value(f.kind, f.parameter, index, chi)
            if 1 <= g <= gamma_max:
                out.add(g)
        index += 1
    if f.missing is not None and f.missing <= gamma_max:
        out.add(f.missing)
    return sorted(out)


def members(f: PseudoprimeFamily, gamma_max: int) -> list[int]:
    composites = set(enumerate_composites(f.kind.composite_kind, f.parameter, gamma_max))
    return [g for g in range(1, gamma_max + 1) if g not in composites]


def to_residue_set(f: PseudoprimeFamily) -> ResidueSet:
    add = (f.missing,) if f.missing is not None else ()
    return ResidueSet.excluding(f.modulus, (f.composite_residue,), exceptions_add=add)


def gamma_alpha_relation(alpha: int, beta: int, chi: int) -> bool:
    """MINUS_ALPHA(a, -b, chi) == -PLUS1_ALPHA(a, b, 6a + 1 - chi)."""
    if not 1 <= chi <= 6 * alpha:
        raise ValueError(f"chi must lie in [1, {6 * alpha}], got {chi}")
    lhs = affine_value(PseudoprimeKind.MINUS_ALPHA, alpha, -beta, chi)
    rhs = -affine_value(PseudoprimeKind.PLUS1_ALPHA, alpha, beta, 6 * alpha + 1 - chi)
    return lhs == rhs


def gamma_beta_relation(alpha: int, beta: int, chi: int) -> bool:
    """MINUS_BETA(-a, b, chi) == -PLUS2_ALPHA(b, a, 6b - 1 - chi)."""
    if chi < 1 or (beta >= 1 and chi > 6 * beta - 2):
        raise ValueError(f"chi must lie in [1, {6 * beta - 2}], got {chi}")
    lhs = affine_value(PseudoprimeKind.MINUS_BETA, beta, -alpha, chi)
    rhs = -affine_value(PseudoprimeKind.PLUS2_ALPHA, beta, alpha, 6 * beta - 1 - chi)
    return lhs == rhs


def check_gamma_symmetry(alpha: int, beta: int, chi: int) -> tuple[bool, bool]:
    return gamma_alpha_relation(alpha, beta, chi), gamma_beta_relation(alpha, beta, chi)
