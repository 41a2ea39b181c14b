"""Two-modulus linear Diophantine intersections and residue-set merging.

The equation for two progressions ``p_i b_i + k_i`` and ``p_j b_j + k_j``
meeting is

    0 = p_i * b_i - p_j * b_j + (k_i - k_j)

with p = 6a +- 1. It is solvable iff gcd(p_i, p_j) divides k_i - k_j.

The solver itself is the extended Euclidean algorithm. The closed product
form for the coprime same-sign case

    b_j  =  p_i Y  -+  c a_i  prod_{k=2}^{d} (1 +- 6 a_i / k),    d = a_j - a_i < p_i

and the opposite-sign route through b_j = 6 B_j with displacement
6d -+ 2 are kept as a verification layer: the functions below compute them
so tests can prove both routes agree modulo p_i.

Merging residue sets enumerates allowed-residue pairs and solves each pair
equation. An incremental CRT (fold one residue class at a time against a
precomputed inverse) would cut the constant factor; pairwise solving keeps
the merge literally built on the intersection equation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Optional

from .pseudoprime_families import ResidueSet


class NoSolution(ValueError):
    """The intersection is empty: gcd(p_i, p_j) does not divide the offset difference."""


class SubcaseTag(enum.Enum):
    DIVISIBLE = "divisible"
    COMMON_FACTOR = "common_factor"
    COPRIME = "coprime"


@dataclass(frozen=True)
class DiophantineProblem:
    alpha_i: int
    alpha_j: int
    sign_i: int
    sign_j: int
    kappa_i: int = 0
    kappa_j: int = 0

    def __post_init__(self):
        if self.sign_i not in (1, -1) or self.sign_j not in (1, -1):
            raise ValueError("signs must be +1 or -1")
        if self.p_i < 5 or self.p_j < 5:
            raise ValueError(f"moduli must be >= 5, got {self.p_i}, {self.p_j}")

    @classmethod
    def from_moduli(cls, p_i: int, p_j: int, kappa_i: int = 0, kappa_j: int = 0) -> "DiophantineProblem":
        ai, si = split_modulus(p_i)
        aj, sj = split_modulus(p_j)
        return cls(ai, aj, si, sj, kappa_i, kappa_j)

    @property
    def p_i(self) -> int:
        return 6 * self.alpha_i + self.sign_i

    @property
    def p_j(self) -> int:
        return 6 * self.alpha_j + self.sign_j

    @property
    def offset(self) -> int:
        return self.kappa_i - self.kappa_j

    @property
    def delta_alpha(self) -> int:
        return self.alpha_j - self.alpha_i

    @property
    def same_sign(self) -> bool:
        return self.sign_i == self.sign_j


def split_modulus(p: int) -> tuple[int, int]:
    """Write p = 6a + s with s = +-1."""
    if p % 6 == 1:
        return (p - 1) // 6, 1
    if p % 6 == 5:
        return (p + 1) // 6, -1
    raise ValueError(f"{p} is not of the form 6a +- 1")


@dataclass(frozen=True)
class SolutionFamily:
    """(b_i, b_j) = (beta_i_base + step_i Y, beta_j_base + step_j Y), Y in Z."""

    beta_i_base: int
    beta_j_base: int
    step_i: int
    step_j: int

    def at(self, y: int) -> tuple[int, int]:
        return self.beta_i_base + self.step_i * y, self.beta_j_base + self.step_j * y


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def solve_linear(p_i: int, p_j: int, offset: int) -> SolutionFamily:
    """All integer (b_i, b_j) with p_i b_i - p_j b_j + offset = 0.

    The particular solution is normalized so that b_j lies in (-p_i/g, 0].
    """
    if p_i < 1 or p_j < 1:
        raise ValueError("moduli must be positive")
    g = gcd(p_i, p_j)
    if offset % g:
        raise NoSolution(f"gcd({p_i}, {p_j}) = {g} does not divide {offset}")
    # divide through by the common factor, then solve the coprime equation
    a, b, c = p_i // g, p_j // g, offset // g
    _, x, y = ext_gcd(a, b)
    beta_i, beta_j = -c * x, c * y
    # beta_j moves in steps of a; bring it into (-a, 0]
    shift = -((beta_j + a - 1) // a)
    beta_j += shift * a
    beta_i += shift * b
    return SolutionFamily(beta_i, beta_j, b, a)


def classify_pair(p: DiophantineProblem) -> SubcaseTag:
    g = gcd(p.p_i, p.p_j)
    if p.p_j % p.p_i == 0:
        return SubcaseTag.DIVISIBLE
    if g > 1:
        return SubcaseTag.COMMON_FACTOR
    return SubcaseTag.COPRIME


def solvable(p: DiophantineProblem) -> bool:
    return p.offset % gcd(p.p_i, p.p_j) == 0


def solve(p: DiophantineProblem) -> SolutionFamily:
    return solve_linear(p.p_i, p.p_j, p.offset)


def solve_opposite_sign(p: DiophantineProblem) -> SolutionFamily:
    if p.same_sign:
        raise ValueError("solve_opposite_sign needs sign_i == -sign_j")
    return solve_linear(p.p_i, p.p_j, p.offset)


def satisfies(p: DiophantineProblem, beta_i: int, beta_j: int) -> bool:
    return p.p_i * beta_i - p.p_j * beta_j + p.offset == 0


# --- product form -----------------------------------------------------------

def iterated_product(alpha: int, delta_alpha: int, sign: int) -> Fraction:
    """prod_{k=2}^{delta_alpha} (1 + sign * 6 alpha / k), evaluated term by term."""
    # each factor is (k + sign*6a) / k; reduce once at the end
    num = den = 1
    for k in range(2, delta_alpha + 1):
        num *= k + sign * 6 * alpha
        den *= k
    return Fraction(num, den)


def product_closed_form(alpha: int, delta_alpha: int, sign: int) -> Fraction:
    """Gamma-function form of :func:`iterated_product`, in exact rationals.

    +:  (6a + d)! / (d! (6a + 1)!)
    -:  (-1)^(d+1) (6a - 2)! / (d! (6a - d - 1)!)
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if alpha < 1 or not 2 <= delta_alpha < 6 * alpha + sign:
        raise ValueError(f"need 2 <= delta_alpha < {6 * alpha + sign}, got {delta_alpha}")
    m = 6 * alpha
    if sign == 1:
        return Fraction(factorial(m + delta_alpha), factorial(delta_alpha) * factorial(m + 1))
    return Fraction((-1) ** (delta_alpha + 1) * factorial(m - 2),
                    factorial(delta_alpha) * factorial(m - delta_alpha - 1))


def _product_term(offset: int, alpha: int, delta: int, sign: int) -> Fraction:
    # -+ c a prod_{k=2}^{delta}(1 +- 6a/k); delta = 1 is the directly visible base case
    prod = Fraction(1) if delta == 1 else product_closed_form(alpha, delta, sign)
    return -sign * offset * alpha * prod


def product_beta_j(p: DiophantineProblem) -> Fraction:
    """Same-sign particular b_j from the product form (viewpoint a_j = a_i + d)."""
    if not p.same_sign:
        raise ValueError("product_beta_j is the same-sign route")
    d = p.delta_alpha
    if not 1 <= d < p.p_i:
        raise ValueError(f"need 1 <= delta_alpha < {p.p_i}, got {d}")
    return _product_term(p.offset, p.alpha_i, d, p.sign_i)


def product_beta_i(p: DiophantineProblem) -> Fraction:
    """Same-sign particular b_i from the a_i = a_j - d viewpoint; valid modulo p_j."""
    if not p.same_sign:
        raise ValueError("product_beta_i is the same-sign route")
    d = p.delta_alpha
    if not 1 <= d < p.p_j:
        raise ValueError(f"need 1 <= delta_alpha < {p.p_j}, got {d}")
    return _product_term(p.offset, p.alpha_j, d, p.sign_j)


def unit_step_solution(p: DiophantineProblem) -> tuple[int, int]:
    """Exact (b_i, b_j) for the d = 1 same-sign case."""
    if not p.same_sign or p.delta_alpha != 1:
        raise ValueError("unit_step_solution needs same signs and delta_alpha == 1")
    c, s, a = p.offset, p.sign_i, p.alpha_i
    return -s * c * (a + 1), -s * c * a


@dataclass(frozen=True)
class DisplacementReduction:
    displacement: int  # 6d -+ 2, i.e. p_j - p_i
    step: int  # exact f: how many p_i were subtracted
    reduced: int  # displacement - step * p_i, in [1, p_i - 1]


def reduce_displacement(p: DiophantineProblem) -> DisplacementReduction:
    """Exact reduction of the opposite-sign displacement into [1, p_i - 1]."""
    if p.same_sign:
        raise ValueError("displacement reduction is the opposite-sign route")
    disp = 6 * p.delta_alpha - 2 * p.sign_i
    assert disp == p.p_j - p.p_i
    step = (disp - 1) // p.p_i
    reduced = disp - step * p.p_i
    if reduced == p.p_i:
        raise NoSolution(f"p_i = {p.p_i} divides p_j = {p.p_j}; no coprime reduction")
    return DisplacementReduction(disp, step, reduced)


def approximate_step(alpha_i: int, delta_alpha: int, sign_i: int) -> int:
    """Step count estimated with width a_i and f = 1 first reached at d = a_i + (1 + sign_i)/2."""
    first = alpha_i + (1 + sign_i) // 2
    if delta_alpha < first:
        return 0
    return 1 + (delta_alpha - first) // alpha_i


def opposite_beta_j(p: DiophantineProblem) -> Fraction:
    """Opposite-sign b_j = 6 B_j, with B_j the same-sign product form at the reduced displacement."""
    red = reduce_displacement(p)
    return 6 * _product_term(p.offset, p.alpha_i, red.reduced, p.sign_i)


def congruent(value: Fraction, target: int, modulus: int) -> Optional[bool]:
    """value == target (mod modulus) for a rational value; None if the denominator is not invertible."""
    if gcd(value.denominator, modulus) != 1:
        return None
    return (value.numerator - target * value.denominator) % modulus == 0


def step_function_flags(alpha_max: int, delta_max: int) -> list[tuple[int, int, int, int, int]]:
    """Grid points where the estimated step function differs from exact reduction.

    Returns (alpha_i, delta_alpha, sign_i, approximate, exact) tuples.
    """
    flags = []
    for sign in (1, -1):
        for a in range(1, alpha_max + 1):
            p_i = 6 * a + sign
            for d in range(0 if sign == -1 else 1, delta_max + 1):
                disp = 6 * d - 2 * sign
                if disp % p_i == 0:
                    continue
                exact = (disp - 1) // p_i
                approx = approximate_step(a, d, sign)
                if approx != exact:
                    flags.append((a, d, sign, approx, exact))
    return flags


# --- merging ----------------------------------------------------------------

def merge(a: ResidueSet, b: ResidueSet) -> ResidueSet:
    """Intersection of two residue sets, modulo lcm(a.modulus, b.modulus)."""
    m = a.modulus * b.modulus // gcd(a.modulus, b.modulus)
    allowed = set()
    for ka in a.allowed:
        for kb in b.allowed:
            try:
                fam = solve_linear(a.modulus, b.modulus, ka - kb)
            except NoSolution:
                continue
            allowed.add((a.modulus * fam.beta_i_base + ka) % m)
    merged = ResidueSet.from_allowed(m, allowed)
    # exceptions are settled by direct membership, not residue algebra
    add, remove = set(), set()
    for g in a.exceptions_add | a.exceptions_remove | b.exceptions_add | b.exceptions_remove:
        truth = g in a and g in b
        base = merged.residue_member(g)
        if truth and not base:
            add.add(g)
        elif base and not truth:
            remove.add(g)
    return ResidueSet(m, merged.excluded, frozenset(add), frozenset(remove))


def merge_all(sets, cap: Optional[int] = None) -> list[ResidueSet]:
    """Fold sets in ascending-modulus order; start a new block when the lcm would exceed ``cap``."""
    out: list[ResidueSet] = []
    acc: Optional[ResidueSet] = None
    for rs in sorted(sets, key=lambda r: r.modulus):
        if acc is None:
            acc = rs
            continue
        lcm = acc.modulus * rs.modulus // gcd(acc.modulus, rs.modulus)
        if cap is None or lcm <= cap:
            acc = merge(acc, rs)
        else:
            out.append(acc)
            acc = rs
    if acc is not None:
        out.append(acc)
    return out
