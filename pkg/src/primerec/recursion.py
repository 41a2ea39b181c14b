"""Step recursion over the gamma ranges of O- and O+.

Step 0 knows the primes of O- for gamma in [1, 6] and of O+ for gamma in
[1, 4]. Step s intersects the survivor families of every prime found so far
and decides primality on the next range::

    r+_s = min(7 r+_{s-1} + 1, 5 r-_{s-1} - 1)
    r-_s = 5 r+_{s-1} + 1

Each step contributes one new piece ``[r_{s-1} + 1, r_s]`` with its own
constraint; earlier pieces are kept unchanged, so a state is a piecewise
description of both classes.

Family selection per new piece (``mode="primes"``):

* O-: MINUS_ALPHA over known O+ primes, and MINUS_BETA over known O- primes.
  The second set catches composites with no prime factor 6a+1 (125 = 5^3 at
  gamma 21 is the first), which MINUS_ALPHA only reaches through a composite
  parameter.
* O+: PLUS1_ALPHA over known O+ primes and PLUS2_ALPHA over known O- primes.

``mode="all"`` instead uses every parameter in the known ranges (composite
ones included) with MINUS_ALPHA alone for O-.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from math import gcd
from typing import Optional

import numpy as np

from . import arith
from .composite_generators import GeneratorKind, gamma_composite
from .diophantine import merge_all
from .pseudoprime_families import PseudoprimeKind, ResidueSet, family, to_residue_set
from .residue_classes import ResidueClass

log = logging.getLogger(__name__)

MERGE_CAP = 1000
MODES = ("primes", "all")


class RecursionOverflow(arith.ArithmeticOverflow):
    """Overflow while building step ``step``; ``states`` holds the finished ones."""

    def __init__(self, step: int, states: list, cause: Exception):
        super().__init__(f"arithmetic overflow at step {step}: {cause}")
        self.step = step
        self.states = states


@dataclass(frozen=True)
class RangeBounds:
    r_minus: int
    r_plus: int
    step: int = 0


SEED = RangeBounds(6, 4, 0)


@dataclass(frozen=True)
class Piece:
    """gamma in [lo, hi] is accepted iff it is in every residue set."""

    step: int
    cls: ResidueClass
    lo: int
    hi: int
    sets: tuple[ResidueSet, ...]

    @property
    def modulus(self) -> int:
        m = 1
        for rs in self.sets:
            m = m * rs.modulus // gcd(m, rs.modulus)
        return m

    def mask(self) -> np.ndarray:
        out = np.ones(self.hi - self.lo + 1, dtype=bool)
        for rs in self.sets:
            out &= rs.mask(self.lo, self.hi)
        return out

    def accepted(self) -> list[int]:
        return (np.flatnonzero(self.mask()) + self.lo).tolist()

    def __contains__(self, gamma: int) -> bool:
        return self.lo <= gamma <= self.hi and all(gamma in rs for rs in self.sets)


@dataclass(frozen=True)
class StepState:
    step: int
    bounds: RangeBounds
    primes_minus: tuple[int, ...]
    primes_plus: tuple[int, ...]
    pieces_minus: tuple[Piece, ...]
    pieces_plus: tuple[Piece, ...]

    def primes(self, cls: ResidueClass) -> tuple[int, ...]:
        return self.primes_minus if cls is ResidueClass.OMINUS else self.primes_plus

    def pieces(self, cls: ResidueClass) -> tuple[Piece, ...]:
        return self.pieces_minus if cls is ResidueClass.OMINUS else self.pieces_plus

    def bound(self, cls: ResidueClass) -> int:
        return self.bounds.r_minus if cls is ResidueClass.OMINUS else self.bounds.r_plus


# --- ranges -----------------------------------------------------------------

def next_bounds(b: RangeBounds, *, bignum: bool = False) -> RangeBounds:
    via_plus1 = gamma_composite(GeneratorKind.PLUS1, b.r_plus, 1, bignum=bignum)
    via_plus2 = gamma_composite(GeneratorKind.PLUS2, b.r_minus, 1, bignum=bignum)
    # ties go to the PLUS2 branch; the value is the same either way
    r_plus = via_plus2 if via_plus2 <= via_plus1 else via_plus1
    r_minus = gamma_composite(GeneratorKind.MINUS1, b.r_plus, 1, bignum=bignum)
    return RangeBounds(r_minus, r_plus, b.step + 1)


def seed_bounds(n: int = 1) -> RangeBounds:
    if n < 1:
        raise ValueError(f"seed parameter n must be >= 1, got {n}")
    return RangeBounds(7 * n - 1, 5 * n - 1, 0)


def iterate_bounds(s_max: int, n: int = 1, *, bignum: bool = False) -> list[RangeBounds]:
    out = [seed_bounds(n)]
    for _ in range(s_max):
        out.append(next_bounds(out[-1], bignum=bignum))
    return out


def closed_form_bounds(s: int, n: int = 1, *, bignum: bool = False) -> RangeBounds:
    """Bounds at step s from the seed (7n - 1, 5n - 1) without iterating."""
    if s < 0:
        raise ValueError(f"step must be >= 0, got {s}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if s % 2:
        k = (s + 1) // 2
        r_plus = 5 ** (2 * k - 1) * (7 * n - 1) - (1 + 5 ** (2 * k - 1)) // 6
        r_minus = 5 ** (2 * k) * n + (1 - 5 ** (2 * k)) // 6
    else:
        k = s // 2
        r_plus = 5 ** (2 * k + 1) * n - (1 + 5 ** (2 * k + 1)) // 6
        r_minus = 5 ** (2 * k) * (7 * n - 1) + (1 - 5 ** (2 * k)) // 6
    return RangeBounds(arith.checked(r_minus, bignum=bignum), arith.checked(r_plus, bignum=bignum), s)


def bertrand_check(b: RangeBounds, b_next: RangeBounds) -> bool:
    """Doubling room in both classes: 2(6r +- 1) - 2 <= 6r' +- 1."""
    minus_ok = 2 * (6 * b.r_minus - 1) - 2 <= 6 * b_next.r_minus - 1
    plus_ok = 2 * (6 * b.r_plus + 1) - 2 <= 6 * b_next.r_plus + 1
    return minus_ok and plus_ok


def range_estimate_holds(b: RangeBounds) -> bool:
    """r- > (sqrt(6 r+ + 1) + 1) / 6 and r+ > (sqrt(6 r- - 1) + 1) / 6, in integers."""
    # r - (sqrt(x) + 1)/6 > 0  <=>  6r - 1 > sqrt(x)  <=>  (6r - 1)^2 > x
    return (6 * b.r_minus - 1) ** 2 > 6 * b.r_plus + 1 and (6 * b.r_plus - 1) ** 2 > 6 * b.r_minus - 1


def bounds_cover(b: RangeBounds, limit: int) -> bool:
    """True if every O- and O+ value <= limit lies inside the step ranges."""
    return (limit + 1) // 6 <= b.r_minus and (limit - 1) // 6 <= b.r_plus


def steps_for_limit(limit: int, *, bignum: bool = False) -> int:
    b = SEED
    while not bounds_cover(b, limit):
        b = next_bounds(b, bignum=bignum)
    return b.step


# --- states -----------------------------------------------------------------

def _compact(sets, merge_cap: Optional[int]) -> tuple[ResidueSet, ...]:
    return tuple(merge_all(sets, merge_cap))


def initial_state(*, merge_cap: Optional[int] = MERGE_CAP) -> StepState:
    """Step 0: the a = 1 families decide gamma in [1, 6] for O- and [1, 4] for O+."""
    minus_sets = _compact([to_residue_set(family(PseudoprimeKind.MINUS_ALPHA, 1))], merge_cap)
    plus_sets = _compact([to_residue_set(family(PseudoprimeKind.PLUS2_ALPHA, 1)),
                          to_residue_set(family(PseudoprimeKind.PLUS1_ALPHA, 1))], merge_cap)
    pm = Piece(0, ResidueClass.OMINUS, 1, SEED.r_minus, minus_sets)
    pp = Piece(0, ResidueClass.OPLUS, 1, SEED.r_plus, plus_sets)
    return StepState(0, SEED, tuple(pm.accepted()), tuple(pp.accepted()), (pm,), (pp,))


def family_sets(state: StepState, cls: ResidueClass, mode: str = "primes") -> list[ResidueSet]:
    """Residue sets constraining the next piece of ``cls``."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    strict = mode == "primes"
    if strict:
        plus_params, minus_params = state.primes_plus, state.primes_minus
    else:
        plus_params = range(1, state.bounds.r_plus + 1)
        minus_params = range(1, state.bounds.r_minus + 1)

    def build(kind, params):
        return [to_residue_set(family(kind, a, require_prime=strict)) for a in params]

    if cls is ResidueClass.OMINUS:
        sets = build(PseudoprimeKind.MINUS_ALPHA, plus_params)
        if strict:
            sets += build(PseudoprimeKind.MINUS_BETA, minus_params)
        return sets
    return build(PseudoprimeKind.PLUS1_ALPHA, plus_params) + build(PseudoprimeKind.PLUS2_ALPHA, minus_params)


def advance(state: StepState, *, mode: str = "primes", bignum: bool = False,
            merge_cap: Optional[int] = MERGE_CAP) -> StepState:
    nb = next_bounds(state.bounds, bignum=bignum)
    step = state.step + 1
    new_pieces = {}
    new_primes = {}
    for cls, lo, hi in ((ResidueClass.OMINUS, state.bounds.r_minus + 1, nb.r_minus),
                        (ResidueClass.OPLUS, state.bounds.r_plus + 1, nb.r_plus)):
        # values at the top of the range must still be representable
        arith.checked(6 * hi + 1, bignum=bignum)
        sets = _compact(family_sets(state, cls, mode), merge_cap)
        piece = Piece(step, cls, lo, hi, sets)
        new_pieces[cls] = state.pieces(cls) + (piece,)
        new_primes[cls] = state.primes(cls) + tuple(piece.accepted())
        log.debug("step %d %s: %d sets, %d new primes", step, cls.value, len(sets),
                  len(new_primes[cls]) - len(state.primes(cls)))
    return StepState(step, nb, new_primes[ResidueClass.OMINUS], new_primes[ResidueClass.OPLUS],
                     new_pieces[ResidueClass.OMINUS], new_pieces[ResidueClass.OPLUS])


class InvariantError(AssertionError):
    pass


def validate(state: StepState) -> None:
    """Pieces tile [1, bound] and the primes lists are exactly what they accept."""
    for cls in (ResidueClass.OMINUS, ResidueClass.OPLUS):
        expect = 1
        accepted = []
        for piece in state.pieces(cls):
            if piece.lo != expect or piece.hi < piece.lo:
                raise InvariantError(f"step {state.step} {cls.value}: piece {piece.lo}..{piece.hi} breaks tiling")
            expect = piece.hi + 1
            accepted.extend(piece.accepted())
        if expect != state.bound(cls) + 1:
            raise InvariantError(f"step {state.step} {cls.value}: pieces end at {expect - 1}, bound {state.bound(cls)}")
        if tuple(accepted) != state.primes(cls):
            raise InvariantError(f"step {state.step} {cls.value}: primes list disagrees with pieces")


def run(s_max: int, *, mode: str = "primes", bignum: bool = False,
        merge_cap: Optional[int] = MERGE_CAP) -> list[StepState]:
    if s_max < 0:
        raise ValueError(f"s_max must be >= 0, got {s_max}")
    states = [initial_state(merge_cap=merge_cap)]
    validate(states[0])
    for s in range(1, s_max + 1):
        try:
            nxt = advance(states[-1], mode=mode, bignum=bignum, merge_cap=merge_cap)
        except arith.ArithmeticOverflow as exc:
            raise RecursionOverflow(s, states, exc) from exc
        validate(nxt)
        states.append(nxt)
    return states


def corrupt(state: StepState, cls: ResidueClass = ResidueClass.OPLUS) -> StepState:
    """Drop the largest accepted gamma of ``cls``; used to exercise verification failures."""
    if cls is ResidueClass.OMINUS:
        return replace(state, primes_minus=state.primes_minus[:-1])
    return replace(state, primes_plus=state.primes_plus[:-1])


__all__ = [
    "MERGE_CAP", "RangeBounds", "Piece", "StepState", "RecursionOverflow", "InvariantError",
    "next_bounds", "seed_bounds", "iterate_bounds", "closed_form_bounds", "bertrand_check",
    "range_estimate_holds", "bounds_cover", "steps_for_limit", "initial_state", "family_sets",
    "advance", "validate", "run", "corrupt",
]
