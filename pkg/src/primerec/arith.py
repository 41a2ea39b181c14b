"""Checked integer arithmetic.

Python integers never wrap, so "checked" here means: results that would not
fit a signed 64-bit word raise instead of being returned, unless the caller
opts into arbitrary precision with ``bignum=True``.
"""

INT_MAX = 2**63 - 1
INT_MIN = -(2**63)


class ArithmeticOverflow(OverflowError):
    """Raised when a checked result leaves the signed 64-bit range."""


def checked(value: int, *, bignum: bool = False) -> int:
    if bignum:
        return value
    # module globals are read at call time so tests can shrink the window
    if value > INT_MAX or value < INT_MIN:
        raise ArithmeticOverflow(f"{value} does not fit in a signed 64-bit integer")
    return value
