import pytest
from hypothesis import given, strategies as st

from primerec import arith, oracle
from primerec.residue_classes import GammaIndex, ResidueClass, classify, value, value_of

N_TEST = 10_000


@pytest.mark.parametrize("n, cls, gamma", [
    (2, ResidueClass.E, 1),
    (35, ResidueClass.OMINUS, 6),
    (25, ResidueClass.OPLUS, 4),
    (3, ResidueClass.O3, 1),
])
def test_classify_examples(n, cls, gamma):
    assert classify(n) == GammaIndex(cls, gamma)


@pytest.mark.parametrize("cls, gamma, expected", [
    (ResidueClass.O3, 2, 9),
    (ResidueClass.OMINUS, 1, 5),
    (ResidueClass.OPLUS, 3, 19),
    (ResidueClass.E, 1, 2),
])
def test_value_examples(cls, gamma, expected):
    assert value(GammaIndex(cls, gamma)) == expected
    assert GammaIndex(cls, gamma).value == expected


@pytest.mark.parametrize("n", [1, 0, -7])
def test_classify_rejects_small(n):
    with pytest.raises(ValueError):
        classify(n)


def test_gamma_is_one_based():
    with pytest.raises(ValueError):
        GammaIndex(ResidueClass.OPLUS, 0)


def test_partition_exhaustive():
    seen = {}
    for cls in ResidueClass:
        g = 1
        while value_of(cls, g) <= N_TEST:
            n = value_of(cls, g)
            assert n not in seen, (n, seen.get(n), cls)
            seen[n] = cls
            g += 1
    assert sorted(seen) == list(range(2, N_TEST + 1))


@given(st.integers(min_value=2, max_value=10**15))
def test_roundtrip(n):
    g = classify(n)
    assert g.gamma >= 1
    assert value(g) == n


@given(st.sampled_from(list(ResidueClass)), st.integers(min_value=1, max_value=10**12))
def test_value_classify_inverse(cls, gamma):
    assert classify(value_of(cls, gamma)) == GammaIndex(cls, gamma)


def test_prime_placement():
    for p in oracle.small_primes(N_TEST):
        cls = classify(p).cls
        if p == 2:
            assert cls is ResidueClass.E
        elif p == 3:
            assert cls is ResidueClass.O3
        else:
            assert cls in (ResidueClass.OMINUS, ResidueClass.OPLUS)


def test_sign_round_trip():
    for cls in (ResidueClass.OMINUS, ResidueClass.OPLUS):
        assert ResidueClass.from_sign(cls.sign) is cls
    with pytest.raises(ValueError):
        ResidueClass.E.sign
    with pytest.raises(ValueError):
        ResidueClass.from_sign(0)


def test_checked_overflow():
    big = (arith.INT_MAX + 1) // 6 + 1
    with pytest.raises(arith.ArithmeticOverflow):
        value_of(ResidueClass.OPLUS, big)
    assert value_of(ResidueClass.OPLUS, big, bignum=True) == 6 * big + 1


def test_overflow_window_is_patchable(monkeypatch):
    monkeypatch.setattr(arith, "INT_MAX", 100)
    assert value_of(ResidueClass.OMINUS, 16) == 95
    with pytest.raises(arith.ArithmeticOverflow):
        value_of(ResidueClass.OMINUS, 17)
