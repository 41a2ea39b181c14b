from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from primerec import oracle
from primerec.diophantine import (DiophantineProblem, NoSolution, SubcaseTag, approximate_step, classify_pair,
                                  congruent, ext_gcd, iterated_product, merge, merge_all, opposite_beta_j,
                                  unit_step_solution, product_beta_i, product_beta_j, product_closed_form,
                                  reduce_displacement, satisfies, solvable, solve, solve_linear,
                                  solve_opposite_sign, split_modulus, step_function_flags)
from primerec.pseudoprime_families import PseudoprimeKind, ResidueSet, family, to_residue_set

P = DiophantineProblem.from_moduli


@pytest.mark.parametrize("p_i, p_j, tag", [
    (7, 91, SubcaseTag.DIVISIBLE),
    (35, 55, SubcaseTag.COMMON_FACTOR),
    (7, 13, SubcaseTag.COPRIME),
])
def test_classify_pair(p_i, p_j, tag):
    assert classify_pair(P(p_i, p_j)) is tag


def test_solvable_examples():
    assert all(solvable(P(7, 13, k, 0)) for k in range(-20, 21))
    assert solvable(P(35, 55, 5, 0))
    assert not solvable(P(35, 55, 3, 0))
    with pytest.raises(NoSolution):
        solve(P(35, 55, 3, 0))


@pytest.mark.parametrize("p_i, p_j, c, base, steps", [
    (7, 13, 1, (-2, -1), (13, 7)),
    (7, 19, 1, (-11, -4), (19, 7)),
    (7, 7, 0, (0, 0), (1, 1)),
])
def test_solve_examples(p_i, p_j, c, base, steps):
    fam = solve(P(p_i, p_j, c, 0))
    assert (fam.beta_i_base, fam.beta_j_base) == base
    assert (fam.step_i, fam.step_j) == steps


def test_solve_opposite_sign_examples():
    fam = solve_opposite_sign(P(7, 11, 0, 0))
    assert (fam.beta_i_base, fam.beta_j_base) == (0, 0)
    prob = P(7, 11, 1, 0)
    fam = solve_opposite_sign(prob)
    assert satisfies(prob, *fam.at(0))
    assert any(fam.at(y) == (3, 2) for y in range(-3, 4))
    prob = P(5, 13, 2, 0)
    fam = solve_opposite_sign(prob)
    assert (fam.step_i, fam.step_j) == (13, 5)
    assert all(satisfies(prob, *fam.at(y)) for y in range(-3, 4))
    with pytest.raises(ValueError):
        solve_opposite_sign(P(7, 13))


def test_problem_validation():
    with pytest.raises(ValueError):
        DiophantineProblem(1, 1, 2, 1)
    with pytest.raises(ValueError):
        split_modulus(9)
    assert split_modulus(5) == (1, -1) and split_modulus(13) == (2, 1)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_ext_gcd(a, b):
    g, x, y = ext_gcd(a, b)
    assert a * x + b * y == g >= 0


moduli = st.integers(1, 400).map(lambda k: 6 * ((k + 1) // 2) + (1 if k % 2 else -1))


@given(moduli, moduli, st.integers(-100, 100))
def test_solution_family_property(p_i, p_j, c):
    prob = P(p_i, p_j, c, 0)
    if not solvable(prob):
        with pytest.raises(NoSolution):
            solve(prob)
        return
    fam = solve(prob)
    g = p_i // fam.step_j
    assert fam.step_i == p_j // g
    assert -fam.step_j < fam.beta_j_base <= 0
    for y in range(-3, 4):
        assert satisfies(prob, *fam.at(y))


@settings(max_examples=150)
@given(moduli, moduli, st.integers(-30, 30))
def test_solvable_vs_brute_force(p_i, p_j, c):
    assert solvable(P(p_i, p_j, c, 0)) == oracle.brute_force_solvable(p_i, p_j, c, bound=3000)


def test_solve_linear_rejects_bad_moduli():
    with pytest.raises(ValueError):
        solve_linear(0, 5, 1)


# --- product form -----------------------------------------------------------------

@pytest.mark.parametrize("a, d, s, expected", [(1, 3, 1, 12), (1, 3, -1, 2), (2, 2, 1, 7)])
def test_product_examples(a, d, s, expected):
    assert product_closed_form(a, d, s) == expected
    assert iterated_product(a, d, s) == expected


def test_product_domain():
    with pytest.raises(ValueError):
        product_closed_form(1, 1, 1)
    with pytest.raises(ValueError):
        product_closed_form(1, 5, -1)
    with pytest.raises(ValueError):
        product_closed_form(1, 3, 0)


def test_product_is_fraction_for_composite_modulus():
    assert product_closed_form(4, 5, 1).denominator != 1
    for a in (1, 2, 3, 5, 6, 7):
        for d in range(2, 6 * a + 1):
            assert product_closed_form(a, d, 1).denominator == 1


def test_delta_one_closed_case():
    for s in (1, -1):
        for a in range(1, 8):
            for c in range(-5, 6):
                prob = DiophantineProblem(a, a + 1, s, s, c, 0)
                assert satisfies(prob, *unit_step_solution(prob))
    assert unit_step_solution(P(7, 13, 1, 0)) == (-2, -1)


def _grid(prime_only):
    for s in (1, -1):
        for a in range(1, 11):
            p_i = 6 * a + s
            if prime_only and not oracle.trial_division(p_i):
                continue
            for d in range(2, p_i):
                for c in range(-5, 6):
                    prob = DiophantineProblem(a, a + d, s, s, c, 0)
                    if classify_pair(prob) is SubcaseTag.COPRIME:
                        yield prob


def test_product_form_congruent_for_prime_moduli():
    checked = 0
    for prob in _grid(prime_only=True):
        assert congruent(product_beta_j(prob), solve(prob).beta_j_base, prob.p_i), prob
        checked += 1
    assert checked == 5104


def test_product_form_breaks_for_composite_moduli():
    bad = [prob for prob in _grid(prime_only=False)
           if not congruent(product_beta_j(prob), solve(prob).beta_j_base, prob.p_i)]
    assert len(bad) == 880
    assert {prob.p_i for prob in bad} == {25, 35, 49, 55}


def test_beta_i_viewpoint_modulo_p_j():
    for prob in _grid(prime_only=True):
        if not oracle.trial_division(prob.p_j) or prob.delta_alpha >= prob.p_j:
            continue
        assert congruent(product_beta_i(prob), solve(prob).beta_i_base, prob.p_j), prob


def test_opposite_route_for_prime_moduli():
    checked = 0
    for s_i in (1, -1):
        for a in range(1, 11):
            p_i = 6 * a + s_i
            if not oracle.trial_division(p_i):
                continue
            for d in range(0, 9):
                for c in range(-5, 6):
                    if a + d < 1:
                        continue
                    prob = DiophantineProblem(a, a + d, s_i, -s_i, c, 0)
                    if classify_pair(prob) is SubcaseTag.DIVISIBLE:
                        with pytest.raises(NoSolution):
                            reduce_displacement(prob)
                        continue
                    red = reduce_displacement(prob)
                    assert 1 <= red.reduced < p_i
                    assert red.displacement == prob.p_j - p_i
                    assert congruent(opposite_beta_j(prob), solve(prob).beta_j_base, p_i), prob
                    checked += 1
    assert checked > 500


def test_step_function_estimate():
    assert approximate_step(3, 2, 1) == 0
    assert approximate_step(3, 4, 1) == 1
    assert approximate_step(3, 3, -1) == 1
    flags = step_function_flags(10, 60)
    assert len(flags) == 318
    assert all(approx != exact for *_, approx, exact in flags)


def test_congruent_handles_denominators():
    assert congruent(Fraction(1, 2), 4, 7)
    assert congruent(Fraction(1, 5), 0, 25) is None


def test_product_routes_need_same_sign():
    with pytest.raises(ValueError):
        product_beta_j(P(7, 11))
    with pytest.raises(ValueError):
        reduce_displacement(P(7, 13))


# --- merge -----------------------------------------------------------------------

def _brute(a, b, hi):
    return [g for g in range(1, hi + 1) if g in a and g in b]


def test_merge_example():
    a = ResidueSet.from_allowed(5, {0, 1, 2, 3})
    b = ResidueSet.from_allowed(7, {0, 2, 3, 4, 5, 6}, exceptions_add={1})
    m = merge(a, b)
    assert m.modulus == 35
    assert [g for g in range(1, 71) if g in m] == _brute(a, b, 70)


def test_merge_identity_and_idempotence():
    a = to_residue_set(family(PseudoprimeKind.PLUS1_ALPHA, 2))
    full = ResidueSet.full(13)
    assert merge(a, a) == a
    assert merge(a, full) == a
    assert merge(a, ResidueSet.full(5)).modulus == 65


residue_sets = st.integers(2, 30).flatmap(lambda m: st.builds(
    ResidueSet.from_allowed,
    st.just(m),
    st.sets(st.integers(0, m - 1)),
    st.frozensets(st.integers(1, 60), max_size=2),
))


@settings(max_examples=200, deadline=None)
@given(residue_sets, residue_sets)
def test_merge_vs_brute_force(a, b):
    m = merge(a, b)
    hi = 2 * m.modulus
    assert [g for g in range(1, hi + 1) if g in m] == _brute(a, b, hi)


def test_merge_all_respects_cap():
    sets = [to_residue_set(family(PseudoprimeKind.PLUS1_ALPHA, a)) for a in (1, 2, 3, 5, 6)]
    blocks = merge_all(sets, cap=100)
    assert all(rs.modulus <= 100 for rs in blocks)
    for g in range(1, 2000):
        assert all(g in rs for rs in blocks) == all(g in rs for rs in sets)
    assert len(merge_all(sets[:3])) == 1
    assert merge_all([]) == []
