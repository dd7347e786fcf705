import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eala.jordan import JordanElement, eta, multiply
from eala.lattice import vadd, vneg, window
from eala.operators import (
    OperatorSum,
    commutator_L,
    identity_operator,
    l_d_split,
    left_mult,
    naive_apply,
    op_commutator,
    op_compose,
    op_equal,
    right_translation,
    shift_operator,
    zero_operator,
)
from eala.scalar import Scalar

from helpers import FAMILIES, FORMAL, FULL, HERM_MINUS, Q_MINUS, Q_ONE, THREE_COSET, rand_scalar

S1, S2 = (1, 0), (0, 1)
GRID = window(3, 2)


def mono(spec, lam, c=None):
    return JordanElement.monomial(lam, c if c is not None else Scalar.one(spec.mode))


def agrees_with_oracle(spec, op, pts=GRID) -> bool:
    for g in pts:
        if not spec.in_support(g):
            continue
        x = mono(spec, g)
        if op.apply(x) != naive_apply(spec, op.recipe, x):
            return False
    return True


def random_operator(rng, spec, depth):
    lam = (rng.randint(-2, 2), rng.randint(-2, 2))
    if depth == 0:
        k = rng.randrange(4 if spec.has_right_translations else 3)
        if k == 0:
            return left_mult(spec, lam)
        if k == 1:
            return shift_operator(spec, (2 * lam[0], 2 * lam[1]))
        if k == 2:
            return commutator_L(spec, lam, (rng.randint(-2, 2), rng.randint(-2, 2)))
        return right_translation(spec, lam)
    a = random_operator(rng, spec, depth - 1)
    b = random_operator(rng, spec, depth - 1)
    k = rng.randrange(4)
    if k == 0:
        return op_compose(a, b)
    if k == 1:
        return op_commutator(a, b)
    if k == 2:
        return a.scale(rand_scalar(rng, spec.mode))
    # a same-degree partner for a sum
    t = (rng.randint(-2, 2), rng.randint(-2, 2))
    return a + commutator_L(spec, vadd(a.degree, t), vneg(t)).scale(rand_scalar(rng, spec.mode))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(FAMILIES)), st.integers(0, 10**6), st.integers(0, 2))
def test_symbolic_coefficients_match_pointwise_oracle(name, seed, depth):
    spec = FAMILIES[name]
    op = random_operator(random.Random(seed), spec, depth)
    assert agrees_with_oracle(spec, op)


def test_left_mult_is_multiplication(family):
    for lam in window(2, 2):
        op = left_mult(family, lam)
        for g in window(2, 2):
            if family.in_support(g):
                x = mono(family, g)
                assert op.apply(x) == multiply(family, mono(family, lam) if family.in_support(lam) else JordanElement(), x)


def test_left_mult_of_unit_is_identity(family):
    assert op_equal(left_mult(family, (0, 0)), identity_operator(family))


def test_formal_left_mult_closed_form():
    # c(gamma) = (q^gamma2 + 1)/2 for sigma = (1,0)
    op = left_mult(FORMAL, S1)
    for g in window(2, 2):
        assert op.coeff_at(g) == (Scalar.q_pow(g[1], FORMAL.mode) + 1) / 2


def test_commutator_value_on_sigma1():
    op = commutator_L(FULL, S1, S2)
    assert op.apply(mono(FULL, S1)) == mono(FULL, (2, 1), Scalar.of(-1, FULL.mode))


def test_commutator_vanishes_within_a_class():
    for a in [(1, 0), (3, 2), (-1, 4)]:
        for b in [(1, 0), (-3, 2)]:
            assert not commutator_L(THREE_COSET, a, b).terms


def test_commutator_rewrite_with_class_representative():
    # tau in class S2 rewritten with the representative (0,1)
    sigma, tau = (1, 2), (2, 3)
    tj = (0, 1)
    assert op_equal(commutator_L(FULL, sigma, tau), commutator_L(FULL, vadd(vadd(sigma, tau), tj), vneg(tj)))


def test_commutator_independent_of_left_mult_on_missing_class():
    for lam in [(1, 1), (3, -1), (-1, 1)]:
        c = commutator_L(FULL, vadd(lam, S2), vneg(S2))
        assert c.terms
        assert not op_equal(c, left_mult(FULL, lam))
        assert not op_equal(c, left_mult(FULL, lam).scale(Scalar.of(-1, FULL.mode)))


def test_compose_then_evaluate_gives_gamma_product():
    # L_{x^s1} L_{x^s2} at x^s1: Gamma(S2,S1) Gamma(S1,S3) = 0
    assert not op_compose(left_mult(FULL, S1), left_mult(FULL, S2)).coeff_at(S1)


@pytest.mark.parametrize("spec", [FORMAL, Q_ONE, Q_MINUS], ids=str)
def test_right_translations_compose(spec):
    for s in window(2, 2):
        for t in window(1, 2):
            lhs = op_compose(right_translation(spec, s), right_translation(spec, t))
            rhs = right_translation(spec, vadd(s, t)).scale(eta(t, s, spec.mode))
            assert op_equal(lhs, rhs)


def test_right_translation_closed_form():
    r = right_translation(FORMAL, S2)
    assert r.coeff_at((3, 5)) == Scalar.q_pow(3, FORMAL.mode)
    assert right_translation(FORMAL, S1).coeff_at((3, 5)) == 1
    assert op_equal(right_translation(FORMAL, (0, 0)), identity_operator(FORMAL))


def test_formal_commutator_is_half_difference_times_l_minus_r():
    m = FORMAL.mode
    for a, b in [(S1, S2), ((1, 1), (2, -1)), ((0, 2), (1, 0))]:
        lr = left_mult(FORMAL, vadd(a, b)) - right_translation(FORMAL, vadd(a, b))
        want = lr.scale((eta(a, b, m) - eta(b, a, m)) * Scalar.half(m))
        assert op_equal(commutator_L(FORMAL, a, b), want)


def test_right_translation_bracket_in_hermitian_minus():
    # [r_lam, L_mu] is eta(mu, lam) L_{lam+mu} (zero when lam+mu leaves the support)
    m = HERM_MINUS.mode
    for lam in [(1, 1), (1, -1), (3, 1)]:
        for mu in window(2, 2):
            if not HERM_MINUS.in_support(mu):
                continue
            lhs = op_commutator(right_translation(HERM_MINUS, lam), left_mult(HERM_MINUS, mu))
            assert op_equal(lhs, left_mult(HERM_MINUS, vadd(lam, mu)).scale(eta(mu, lam, m)))


def test_shift_operator_is_centroidal_on_j_lambda():
    chi = shift_operator(FULL, (2, 0))
    for lam in window(1, 2):
        assert op_equal(op_compose(chi, left_mult(FULL, lam)), left_mult(FULL, vadd(lam, (2, 0))))


def test_zero_and_empty_sum_are_equal():
    assert op_equal(zero_operator(FULL, S1), OperatorSum())
    assert op_equal(commutator_L(FULL, S1, S1), zero_operator(FULL, (2, 0)))


def test_l_d_split():
    c = commutator_L(FULL, (1, 1), vneg(S2))
    L = left_mult(FULL, S1)
    x, D = l_d_split(OperatorSum.of(L))
    assert x == mono(FULL, S1) and not D
    x, D = l_d_split(OperatorSum.of(c))
    assert not x and op_equal(D, OperatorSum.of(c))
    x, D = l_d_split(OperatorSum.of(L + c))
    assert x == mono(FULL, S1) and op_equal(D, OperatorSum.of(c))


def test_commutators_kill_the_unit(family):
    for a in window(2, 2):
        c = commutator_L(family, a, (1, -1))
        assert not c.coeff_at((0, 0))
