import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eala.jordan import (
    JordanElement,
    eta,
    f_form,
    hermitian_torus,
    mult_coeff,
    multiply,
    parse_jordan,
    quantum_torus,
    rad_f_contains,
    semilattice_torus,
)
from eala.lattice import Semilattice, coset_of, gamma, vadd, window
from eala.lemmas import all_semilattices
from eala.scalar import QMode, Scalar

from helpers import FAMILIES, FORMAL, HERM_MINUS, THREE_COSET, rand_scalar

F = QMode.formal()


# --- an independent quantum torus: words in x1^{+-1}, x2^{+-1} with x1 x2 = q x2 x1


def _word(lam):
    # x^lam = x2^{lam2} x1^{lam1}
    w = [(2, 1 if lam[1] > 0 else -1)] * abs(lam[1])
    return w + [(1, 1 if lam[0] > 0 else -1)] * abs(lam[0])


def _normal_order(word):
    """Bubble x2-letters to the left; returns (q exponent, lattice degree)."""
    w = list(word)
    e = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            (g1, a), (g2, b) = w[i], w[i + 1]
            if g1 == 1 and g2 == 2:
                # x1^a x2^b = q^(ab) x2^b x1^a
                e += a * b
                w[i], w[i + 1] = w[i + 1], w[i]
                changed = True
    deg = (sum(a for g, a in w if g == 1), sum(a for g, a in w if g == 2))
    return e, deg


def word_eta(lam, mu, mode):
    e, deg = _normal_order(_word(lam) + _word(mu))
    assert deg == vadd(lam, mu)
    return Scalar.q_pow(e, mode)


vec = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@given(vec, vec)
def test_eta_matches_word_normal_ordering(lam, mu):
    assert eta(lam, mu, F) == word_eta(lam, mu, F)


@given(vec, vec)
def test_plus_product_is_symmetrized_word_product(lam, mu):
    want = (word_eta(lam, mu, F) + word_eta(mu, lam, F)) * Scalar.half(F)
    assert mult_coeff(FORMAL, lam, mu) == want


def test_eta_examples():
    q = Scalar.q_pow(1, F)
    assert eta((1, 0), (0, 1), F) == q
    assert eta((0, 1), (1, 0), F) == 1
    assert mult_coeff(FORMAL, (1, 0), (0, 1)) == (q + 1) / 2
    assert f_form((1, 0), (0, 1), F) == q


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_radical_by_brute_force(n):
    m = QMode.root(n)
    pts = window(3, 2)
    for lam in pts:
        brute = all(f_form(lam, mu, m) == 1 for mu in pts)
        assert brute == rad_f_contains(lam, m)
        assert brute == (lam[0] % n == 0 and lam[1] % n == 0)


def test_formal_radical_is_zero():
    assert rad_f_contains((0, 0), F) and not rad_f_contains((2, 0), F)


def test_semilattice_products():
    assert not mult_coeff(THREE_COSET, (1, 0), (0, 1))
    assert mult_coeff(THREE_COSET, (1, 0), (3, 2)) == 1
    for spec in FAMILIES.values():
        assert mult_coeff(spec, (1, 2), (0, 0)) == 1 or not spec.in_support((1, 2))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(all_semilattices(2) + all_semilattices(3)[::7]), st.data())
def test_triple_product_gamma_formula(s, data):
    spec = semilattice_torus(s)
    one = Scalar.one(spec.mode)
    vs = [data.draw(st.tuples(*[st.integers(-3, 3)] * s.nu)) for _ in range(3)]
    a, b, c = vs
    xs = [JordanElement.monomial(v, one) if s.contains(v) else JordanElement() for v in vs]
    got = multiply(spec, xs[0], multiply(spec, xs[1], xs[2]))
    g = gamma(coset_of(b), coset_of(c), s) * gamma(coset_of(a), coset_of(b) ^ coset_of(c), s)
    want = JordanElement.monomial(vadd(a, vadd(b, c)), Scalar.of(g, spec.mode))
    assert got == want


def _rand_elem(rng, spec, k=3):
    x = JordanElement()
    for _ in range(k):
        lam = (rng.randint(-2, 2), rng.randint(-2, 2))
        if spec.in_support(lam):
            x = x + JordanElement.monomial(lam, rand_scalar(rng, spec.mode))
    return x


@pytest.mark.parametrize("seed", range(4))
def test_commutative_and_jordan_identity(family, seed):
    rng = random.Random(seed)
    for _ in range(6):
        x, y = _rand_elem(rng, family), _rand_elem(rng, family)
        assert multiply(family, x, y) == multiply(family, y, x)
        x2 = multiply(family, x, x)
        assert multiply(family, x2, multiply(family, y, x)) == multiply(family, multiply(family, x2, y), x)


def test_hermitian_minus_product_stays_in_support():
    # q = -1 and both factors in the support never produce the missing class
    for a, b in itertools.product(window(3, 2), repeat=2):
        if HERM_MINUS.in_support(a) and HERM_MINUS.in_support(b) and not HERM_MINUS.in_support(vadd(a, b)):
            assert not mult_coeff(HERM_MINUS, a, b)
        if not HERM_MINUS.in_support(a):
            assert not mult_coeff(HERM_MINUS, a, b)


def test_hermitian_minus_support():
    assert HERM_MINUS.support == frozenset({0, 1, 2})
    assert hermitian_torus(1).full_support


@pytest.mark.parametrize("text,family", [
    ("semilattice:S:v=2,cosets=00+10+01", "semilattice"),
    ("jordan=laurent", "hermitian"),
    ("quantum:q=formal", "quantum"),
    ("quantum:q=root:3", "quantum"),
    ("hermitian:sign=-1", "hermitian"),
])
def test_parse_jordan(text, family):
    spec = parse_jordan(text)
    assert spec.family == family
    assert parse_jordan(spec.descriptor()) == spec


@pytest.mark.parametrize("bad", ["quantum:q=root:8", "quantum:q=root:0", "quantum:q=2", "hermitian:sign=2", "torus"])
def test_parse_jordan_rejects(bad):
    with pytest.raises(ValueError):
        parse_jordan(bad)


def test_quantum_rank_is_two():
    with pytest.raises(ValueError):
        from eala.jordan import JordanTorusSpec, QUANTUM
        JordanTorusSpec(QUANTUM, 3, qmode=F)
    assert quantum_torus(F).nu == 2
