import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eala.lattice import (
    Root,
    Semilattice,
    apply_functional,
    check_ears_axioms_window,
    coset_bits,
    coset_of,
    coset_rep,
    is_root,
    parse_coset_bits,
    roots_in_window,
    theta_sigma,
    window,
)
from eala.lemmas import all_semilattices

vec2 = st.tuples(st.integers(-9, 9), st.integers(-9, 9))


def test_coset_encoding():
    assert coset_of((3, -2)) == 1
    assert coset_of((0, 5)) == 2
    assert coset_bits(1, 2) == "10"
    assert parse_coset_bits("01") == 2
    assert coset_rep(3, 2) == (1, 1)


@given(vec2, vec2)
def test_coset_is_additive(a, b):
    assert coset_of((a[0] + b[0], a[1] + b[1])) == coset_of(a) ^ coset_of(b)


def test_window_size_and_order():
    w = window(2, 3)
    assert len(w) == 125
    assert w == sorted(w)


def test_semilattice_validation():
    with pytest.raises(ValueError):
        Semilattice.of(2, ["00", "10"])  # does not span
    with pytest.raises(ValueError):
        Semilattice(2, frozenset({1, 2}))  # misses the zero class
    s = Semilattice.of(2, ["00", "10", "01"])
    assert not s.is_full and Semilattice.full(2).is_full


@pytest.mark.parametrize("text", ["S:v=2,cosets=00+10+01", "S:full,v=2", "S:v=3,cosets=000+100+010+001"])
def test_semilattice_descriptor_round_trip(text):
    s = Semilattice.parse(text)
    assert Semilattice.parse(s.descriptor()) == s


@pytest.mark.parametrize("bad", ["S:v=2,cosets=00+10", "S:v=2,cosets=00+1x+01", "T:full,v=2", "S:v=2"])
def test_semilattice_bad_descriptors(bad):
    with pytest.raises(ValueError):
        Semilattice.parse(bad)


def test_semilattice_counts():
    # rank 2: three 3-coset semilattices and the full one
    assert len(all_semilattices(2)) == 4
    # rank 3 count, computed by enumerating spanning class sets containing 0
    assert len(all_semilattices(3)) == 92


def test_root_membership_three_coset():
    s = Semilattice.of(2, ["00", "10", "01"])
    assert is_root(1, (1, 0), s) and not is_root(1, (1, 1), s)
    assert is_root(0, (1, 1), s)  # S + S covers the missing class
    assert len(roots_in_window(s, 1)) == 19
    assert str(Root(1, (1, 0))) == "alpha+(1,0)"
    assert str(Root(-1, (0, 1))) == "-alpha+(0,1)"


@pytest.mark.parametrize("desc", ["S:v=2,cosets=00+10+01", "S:v=2,cosets=00+10+11", "S:full,v=2"])
def test_extended_affine_root_axioms_on_window(desc):
    rep = check_ears_axioms_window(Semilattice.parse(desc), 3)
    assert rep["passed"], rep["problems"]


@given(vec2.filter(lambda v: v != (0, 0)), vec2)
def test_theta_sigma_kills_sigma_and_is_integral(sigma, lam):
    th = theta_sigma(sigma)
    assert apply_functional(th, sigma) == 0
    assert isinstance(apply_functional(th, lam), int)


def test_theta_sigma_value():
    assert apply_functional(theta_sigma((2, 0)), (1, 1)) == -2
