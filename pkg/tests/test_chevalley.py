import json
import random

import pytest

from eala.chevalley import (
    ChevalleyBasis,
    build_basis,
    express_in_basis,
    hermitian_s3_proportionality,
    parse_label,
    table_row,
    verify_integrality,
    verify_lemma_naz4,
)
from eala.eala import EalaElement, e_bracket
from eala.lattice import Root, vadd, vneg, window
from eala.operators import commutator_L
from eala.scalar import IntegralityRing, Scalar
from eala.tkk import TkkElement

from helpers import FAMILIES, FORMAL, FULL, HERM_MINUS, Q_MINUS, THREE_COSET

Z = (0, 0)


def labels(basis, m, lam):
    return [b.label for b in basis.by_root[Root(m, lam)]]


@pytest.fixture(scope="module")
def bases():
    return {name: build_basis(spec, 2) for name, spec in FAMILIES.items()}


def test_table_rows():
    b = build_basis(THREE_COSET, 2)
    assert labels(b, 0, (1, 1)) == ["Comm (1,1;0,1)"]
    assert labels(b, 0, (1, 0)) == ["Lop (1,0)"]
    assert labels(b, 0, (2, 0)) == ["Lop (2,0)", "ChiDer (2,0)", "Dual (2,0)"]
    b = build_basis(FULL, 2)
    assert labels(b, 0, (0, 1)) == ["Lop (0,1)", "Comm (0,1;1,0)"]
    assert labels(b, 0, (1, 1)) == ["Lop (1,1)", "Comm (1,1;0,1)"]
    assert labels(b, 0, Z) == ["Halpha", "DegDer 1", "DegDer 2", "Dual0 1", "Dual0 2"]
    assert labels(b, 1, (1, 0)) == ["Xplus (1,0)"]
    b = build_basis(Q_MINUS, 2)
    assert labels(b, 0, (2, 2)) == ["Lop (2,2)", "ChiDer (2,2)", "Dual (2,2)"]
    assert labels(b, 0, (1, 0)) == ["Lop (1,0)", "Rdiff (1,0)"]
    b = build_basis(HERM_MINUS, 2)
    assert labels(b, 0, (1, 1)) == ["Rop (1,1)"]


def test_three_coset_commutator_shift_rule():
    # S = {0, e1, e2}: the missing class uses shift e2, as in the table
    assert table_row(THREE_COSET, (1, 1)) == [("Comm", (0, 1))]


def test_per_root_counts_match_dimensions(bases):
    from eala.eala import isotropic_dim
    for name, b in bases.items():
        for r, row in b.by_root.items():
            if r.m == 0 and r.lam != Z:
                assert len(row) == sum(isotropic_dim(b.spec, r.lam)), (name, r)


def test_express_recovers_random_combinations(bases):
    rng = random.Random(3)
    for b in bases.values():
        mode = b.spec.mode
        for r, row in b.by_root.items():
            coefs = [Scalar.of(rng.randint(-4, 4), mode) for _ in row]
            elem = EalaElement(b.spec)
            for c, e in zip(coefs, row):
                elem = elem + e.value.scale(c)
            assert express_in_basis(b, elem, r) == coefs


def test_express_examples():
    b = build_basis(FULL, 2)
    h = b.find("Halpha")
    assert [str(c) for c in express_in_basis(b, h.value, Root(0, Z))] == ["1", "0", "0", "0", "0"]
    xa, xma = b.find("Xplus", Z), b.find("Xminus", Z)
    assert [str(c) for c in express_in_basis(b, e_bracket(xa.value, xma.value), Root(0, Z))] == ["1", "0", "0", "0", "0"]
    c = EalaElement.from_g(TkkElement.op(commutator_L(FULL, (1, 1), (-1, 0))))
    assert [str(x) for x in express_in_basis(b, c, Root(0, (0, 1)))] == ["0", "1"]


def test_express_rejects_outside_span():
    b = build_basis(THREE_COSET, 2)
    assert express_in_basis(b, EalaElement.dual0(THREE_COSET, 1), Root(0, (1, 1))) is None


def test_rewrite_identity_gives_signed_basis_element():
    for spec in (THREE_COSET, FULL):
        b = build_basis(spec, 3)
        reps = {1: [(1, 0), (-1, 2)], 2: [(0, 1), (2, -1)], 3: [(1, 1), (-1, -1)]}
        for i in (1, 2, 3):
            for j in range(i + 1, 4):
                for li in reps[i]:
                    for lj in reps[j]:
                        if not (spec.in_support(li) and spec.in_support(lj)):
                            continue
                        op = EalaElement.from_g(TkkElement.op(commutator_L(spec, lj, li)))
                        coords = express_in_basis(b, op, Root(0, vadd(li, lj)))
                        nz = [c for c in coords if c]
                        assert len(nz) <= 1 and all(c in (1, -1) for c in nz)


@pytest.mark.parametrize("name", ["J_S three-coset", "J_Lambda", "Hermitian(-1)", "K_q q=-1"])
def test_integrality_radius_two(name):
    rep = verify_integrality(build_basis(FAMILIES[name], 2), IntegralityRing.Z)
    assert rep.verified, rep.failures[:3]
    assert rep.grading_violations == 0
    assert rep.pairs > 1000


def test_mutated_basis_is_caught():
    b = build_basis(FULL, 2)
    victim = b.find("Lop", (1, 0))
    victim.value = victim.value.scale(Scalar.of(3, FULL.mode))
    b._solvers.clear()
    rep = verify_integrality(b, IntegralityRing.Z)
    assert not rep.verified


def test_formal_q_needs_more_than_integers():
    rep = verify_integrality(build_basis(FORMAL, 1), IntegralityRing.Z)
    assert not rep.verified
    assert any("/2" in f["bad"] for f in rep.failures)


def test_report_is_deterministic_and_parallel_safe():
    b = build_basis(THREE_COSET, 2)
    r1 = verify_integrality(b, IntegralityRing.Z)
    r2 = verify_integrality(build_basis(THREE_COSET, 2), IntegralityRing.Z, workers=2)
    assert json.dumps(r1.to_json()) == json.dumps(r2.to_json())
    assert set(r1.to_json()) == {"family", "radius", "ring", "pairs", "skipped", "failures", "suppressed_rows"}


def test_suppressed_rows_listed():
    b = build_basis(THREE_COSET, 1)
    entries = {(d["root"], d["entry"]) for d in b.suppressed_rows}
    assert ("(1,0)", "ChiDer (1,0)") in entries and ("(1,0)", "Dual (1,0)") in entries
    assert not any(e[0] == "(2,0)" for e in entries)


@pytest.mark.parametrize("name,sigma", [
    ("J_Lambda", (0, 0)), ("J_S three-coset", (1, 0)), ("K_q formal", (1, 1)),
    ("Hermitian(-1)", (2, 1)), ("K_q q=-1", (-1, 2)),
])
def test_pairing_of_alpha_brackets_is_minus_one(name, sigma):
    ok, value = verify_lemma_naz4(FAMILIES[name], sigma)
    assert ok and value == -1


def test_hermitian_right_translation_is_minus_commutator():
    for lam in [(1, 1), (-1, 1), (3, -1)]:
        assert hermitian_s3_proportionality(HERM_MINUS, lam) == -1


def test_parse_labels():
    b = build_basis(FULL, 2)
    assert parse_label(b, "Halpha").kind == "Halpha"
    assert parse_label(b, "DegDer 2").index == 2
    assert parse_label(b, "Comm (1,1;0,1)").shift == (0, 1)
    assert parse_label(b, "Comm (1,1)").lam == (1, 1)
    for bad in ["Nope (1,0)", "Lop", "Lop (9,9)", "Halpha 1"]:
        with pytest.raises((ValueError, KeyError)):
            parse_label(b, bad)


def test_labels_round_trip():
    b = build_basis(FAMILIES["Hermitian(-1)"], 2)
    for e in b.elements:
        assert parse_label(b, e.label) is e
