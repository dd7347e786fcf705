"""Brute-force checks of the left-multiplication identities of J_S in any rank.

Every check runs over all coset classes (never sampled) and, inside each class,
over a few seeded representatives from an l-infinity window.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .jordan import JordanElement, JordanTorusSpec, multiply, semilattice_torus
from .lattice import Semilattice, coset_of, coset_rep, gamma, vadd, vneg, window
from .operators import commutator_L, left_mult, op_commutator, op_compose, op_equal, shift_operator
from .scalar import Scalar

__all__ = [
    "CHECKS",
    "LemmaReport",
    "all_semilattices",
    "standard_semilattices",
    "verify_rank_lemmas",
]

CHECKS = (
    "triple_product_formula",
    "commutator_vanishes_on_trivial_class",
    "commutator_vanishes_within_class",
    "commutator_shift_invariance",
    "commutator_rewrite",
    "double_commutator_vanishes",
    "double_commutator_is_left_mult",
)


@dataclass
class LemmaReport:
    semilattice: str
    radius: int
    samples: int
    seed: int
    instances: dict = field(default_factory=lambda: {c: 0 for c in CHECKS})
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "semilattice": self.semilattice,
            "radius": self.radius,
            "samples": self.samples,
            "seed": self.seed,
            "instances": dict(self.instances),
            "counterexamples": list(self.counterexamples),
        }


def all_semilattices(nu: int) -> list:
    """Every semilattice of rank nu, up to equality of class sets (not up to GL(nu, Z))."""
    out = []
    nonzero = range(1, 1 << nu)
    for k in range(nu, 1 << nu):
        for combo in itertools.combinations(nonzero, k):
            try:
                out.append(Semilattice(nu, frozenset((0,) + combo)))
            except ValueError:
                continue
    return out


def _class_reps(nu: int, radius: int, samples: int, rng: random.Random) -> dict:
    by_class: dict = {}
    for v in window(radius, nu):
        by_class.setdefault(coset_of(v), []).append(v)
    reps = {}
    for c, vs in sorted(by_class.items()):
        # the 0/1 representative is always included so small cases are covered
        base = coset_rep(c, nu)
        rest = [v for v in vs if v != base]
        reps[c] = [base] + rng.sample(rest, min(samples - 1, len(rest)))
    return reps


def _w(**kw) -> dict:
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in kw.items()}


def verify_rank_lemmas(s: Semilattice, radius: int = 2, samples: int = 2, seed: int = 0,
                       fault: str | None = None) -> LemmaReport:
    """Check the J_S product and commutator identities for every class instantiation.

    ``fault`` is forwarded to the Jordan torus so the harness can be shown to
    flag a wrong product.
    """
    nu = s.nu
    spec: JordanTorusSpec = semilattice_torus(s, fault=fault)
    rng = random.Random(seed)
    rep = LemmaReport(s.descriptor(), radius, samples, seed)
    reps = _class_reps(nu, radius, samples, rng)
    classes = sorted(reps)
    in_s = [c for c in classes if c in s.classes]
    one = Scalar.one(spec.mode)
    two_lattice = [v for v in window(radius, nu) if coset_of(v) == 0]

    def fail(check, **witness):
        rep.counterexamples.append({"check": check, "witness": _w(**witness)})

    def count(check):
        rep.instances[check] += 1

    # product of three monomials against the Gamma formula, classes inside and outside S
    for i, j, k in itertools.product(classes, repeat=3):
        g = gamma(j, k, s) * gamma(i, j ^ k, s)
        for a, b, c in zip(reps[i], reps[j], reps[k]):
            count("triple_product_formula")
            xa, xb, xc = (JordanElement.monomial(v, one) if s.contains(v) else JordanElement()
                          for v in (a, b, c))
            got = multiply(spec, xa, multiply(spec, xb, xc))
            want = JordanElement.monomial(vadd(a, vadd(b, c)), Scalar.of(g, spec.mode)) if g else JordanElement()
            if got != want:
                fail("triple_product_formula", a=a, b=b, c=c, got=str(got), expected=str(want))

    for i, j in itertools.product(in_s, repeat=2):
        for a in reps[i]:
            for b in reps[j]:
                op = commutator_L(spec, a, b)
                if 0 in (i, j):
                    count("commutator_vanishes_on_trivial_class")
                    if op.terms:
                        fail("commutator_vanishes_on_trivial_class", sigma=a, tau=b)
                else:
                    for c in reps[0]:
                        count("commutator_vanishes_on_trivial_class")
                        if op.coeff_at(c):
                            fail("commutator_vanishes_on_trivial_class", sigma=a, tau=b, gamma=c)
                if i == j:
                    count("commutator_vanishes_within_class")
                    if op.terms:
                        fail("commutator_vanishes_within_class", sigma=a, tau=b)

                # moving the arguments by elements of 2 Lambda summing to zero
                l0 = rng.choice(two_lattice)
                l1 = rng.choice(two_lattice)
                l2 = vneg(vadd(l0, l1))
                moved = commutator_L(spec, vadd(a, l0), vadd(b, l1))
                for k in in_s:
                    for c in reps[k]:
                        count("commutator_shift_invariance")
                        if op.coeff_at(c) != moved.coeff_at(vadd(c, l2)):
                            fail("commutator_shift_invariance", sigma=a, tau=b, gamma=c,
                                 shifts=[list(l0), list(l1), list(l2)])
                # the same statement as an operator identity, using chi
                count("commutator_shift_invariance")
                if not op_equal(op, op_compose(moved, shift_operator(spec, l2))):
                    fail("commutator_shift_invariance", sigma=a, tau=b,
                         shifts=[list(l0), list(l1), list(l2)], form="operator")

                # rewrite with the fixed 0/1 representative of tau's class
                tj = coset_rep(j, nu)
                count("commutator_rewrite")
                other = commutator_L(spec, vadd(vadd(a, b), tj), vneg(tj))
                if not op_equal(op, other):
                    fail("commutator_rewrite", sigma=a, tau=b, shift=tj)

    # nested commutators
    for i, j, k in itertools.product(in_s, repeat=3):
        for a, b, c in zip(reps[i], reps[j], reps[k]):
            inner = commutator_L(spec, b, c)
            outer = op_commutator(left_mult(spec, a), inner)
            if i ^ j ^ k == 0:
                count("double_commutator_vanishes")
                if outer.terms:
                    fail("double_commutator_vanishes", a=a, b=b, c=c)
            if i == j:
                # [L_mu, [L_lam, L_nu]] with mu, lam in one class
                eps = 0 if (j == k or 0 in (j, k)) else 1
                count("double_commutator_is_left_mult")
                deg = vadd(a, vadd(b, c))
                want = left_mult(spec, deg)
                ok = (not outer.terms) if eps == 0 else op_equal(outer, want)
                if not ok:
                    fail("double_commutator_is_left_mult", mu=a, lam=b, other=c, expected_eps=eps)
    return rep


def standard_semilattices(nu: int) -> list:
    """Semilattices swept by default: all of them up to rank 3, a spread of shapes beyond."""
    if nu <= 3:
        return all_semilattices(nu)
    units = [1 << i for i in range(nu)]
    full_sum = (1 << nu) - 1
    pair = units[0] | units[1]
    shapes = [
        [0] + units,
        [0] + units + [full_sum],
        [0] + units + [pair],
        list(range(1 << nu)),
    ]
    return [Semilattice(nu, frozenset(c)) for c in shapes]
