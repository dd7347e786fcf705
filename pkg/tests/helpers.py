"""Shared fixtures: the standard family instances and seeded random elements."""

from __future__ import annotations

import random

from eala.eala import EalaElement, is_centroidal
from eala.jordan import hermitian_torus, parse_jordan, quantum_torus, semilattice_torus
from eala.lattice import Semilattice, vadd, vneg
from eala.operators import commutator_L, left_mult, right_translation
from eala.scalar import QMode, Scalar
from eala.tkk import TkkElement

THREE_COSET = semilattice_torus(Semilattice.of(2, ["00", "10", "01"]))
FULL = semilattice_torus(Semilattice.full(2))
FORMAL = quantum_torus(QMode.formal())
Q_ONE = quantum_torus(QMode.root(1))
Q_MINUS = quantum_torus(QMode.root(2))
HERM_PLUS = hermitian_torus(1)
HERM_MINUS = hermitian_torus(-1)

FAMILIES = {
    "J_S three-coset": THREE_COSET,
    "J_Lambda": FULL,
    "K_q formal": FORMAL,
    "K_q q=1": Q_ONE,
    "K_q q=-1": Q_MINUS,
    "Hermitian(+1)": HERM_PLUS,
    "Hermitian(-1)": HERM_MINUS,
}

# the descriptor strings used on the command line, for the same instances
DESCRIPTORS = {
    "J_S three-coset": "semilattice:S:v=2,cosets=00+10+01",
    "J_Lambda": "semilattice:S:full,v=2",
    "K_q formal": "quantum:q=formal",
    "K_q q=1": "quantum:q=root:1",
    "K_q q=-1": "quantum:q=root:2",
    "Hermitian(+1)": "laurent",
    "Hermitian(-1)": "hermitian:sign=-1",
}
assert all(parse_jordan(DESCRIPTORS[k]) == v for k, v in FAMILIES.items())


def rand_vec(rng: random.Random, radius: int = 2, nu: int = 2) -> tuple:
    return tuple(rng.randint(-radius, radius) for _ in range(nu))


def rand_scalar(rng: random.Random, mode: QMode) -> Scalar:
    c = Scalar.of(rng.choice([-3, -2, -1, 1, 2, 3]), mode)
    k = rng.random()
    if k < 0.2:
        c = c * Scalar.sqrt2(mode)
    elif k < 0.35:
        c = c * Scalar.q_pow(rng.randint(-2, 2), mode)
    elif k < 0.45:
        c = c * Scalar.half(mode)
    return c


def rand_tkk(rng: random.Random, spec, lam) -> TkkElement:
    """A random Lambda-homogeneous TKK element of degree lam (may be zero)."""
    mode = spec.mode
    out = TkkElement(spec)
    for _ in range(rng.randint(1, 3)):
        k = rng.randrange(5)
        c = rand_scalar(rng, mode)
        if k == 0:
            out = out + TkkElement.x(spec, lam, c)
        elif k == 1:
            out = out + TkkElement.xbar(spec, lam, c)
        elif k == 2:
            out = out + TkkElement.op(left_mult(spec, lam).scale(c))
        elif k == 3:
            t = rand_vec(rng, 2, spec.nu)
            out = out + TkkElement.op(commutator_L(spec, vadd(lam, t), vneg(t)).scale(c))
        elif spec.has_right_translations:
            # L - r lies in the inner structure algebra for these tori
            out = out + TkkElement.op((left_mult(spec, lam) - right_translation(spec, lam)).scale(c))
        else:
            out = out + TkkElement.x(spec, lam, c) + TkkElement.xbar(spec, lam, c)
    return out


def rand_eala(rng: random.Random, spec, lam) -> EalaElement:
    """A random homogeneous element of E, drawing on g, D and C."""
    z = (0,) * spec.nu
    k = rng.randrange(6)
    if k == 3:
        if lam == z:
            return EalaElement.deg_der(spec, rng.randint(1, 2))
        if is_centroidal(spec, lam):
            return EalaElement.chi_der(spec, lam, rand_scalar(rng, spec.mode))
    if k == 4:
        if lam == z:
            return EalaElement.dual0(spec, rng.randint(1, 2))
        if is_centroidal(spec, vneg(lam)):
            return EalaElement.dual(spec, lam)
    return EalaElement.from_g(rand_tkk(rng, spec, lam))


def degree_triple(rng: random.Random, radius: int = 2, nu: int = 2) -> tuple:
    """Degrees (a, b, c); usually a + b + c = 0 so the form checks are not vacuous."""
    a = rand_vec(rng, radius, nu)
    b = rand_vec(rng, radius, nu)
    if rng.random() < 0.8:
        c = vneg(vadd(a, b))
    else:
        c = rand_vec(rng, radius, nu)
    return a, b, c
