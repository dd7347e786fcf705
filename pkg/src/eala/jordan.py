"""The three Jordan torus families behind one multiplication coefficient m(lam, mu).

x^lam * x^mu = m(lam, mu) x^(lam+mu), and x^lam is zero outside the support.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import Semilattice, coset_of, gamma, vadd
from .scalar import QMode, Scalar

__all__ = [
    "JordanTorusSpec",
    "JordanElement",
    "semilattice_torus",
    "quantum_torus",
    "hermitian_torus",
    "parse_jordan",
    "eta",
    "eta_exponent",
    "mult_coeff",
    "multiply",
    "rad_f_contains",
    "f_form",
    "hermitian_support",
]

SEMILATTICE = "semilattice"
QUANTUM = "quantum"
HERMITIAN = "hermitian"


@dataclass(frozen=True)
class JordanTorusSpec:
    """One Jordan torus: J_S, the plus algebra of a quantum torus, or a Hermitian torus.

    ``fault`` deliberately breaks the J_S product (mixed nonzero classes multiply
    to 1 instead of 0); it exists only so the lemma checker can be shown to
    catch a wrong algebra.
    """

    family: str
    nu: int = 2
    semilattice: Semilattice | None = None
    qmode: QMode | None = None
    sign: int = 1
    fault: str | None = None
    support: frozenset = field(init=False, compare=False, repr=False)
    mode: QMode = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.family == SEMILATTICE:
            if self.semilattice is None:
                raise ValueError("semilattice torus needs a semilattice")
            if self.semilattice.nu != self.nu:
                raise ValueError("semilattice rank does not match")
            support = self.semilattice.classes
            mode = QMode.root(1)
        elif self.family == QUANTUM:
            if self.nu != 2:
                raise ValueError("quantum tori are implemented for rank 2")
            if self.qmode is None:
                raise ValueError("quantum torus needs a q mode")
            support = frozenset(range(4))
            mode = self.qmode
        elif self.family == HERMITIAN:
            if self.nu != 2:
                raise ValueError("Hermitian tori are implemented for rank 2")
            if self.sign not in (1, -1):
                raise ValueError("Hermitian sign must be +1 or -1")
            support = frozenset(range(4)) if self.sign == 1 else frozenset({0, 1, 2})
            mode = QMode.root(1 if self.sign == 1 else 2)
        else:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "mode", mode)

    # --- convenience predicates
    @property
    def is_semilattice(self) -> bool:
        return self.family == SEMILATTICE

    @property
    def is_quantum(self) -> bool:
        return self.family == QUANTUM

    @property
    def is_hermitian(self) -> bool:
        return self.family == HERMITIAN

    @property
    def full_support(self) -> bool:
        return len(self.support) == 1 << self.nu

    @property
    def support_semilattice(self) -> Semilattice:
        return Semilattice(self.nu, self.support)

    def in_support(self, lam) -> bool:
        return coset_of(lam) in self.support

    @property
    def has_right_translations(self) -> bool:
        """Families realized inside a quantum torus (q possibly +-1)."""
        return self.family in (QUANTUM, HERMITIAN)

    @property
    def q_exponent_mode(self) -> QMode:
        """The mode in which q is read inside eta (q = -1 for the Hermitian(-1) torus)."""
        return self.mode

    def descriptor(self) -> str:
        if self.family == SEMILATTICE:
            return f"semilattice:{self.semilattice.descriptor()}"
        if self.family == QUANTUM:
            return "quantum:q=formal" if self.qmode.is_formal else f"quantum:q=root:{self.qmode.n}"
        return "laurent" if self.sign == 1 else "hermitian:sign=-1"

    def __str__(self):
        return self.descriptor()


def semilattice_torus(s: Semilattice, fault: str | None = None) -> JordanTorusSpec:
    return JordanTorusSpec(SEMILATTICE, s.nu, semilattice=s, fault=fault)


def quantum_torus(mode: QMode) -> JordanTorusSpec:
    return JordanTorusSpec(QUANTUM, 2, qmode=mode)


def hermitian_torus(sign: int) -> JordanTorusSpec:
    return JordanTorusSpec(HERMITIAN, 2, sign=sign)


def parse_jordan(text: str) -> JordanTorusSpec:
    """Parse descriptors like ``semilattice:S:v=2,cosets=00+10+01`` or ``quantum:q=root:2``."""
    t = text.strip()
    if t.startswith("jordan="):
        t = t[len("jordan="):]
    if t == "laurent":
        return hermitian_torus(1)
    if t.startswith("semilattice:"):
        return semilattice_torus(Semilattice.parse(t[len("semilattice:"):]))
    if t.startswith("quantum:"):
        rest = t[len("quantum:"):]
        if rest == "q=formal":
            return quantum_torus(QMode.formal())
        if rest.startswith("q=root:"):
            n = rest[len("q=root:"):]
            if not n.isdigit() or int(n) < 1:
                raise ValueError(f"bad root-of-unity order in {text!r}")
            return quantum_torus(QMode.root(int(n)))
        raise ValueError(f"bad quantum descriptor {text!r}")
    if t.startswith("hermitian:"):
        rest = t[len("hermitian:"):]
        if rest in ("sign=-1", "sign=+1", "sign=1"):
            return hermitian_torus(-1 if rest == "sign=-1" else 1)
        raise ValueError(f"bad hermitian descriptor {text!r}")
    raise ValueError(f"unknown Jordan family descriptor {text!r}")


# ---------------------------------------------------------------------------
# quantum torus data


def eta_exponent(lam, mu, qexp: dict | None = None) -> int:
    """Exponent e with eta(lam, mu) = q^e, eta = prod_{i<j} q_ji^(mu_j lam_i).

    ``qexp`` maps (j, i) with i < j to the integer k such that q_ji = q^k; the
    default is rank 2 with q_21 = q.
    """
    if qexp is None:
        return mu[1] * lam[0]
    return sum(k * mu[j] * lam[i] for (j, i), k in qexp.items())


def eta(lam, mu, mode: QMode) -> Scalar:
    return Scalar.q_pow(eta_exponent(lam, mu), mode)


def f_form(lam, mu, mode: QMode) -> Scalar:
    """f(lam, mu) = eta(lam, mu) / eta(mu, lam)."""
    return Scalar.q_pow(eta_exponent(lam, mu) - eta_exponent(mu, lam), mode)


def rad_f_contains(lam, mode: QMode) -> bool:
    if mode.is_formal:
        return all(x == 0 for x in lam)
    return all(x % mode.n == 0 for x in lam)


def hermitian_support(lam, sign: int) -> bool:
    if sign == 1:
        return True
    return (lam[0] * lam[1]) % 2 == 0


def mult_coeff(spec: JordanTorusSpec, lam, mu) -> Scalar:
    mode = spec.mode
    if spec.family == SEMILATTICE:
        s = spec.semilattice
        c1, c2 = coset_of(lam), coset_of(mu)
        if spec.fault == "gamma" and c1 in s.classes and c2 in s.classes:
            return Scalar.one(mode)
        return Scalar.of(gamma(c1, c2, s), mode)
    if spec.family == HERMITIAN and spec.sign == 1:
        return Scalar.one(mode)
    if spec.family == HERMITIAN and not (spec.in_support(lam) and spec.in_support(mu)):
        return Scalar.zero(mode)
    e1 = eta_exponent(lam, mu)
    e2 = eta_exponent(mu, lam)
    return (Scalar.q_pow(e1, mode) + Scalar.q_pow(e2, mode)) * Scalar.half(mode)


# ---------------------------------------------------------------------------
# elements


class JordanElement:
    """Finitely supported sum of c * x^lam; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @staticmethod
    def monomial(lam, coef: Scalar) -> "JordanElement":
        e = JordanElement()
        if coef:
            e.terms[tuple(lam)] = coef
        return e

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, o):
        if not isinstance(o, JordanElement):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, o: "JordanElement") -> "JordanElement":
        t = dict(self.terms)
        for k, v in o.terms.items():
            w = t.get(k)
            if w is None:
                t[k] = v
            else:
                w = w + v
                if w:
                    t[k] = w
                else:
                    del t[k]
        r = JordanElement()
        r.terms = t
        return r

    def __neg__(self) -> "JordanElement":
        r = JordanElement()
        r.terms = {k: -v for k, v in self.terms.items()}
        return r

    def __sub__(self, o: "JordanElement") -> "JordanElement":
        return self + (-o)

    def scale(self, c: Scalar) -> "JordanElement":
        if not c:
            return JordanElement()
        r = JordanElement()
        r.terms = {k: v * c for k, v in self.terms.items()}
        return r

    def coefficient(self, lam) -> Scalar | None:
        return self.terms.get(tuple(lam))

    def degrees(self) -> list:
        return sorted(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({v})*x^{k}" for k, v in sorted(self.terms.items()))


def multiply(spec: JordanTorusSpec, x: JordanElement, y: JordanElement) -> JordanElement:
    out: dict = {}
    for l1, a in x.terms.items():
        for l2, b in y.terms.items():
            m = mult_coeff(spec, l1, l2)
            if not m:
                continue
            k = vadd(l1, l2)
            v = a * b * m
            w = out.get(k)
            out[k] = v if w is None else w + v
    return JordanElement(out)
