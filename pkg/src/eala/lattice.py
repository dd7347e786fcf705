"""Lattice vectors, cosets mod 2*Lambda, semilattices, roots.

Vectors are plain integer tuples. A coset class mod 2*Lambda is encoded as an
int bitmask: bit i is the parity of coordinate i. In text it is a bit string
whose i-th character is the parity of coordinate i, so ``(3,2)`` has class
``"10"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
import re

Vector = tuple
CosetClass = int
IntegralFunctional = tuple

__all__ = [
    "Vector",
    "CosetClass",
    "IntegralFunctional",
    "coset_of",
    "coset_bits",
    "parse_coset_bits",
    "coset_rep",
    "vadd",
    "vsub",
    "vneg",
    "norm_inf",
    "window",
    "Semilattice",
    "gamma",
    "theta_sigma",
    "apply_functional",
    "Root",
    "is_root",
    "roots_in_window",
    "check_ears_axioms_window",
]


def coset_of(v: Vector) -> CosetClass:
    m = 0
    for i, c in enumerate(v):
        if c & 1:
            m |= 1 << i
    return m


def coset_bits(mask: CosetClass, nu: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(nu))


def parse_coset_bits(text: str) -> CosetClass:
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"bad coset class {text!r}")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def coset_rep(mask: CosetClass, nu: int) -> Vector:
    """The 0/1 representative of a class."""
    return tuple(mask >> i & 1 for i in range(nu))


def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: Vector) -> Vector:
    return tuple(-x for x in a)


def norm_inf(v: Vector) -> int:
    return max((abs(x) for x in v), default=0)


def window(radius: int, nu: int = 2) -> list:
    """All vectors with sup-norm at most radius, lexicographically ordered."""
    r = range(-radius, radius + 1)
    return list(product(r, repeat=nu))


def _gf2_rank(masks) -> int:
    basis = []
    for m in masks:
        for b in basis:
            m = min(m, m ^ b)
        if m:
            basis.append(m)
    return len(basis)


@dataclass(frozen=True)
class Semilattice:
    """A union of cosets of 2*Lambda containing 0 and spanning Lambda."""

    nu: int
    classes: frozenset

    def __post_init__(self):
        if self.nu < 1:
            raise ValueError("rank must be positive")
        cl = frozenset(self.classes)
        object.__setattr__(self, "classes", cl)
        if any(not 0 <= c < (1 << self.nu) for c in cl):
            raise ValueError("coset class out of range for the rank")
        if 0 not in cl:
            raise ValueError("semilattice must contain the zero class")
        if _gf2_rank(cl) != self.nu:
            raise ValueError("classes do not span Lambda modulo 2*Lambda")

    @classmethod
    def full(cls, nu: int = 2) -> "Semilattice":
        return cls(nu, frozenset(range(1 << nu)))

    @classmethod
    def of(cls, nu: int, bit_strings) -> "Semilattice":
        masks = set()
        for b in bit_strings:
            if len(b) != nu:
                raise ValueError(f"class {b!r} has wrong length for rank {nu}")
            masks.add(parse_coset_bits(b))
        return cls(nu, frozenset(masks))

    @property
    def is_full(self) -> bool:
        return len(self.classes) == 1 << self.nu

    def contains(self, v: Vector) -> bool:
        return coset_of(v) in self.classes

    def sum_classes(self) -> frozenset:
        """Classes of S + S."""
        return frozenset(a ^ b for a in self.classes for b in self.classes)

    def sorted_classes(self) -> list:
        return sorted(self.classes)

    def descriptor(self) -> str:
        if self.is_full:
            return f"S:full,v={self.nu}"
        bits = "+".join(coset_bits(c, self.nu) for c in self.sorted_classes())
        return f"S:v={self.nu},cosets={bits}"

    @classmethod
    def parse(cls, text: str) -> "Semilattice":
        text = text.strip()
        if not text.startswith("S:"):
            raise ValueError(f"semilattice descriptor must start with 'S:': {text!r}")
        fields = {}
        flags = set()
        for part in text[2:].split(","):
            part = part.strip()
            if not part:
                continue
            if "=" in part:
                k, v = part.split("=", 1)
                fields[k.strip()] = v.strip()
            else:
                flags.add(part)
        unknown = (set(fields) - {"v", "cosets"}) | (flags - {"full"})
        if unknown:
            raise ValueError(f"unknown semilattice fields {sorted(unknown)}")
        if "v" not in fields or not re.fullmatch(r"\d+", fields["v"]):
            raise ValueError(f"semilattice descriptor needs v=<rank>: {text!r}")
        nu = int(fields["v"])
        if "full" in flags:
            if "cosets" in fields:
                raise ValueError("give either 'full' or 'cosets=', not both")
            return cls.full(nu)
        if "cosets" not in fields:
            raise ValueError(f"semilattice descriptor needs cosets= or full: {text!r}")
        return cls.of(nu, fields["cosets"].split("+"))

    def __str__(self):
        return self.descriptor()


def gamma(c1: CosetClass, c2: CosetClass, s: Semilattice) -> int:
    if c1 not in s.classes or c2 not in s.classes:
        return 0
    return 1 if (c1 == c2 or c1 == 0 or c2 == 0) else 0


def theta_sigma(sigma: Vector) -> IntegralFunctional:
    """k2*theta1 - k1*theta2 for sigma = (k1, k2); kills sigma, no gcd reduction."""
    if len(sigma) != 2:
        raise ValueError("theta_sigma is defined for rank 2")
    k1, k2 = sigma
    if k1 == 0 and k2 == 0:
        raise ValueError("theta_sigma needs a nonzero vector")
    return (k2, -k1)


def apply_functional(theta: IntegralFunctional, v: Vector) -> int:
    return sum(t * x for t, x in zip(theta, v))


@dataclass(frozen=True, order=True)
class Root:
    """m*alpha_dot + lam with m in {-1, 0, 1}."""

    m: int
    lam: Vector

    def __post_init__(self):
        if self.m not in (-1, 0, 1):
            raise ValueError("root coefficient of alpha must be -1, 0 or 1")

    def __add__(self, o: "Root") -> tuple:
        """Sum as a raw (m, lam) pair; it may fail to be a root."""
        return (self.m + o.m, vadd(self.lam, o.lam))

    @property
    def is_isotropic(self) -> bool:
        return self.m == 0

    def norm(self) -> int:
        return self.m * self.m

    def __str__(self):
        lam = "(" + ",".join(str(x) for x in self.lam) + ")"
        if self.m == 0:
            return lam
        return ("alpha" if self.m == 1 else "-alpha") + "+" + lam


def is_root(m: int, lam: Vector, s: Semilattice) -> bool:
    """Exact membership in R = (S+S) u (+-alpha + S)."""
    if m == 0:
        return coset_of(lam) in s.sum_classes()
    if m in (1, -1):
        return coset_of(lam) in s.classes
    return False


def roots_in_window(s: Semilattice, radius: int) -> list:
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    ss = s.sum_classes()
    out = []
    pts = window(radius, s.nu)
    for m in (-1, 0, 1):
        allowed = ss if m == 0 else s.classes
        for lam in pts:
            if coset_of(lam) in allowed:
                out.append(Root(m, lam))
    return out


def _form(m1: int, m2: int) -> int:
    # (alpha_dot, alpha_dot) = 1, Lambda is isotropic
    return m1 * m2


def check_ears_axioms_window(s: Semilattice, radius: int) -> dict:
    """Finite-window check of the extended affine root system axioms.

    Membership is exact (coset arithmetic); the window only bounds enumeration.
    """
    roots = roots_in_window(s, radius)
    rset = {(r.m, r.lam) for r in roots}
    nonisotropic = [r for r in roots if r.m != 0]
    isotropic = [r for r in roots if r.m == 0]
    zero = tuple([0] * s.nu)
    results: dict = {}
    problems: list = []

    # R1: R = -R
    ok = all(is_root(-r.m, tuple(-x for x in r.lam), s) for r in roots)
    results["R1"] = ok

    # R2: 0 in R
    results["R2"] = (0, zero) in rset

    # R3: R spans the ambient space (Q-rank of (m, lam) vectors)
    results["R3"] = _q_rank([(r.m,) + r.lam for r in roots]) == s.nu + 1

    # R4: no 2*alpha for nonisotropic alpha
    results["R4"] = all(not is_root(2 * r.m, tuple(2 * x for x in r.lam), s) for r in nonisotropic)

    results["R5"] = "structural: lattice subset"

    # R6: root strings are unbroken with d - u = (beta, alpha^vee)
    ok = True
    for a in nonisotropic:
        for b in roots:
            idx = [i for i in range(-4, 5) if is_root(b.m + i * a.m, tuple(x + i * y for x, y in zip(b.lam, a.lam)), s)]
            if 0 not in idx:
                ok = False
                problems.append(("R6", str(a), str(b), "beta missing"))
                continue
            d = -min(idx)
            u = max(idx)
            if idx != list(range(-d, u + 1)):
                ok = False
                problems.append(("R6", str(a), str(b), "broken string"))
            elif d - u != 2 * _form(b.m, a.m) // _form(a.m, a.m):
                ok = False
                problems.append(("R6", str(a), str(b), f"d-u={d - u}"))
    results["R6"] = ok

    # R7: every isotropic root is reachable from a nonisotropic one
    ok = True
    for sig in isotropic:
        c = coset_of(sig.lam)
        if not any((c ^ a) in s.classes for a in s.classes):
            ok = False
            problems.append(("R7", str(sig)))
    results["R7"] = ok

    # R8: nonisotropic roots are connected (here (alpha, beta) = m_a*m_b never vanishes)
    results["R8"] = _connected(nonisotropic)

    results["passed"] = all(v is True for k, v in results.items() if k != "R5")
    results["problems"] = problems
    results["roots"] = len(roots)
    return results


def _connected(nonisotropic) -> bool:
    if not nonisotropic:
        return True
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j, b in enumerate(nonisotropic):
            if j not in seen and _form(nonisotropic[i].m, b.m) != 0:
                seen.add(j)
                frontier.append(j)
    return len(seen) == len(nonisotropic)


def _q_rank(rows) -> int:
    from fractions import Fraction

    mat = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col] / mat[rank][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank
