"""The Lie algebra TKK(J) = J + Instrl(J) + J-bar and its invariant form."""

from __future__ import annotations

from .jordan import JordanElement, JordanTorusSpec, mult_coeff
from .lattice import vadd, vneg, window
from .linalg import EchelonSpan
from .operators import (
    HomOperator,
    OperatorSum,
    commutator_L,
    commutator_sums,
    left_mult,
)
from .scalar import Scalar

__all__ = [
    "TkkElement",
    "tkk_bracket",
    "tkk_form",
    "jacobi_check",
    "q_grading_component",
    "triangle",
    "epsilon_pair",
    "instrl_form",
    "inner_derivation_frame",
]


class TkkElement:
    """plus + mid + minus-bar, with plus, minus in J and mid in Instrl(J)."""

    __slots__ = ("spec", "plus", "mid", "minus")

    def __init__(self, spec: JordanTorusSpec, plus: JordanElement | None = None,
                 mid: OperatorSum | None = None, minus: JordanElement | None = None):
        self.spec = spec
        self.plus = plus if plus is not None else JordanElement()
        self.mid = mid if mid is not None else OperatorSum()
        self.minus = minus if minus is not None else JordanElement()

    @staticmethod
    def zero(spec: JordanTorusSpec) -> "TkkElement":
        return TkkElement(spec)

    @staticmethod
    def x(spec, lam, coef: Scalar | None = None) -> "TkkElement":
        """coef * x^lam in the J slot (zero if lam is outside the support)."""
        coef = coef if coef is not None else Scalar.one(spec.mode)
        if not spec.in_support(lam):
            return TkkElement(spec)
        return TkkElement(spec, plus=JordanElement.monomial(lam, coef))

    @staticmethod
    def xbar(spec, lam, coef: Scalar | None = None) -> "TkkElement":
        coef = coef if coef is not None else Scalar.one(spec.mode)
        if not spec.in_support(lam):
            return TkkElement(spec)
        return TkkElement(spec, minus=JordanElement.monomial(lam, coef))

    @staticmethod
    def op(op: HomOperator) -> "TkkElement":
        return TkkElement(op.spec, mid=OperatorSum.of(op))

    def __bool__(self):
        return bool(self.plus) or bool(self.mid) or bool(self.minus)

    def is_zero(self) -> bool:
        return not self

    def __add__(self, o: "TkkElement") -> "TkkElement":
        return TkkElement(self.spec, self.plus + o.plus, self.mid + o.mid, self.minus + o.minus)

    def __sub__(self, o: "TkkElement") -> "TkkElement":
        return TkkElement(self.spec, self.plus - o.plus, self.mid - o.mid, self.minus - o.minus)

    def __neg__(self) -> "TkkElement":
        return TkkElement(self.spec, -self.plus, -self.mid, -self.minus)

    def scale(self, c: Scalar) -> "TkkElement":
        return TkkElement(self.spec, self.plus.scale(c), self.mid.scale(c), self.minus.scale(c))

    def __eq__(self, o):
        if not isinstance(o, TkkElement):
            return NotImplemented
        return self.plus == o.plus and self.minus == o.minus and self.mid == o.mid

    __hash__ = None

    def degrees(self) -> set:
        return set(self.plus.terms) | set(self.mid.parts) | set(self.minus.terms)

    def component(self, lam) -> "TkkElement":
        """The Lambda-degree lam part."""
        lam = tuple(lam)
        p = self.plus.terms.get(lam)
        n = self.minus.terms.get(lam)
        m = self.mid.parts.get(lam)
        return TkkElement(
            self.spec,
            JordanElement({lam: p}) if p is not None else None,
            OperatorSum({lam: m}) if m is not None else None,
            JordanElement({lam: n}) if n is not None else None,
        )

    def components(self) -> dict:
        return {lam: self.component(lam) for lam in sorted(self.degrees())}

    def __repr__(self):
        return f"({self.plus} | {self.mid} | {self.minus})"


def _bar_apply(E: OperatorSum, y: JordanElement) -> JordanElement:
    """E-bar(y) with E-bar = E - 2 L_{E(1)}."""
    out = JordanElement()
    for deg, op in E.parts.items():
        out = out + op.apply(y)
        c0 = op.coeff_at_zero()
        if c0:
            out = out - left_mult(op.spec, deg).apply(y).scale(c0 + c0)
    return out


def triangle(spec: JordanTorusSpec, x: JordanElement, y: JordanElement) -> OperatorSum:
    """x (triangle) y = L_{xy} + [L_x, L_y]."""
    parts: dict = {}
    for lam, a in x.terms.items():
        for mu, b in y.terms.items():
            ab = a * b
            deg = vadd(lam, mu)
            m = mult_coeff(spec, lam, mu)
            op = commutator_L(spec, lam, mu)
            if m:
                op = op + left_mult(spec, deg).scale(m)
            if not op.terms:
                continue
            op = op.scale(ab)
            w = parts.get(deg)
            parts[deg] = op if w is None else w + op
    return OperatorSum(parts)


def tkk_bracket(a: TkkElement, b: TkkElement) -> TkkElement:
    spec = a.spec
    if b.spec != spec:
        raise ValueError("bracket of elements from different algebras")
    x1, E1, y1 = a.plus, a.mid, a.minus
    x2, E2, y2 = b.plus, b.mid, b.minus
    plus = E1.apply(x2) - E2.apply(x1) if (E1 or E2) else JordanElement()
    minus = JordanElement()
    if E1 and y2:
        minus = minus + _bar_apply(E1, y2)
    if E2 and y1:
        minus = minus - _bar_apply(E2, y1)
    mid = OperatorSum()
    if x1 and y2:
        mid = mid + triangle(spec, x1, y2)
    if x2 and y1:
        mid = mid - triangle(spec, x2, y1)
    if E1 and E2:
        mid = mid + commutator_sums(E1, E2)
    return TkkElement(spec, plus, mid, minus)


# ---------------------------------------------------------------------------
# the form


def epsilon_pair(spec: JordanTorusSpec, x: JordanElement, z: JordanElement) -> Scalar:
    """epsilon(x * z): coefficient of x^0 in the product."""
    total = Scalar.zero(spec.mode)
    if len(x.terms) > len(z.terms):
        x, z = z, x
    for lam, a in x.terms.items():
        b = z.terms.get(vneg(lam))
        if b is not None:
            m = mult_coeff(spec, lam, vneg(lam))
            if m:
                total = total + a * b * m
    return total


_FRAMES: dict = {}


def inner_derivation_frame(spec: JordanTorusSpec, degree, radius: int = 2) -> EchelonSpan:
    """Independent commutators [L_{x^p}, L_{x^q}] (p + q = degree) spanning the inner derivations of that degree."""
    degree = tuple(degree)
    key = (spec, degree, radius)
    fr = _FRAMES.get(key)
    if fr is not None:
        return fr
    fr = EchelonSpan()
    for tau in window(radius, spec.nu):
        p = vadd(degree, tau)
        qv = vneg(tau)
        op = commutator_L(spec, p, qv)
        if op.terms:
            fr.add(op.coordinates(), (p, qv))
    _FRAMES[key] = fr
    return fr


def _derivation_pair(D1: HomOperator, D2: HomOperator) -> Scalar:
    """(D1, D2) for inner derivations of opposite degrees, via (D, [L_p, L_q]) = (D x^p, x^q)."""
    spec = D1.spec
    coords = None
    for radius in (2, 3, 4):
        coords = inner_derivation_frame(spec, D2.degree, radius).express(D2.coordinates())
        if coords is not None:
            break
    if coords is None:
        raise ValueError(f"operator {D2} of degree {D2.degree} is not a sum of commutators in the frame")
    total = Scalar.zero(spec.mode)
    sig = D1.degree
    for (p, qv), t in coords.items():
        c = D1.coeff_at(p)
        if c:
            m = mult_coeff(spec, vadd(p, sig), qv)
            if m:
                total = total + t * c * m
    return total


def hom_form(A: HomOperator, B: HomOperator) -> Scalar:
    """Pairing of Instrl components of opposite degrees: (L_a + D1, L_b + D2) = eps(ab) + (D1, D2)."""
    spec = A.spec
    if vadd(A.degree, B.degree) != (0,) * spec.nu or not A.terms or not B.terms:
        return Scalar.zero(spec.mode)
    sig = A.degree
    a0 = A.coeff_at_zero()
    b0 = B.coeff_at_zero()
    total = Scalar.zero(spec.mode)
    DA, DB = A, B
    if a0:
        DA = A - left_mult(spec, sig).scale(a0)
    if b0:
        DB = B - left_mult(spec, vneg(sig)).scale(b0)
    if a0 and b0:
        total = total + a0 * b0 * mult_coeff(spec, sig, vneg(sig))
    if DA.terms and DB.terms:
        total = total + _derivation_pair(DA, DB)
    return total


def instrl_form(E1: OperatorSum, E2: OperatorSum) -> Scalar:
    total = None
    for deg, A in E1.parts.items():
        B = E2.parts.get(vneg(deg))
        if B is not None:
            v = hom_form(A, B)
            total = v if total is None else total + v
    if total is None:
        for op in list(E1.parts.values()) + list(E2.parts.values()):
            return Scalar.zero(op.spec.mode)
        raise ValueError("empty operator sums carry no mode; use tkk_form")
    return total


def tkk_form(a: TkkElement, b: TkkElement) -> Scalar:
    spec = a.spec
    total = Scalar.zero(spec.mode)
    if a.plus and b.minus:
        total = total + epsilon_pair(spec, a.plus, b.minus)
    if b.plus and a.minus:
        total = total + epsilon_pair(spec, b.plus, a.minus)
    if a.mid and b.mid:
        total = total + instrl_form(a.mid, b.mid)
    return total


def jacobi_check(a: TkkElement, b: TkkElement, c: TkkElement) -> bool:
    s = tkk_bracket(tkk_bracket(a, b), c) + tkk_bracket(tkk_bracket(b, c), a) + tkk_bracket(tkk_bracket(c, a), b)
    return s.is_zero()


def q_grading_component(a: TkkElement, m: int) -> TkkElement:
    if m == 1:
        return TkkElement(a.spec, plus=a.plus)
    if m == 0:
        return TkkElement(a.spec, mid=a.mid)
    if m == -1:
        return TkkElement(a.spec, minus=a.minus)
    return TkkElement(a.spec)
