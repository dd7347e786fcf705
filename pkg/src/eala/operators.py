"""Degree-homogeneous operators on a Jordan torus with closed-form coefficients.

An operator of degree sigma sends x^gamma to c(gamma) x^(gamma+sigma). The
coefficient function is stored as

    terms[mask][ell] = a      meaning   c(gamma) = sum a * q^(ell . gamma)

over the entries whose ``mask`` equals the coset class of gamma. Constant
factors q^(ell_0) are folded into ``a``. Cosets not listed contribute zero.

In RootOfUnity(n) mode each ell is reduced modulo n' = n / gcd(n, 2): on the
coset gamma = r + 2*delta, q^(ell . gamma) = q^(ell . r) * (q^2)^(ell . delta)
and q^2 has order n', so exponents only matter modulo n'. The reduction moves
q^((ell - ell_red) . r) into the coefficient. After reduction, distinct ell on
one coset are distinct characters of delta (or distinct monomials in formal
mode), hence linearly independent: an operator is zero iff ``terms`` is empty.

Every operator also carries a ``recipe`` (a small expression tree naming how it
was built) which ``naive_apply`` replays by direct Jordan multiplication. That
gives an independent pointwise oracle for the symbolic calculus.
"""

from __future__ import annotations

from math import gcd

from .jordan import (
    HERMITIAN,
    SEMILATTICE,
    JordanElement,
    JordanTorusSpec,
    eta_exponent,
    mult_coeff,
)
from .lattice import coset_of, gamma, vadd
from .scalar import Scalar

__all__ = [
    "HomOperator",
    "OperatorSum",
    "left_mult",
    "right_translation",
    "shift_operator",
    "identity_operator",
    "zero_operator",
    "op_compose",
    "op_commutator",
    "commutator_L",
    "compose_sums",
    "commutator_sums",
    "left_mult_element",
    "op_equal",
    "l_d_split",
    "naive_apply",
    "format_recipe",
]


def _zero_ell(nu):
    return (0,) * nu


class HomOperator:
    __slots__ = ("spec", "degree", "terms", "recipe")

    def __init__(self, spec: JordanTorusSpec, degree, terms: dict, recipe=None):
        self.spec = spec
        self.degree = tuple(degree)
        self.terms = terms
        self.recipe = recipe

    # --- basic queries
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff_at(self, gam) -> Scalar:
        """Symbolic coefficient c(gamma)."""
        mode = self.spec.mode
        row = self.terms.get(coset_of(gam))
        total = Scalar.zero(mode)
        if not row:
            return total
        for ell, a in row.items():
            e = 0
            for l, g in zip(ell, gam):
                e += l * g
            total = total + (a * Scalar.q_pow(e, mode) if e else a)
        return total

    def coeff_at_zero(self) -> Scalar:
        row = self.terms.get(0)
        total = Scalar.zero(self.spec.mode)
        if row:
            for a in row.values():
                total = total + a
        return total

    def apply(self, x: JordanElement) -> JordanElement:
        out: dict = {}
        sig = self.degree
        for lam, a in x.terms.items():
            c = self.coeff_at(lam)
            if c:
                k = vadd(lam, sig)
                v = a * c
                w = out.get(k)
                out[k] = v if w is None else w + v
        return JordanElement(out)

    def coordinates(self) -> dict:
        """Flat coordinates {(mask, ell): coefficient}; canonical, so usable for linear algebra."""
        return {(m, ell): a for m, row in self.terms.items() for ell, a in row.items()}

    # --- arithmetic
    def __add__(self, o: "HomOperator") -> "HomOperator":
        if not o.terms:
            return self
        if not self.terms:
            return o
        if o.degree != self.degree:
            raise ValueError("adding operators of different degrees")
        return HomOperator(self.spec, self.degree, _merge(self.terms, o.terms, 1), ("+", self.recipe, o.recipe))

    def __sub__(self, o: "HomOperator") -> "HomOperator":
        if not o.terms:
            return self
        if self.terms and o.degree != self.degree:
            raise ValueError("subtracting operators of different degrees")
        return HomOperator(self.spec, o.degree if not self.terms else self.degree,
                           _merge(self.terms, o.terms, -1), ("-", self.recipe, o.recipe))

    def __neg__(self) -> "HomOperator":
        return HomOperator(self.spec, self.degree,
                           {m: {l: -a for l, a in row.items()} for m, row in self.terms.items()},
                           ("neg", self.recipe))

    def scale(self, c: Scalar) -> "HomOperator":
        if not c:
            return zero_operator(self.spec, self.degree)
        if c == 1:
            return self
        return HomOperator(self.spec, self.degree,
                           {m: {l: a * c for l, a in row.items()} for m, row in self.terms.items()},
                           ("*", c, self.recipe))

    def __eq__(self, o):
        if not isinstance(o, HomOperator):
            return NotImplemented
        return op_equal(self, o)

    __hash__ = None

    def __repr__(self):
        return f"HomOperator({format_recipe(self.recipe)}, degree={self.degree})"

    def __str__(self):
        return format_recipe(self.recipe)


def _merge(t1: dict, t2: dict, sign: int) -> dict:
    out = {m: dict(row) for m, row in t1.items()}
    for m, row in t2.items():
        dst = out.get(m)
        if dst is None:
            dst = out[m] = {}
        for ell, a in row.items():
            b = dst.get(ell)
            if b is None:
                dst[ell] = a if sign == 1 else -a
            else:
                b = b + a if sign == 1 else b - a
                if b:
                    dst[ell] = b
                else:
                    del dst[ell]
        if not dst:
            del out[m]
    return out


def _reducer(spec: JordanTorusSpec):
    """Return None (formal) or n' for ell reduction."""
    n = spec.mode.n
    if n is None:
        return None
    return n // gcd(n, 2)


def _add_term(dst: dict, mask: int, ell: tuple, a: Scalar, spec: JordanTorusSpec, nred):
    if nred is not None:
        red = tuple(l % nred for l in ell)
        if red != ell:
            e = 0
            for i, (l, r) in enumerate(zip(ell, red)):
                if mask >> i & 1:
                    e += l - r
            if e:
                a = a * Scalar.q_pow(e, spec.mode)
            ell = red
    row = dst.get(mask)
    if row is None:
        row = dst[mask] = {}
    b = row.get(ell)
    if b is None:
        if a:
            row[ell] = a
    else:
        b = b + a
        if b:
            row[ell] = b
        else:
            del row[ell]


def _prune(d: dict) -> dict:
    return {m: row for m, row in d.items() if row}


# ---------------------------------------------------------------------------
# constructors

_LCACHE: dict = {}
_COMM_CACHE: dict = {}


def zero_operator(spec: JordanTorusSpec, degree) -> HomOperator:
    return HomOperator(spec, degree, {}, ("0", tuple(degree)))


def left_mult(spec: JordanTorusSpec, sigma) -> HomOperator:
    """L_{x^sigma}: c(gamma) = m(sigma, gamma)."""
    sigma = tuple(sigma)
    key = (spec, sigma)
    op = _LCACHE.get(key)
    if op is not None:
        return op
    mode = spec.mode
    nu = spec.nu
    cs = coset_of(sigma)
    raw: dict = {}
    recipe = ("L", sigma)
    if cs in spec.support:
        nred = _reducer(spec)
        z = _zero_ell(nu)
        if spec.family == SEMILATTICE:
            for r in spec.support:
                if (r ^ cs) not in spec.support:
                    continue
                if spec.fault == "gamma":
                    g = 1
                else:
                    g = gamma(cs, r, spec.semilattice)
                if g:
                    _add_term(raw, r, z, Scalar.one(mode), spec, nred)
        elif spec.family == HERMITIAN and spec.sign == 1:
            for r in spec.support:
                _add_term(raw, r, z, Scalar.one(mode), spec, nred)
        else:
            half = Scalar.half(mode)
            # eta(sigma, gamma) = q^(gamma_2 sigma_1), eta(gamma, sigma) = q^(sigma_2 gamma_1)
            l1 = (0, sigma[0])
            l2 = (sigma[1], 0)
            for r in spec.support:
                if (r ^ cs) not in spec.support:
                    continue
                _add_term(raw, r, l1, half, spec, nred)
                _add_term(raw, r, l2, half, spec, nred)
    op = HomOperator(spec, sigma, _prune(raw), recipe)
    if len(_LCACHE) < 200000:
        _LCACHE[key] = op
    return op


def right_translation(spec: JordanTorusSpec, sigma) -> HomOperator:
    """r_sigma: right multiplication by x^sigma in the quantum torus, c(gamma) = eta(gamma, sigma).

    For the Hermitian(-1) torus the result is restricted to the support.
    """
    if not spec.has_right_translations:
        raise ValueError("right translations exist only for quantum-type families")
    sigma = tuple(sigma)
    cs = coset_of(sigma)
    nred = _reducer(spec)
    raw: dict = {}
    ell = (sigma[1], 0)
    for r in spec.support:
        if (r ^ cs) in spec.support:
            _add_term(raw, r, ell, Scalar.one(spec.mode), spec, nred)
    return HomOperator(spec, sigma, _prune(raw), ("r", sigma))


def shift_operator(spec: JordanTorusSpec, mu) -> HomOperator:
    """chi^mu: x^gamma -> x^(gamma+mu) when both lie in the support."""
    mu = tuple(mu)
    cm = coset_of(mu)
    z = _zero_ell(spec.nu)
    one = Scalar.one(spec.mode)
    raw = {r: {z: one} for r in spec.support if (r ^ cm) in spec.support}
    return HomOperator(spec, mu, raw, ("chi", mu))


def identity_operator(spec: JordanTorusSpec) -> HomOperator:
    op = shift_operator(spec, _zero_ell(spec.nu))
    op.recipe = ("id",)
    return op


# ---------------------------------------------------------------------------
# composition


def op_compose(f: HomOperator, g: HomOperator) -> HomOperator:
    """f after g: c(gamma) = c_g(gamma) * c_f(gamma + sigma_g)."""
    spec = f.spec
    if g.spec != spec:
        raise ValueError("operators from different Jordan tori")
    deg = vadd(f.degree, g.degree)
    recipe = ("o", f.recipe, g.recipe)
    if not f.terms or not g.terms:
        return HomOperator(spec, deg, {}, recipe)
    sg = g.degree
    csg = coset_of(sg)
    mode = spec.mode
    nred = _reducer(spec)
    raw: dict = {}
    for r, grow in g.terms.items():
        frow = f.terms.get(r ^ csg)
        if not frow:
            continue
        # c_f(gamma + sigma_g) on this coset: sum af * q^(lf . sg) * q^(lf . gamma)
        fshift = []
        for lf, af in frow.items():
            e = 0
            for l, s in zip(lf, sg):
                e += l * s
            fshift.append((lf, af * Scalar.q_pow(e, mode) if e else af))
        for lg, ag in grow.items():
            for lf, af in fshift:
                ell = tuple(a + b for a, b in zip(lf, lg))
                _add_term(raw, r, ell, af * ag, spec, nred)
    return HomOperator(spec, deg, _prune(raw), recipe)


def op_commutator(f: HomOperator, g: HomOperator) -> HomOperator:
    fg = op_compose(f, g)
    gf = op_compose(g, f)
    out = HomOperator(f.spec, fg.degree, _merge(fg.terms, gf.terms, -1), ("c", f.recipe, g.recipe))
    return out


def commutator_L(spec: JordanTorusSpec, a, b) -> HomOperator:
    """[L_{x^a}, L_{x^b}], cached."""
    key = (spec, tuple(a), tuple(b))
    op = _COMM_CACHE.get(key)
    if op is None:
        op = op_commutator(left_mult(spec, a), left_mult(spec, b))
        if len(_COMM_CACHE) < 400000:
            _COMM_CACHE[key] = op
    return op


def op_equal(f, g) -> bool:
    if isinstance(f, OperatorSum) or isinstance(g, OperatorSum):
        f = f if isinstance(f, OperatorSum) else OperatorSum.of(f)
        g = g if isinstance(g, OperatorSum) else OperatorSum.of(g)
        return f.parts.keys() == g.parts.keys() and all(
            op_equal(f.parts[k], g.parts[k]) for k in f.parts)
    if not f.terms and not g.terms:
        return True
    return f.degree == g.degree and f.terms == g.terms


# ---------------------------------------------------------------------------
# sums of homogeneous operators


class OperatorSum:
    """An element of Instrl(J) as {degree: HomOperator}, zero parts dropped."""

    __slots__ = ("parts",)

    def __init__(self, parts: dict | None = None):
        self.parts = {k: v for k, v in (parts or {}).items() if v.terms}

    @staticmethod
    def of(*ops: HomOperator) -> "OperatorSum":
        s = OperatorSum()
        for op in ops:
            s = s + OperatorSum({op.degree: op})
        return s

    def __bool__(self):
        return bool(self.parts)

    def is_zero(self) -> bool:
        return not self.parts

    def __add__(self, o: "OperatorSum") -> "OperatorSum":
        if not o.parts:
            return self
        if not self.parts:
            return o
        out = dict(self.parts)
        for k, v in o.parts.items():
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                w = w + v
                if w.terms:
                    out[k] = w
                else:
                    del out[k]
        r = OperatorSum()
        r.parts = out
        return r

    def __neg__(self) -> "OperatorSum":
        r = OperatorSum()
        r.parts = {k: -v for k, v in self.parts.items()}
        return r

    def __sub__(self, o: "OperatorSum") -> "OperatorSum":
        return self + (-o)

    def scale(self, c: Scalar) -> "OperatorSum":
        if not c:
            return OperatorSum()
        r = OperatorSum()
        r.parts = {k: v.scale(c) for k, v in self.parts.items()}
        return r

    def apply(self, x: JordanElement) -> JordanElement:
        out = JordanElement()
        for op in self.parts.values():
            out = out + op.apply(x)
        return out

    def __eq__(self, o):
        if not isinstance(o, OperatorSum):
            return NotImplemented
        return op_equal(self, o)

    __hash__ = None

    def __repr__(self):
        if not self.parts:
            return "0"
        return " + ".join(str(self.parts[k]) for k in sorted(self.parts))


def compose_sums(f: OperatorSum, g: OperatorSum) -> OperatorSum:
    out = OperatorSum()
    for a in f.parts.values():
        for b in g.parts.values():
            out = out + OperatorSum({vadd(a.degree, b.degree): op_compose(a, b)})
    return out


def commutator_sums(f: OperatorSum, g: OperatorSum) -> OperatorSum:
    out = OperatorSum()
    for a in f.parts.values():
        for b in g.parts.values():
            c = op_commutator(a, b)
            if c.terms:
                out = out + OperatorSum({c.degree: c})
    return out


def left_mult_element(spec: JordanTorusSpec, x: JordanElement) -> OperatorSum:
    """L_x for a general element x."""
    out = OperatorSum()
    for lam, a in x.terms.items():
        op = left_mult(spec, lam)
        if op.terms:
            out = out + OperatorSum({op.degree: op.scale(a)})
    return out


def l_d_split(E: OperatorSum) -> tuple:
    """E = L_{E(1)} + D with D a sum of commutators (it kills the unit)."""
    x_terms = {}
    D = OperatorSum()
    for deg, op in E.parts.items():
        c0 = op.coeff_at_zero()
        if c0:
            x_terms[deg] = c0
            rest = op - left_mult(op.spec, deg).scale(c0)
        else:
            rest = op
        if rest.terms:
            D = D + OperatorSum({deg: rest})
    return JordanElement(x_terms), D


# ---------------------------------------------------------------------------
# recipes: independent pointwise oracle and pretty printing


def naive_apply(spec: JordanTorusSpec, recipe, x: JordanElement) -> JordanElement:
    """Evaluate an operator recipe on x by direct multiplication in the torus."""
    kind = recipe[0]
    if kind == "L":
        sig = recipe[1]
        if coset_of(sig) not in spec.support:
            return JordanElement()
        out = JordanElement()
        for lam, a in x.terms.items():
            if coset_of(lam) not in spec.support:
                continue
            k = vadd(lam, sig)
            if coset_of(k) not in spec.support:
                continue
            out = out + JordanElement.monomial(k, a * mult_coeff(spec, sig, lam))
        return out
    if kind == "r":
        sig = recipe[1]
        out = JordanElement()
        for lam, a in x.terms.items():
            k = vadd(lam, sig)
            if coset_of(lam) in spec.support and coset_of(k) in spec.support:
                out = out + JordanElement.monomial(k, a * Scalar.q_pow(eta_exponent(lam, sig), spec.mode))
        return out
    if kind in ("chi", "id"):
        mu = recipe[1] if kind == "chi" else (0,) * spec.nu
        out = JordanElement()
        for lam, a in x.terms.items():
            k = vadd(lam, mu)
            if coset_of(lam) in spec.support and coset_of(k) in spec.support:
                out = out + JordanElement.monomial(k, a)
        return out
    if kind == "0":
        return JordanElement()
    if kind == "o":
        return naive_apply(spec, recipe[1], naive_apply(spec, recipe[2], x))
    if kind == "c":
        f, g = recipe[1], recipe[2]
        return naive_apply(spec, f, naive_apply(spec, g, x)) - naive_apply(spec, g, naive_apply(spec, f, x))
    if kind == "+":
        return naive_apply(spec, recipe[1], x) + naive_apply(spec, recipe[2], x)
    if kind == "-":
        return naive_apply(spec, recipe[1], x) - naive_apply(spec, recipe[2], x)
    if kind == "neg":
        return -naive_apply(spec, recipe[1], x)
    if kind == "*":
        return naive_apply(spec, recipe[2], x).scale(recipe[1])
    raise ValueError(f"unknown recipe node {kind!r}")


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def format_recipe(recipe) -> str:
    if recipe is None:
        return "?"
    kind = recipe[0]
    if kind == "L":
        return f"L[x^{_vec(recipe[1])}]"
    if kind == "r":
        return f"r[{_vec(recipe[1])}]"
    if kind == "chi":
        return f"chi[{_vec(recipe[1])}]"
    if kind == "id":
        return "id"
    if kind == "0":
        return "0"
    if kind == "o":
        return f"{format_recipe(recipe[1])}*{format_recipe(recipe[2])}"
    if kind == "c":
        return f"[{format_recipe(recipe[1])},{format_recipe(recipe[2])}]"
    if kind == "+":
        return f"{format_recipe(recipe[1])} + {format_recipe(recipe[2])}"
    if kind == "-":
        return f"{format_recipe(recipe[1])} - ({format_recipe(recipe[2])})"
    if kind == "neg":
        return f"-({format_recipe(recipe[1])})"
    if kind == "*":
        return f"({recipe[1]})*({format_recipe(recipe[2])})"
    return "?"

