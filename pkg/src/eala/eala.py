"""The algebra E = g + C + D built on g = TKK(J), with kappa = 0.

D is spanned by degree derivations d_theta (degree 0) and by chi^mu d_{theta_mu}
for nonzero mu in the central grading group; C is the graded dual of D.

Keys used in the sparse D and C parts:
  ('d0', i)  d_{theta_i}               ('c0', i)  c^i, with c^i(d_{theta_j}) = delta_ij
  ('d', mu)  chi^mu d_{theta_mu}       ('c', mu)  c^mu, with c^mu(chi^(-mu) d_{theta_(-mu)}) = 1
"""

from __future__ import annotations

from .jordan import JordanElement, JordanTorusSpec, SEMILATTICE, QUANTUM, HERMITIAN, rad_f_contains
from .lattice import apply_functional, coset_of, theta_sigma, vadd, vneg, window
from .linalg import EchelonSpan
from .operators import (
    OperatorSum,
    commutator_L,
    left_mult,
    op_compose,
    op_equal,
    shift_operator,
    zero_operator,
)
from .scalar import Scalar
from .tkk import TkkElement, tkk_bracket, tkk_form

__all__ = [
    "EalaElement",
    "DerivationTerm",
    "CentralTerm",
    "is_centroidal",
    "central_grading_group",
    "chi_apply",
    "e_bracket",
    "e_form",
    "derivation_bracket",
    "isotropic_dim",
    "closed_form_dim",
    "check_permissible",
    "coroot_element",
]


def _zero_vec(nu):
    return (0,) * nu


# ---------------------------------------------------------------------------
# centroid


_CENTROID: dict = {}


def is_centroidal(spec: JordanTorusSpec, mu) -> bool:
    """Does the normalized shift chi^mu satisfy chi(x y) = chi(x) y on J?

    Decided as exact operator identities chi^mu o L_{x^lam} = L_{x^(lam+mu)}
    for lam in the radius-1 window. For families whose product depends only on
    coset classes that window hits every class. For quantum-type families the
    lam = 0 identity alone already forces mu into the radical of f, and every
    radical element satisfies all identities.
    """
    mu = tuple(mu)
    key = (spec, mu)
    res = _CENTROID.get(key)
    if res is not None:
        return res
    chi = shift_operator(spec, mu)
    res = True
    for lam in window(1, spec.nu):
        if not spec.in_support(lam):
            continue
        lhs = op_compose(chi, left_mult(spec, lam))
        target = vadd(lam, mu)
        rhs = left_mult(spec, target) if spec.in_support(target) else zero_operator(spec, target)
        if not op_equal(lhs, rhs):
            res = False
            break
    _CENTROID[key] = res
    return res


def central_grading_group(spec: JordanTorusSpec, radius: int) -> list:
    pts = [mu for mu in window(radius, spec.nu) if is_centroidal(spec, mu)]
    found = set(pts)
    for mu in pts:
        if vneg(mu) not in found:
            raise ArithmeticError(f"centroidal degrees not closed under negation at {mu}")
        for nu_ in pts:
            s = vadd(mu, nu_)
            if max(abs(x) for x in s) <= radius and s not in found:
                raise ArithmeticError(f"centroidal degrees not closed under addition at {mu} + {nu_}")
    return sorted(pts)


def chi_apply(spec: JordanTorusSpec, mu, x: TkkElement) -> TkkElement:
    """The centroidal shift chi^mu acting on all three TKK slots."""
    mu = tuple(mu)
    plus = JordanElement({vadd(l, mu): a for l, a in x.plus.terms.items() if spec.in_support(vadd(l, mu))})
    minus = JordanElement({vadd(l, mu): a for l, a in x.minus.terms.items() if spec.in_support(vadd(l, mu))})
    mid = OperatorSum()
    if x.mid:
        chi = shift_operator(spec, mu)
        for op in x.mid.parts.values():
            mid = mid + OperatorSum.of(op_compose(chi, op))
    return TkkElement(spec, plus, mid, minus)


# ---------------------------------------------------------------------------
# D and C


class DerivationTerm:
    """chi^mu d_theta with theta a pair of scalars (theta(mu) = 0)."""

    __slots__ = ("mu", "theta")

    def __init__(self, mu, theta):
        self.mu = tuple(mu)
        self.theta = tuple(theta)

    def __repr__(self):
        return f"chi^{self.mu} d_{self.theta}"


class CentralTerm:
    """c^mu (mu != 0) or c^i (mu = 0, index i)."""

    __slots__ = ("mu", "index")

    def __init__(self, mu, index: int | None = None):
        self.mu = tuple(mu)
        self.index = index

    @property
    def key(self):
        return ("c0", self.index) if self.index is not None else ("c", self.mu)


def _d_key_theta(key, coef: Scalar, nu: int):
    """(mu, theta vector of scalars) for coef * (generator named by key)."""
    if key[0] == "d0":
        i = key[1]
        z = Scalar.zero(coef.mode)
        return _zero_vec(nu), tuple(coef if j == i - 1 else z for j in range(nu))
    mu = key[1]
    th = theta_sigma(mu)
    return mu, tuple(coef * t for t in th)


def _theta_to_keys(mu, vec) -> dict:
    """Express chi^mu d_vec in the ('d0', i) / ('d', mu) keys."""
    if all(x == 0 for x in mu):
        return {("d0", i + 1): v for i, v in enumerate(vec) if v}
    if not any(vec):
        return {}
    th = theta_sigma(mu)
    i = 0 if th[0] else 1
    s = vec[i] / th[i]
    for j in range(len(th)):
        if vec[j] != s * th[j]:
            raise ArithmeticError(f"derivation of degree {mu} violates the skew condition")
    return {("d", mu): s}


def _apply_theta(theta, lam):
    total = None
    for t, l in zip(theta, lam):
        if l:
            v = t * l
            total = v if total is None else total + v
    return total


def derivation_bracket(d1: dict, d2: dict, nu: int = 2) -> dict:
    """[chi^mu d_th, chi^nu d_ps] = chi^(mu+nu) (th(nu) d_ps - ps(mu) d_th)."""
    out: dict = {}
    for k1, a in d1.items():
        mu, th = _d_key_theta(k1, a, nu)
        for k2, b in d2.items():
            nv, ps = _d_key_theta(k2, b, nu)
            th_nu = _apply_theta(th, nv)
            ps_mu = _apply_theta(ps, mu)
            vec = []
            for i in range(nu):
                v = None
                if th_nu is not None:
                    v = th_nu * ps[i]
                if ps_mu is not None:
                    w = ps_mu * th[i]
                    v = -w if v is None else v - w
                vec.append(v if v is not None else Scalar.zero(a.mode))
            for k, v in _theta_to_keys(vadd(mu, nv), vec).items():
                w = out.get(k)
                out[k] = v if w is None else w + v
    return {k: v for k, v in out.items() if v}


def _phi_eval(c: dict, d: dict):
    """phi(d) for phi in C, d in D: c^mu pairs with chi^(-mu) d_theta(-mu), c^i with d_theta_i."""
    total = None
    for k, a in c.items():
        if k[0] == "c0":
            b = d.get(("d0", k[1]))
        else:
            b = d.get(("d", vneg(k[1])))
        if b is not None:
            v = a * b
            total = v if total is None else total + v
    return total


def d_dot_c(d: dict, c: dict, nu: int = 2) -> dict:
    """(d . phi)(d') = phi([d', d])."""
    out: dict = {}
    for kd, a in d.items():
        mu = _zero_vec(nu) if kd[0] == "d0" else kd[1]
        for kc, b in c.items():
            beta = _zero_vec(nu) if kc[0] == "c0" else kc[1]
            tgt = vadd(mu, beta)
            if all(x == 0 for x in tgt):
                for i in range(1, nu + 1):
                    br = derivation_bracket({("d0", i): Scalar.one(a.mode)}, {kd: a}, nu)
                    v = _phi_eval({kc: b}, br)
                    if v:
                        k = ("c0", i)
                        w = out.get(k)
                        out[k] = v if w is None else w + v
            else:
                br = derivation_bracket({("d", vneg(tgt)): Scalar.one(a.mode)}, {kd: a}, nu)
                v = _phi_eval({kc: b}, br)
                if v:
                    k = ("c", tgt)
                    w = out.get(k)
                    out[k] = v if w is None else w + v
    return {k: v for k, v in out.items() if v}


def d_action(spec: JordanTorusSpec, d: dict, x: TkkElement) -> TkkElement:
    """d(x): chi^mu d_theta multiplies the degree-lam part by theta(lam) and shifts it by mu."""
    out = TkkElement(spec)
    if not d or not x:
        return out
    comps = x.components()
    for k, a in d.items():
        mu, th = _d_key_theta(k, a, spec.nu)
        for lam, comp in comps.items():
            t = _apply_theta(th, lam)
            if t is None or not t:
                continue
            moved = comp if k[0] == "d0" else chi_apply(spec, mu, comp)
            out = out + moved.scale(t)
    return out


def _component_list(x: TkkElement):
    """Homogeneous pieces as (degree, TkkElement) keeping the three slots separate."""
    spec = x.spec
    out = []
    for lam, a in x.plus.terms.items():
        out.append((lam, "p", TkkElement(spec, plus=JordanElement({lam: a}))))
    for lam, a in x.minus.terms.items():
        out.append((lam, "n", TkkElement(spec, minus=JordanElement({lam: a}))))
    for lam, op in x.mid.parts.items():
        out.append((lam, "o", TkkElement(spec, mid=OperatorSum({lam: op}))))
    return out


_PARTNER = {"p": "n", "n": "p", "o": "o"}


def c_cocycle(spec: JordanTorusSpec, x1: TkkElement, x2: TkkElement) -> dict:
    """c_D(x1, x2) in C: its value on d is (d(x1) | x2)."""
    out: dict = {}
    if not x1 or not x2:
        return out
    l1 = _component_list(x1)
    l2 = _component_list(x2)
    for lam, s1, e1 in l1:
        for gam, s2, e2 in l2:
            if _PARTNER[s1] != s2:
                continue
            tot = vadd(lam, gam)
            if all(v == 0 for v in tot):
                base = tkk_form(e1, e2)
                if base:
                    for i in range(spec.nu):
                        if lam[i]:
                            k = ("c0", i + 1)
                            v = base * lam[i]
                            w = out.get(k)
                            out[k] = v if w is None else w + v
                continue
            neg = vneg(tot)
            if not is_centroidal(spec, neg):
                continue
            t = apply_functional(theta_sigma(neg), lam)
            if not t:
                continue
            val = tkk_form(chi_apply(spec, neg, e1), e2)
            if val:
                k = ("c", tot)
                v = val * t
                w = out.get(k)
                out[k] = v if w is None else w + v
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# elements of E


def _dict_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        if sign == -1:
            v = -v
        if w is None:
            out[k] = v
        else:
            w = w + v
            if w:
                out[k] = w
            else:
                del out[k]
    return out


class EalaElement:
    __slots__ = ("spec", "g", "c", "d")

    def __init__(self, spec: JordanTorusSpec, g: TkkElement | None = None,
                 c: dict | None = None, d: dict | None = None):
        self.spec = spec
        self.g = g if g is not None else TkkElement(spec)
        self.c = {k: v for k, v in (c or {}).items() if v}
        self.d = {k: v for k, v in (d or {}).items() if v}
        for k in self.d:
            if k[0] == "d" and not is_centroidal(spec, k[1]):
                raise ValueError(f"chi^{k[1]} is not centroidal; no derivation of that degree")
        for k in self.c:
            if k[0] == "c" and not is_centroidal(spec, vneg(k[1])):
                raise ValueError(f"no dual element of degree {k[1]}")

    # constructors
    @staticmethod
    def from_g(x: TkkElement) -> "EalaElement":
        return EalaElement(x.spec, g=x)

    @staticmethod
    def chi_der(spec, mu, coef: Scalar | None = None) -> "EalaElement":
        return EalaElement(spec, d={("d", tuple(mu)): coef if coef is not None else Scalar.one(spec.mode)})

    @staticmethod
    def deg_der(spec, i: int) -> "EalaElement":
        return EalaElement(spec, d={("d0", i): Scalar.one(spec.mode)})

    @staticmethod
    def dual(spec, mu) -> "EalaElement":
        return EalaElement(spec, c={("c", tuple(mu)): Scalar.one(spec.mode)})

    @staticmethod
    def dual0(spec, i: int) -> "EalaElement":
        return EalaElement(spec, c={("c0", i): Scalar.one(spec.mode)})

    def __bool__(self):
        return bool(self.g) or bool(self.c) or bool(self.d)

    def is_zero(self) -> bool:
        return not self

    def __add__(self, o: "EalaElement") -> "EalaElement":
        r = EalaElement.__new__(EalaElement)
        r.spec = self.spec
        r.g = self.g + o.g
        r.c = _dict_add(self.c, o.c)
        r.d = _dict_add(self.d, o.d)
        return r

    def __neg__(self) -> "EalaElement":
        r = EalaElement.__new__(EalaElement)
        r.spec = self.spec
        r.g = -self.g
        r.c = {k: -v for k, v in self.c.items()}
        r.d = {k: -v for k, v in self.d.items()}
        return r

    def __sub__(self, o: "EalaElement") -> "EalaElement":
        return self + (-o)

    def scale(self, s: Scalar) -> "EalaElement":
        r = EalaElement.__new__(EalaElement)
        r.spec = self.spec
        if not s:
            r.g, r.c, r.d = TkkElement(self.spec), {}, {}
            return r
        r.g = self.g.scale(s)
        r.c = {k: v * s for k, v in self.c.items()}
        r.d = {k: v * s for k, v in self.d.items()}
        return r

    def __eq__(self, o):
        if not isinstance(o, EalaElement):
            return NotImplemented
        return self.g == o.g and self.c == o.c and self.d == o.d

    __hash__ = None

    def degrees(self) -> set:
        """Lambda-degrees present (C-keys have degree mu, D-keys degree mu)."""
        out = set(self.g.degrees())
        z = _zero_vec(self.spec.nu)
        for k in self.c:
            out.add(z if k[0] == "c0" else k[1])
        for k in self.d:
            out.add(z if k[0] == "d0" else k[1])
        return out

    def q_degrees(self) -> set:
        out = set()
        if self.g.plus:
            out.add(1)
        if self.g.minus:
            out.add(-1)
        if self.g.mid or self.c or self.d:
            out.add(0)
        return out

    def __repr__(self):
        parts = []
        if self.g:
            parts.append(repr(self.g))
        if self.c:
            parts.append("C" + repr(sorted(self.c.items(), key=lambda kv: repr(kv[0]))))
        if self.d:
            parts.append("D" + repr(sorted(self.d.items(), key=lambda kv: repr(kv[0]))))
        return " + ".join(parts) if parts else "0"


def e_bracket(a: EalaElement, b: EalaElement) -> EalaElement:
    spec = a.spec
    nu = spec.nu
    g = tkk_bracket(a.g, b.g) if (a.g and b.g) else TkkElement(spec)
    if a.d and b.g:
        g = g + d_action(spec, a.d, b.g)
    if b.d and a.g:
        g = g - d_action(spec, b.d, a.g)
    c = c_cocycle(spec, a.g, b.g)
    if a.d and b.c:
        c = _dict_add(c, d_dot_c(a.d, b.c, nu))
    if b.d and a.c:
        c = _dict_add(c, d_dot_c(b.d, a.c, nu), -1)
    d = derivation_bracket(a.d, b.d, nu) if (a.d and b.d) else {}
    r = EalaElement.__new__(EalaElement)
    r.spec = spec
    r.g = g
    r.c = c
    r.d = d
    return r


def e_form(a: EalaElement, b: EalaElement) -> Scalar:
    total = tkk_form(a.g, b.g)
    for v in (_phi_eval(a.c, b.d), _phi_eval(b.c, a.d)):
        if v is not None:
            total = total + v
    return total


def coroot_element(spec: JordanTorusSpec, m: int, lam) -> EalaElement:
    """t_beta for beta = m*alpha_dot + lam: (h, t_beta) = beta(h) on the Cartan part."""
    one = Scalar.one(spec.mode)
    z = _zero_vec(spec.nu)
    g = TkkElement.op(left_mult(spec, z).scale(Scalar.of(m, spec.mode))) if m else TkkElement(spec)
    c = {("c0", i + 1): one * lam[i] for i in range(spec.nu) if lam[i]}
    return EalaElement(spec, g=g, c=c)


# ---------------------------------------------------------------------------
# isotropic root spaces


def _operator_rank(spec: JordanTorusSpec, sigma, tau_radius: int) -> int:
    span = EchelonSpan()
    L = left_mult(spec, sigma)
    if L.terms:
        span.add(L.coordinates(), ("L", sigma))
    for tau in window(tau_radius, spec.nu):
        op = commutator_L(spec, vadd(sigma, tau), vneg(tau))
        if op.terms:
            span.add(op.coordinates(), ("C", tau))
    return span.rank


def isotropic_dim(spec: JordanTorusSpec, sigma, tau_radius: int = 2, check_stability: bool = True) -> tuple:
    """(op_dim, d_dim, c_dim) of the isotropic root space of degree sigma != 0."""
    sigma = tuple(sigma)
    if all(x == 0 for x in sigma):
        raise ValueError("sigma = 0 is the Cartan part, not an isotropic root space")
    r = _operator_rank(spec, sigma, tau_radius)
    if check_stability:
        r2 = _operator_rank(spec, sigma, tau_radius + 1)
        if r2 != r:
            raise ArithmeticError(f"operator rank at {sigma} grew from {r} to {r2} with a larger window")
    d = 1 if is_centroidal(spec, sigma) else 0
    return r, d, d


def closed_form_dim(spec: JordanTorusSpec, sigma) -> tuple:
    """Predicted operator dimension (1 or 2) and a tag naming the case."""
    sigma = tuple(sigma)
    if all(x == 0 for x in sigma):
        raise ValueError("sigma must be nonzero")
    cls = coset_of(sigma)
    if spec.family == SEMILATTICE:
        if spec.semilattice.is_full:
            if cls != 0:
                return 2, "J_Lambda, sigma outside 2Lambda: L_x and one commutator"
            return 1, "J_Lambda, sigma in 2Lambda: L_x only"
        if cls in spec.support:
            return 1, "J_S, sigma in S: L_x only"
        return 1, "J_S, sigma outside S: one commutator"
    if spec.family == QUANTUM:
        if rad_f_contains(sigma, spec.qmode):
            return 1, "K_q, sigma in rad f: L_x only"
        return 2, "K_q, sigma outside rad f: L_x and L_x - r_sigma"
    if spec.family == HERMITIAN:
        if spec.sign == 1:
            return 1, "Hermitian(+1): L_x only"
        if cls == 3:
            return 1, "Hermitian(-1), sigma in S3: one commutator"
        return 1, "Hermitian(-1), sigma in support: L_x only"
    raise ValueError(f"unknown family {spec.family!r}")


def check_permissible(spec: JordanTorusSpec, radius: int = 5, d0_basis=None) -> bool:
    """Is ev: Lambda -> (D^0)*, ev(lam)(d_theta) = theta(lam), injective on the window?

    ``d0_basis`` lists the functionals spanning D^0 (default: theta_1, theta_2).
    """
    if d0_basis is None:
        d0_basis = [tuple(1 if j == i else 0 for j in range(spec.nu)) for i in range(spec.nu)]
    seen = {}
    for lam in window(radius, spec.nu):
        key = tuple(apply_functional(th, lam) for th in d0_basis)
        if key in seen:
            return False
        seen[key] = lam
    return True
