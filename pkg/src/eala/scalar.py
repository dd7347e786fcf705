"""Exact scalars a + b*sqrt2 with a, b in K_q.

K_q is one of
  * Q(q), rational functions in a formal parameter q (``RatFunc``),
  * Q(zeta_n) for n >= 3, residues modulo the cyclotomic polynomial (``Cyclo``),
  * Q itself when q = 1 or q = -1 (``gmpy2.mpq``).
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from math import gcd
import re

from gmpy2 import mpq

__all__ = [
    "QMode",
    "Scalar",
    "RatFunc",
    "Cyclo",
    "IntegralityRing",
    "ModeMismatch",
    "scalar_add",
    "scalar_mul",
    "scalar_inv",
    "is_integral",
    "parse_scalar",
    "format_scalar",
]


class ModeMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer polynomials: tuples of ints, index = exponent, no trailing zeros


def _trim(p):
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(b) == 1:
        k = b[0]
        return tuple(c * k for c in a)
    if len(a) == 1:
        k = a[0]
        return tuple(c * k for c in b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _content(p):
    g = 0
    for c in p:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _qpoly_rem(a, b):
    """Remainder of a by b over Q (lists of mpq)."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] / lb
        shift = len(a) - 1 - db
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a.pop()
        while a and not a[-1]:
            a.pop()
    return a


def _pgcd(a, b):
    """gcd of two nonzero integer polynomials, primitive part times content gcd."""
    cg = gcd(_content(a), _content(b))
    if len(a) == 1 or len(b) == 1:
        return (cg,)
    x = [mpq(c) for c in a]
    y = [mpq(c) for c in b]
    if len(x) < len(y):
        x, y = y, x
    while y:
        x, y = y, _qpoly_rem(x, y)
    if len(x) == 1:
        return (cg,)
    # clear denominators, make primitive
    den = 1
    for c in x:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in x]
    ct = _content(ints)
    ints = [c // ct for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(c * cg for c in ints)


def _pexact_div(a, b):
    """Exact quotient of integer polynomials (raises if inexact)."""
    if len(b) == 1:
        k = b[0]
        out = []
        for c in a:
            qv, r = divmod(c, k)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(qv)
        return tuple(out)
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    qlen = len(a) - db
    if qlen <= 0:
        raise ArithmeticError("inexact polynomial division")
    qt = [0] * qlen
    for k in range(qlen - 1, -1, -1):
        c, r = divmod(a[k + db], lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        qt[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] -= c * y
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return tuple(qt)


# ---------------------------------------------------------------------------
# Formal mode: q^shift * num / den


class RatFunc:
    """Reduced rational function q^shift * num(q) / den(q).

    num and den are integer polynomials with nonzero constant terms, coprime,
    and den has a positive leading coefficient. Zero is (0, (), (1,)).
    """

    __slots__ = ("shift", "num", "den", "_h")

    def __init__(self, shift: int, num: tuple, den: tuple):
        self.shift = shift
        self.num = num
        self.den = den
        self._h = None

    @staticmethod
    def make(shift: int, num, den) -> "RatFunc":
        num = _trim(num)
        if not num:
            return _RZERO
        den = _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        k = 0
        while not num[k]:
            k += 1
        if k:
            num = num[k:]
            shift += k
        k = 0
        while not den[k]:
            k += 1
        if k:
            den = den[k:]
            shift -= k
        if len(den) == 1:
            d = den[0]
            g = gcd(_content(num), d)
            if d < 0:
                g = -g
            if g != 1:
                num = tuple(c // g for c in num)
                den = (d // g,)
        else:
            g = _pgcd(num, den)
            if g != (1,):
                num = _pexact_div(num, g)
                den = _pexact_div(den, g)
            if den[-1] < 0:
                num = _pneg(num)
                den = _pneg(den)
        return RatFunc(shift, num, den)

    @staticmethod
    def from_int(k: int) -> "RatFunc":
        if not k:
            return _RZERO
        return RatFunc(0, (k,), (1,))

    @staticmethod
    def from_rational(x) -> "RatFunc":
        x = mpq(x)
        return RatFunc.make(0, (int(x.numerator),), (int(x.denominator),))

    @staticmethod
    def q_pow(k: int) -> "RatFunc":
        return RatFunc(k, (1,), (1,))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, o):
        if isinstance(o, RatFunc):
            return self.shift == o.shift and self.num == o.num and self.den == o.den
        if isinstance(o, int):
            return self == RatFunc.from_int(o)
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            if self.shift == 0 and len(self.num) <= 1 and len(self.den) == 1:
                self._h = hash(mpq(self.num[0], self.den[0])) if self.num else 0
            else:
                self._h = hash((self.shift, self.num, self.den))
        return self._h

    def __neg__(self):
        if not self.num:
            return self
        return RatFunc(self.shift, _pneg(self.num), self.den)

    def __add__(self, o):
        if not isinstance(o, RatFunc):
            o = RatFunc.from_rational(o)
        if not o.num:
            return self
        if not self.num:
            return o
        s = min(self.shift, o.shift)
        a = (0,) * (self.shift - s) + self.num
        b = (0,) * (o.shift - s) + o.num
        if self.den == o.den:
            return RatFunc.make(s, _padd(a, b), self.den)
        return RatFunc.make(s, _padd(_pmul(a, o.den), _pmul(b, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __sub__(self, o):
        if not isinstance(o, RatFunc):
            o = RatFunc.from_rational(o)
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, RatFunc):
            o = RatFunc.from_rational(o)
        if not self.num or not o.num:
            return _RZERO
        if len(self.den) == 1 and len(o.den) == 1:
            num = _pmul(self.num, o.num)
            d = self.den[0] * o.den[0]
            if d == 1:
                return RatFunc(self.shift + o.shift, num, (1,))
            g = gcd(_content(num), d)
            if g != 1:
                num = tuple(c // g for c in num)
                d //= g
            return RatFunc(self.shift + o.shift, num, (d,))
        return RatFunc.make(self.shift + o.shift, _pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        return RatFunc(-self.shift, num, den)

    def __truediv__(self, o):
        if not isinstance(o, RatFunc):
            o = RatFunc.from_rational(o)
        return self * o.inv()

    def __repr__(self):
        return f"RatFunc({_format_kq(self)!r})"


_RZERO = RatFunc(0, (), (1,))


# ---------------------------------------------------------------------------
# RootOfUnity(n) with phi(n) >= 2: residues mod Phi_n


def _cyclotomic(n: int) -> tuple:
    """Integer coefficients of Phi_n, by dividing q^n - 1 by Phi_d for d | n, d < n."""
    p = (-1,) + (0,) * (n - 1) + (1,)
    for d in range(1, n):
        if n % d == 0:
            p = _pexact_div(p, _cyclotomic_cached(d))
    return p


_CYC_CACHE: dict = {}


def _cyclotomic_cached(n: int) -> tuple:
    if n not in _CYC_CACHE:
        _CYC_CACHE[n] = _cyclotomic(n)
    return _CYC_CACHE[n]


class _CycloContext:
    def __init__(self, n: int):
        self.n = n
        phi = _cyclotomic_cached(n)
        self.phi_poly = phi
        d = len(phi) - 1
        self.deg = d
        # red[k] = sparse residue of q^k for d <= k <= 2d - 2
        red = {}
        cur = [mpq(0)] * d
        # q^d = -sum phi_i q^i  (Phi_n is monic)
        cur = [mpq(-c) for c in phi[:d]]
        red[d] = cur
        for k in range(d + 1, max(2 * d - 1, n) + 1):
            top = cur[-1]
            nxt = [mpq(0)] + cur[:-1]
            if top:
                for i in range(d):
                    nxt[i] += top * red[d][i]
            red[k] = nxt
            cur = nxt
        self.red = {k: tuple((i, c) for i, c in enumerate(v) if c) for k, v in red.items()}
        self.zero = tuple([mpq(0)] * d)
        powers = []
        for k in range(n):
            if k < d:
                v = [mpq(0)] * d
                v[k] = mpq(1)
            else:
                v = [mpq(0)] * d
                for i, c in self.red[k]:
                    v[i] = c
            powers.append(Cyclo(tuple(v), self))
        self.powers = powers


class Cyclo:
    """Element of Q(zeta_n) as a length-phi(n) coefficient tuple."""

    __slots__ = ("c", "ctx", "_h")

    def __init__(self, c: tuple, ctx: _CycloContext):
        self.c = c
        self.ctx = ctx
        self._h = None

    def __bool__(self):
        return any(self.c)

    def __eq__(self, o):
        if isinstance(o, Cyclo):
            return self.c == o.c
        if isinstance(o, int):
            return self.c[0] == o and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            if not any(self.c[1:]):
                self._h = hash(self.c[0])
            else:
                self._h = hash(self.c)
        return self._h

    def _coerce(self, o) -> "Cyclo":
        if isinstance(o, Cyclo):
            return o
        v = list(self.ctx.zero)
        v[0] = mpq(o)
        return Cyclo(tuple(v), self.ctx)

    def __neg__(self):
        return Cyclo(tuple(-x for x in self.c), self.ctx)

    def __add__(self, o):
        o = self._coerce(o)
        return Cyclo(tuple(x + y for x, y in zip(self.c, o.c)), self.ctx)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        return Cyclo(tuple(x - y for x, y in zip(self.c, o.c)), self.ctx)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._coerce(o)
        ctx = self.ctx
        d = ctx.deg
        out = [mpq(0)] * d
        red = ctx.red
        for i, x in enumerate(self.c):
            if not x:
                continue
            for j, y in enumerate(o.c):
                if not y:
                    continue
                k = i + j
                p = x * y
                if k < d:
                    out[k] += p
                else:
                    for t, r in red[k]:
                        out[t] += p * r
        return Cyclo(tuple(out), ctx)

    __rmul__ = __mul__

    def inv(self) -> "Cyclo":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        ctx = self.ctx
        # extended Euclid: find u with u*a = 1 mod Phi_n
        a = [c for c in self.c]
        while a and not a[-1]:
            a.pop()
        r0, r1 = [mpq(c) for c in ctx.phi_poly], a
        s0, s1 = [], [mpq(1)]
        while len(r1) > 1:
            qt, rem = _qpoly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _qsub(s0, _qmul(qt, s1))
        c = r1[0]
        u = [x / c for x in s1]
        u = _qpoly_rem(u, [mpq(x) for x in ctx.phi_poly]) if len(u) > ctx.deg else u
        v = list(ctx.zero)
        for i, x in enumerate(u):
            v[i] = x
        return Cyclo(tuple(v), ctx)

    def __truediv__(self, o):
        return self * self._coerce(o).inv()

    def __repr__(self):
        return f"Cyclo({_format_kq(self)!r}, n={self.ctx.n})"


def _qpoly_divmod(a, b):
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    qt = [mpq(0)] * (len(a) - db)
    while a and len(a) - 1 >= db:
        c = a[-1] / lb
        shift = len(a) - 1 - db
        qt[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a.pop()
        while a and not a[-1]:
            a.pop()
    return qt, a


def _qmul(a, b):
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and not out[-1]:
        out.pop()
    return out


def _qsub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    out = [mpq(x) for x in out]
    while out and not out[-1]:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# QMode


class QMode:
    """Interpretation of q: formal (``n is None``) or a primitive n-th root of unity.

    Instances are interned, so ``QMode.root(3) is QMode.root(3)``.
    """

    __slots__ = ("n", "_ctx", "_pow", "_zero", "_one", "_half")
    _interned: dict = {}

    def __new__(cls, n: int | None = None):
        key = n
        if key in cls._interned:
            return cls._interned[key]
        if n is not None:
            if not isinstance(n, int) or n < 1:
                raise ValueError(f"root of unity order must be a positive integer, got {n!r}")
            if n % 8 == 0:
                # sqrt2 lies in Q(zeta_n) exactly when 8 | n, so a + b*sqrt2 is no longer a pair
                raise ValueError(f"RootOfUnity({n}) unsupported: sqrt2 already lies in Q(zeta_{n})")
        self = object.__new__(cls)
        self.n = n
        self._ctx = _CycloContext(n) if (n is not None and n >= 3) else None
        self._pow = {}
        cls._interned[key] = self
        self._zero = self.kq(0)
        self._one = self.kq(1)
        self._half = self.kq(mpq(1, 2))
        return self

    @classmethod
    def formal(cls) -> "QMode":
        return cls(None)

    @classmethod
    def root(cls, n: int) -> "QMode":
        return cls(n)

    def __reduce__(self):
        return (QMode, (self.n,))

    def __repr__(self):
        return "QMode.formal()" if self.n is None else f"QMode.root({self.n})"

    def __str__(self):
        return "formal" if self.n is None else f"root:{self.n}"

    @property
    def is_formal(self) -> bool:
        return self.n is None

    # K_q element factories
    def kq(self, x):
        """Embed an integer or rational into K_q."""
        if self.n is None:
            return RatFunc.from_rational(x)
        if self._ctx is None:
            return mpq(x)
        v = list(self._ctx.zero)
        v[0] = mpq(x)
        return Cyclo(tuple(v), self._ctx)

    def kq_q_pow(self, k: int):
        p = self._pow.get(k)
        if p is not None:
            return p
        if self.n is None:
            p = RatFunc.q_pow(k)
        elif self.n == 1:
            p = mpq(1)
        elif self.n == 2:
            p = mpq(1 if k % 2 == 0 else -1)
        else:
            p = self._ctx.powers[k % self.n]
        if len(self._pow) < 4096:
            self._pow[k] = p
        return p

    def kq_inv(self, x):
        if self._ctx is None and self.n is not None:
            if not x:
                raise ZeroDivisionError("inverse of zero")
            return 1 / x
        return x.inv()


# ---------------------------------------------------------------------------
# Scalar


class Scalar:
    """a + b*sqrt2 with a, b in K_q for a fixed QMode."""

    __slots__ = ("a", "b", "mode", "_h")

    def __init__(self, a, b, mode: QMode):
        self.a = a
        self.b = b
        self.mode = mode
        self._h = None

    # constructors
    @staticmethod
    def of(x, mode: QMode) -> "Scalar":
        if isinstance(x, Scalar):
            if x.mode is not mode:
                raise ModeMismatch(f"scalar in {x.mode!r} used in {mode!r}")
            return x
        return Scalar(mode.kq(x), mode._zero, mode)

    @staticmethod
    def zero(mode: QMode) -> "Scalar":
        return Scalar(mode._zero, mode._zero, mode)

    @staticmethod
    def one(mode: QMode) -> "Scalar":
        return Scalar(mode._one, mode._zero, mode)

    @staticmethod
    def sqrt2(mode: QMode) -> "Scalar":
        return Scalar(mode._zero, mode._one, mode)

    @staticmethod
    def q_pow(k: int, mode: QMode) -> "Scalar":
        return Scalar(mode.kq_q_pow(k), mode._zero, mode)

    @staticmethod
    def half(mode: QMode) -> "Scalar":
        return Scalar(mode._half, mode._zero, mode)

    def _other(self, o) -> "Scalar":
        if isinstance(o, Scalar):
            if o.mode is not self.mode:
                raise ModeMismatch(f"mixed modes {self.mode!r} and {o.mode!r}")
            return o
        if isinstance(o, (int, Fraction)) or type(o) is type(mpq(0)):
            return Scalar.of(o, self.mode)
        return NotImplemented

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self._h is None:
            self._h = hash(self.a) if not self.b else hash((self.a, self.b))
        return self._h

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.mode)

    def __add__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return Scalar(self.a + o.a, self.b + o.b, self.mode)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return Scalar(self.a - o.a, self.b - o.b, self.mode)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        a, b, c, d = self.a, self.b, o.a, o.b
        if not b and not d:
            return Scalar(a * c, b, self.mode)
        return Scalar(a * c + 2 * (b * d), a * d + b * c, self.mode)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        m = self.mode
        if not self.b:
            return Scalar(m.kq_inv(self.a), self.b, m)
        norm = self.a * self.a - 2 * (self.b * self.b)
        ni = m.kq_inv(norm)
        return Scalar(self.a * ni, -(self.b * ni), m)

    def __truediv__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, o):
        return Scalar.of(o, self.mode) * self.inv()

    def conj(self) -> "Scalar":
        """Image under sqrt2 -> -sqrt2."""
        return Scalar(self.a, -self.b, self.mode)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r}, {self.mode!r})"

    def __str__(self):
        return format_scalar(self)


def scalar_add(x: Scalar, y: Scalar) -> Scalar:
    return x + y


def scalar_mul(x: Scalar, y: Scalar) -> Scalar:
    return x * y


def scalar_inv(x: Scalar) -> Scalar:
    return x.inv()


# ---------------------------------------------------------------------------
# integrality


class IntegralityRing(Enum):
    Z = "Z"
    Z_LAURENT = "Z-Laurent"
    Z_SQRT2 = "Z-adjoin-sqrt2"

    @classmethod
    def parse(cls, text: str) -> "IntegralityRing":
        for r in cls:
            if r.value.lower() == text.strip().lower():
                return r
        raise ValueError(f"unknown integrality ring {text!r}; expected one of "
                         + ", ".join(r.value for r in cls))


def _kq_is_int_const(x) -> bool:
    if isinstance(x, RatFunc):
        return not x.num or (x.shift == 0 and len(x.num) == 1 and x.den == (1,))
    if isinstance(x, Cyclo):
        return x.c[0].denominator == 1 and not any(x.c[1:])
    return x.denominator == 1


def _kq_is_int_laurent(x) -> bool:
    if isinstance(x, RatFunc):
        return x.den == (1,)
    if isinstance(x, Cyclo):
        return all(c.denominator == 1 for c in x.c)
    return x.denominator == 1


def is_integral(x: Scalar, ring: IntegralityRing) -> bool:
    if ring is IntegralityRing.Z:
        return not x.b and _kq_is_int_const(x.a)
    if ring is IntegralityRing.Z_LAURENT:
        return not x.b and _kq_is_int_laurent(x.a)
    return _kq_is_int_laurent(x.a) and _kq_is_int_laurent(x.b)


# ---------------------------------------------------------------------------
# text form


def _fmt_rat(c) -> str:
    c = mpq(c)
    if c.denominator == 1:
        return str(int(c.numerator))
    return f"{int(c.numerator)}/{int(c.denominator)}"


def _fmt_terms(terms) -> str:
    """terms: list of (exponent, coefficient) in ascending exponent order."""
    parts = []
    for e, c in terms:
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = _fmt_rat(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{_fmt_rat(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


def _format_kq(x) -> str:
    if isinstance(x, RatFunc):
        if not x.num:
            return "0"
        num = _fmt_terms([(x.shift + i, c) for i, c in enumerate(x.num) if c])
        if x.den == (1,):
            return num
        if len(x.den) == 1:
            if len(x.num) == 1 and x.shift == 0:
                return f"{x.num[0]}/{x.den[0]}"
            return f"({num})/{x.den[0]}"
        den = _fmt_terms([(i, c) for i, c in enumerate(x.den) if c])
        return f"({num})/({den})"
    if isinstance(x, Cyclo):
        return _fmt_terms([(i, c) for i, c in enumerate(x.c) if c])
    return _fmt_rat(x)


def _is_compound(s: str) -> bool:
    return " " in s or "/" in s


def format_scalar(x: Scalar) -> str:
    a = _format_kq(x.a) if x.a else ""
    if not x.b:
        return a or "0"
    bs = _format_kq(x.b)
    if bs == "1":
        bpart = "sqrt2"
    elif bs == "-1":
        bpart = "-sqrt2"
    elif _is_compound(bs):
        bpart = f"({bs})*sqrt2"
    else:
        bpart = f"{bs}*sqrt2"
    if not a:
        return bpart
    if bpart.startswith("-"):
        return f"{a} - {bpart[1:]}"
    return f"{a} + {bpart}"


_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt2)|(q)|([-+*/^()]))")


def parse_scalar(text: str, mode: QMode) -> Scalar:
    """Parse the text form (any +, -, *, /, ^, parentheses over integers, q, sqrt2)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r} at position {pos}")
        pos = m.end()
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("sqrt2", None))
        elif m.group(3):
            tokens.append(("q", None))
        else:
            tokens.append((m.group(4), None))
    if not tokens:
        raise ValueError("empty scalar expression")
    p = _Parser(tokens, mode)
    v = p.expr()
    if p.i != len(tokens):
        raise ValueError(f"trailing input in scalar {text!r}")
    return v


class _Parser:
    def __init__(self, tokens, mode):
        self.t = tokens
        self.i = 0
        self.mode = mode

    def peek(self):
        return self.t[self.i][0] if self.i < len(self.t) else None

    def take(self, kind=None):
        if self.i >= len(self.t):
            raise ValueError("unexpected end of scalar expression")
        tok = self.t[self.i]
        if kind is not None and tok[0] != kind:
            raise ValueError(f"expected {kind!r}, found {tok[0]!r}")
        self.i += 1
        return tok

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            w = self.unary()
            v = v * w if op == "*" else v / w
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            e = sign * self.take("int")[1]
            if base == Scalar.q_pow(1, self.mode) and self.mode.is_formal:
                return Scalar.q_pow(e, self.mode)
            r = Scalar.one(self.mode)
            b = base if e >= 0 else base.inv()
            for _ in range(abs(e)):
                r = r * b
            return r
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return Scalar.of(val, self.mode)
        if kind == "q":
            return Scalar.q_pow(1, self.mode)
        if kind == "sqrt2":
            return Scalar.sqrt2(self.mode)
        if kind == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ValueError(f"unexpected token {kind!r}")
