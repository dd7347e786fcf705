"""Labelled integral bases of E over a root window and the integrality verifier."""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field

from .eala import (
    EalaElement,
    coroot_element,
    e_bracket,
    e_form,
    is_centroidal,
)
from .jordan import HERMITIAN, QUANTUM, SEMILATTICE, JordanTorusSpec, rad_f_contains
from .lattice import Root, coset_of, coset_rep, is_root, norm_inf, roots_in_window, vadd, vneg
from .linalg import EchelonSpan
from .operators import commutator_L, left_mult, right_translation
from .scalar import IntegralityRing, Scalar, format_scalar, is_integral
from .tkk import TkkElement

__all__ = [
    "BasisElement",
    "ChevalleyBasis",
    "VerificationReport",
    "build_basis",
    "express_in_basis",
    "verify_integrality",
    "verify_lemma_naz4",
    "table_row",
    "element_coordinates",
    "parse_label",
    "hermitian_s3_proportionality",
]


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


@dataclass
class BasisElement:
    root: Root
    kind: str
    lam: tuple | None = None
    index: int | None = None
    shift: tuple | None = None
    value: EalaElement | None = field(default=None, repr=False)

    @property
    def label(self) -> str:
        if self.kind == "Halpha":
            return "Halpha"
        if self.kind in ("DegDer", "Dual0"):
            return f"{self.kind} {self.index}"
        if self.kind == "Comm":
            return f"Comm {_vec(self.lam)[:-1]};{_vec(self.shift)[1:]}"
        return f"{self.kind} {_vec(self.lam)}"

    def __str__(self):
        return self.label


# ---------------------------------------------------------------------------
# table rows


def _commutator_shift(spec: JordanTorusSpec, cls: int) -> tuple:
    """Shift tau for the commutator [L_{x^(lam+tau)}, L_{x^(-tau)}] at a class outside S.

    The largest nonzero class c in S with cls + c in S is used, which for
    S = S0 u S1 u S2 and cls = S3 gives tau = sigma_2.
    """
    for c in sorted(spec.support, reverse=True):
        if c and (c ^ cls) in spec.support:
            return coset_rep(c, spec.nu)
    raise ValueError(f"no commutator shift for class {cls}")


def table_row(spec: JordanTorusSpec, lam) -> list:
    """Operator entries (kind, shift) of the isotropic row for nonzero lam."""
    lam = tuple(lam)
    cls = coset_of(lam)
    if spec.family == SEMILATTICE:
        if spec.semilattice.is_full:
            if cls == 0:
                return [("Lop", None)]
            shift = (1, 0) if cls == 2 else (0, 1)
            return [("Lop", None), ("Comm", shift)]
        if cls in spec.support:
            return [("Lop", None)]
        return [("Comm", _commutator_shift(spec, cls))]
    if spec.family == QUANTUM:
        if rad_f_contains(lam, spec.qmode):
            return [("Lop", None)]
        return [("Lop", None), ("Rdiff", None)]
    if spec.family == HERMITIAN:
        if spec.sign == -1 and cls == 3:
            return [("Rop", None)]
        return [("Lop", None)]
    raise ValueError(f"unknown family {spec.family!r}")


def _operator_value(spec: JordanTorusSpec, kind: str, lam, shift):
    if kind == "Lop":
        return left_mult(spec, lam)
    if kind == "Comm":
        return commutator_L(spec, vadd(lam, shift), vneg(shift))
    if kind == "Rdiff":
        return left_mult(spec, lam) - right_translation(spec, lam)
    if kind == "Rop":
        return right_translation(spec, lam)
    raise ValueError(kind)


# ---------------------------------------------------------------------------
# coordinates


def element_coordinates(e: EalaElement) -> dict:
    """Flat sparse coordinates of an element of E, for exact linear algebra."""
    out: dict = {}
    for lam, a in e.g.plus.terms.items():
        out[("p", lam)] = a
    for lam, a in e.g.minus.terms.items():
        out[("n", lam)] = a
    for deg, op in e.g.mid.parts.items():
        for m, row in op.terms.items():
            for ell, a in row.items():
                out[("o", deg, m, ell)] = a
    for k, a in e.c.items():
        out[("C",) + k] = a
    for k, a in e.d.items():
        out[("D",) + k] = a
    return out


@dataclass
class ChevalleyBasis:
    spec: JordanTorusSpec
    radius: int
    elements: list
    by_root: dict
    suppressed_rows: list
    _solvers: dict = field(default_factory=dict, repr=False)

    def solver(self, root: Root) -> EchelonSpan:
        s = self._solvers.get(root)
        if s is None:
            s = EchelonSpan()
            for i, b in enumerate(self.by_root.get(root, [])):
                if not s.add(element_coordinates(b.value), i):
                    raise ArithmeticError(f"basis elements at {root} are dependent ({b.label})")
            self._solvers[root] = s
        return s

    def find(self, kind: str, lam=None, index=None, shift=None) -> BasisElement:
        for b in self.elements:
            if b.kind != kind:
                continue
            if lam is not None and b.lam != tuple(lam):
                continue
            if index is not None and b.index != index:
                continue
            if shift is not None and b.shift != tuple(shift):
                continue
            return b
        raise KeyError(f"no basis element {kind} {lam if lam is not None else index}")


def build_basis(spec: JordanTorusSpec, radius: int) -> ChevalleyBasis:
    if spec.nu != 2:
        raise ValueError("bases are built for rank 2")
    mode = spec.mode
    one = Scalar.one(mode)
    s2 = Scalar.sqrt2(mode)
    roots = roots_in_window(spec.support_semilattice, radius)
    elements: list = []
    by_root: dict = {}
    suppressed: list = []
    z = (0, 0)
    for r in roots:
        row: list = []
        lam = r.lam
        if r.m == 1:
            row.append(BasisElement(r, "Xplus", lam, value=EalaElement.from_g(TkkElement.x(spec, lam, s2))))
        elif r.m == -1:
            row.append(BasisElement(r, "Xminus", lam, value=EalaElement.from_g(TkkElement.xbar(spec, lam, s2))))
        elif lam == z:
            h = left_mult(spec, z).scale(Scalar.of(2, mode))
            row.append(BasisElement(r, "Halpha", value=EalaElement.from_g(TkkElement.op(h))))
            for i in (1, 2):
                row.append(BasisElement(r, "DegDer", index=i, value=EalaElement.deg_der(spec, i)))
            for i in (1, 2):
                row.append(BasisElement(r, "Dual0", index=i, value=EalaElement.dual0(spec, i)))
        else:
            for kind, shift in table_row(spec, lam):
                op = _operator_value(spec, kind, lam, shift)
                if not op.terms:
                    raise ArithmeticError(f"table entry {kind} at {lam} is zero")
                row.append(BasisElement(r, kind, lam, shift=shift, value=EalaElement.from_g(TkkElement.op(op))))
            if is_centroidal(spec, lam):
                row.append(BasisElement(r, "ChiDer", lam, value=EalaElement.chi_der(spec, lam, one)))
                row.append(BasisElement(r, "Dual", lam, value=EalaElement.dual(spec, lam)))
            else:
                suppressed.append({"root": str(r), "entry": f"ChiDer {_vec(lam)}"})
                suppressed.append({"root": str(r), "entry": f"Dual {_vec(lam)}"})
        by_root[r] = row
        elements.extend(row)
    basis = ChevalleyBasis(spec, radius, elements, by_root, suppressed)
    for r in roots:
        basis.solver(r)
    return basis


def express_in_basis(basis: ChevalleyBasis, elem: EalaElement, root: Root):
    """Coordinates of elem against basis.by_root[root], or None if elem is outside their span."""
    row = basis.by_root.get(root)
    if row is None:
        return None if elem else []
    coords = basis.solver(root).express(element_coordinates(elem))
    if coords is None:
        return None
    zero = Scalar.zero(basis.spec.mode)
    return [coords.get(i, zero) for i in range(len(row))]


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    family: str
    radius: int
    ring: str
    pairs: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    suppressed_rows: list = field(default_factory=list)
    grading_violations: int = 0
    timing: float = 0.0

    @property
    def verified(self) -> bool:
        return not self.failures

    @property
    def pairs_checked(self) -> int:
        return self.pairs

    def to_json(self) -> dict:
        # timing is left out so identical runs give identical reports
        return {
            "family": self.family,
            "radius": self.radius,
            "ring": self.ring,
            "pairs": self.pairs,
            "skipped": self.skipped,
            "failures": self.failures,
            "suppressed_rows": self.suppressed_rows,
        }


def _check_pair(basis: ChevalleyBasis, b1: BasisElement, b2: BasisElement, ring: IntegralityRing, collect):
    """Returns (failure dict or None, grading_ok)."""
    m, lam = b1.root + b2.root
    res = e_bracket(b1.value, b2.value)
    if collect is not None:
        collect(res)
    grading_ok = res.degrees() <= {lam} and res.q_degrees() <= {m}
    if not grading_ok:
        return ({"left": b1.label, "right": b2.label, "coeffs": [],
                 "bad": "bracket is not homogeneous of the sum degree"}, False)
    if not res:
        return None, True
    spec = basis.spec
    if abs(m) > 1 or not is_root(m, lam, spec.support_semilattice):
        return ({"left": b1.label, "right": b2.label, "coeffs": [],
                 "bad": "nonzero bracket at a non-root"}, True)
    root = Root(m, lam)
    coords = express_in_basis(basis, res, root)
    if coords is None:
        return ({"left": b1.label, "right": b2.label, "coeffs": [],
                 "bad": "bracket outside the span of the basis"}, True)
    bad = [c for c in coords if not is_integral(c, ring)]
    if bad:
        return ({"left": b1.label, "right": b2.label,
                 "coeffs": [format_scalar(c) for c in coords],
                 "bad": format_scalar(bad[0])}, True)
    return None, True


def _verify_range(spec_desc, radius, ring_value, rows):
    """Worker entry point: rebuild the basis and check the pairs whose left index is in rows."""
    from .jordan import parse_jordan

    basis = build_basis(parse_jordan(spec_desc), radius)
    return _verify_rows(basis, IntegralityRing(ring_value), rows, None)


def _verify_rows(basis, ring, rows, collect):
    pairs = skipped = gv = 0
    failures = []
    els = basis.elements
    for i in rows:
        b1 = els[i]
        for b2 in els:
            m, lam = b1.root + b2.root
            if norm_inf(lam) > basis.radius:
                skipped += 1
                continue
            pairs += 1
            fail, gok = _check_pair(basis, b1, b2, ring, collect)
            if not gok:
                gv += 1
            if fail is not None:
                failures.append(fail)
    return pairs, skipped, gv, failures


def verify_integrality(basis: ChevalleyBasis, ring: IntegralityRing, workers: int = 1, collect=None) -> VerificationReport:
    """Bracket every ordered pair of basis elements with in-window sum and check integral coordinates.

    ``collect``, if given, receives every bracket result (single-process only).
    """
    t0 = time.perf_counter()
    rep = VerificationReport(basis.spec.descriptor(), basis.radius, ring.value,
                             suppressed_rows=list(basis.suppressed_rows))
    n = len(basis.elements)
    if workers <= 1 or collect is not None:
        pairs, skipped, gv, failures = _verify_rows(basis, ring, range(n), collect)
    else:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [list(range(k, n, workers)) for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(_verify_range, basis.spec.descriptor(), basis.radius, ring.value, c) for c in chunks]
            results = [f.result() for f in futs]
        pairs = sum(r[0] for r in results)
        skipped = sum(r[1] for r in results)
        gv = sum(r[2] for r in results)
        order = {b.label: i for i, b in enumerate(basis.elements)}
        failures = sorted((f for r in results for f in r[3]),
                          key=lambda f: (order[f["left"]], order[f["right"]]))
    rep.pairs, rep.skipped, rep.grading_violations, rep.failures = pairs, skipped, gv, failures
    rep.timing = time.perf_counter() - t0
    return rep


def verify_lemma_naz4(spec: JordanTorusSpec, sigma) -> tuple:
    """Pairing ([x_(alpha+sigma), x_(-alpha)], [x_(-alpha-sigma), x_alpha]); expected -(alpha, alpha) = -1.

    x_(alpha+sigma) = x^sigma, x_(-alpha) = 1-bar, x_alpha = 1 and x_(-alpha-sigma) is the multiple
    of x-bar^(-sigma) whose bracket with x^sigma is t_(alpha+sigma). Returns (ok, value).
    """
    sigma = tuple(sigma)
    if not spec.in_support(sigma):
        raise ValueError(f"alpha + {sigma} is not a root")
    z = (0,) * spec.nu
    xs = EalaElement.from_g(TkkElement.x(spec, sigma))
    ybar = EalaElement.from_g(TkkElement.xbar(spec, vneg(sigma)))
    one = EalaElement.from_g(TkkElement.x(spec, z))
    one_bar = EalaElement.from_g(TkkElement.xbar(spec, z))
    t = coroot_element(spec, 1, sigma)
    b = e_bracket(xs, ybar)
    span = EchelonSpan()
    span.add(element_coordinates(b), 0)
    s = span.express(element_coordinates(t))
    if not s:
        return False, None
    x_neg = ybar.scale(s[0])
    value = e_form(e_bracket(xs, one_bar), e_bracket(x_neg, one))
    return value == -1, value


def hermitian_s3_proportionality(spec: JordanTorusSpec, lam):
    """Scalar s with r_lam = s * [L_{x^(lam+sigma1)}, L_{x^(-sigma1)}] (Hermitian(-1), lam in S3), or None."""
    r = right_translation(spec, lam)
    c = commutator_L(spec, vadd(lam, (1, 0)), (-1, 0))
    span = EchelonSpan()
    if not c.terms:
        return None
    span.add(c.coordinates(), 0)
    coords = span.express(r.coordinates())
    if coords is None:
        return None
    return coords.get(0, Scalar.zero(spec.mode))


# ---------------------------------------------------------------------------
# labels


_LABEL = re.compile(
    r"^\s*(Xplus|Xminus|Lop|Comm|Rdiff|Rop|ChiDer|Dual0|Dual|DegDer|Halpha)"
    r"\s*(?:\(\s*(-?\d+)\s*,\s*(-?\d+)\s*(?:;\s*(-?\d+)\s*,\s*(-?\d+)\s*)?\)|\(?\s*([12])\s*\)?)?\s*$"
)


def parse_label(basis: ChevalleyBasis, text: str) -> BasisElement:
    m = _LABEL.match(text)
    if not m:
        raise ValueError(f"cannot parse basis element {text!r}")
    kind = m.group(1)
    if kind == "Halpha":
        if m.group(2) or m.group(6):
            raise ValueError("Halpha takes no argument")
        return basis.find("Halpha")
    if kind in ("DegDer", "Dual0"):
        if not m.group(6):
            raise ValueError(f"{kind} needs an index 1 or 2")
        return basis.find(kind, index=int(m.group(6)))
    if m.group(2) is None:
        raise ValueError(f"{kind} needs a lattice vector like (1,0)")
    lam = (int(m.group(2)), int(m.group(3)))
    shift = (int(m.group(4)), int(m.group(5))) if m.group(4) is not None else None
    if norm_inf(lam) > basis.radius:
        raise ValueError(f"{text!r} lies outside the radius-{basis.radius} window")
    return basis.find(kind, lam=lam, shift=shift)
