"""Command-line front end: ``eala dims|verify|lemmas|bracket``.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass

from .chevalley import build_basis, express_in_basis, parse_label, verify_integrality, verify_lemma_naz4
from .eala import e_bracket
from .jordan import QUANTUM, SEMILATTICE, JordanTorusSpec, parse_jordan, quantum_torus
from .lattice import Root, is_root, norm_inf, window
from .lemmas import standard_semilattices, verify_rank_lemmas
from .reports import dimension_rows, rows_to_csv, rows_to_json
from .scalar import IntegralityRing, QMode, format_scalar

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_JORDAN = "semilattice:S:full,v=2"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    jordan: str
    radius: int
    tau_radius: int
    ring: IntegralityRing | None
    out: str | None
    format: str
    seed: int
    workers: int

    def spec(self) -> JordanTorusSpec:
        try:
            return parse_jordan(self.jordan)
        except ValueError as e:
            raise UsageError(str(e)) from None


def _default_workers() -> int:
    raw = os.environ.get("EALA_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _config(ns) -> RunConfig:
    if ns.radius < 1:
        raise UsageError("--radius must be at least 1")
    tau = ns.tau_radius if ns.tau_radius is not None else max(ns.radius, 2)
    if tau < ns.radius:
        raise UsageError("--tau-radius must be at least --radius")
    ring = None
    if getattr(ns, "ring", None):
        try:
            ring = IntegralityRing.parse(ns.ring)
        except ValueError as e:
            raise UsageError(str(e)) from None
    return RunConfig(ns.jordan, ns.radius, tau, ring, ns.out, ns.format, ns.seed, ns.workers)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_dims(cfg: RunConfig) -> int:
    spec = cfg.spec()
    if spec.nu != 2:
        raise UsageError("dimension sweeps are for rank 2")
    rows = dimension_rows(spec, cfg.radius, cfg.tau_radius, cfg.workers)
    _emit(cfg, rows_to_csv(rows) if cfg.format == "csv" else rows_to_json(rows))
    bad = [r for r in rows if not r["match"]]
    print(f"{len(rows)} rows, {len(bad)} mismatches", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def _default_ring(spec: JordanTorusSpec) -> IntegralityRing:
    if spec.family == QUANTUM and spec.qmode.is_formal:
        return IntegralityRing.Z_LAURENT
    return IntegralityRing.Z


def cmd_verify(cfg: RunConfig) -> int:
    spec = cfg.spec()
    ring = cfg.ring or _default_ring(spec)
    basis = build_basis(spec, cfg.radius)
    rep = verify_integrality(basis, ring, workers=cfg.workers)
    data = rep.to_json()
    if spec.family == QUANTUM and spec.qmode.is_formal:
        # the same table specialized at q = 1 and q = -1, checked over Z
        spec_rows = {}
        for n, name in ((1, "q=1"), (2, "q=-1")):
            sb = build_basis(quantum_torus(QMode.root(n)), cfg.radius)
            sr = verify_integrality(sb, IntegralityRing.Z, workers=cfg.workers)
            spec_rows[name] = {"ring": "Z", "pairs": sr.pairs, "failures": len(sr.failures)}
        data["specializations"] = spec_rows
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["left", "right", "coeffs", "bad"])
        for f in rep.failures:
            w.writerow([f["left"], f["right"], " ; ".join(f["coeffs"]), f["bad"]])
        _emit(cfg, buf.getvalue())
    else:
        _emit(cfg, _dump(data))
    print(f"{rep.pairs} pairs, {rep.skipped} skipped, {len(rep.failures)} failures, "
          f"{len(rep.suppressed_rows)} suppressed rows, {rep.grading_violations} grading violations",
          file=sys.stderr)
    return EXIT_OK if rep.verified and not rep.grading_violations else EXIT_FAIL


def _naz4_sigmas(spec: JordanTorusSpec, radius: int, count: int, rng: random.Random) -> list:
    z = (0,) * spec.nu
    pool = [v for v in window(radius, spec.nu) if v != z and spec.in_support(v)]
    return [z] + rng.sample(pool, min(count - 1, len(pool)))


def cmd_lemmas(cfg: RunConfig, nu: int | None, fault: str | None, jordan_given: bool) -> int:
    spec = cfg.spec()
    rng = random.Random(cfg.seed)
    out: dict = {"rank_checks": [], "pairing_checks": []}
    ok = True
    shown = 0
    if nu is not None or spec.family == SEMILATTICE:
        rank = nu if nu is not None else spec.nu
        if not 2 <= rank <= 4:
            raise UsageError("--nu must be between 2 and 4")
        if spec.family == SEMILATTICE and spec.nu == rank and (jordan_given or nu is None):
            sems = [spec.semilattice]
        else:
            sems = standard_semilattices(rank)
        for s in sems:
            rep = verify_rank_lemmas(s, radius=cfg.radius, seed=cfg.seed, fault=fault)
            out["rank_checks"].append(rep.to_json())
            if not rep.passed:
                ok = False
                for ce in rep.counterexamples[:max(0, 10 - shown)]:
                    shown += 1
                    print(f"counterexample in {s.descriptor()}: {ce['check']} {json.dumps(ce['witness'])}",
                          file=sys.stderr)
    if spec.nu == 2 and fault is None:
        for sigma in _naz4_sigmas(spec, min(cfg.radius, 3), 5, rng):
            good, value = verify_lemma_naz4(spec, sigma)
            out["pairing_checks"].append({"family": spec.descriptor(), "sigma": list(sigma),
                                          "value": None if value is None else format_scalar(value),
                                          "ok": good})
            if not good:
                ok = False
                print(f"pairing at sigma={sigma} is {value}, expected -1", file=sys.stderr)
    out["passed"] = ok
    _emit(cfg, _dump(out))
    n_bad = sum(len(r["counterexamples"]) for r in out["rank_checks"])
    if n_bad > shown:
        print(f"... {n_bad - shown} more counterexamples in the report", file=sys.stderr)
    n_rank = sum(sum(r["instances"].values()) for r in out["rank_checks"])
    print(f"{len(out['rank_checks'])} semilattices, {n_rank} instances, "
          f"{len(out['pairing_checks'])} pairing checks: {'pass' if ok else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def _format_coords(coords: list, row: list) -> str:
    parts = [f"{format_scalar(c)} * {b.label}" for c, b in zip(coords, row) if c]
    return " + ".join(parts) if parts else "0"


def cmd_bracket(cfg: RunConfig, left: str, right: str) -> int:
    spec = cfg.spec()
    basis = build_basis(spec, cfg.radius)
    try:
        a = parse_label(basis, left)
        b = parse_label(basis, right)
    except (ValueError, KeyError) as e:
        raise UsageError(e.args[0] if e.args else str(e)) from None
    m, lam = a.root + b.root
    res = e_bracket(a.value, b.value)
    if not res:
        _emit(cfg, "0\n")
        return EXIT_OK
    if norm_inf(lam) > cfg.radius:
        raise UsageError(f"the bracket lands at {lam}, outside the radius-{cfg.radius} window")
    if abs(m) > 1 or not is_root(m, lam, spec.support_semilattice):
        print("nonzero bracket at a non-root", file=sys.stderr)
        return EXIT_FAIL
    root = Root(m, lam)
    coords = express_in_basis(basis, res, root)
    if coords is None:
        print(f"bracket is outside the span of the basis at {root}", file=sys.stderr)
        return EXIT_FAIL
    _emit(cfg, _format_coords(coords, basis.by_root[root]) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jordan", default=None,
                        help=f"Jordan torus descriptor (default {DEFAULT_JORDAN})")
    common.add_argument("--radius", type=int, default=3, help="l-infinity window radius")
    common.add_argument("--tau-radius", type=int, default=None,
                        help="window for commutator shifts (default max(radius, 2))")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=_default_workers(),
                        help="worker processes (default from EALA_WORKERS, else 1)")

    p = argparse.ArgumentParser(prog="eala", description="Elliptic root spaces, Chevalley bases and checks.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("dims", parents=[common], help="isotropic root-space dimensions")
    v = sub.add_parser("verify", parents=[common], help="integrality of the Chevalley basis")
    v.add_argument("--ring", default=None, help="Z, Z-Laurent or Z-adjoin-sqrt2")
    lm = sub.add_parser("lemmas", parents=[common], help="product/commutator identities and the pairing check")
    lm.add_argument("--nu", type=int, default=None, help="rank for the semilattice identities (2 to 4)")
    lm.add_argument("--inject-fault", default=None, choices=("gamma",), help=argparse.SUPPRESS)
    br = sub.add_parser("bracket", parents=[common], help="bracket two basis elements")
    br.add_argument("left")
    br.add_argument("right")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    jordan_given = ns.jordan is not None
    if not jordan_given:
        ns.jordan = DEFAULT_JORDAN
    try:
        cfg = _config(ns)
        if ns.command == "dims":
            return cmd_dims(cfg)
        if ns.command == "verify":
            return cmd_verify(cfg)
        if ns.command == "lemmas":
            return cmd_lemmas(cfg, ns.nu, ns.inject_fault, jordan_given)
        return cmd_bracket(cfg, ns.left, ns.right)
    except UsageError as e:
        print(f"eala: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
