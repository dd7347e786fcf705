"""Dimension sweeps over isotropic roots, as JSON or CSV."""

from __future__ import annotations

import csv
import io
import json

from .eala import closed_form_dim, isotropic_dim
from .jordan import JordanTorusSpec, parse_jordan
from .lattice import coset_bits, coset_of, is_root, roots_in_window

__all__ = ["DIM_FIELDS", "dimension_row", "dimension_rows", "rows_to_csv", "rows_to_json"]

DIM_FIELDS = ("sigma", "coset", "op_dim", "d_dim", "c_dim", "total", "predicted", "lemma_tag", "match")


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def dimension_row(spec: JordanTorusSpec, sigma, tau_radius: int) -> dict:
    """Computed vs predicted dimension of the isotropic root space at sigma.

    The prediction fixes only the operator part; the D and C parts enter the
    predicted total as computed, so ``match`` compares operator parts.
    """
    op, d, c = isotropic_dim(spec, sigma, tau_radius)
    pred_op, tag = closed_form_dim(spec, sigma)
    total = op + d + c
    predicted = pred_op + d + c
    return {
        "sigma": _vec(sigma),
        "coset": coset_bits(coset_of(sigma), spec.nu),
        "op_dim": op,
        "d_dim": d,
        "c_dim": c,
        "total": total,
        "predicted": predicted,
        "lemma_tag": tag,
        "match": op == pred_op,
    }


def _rows_worker(desc: str, sigmas: list, tau_radius: int) -> list:
    spec = parse_jordan(desc)
    return [dimension_row(spec, s, tau_radius) for s in sigmas]


def dimension_rows(spec: JordanTorusSpec, radius: int, tau_radius: int | None = None, workers: int = 1) -> list:
    """One row per nonzero isotropic root in the window, in lexicographic order."""
    tau_radius = radius if tau_radius is None else tau_radius
    s = spec.support_semilattice
    sigmas = [r.lam for r in roots_in_window(s, radius)
              if r.m == 0 and any(r.lam) and is_root(0, r.lam, s)]
    if workers <= 1 or len(sigmas) < 2 * workers:
        return [dimension_row(spec, sg, tau_radius) for sg in sigmas]
    from concurrent.futures import ProcessPoolExecutor

    chunks = [sigmas[k::workers] for k in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_rows_worker, [spec.descriptor()] * workers, chunks, [tau_radius] * workers))
    order = {_vec(sg): i for i, sg in enumerate(sigmas)}
    return sorted((r for p in parts for r in p), key=lambda r: order[r["sigma"]])


def rows_to_json(rows: list) -> str:
    return json.dumps(rows, indent=2, sort_keys=False) + "\n"


def rows_to_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=DIM_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
