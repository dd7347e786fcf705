"""Incremental exact row echelon form over the scalar field.

Vectors are sparse dicts {key: Scalar}. Keys must be mutually comparable
tuples; pivots are chosen as the smallest key, so results are reproducible.
"""

from __future__ import annotations

from .scalar import Scalar

__all__ = ["EchelonSpan", "rank"]


def _axpy(v: dict, c: Scalar, w: dict) -> None:
    """v -= c * w, in place."""
    for k, x in w.items():
        y = v.get(k)
        if y is None:
            v[k] = -(c * x)
        else:
            y = y - c * x
            if y:
                v[k] = y
            else:
                del v[k]


class EchelonSpan:
    """Span of labelled vectors kept in reduced echelon form.

    Each row stores its pivot key, a vector normalized to 1 at the pivot, and
    the combination of original labels it equals.
    """

    def __init__(self):
        self.rows: list = []
        self._pivots: dict = {}
        self.labels: list = []

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: dict) -> tuple:
        # row i only contains pivots of rows inserted after it, so one pass in
        # insertion order clears every pivot
        v = {k: x for k, x in vec.items() if x}
        combo: dict = {}
        for piv, rvec, rcombo in self.rows:
            c = v.get(piv)
            if c is None:
                continue
            _axpy(v, c, rvec)
            _axpy(combo, -c, rcombo)
        return v, combo

    def add(self, vec: dict, label) -> bool:
        """Insert vec; return False (and store nothing) if it is already in the span."""
        v, combo = self._reduce(vec)
        if not v:
            return False
        # vec = v + sum combo * orig, so v = orig[label] - sum combo * orig
        one = Scalar.one(next(iter(v.values())).mode)
        rc = {k: -x for k, x in combo.items()}
        rc[label] = one
        piv = min(v)
        inv = v[piv].inv()
        v = {k: x * inv for k, x in v.items()}
        rc = {k: x * inv for k, x in rc.items() if x}
        self.rows.append((piv, v, rc))
        self._pivots[piv] = len(self.rows) - 1
        self.labels.append(label)
        return True

    def express(self, vec: dict):
        """Coefficients {label: Scalar} with vec = sum coef * labelled vector, or None if outside."""
        v, combo = self._reduce(vec)
        if v:
            return None
        return {k: x for k, x in combo.items() if x}

    def contains(self, vec: dict) -> bool:
        v, _ = self._reduce(vec)
        return not v


def rank(vectors) -> int:
    span = EchelonSpan()
    for i, v in enumerate(vectors):
        span.add(v, i)
    return span.rank
